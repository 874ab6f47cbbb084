// Copyright 2026 The qmetro Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the installed binary via std::system. The binary path
// comes from the build system.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string out_file = "cli_test_output.tmp";
    const std::string command =
        std::string(QMETRO_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("qfi --probe pefs:4,10 --eta 0.9").exit_code == 2);
    CHECK(run_cli("qfi --probe noon:6 --eta 1.2").exit_code == 2);
    CHECK(run_cli("cfi --probe noon:6 --eta 0.9 --phi bogus").exit_code == 2);
    CHECK(run_cli("figure fig9z").exit_code == 2);
    CHECK(run_cli("cfi --probe noon:6 --eta 0.9 --phi 0.3 --measure xyz").exit_code == 2);
    const RunResult bad_probe = run_cli("qfi --probe pefs:4,10");
    CHECK(bad_probe.output.find("--probe") != std::string::npos);
}

TEST_CASE("qfi command reports the ideal lossless value") {
    const RunResult r = run_cli("qfi --probe noon:6 --eta 1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("36") != std::string::npos);
    CHECK(r.output.find("0.16666666666666666") != std::string::npos);
}

TEST_CASE("cfi command accepts pi fractions") {
    const RunResult r = run_cli("cfi --probe noon:6 --eta 0.9 --phi pi/12 --measure dp,dpnr");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("dp,") != std::string::npos);
    CHECK(r.output.find("dpnr,") != std::string::npos);
}

TEST_CASE("figure output is byte-identical across runs") {
    REQUIRE(run_cli("figure fig2a --out fig2a_run1.csv").exit_code == 0);
    REQUIRE(run_cli("figure fig2a --out fig2a_run2.csv").exit_code == 0);
    const std::string a = slurp("fig2a_run1.csv");
    const std::string b = slurp("fig2a_run2.csv");
    REQUIRE_FALSE(a.empty());
    CHECK(a == b);
    CHECK(a.rfind("# figure=fig2a", 0) == 0);
    CHECK(a.find("\r") == std::string::npos);  // '\n' endings only
}

TEST_CASE("json output mirrors the rows") {
    const RunResult r =
        run_cli("cfi --probe noon:4 --eta 0.9 --phi pi/8 --measure dp --format json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("\"measurement\": \"dp\"") != std::string::npos);
    CHECK(r.output.find("\"fisher\"") != std::string::npos);
}

TEST_CASE("sweep command emits the long table") {
    const RunResult r = run_cli(
        "sweep --probe pefs:10,4 --arms one --grid 0.8:1.0:0.1 --phi pi/12 --measure qfi,dp");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("eta,phi,measurement,fisher,sensitivity,error") != std::string::npos);
    CHECK(r.output.find("qfi,") != std::string::npos);
}

TEST_CASE("hierarchy command reports the ranking") {
    const RunResult r = run_cli("hierarchy --probe noon:6 --eta 0.9 --phi pi/12");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("dh_lt_dp_lt_dpnr=yes") != std::string::npos);
    CHECK(r.output.find("rank,measurement,fisher") != std::string::npos);
}

TEST_CASE("selftest passes on a fresh build") {
    const RunResult r = run_cli("selftest");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("[FAIL]") == std::string::npos);
    CHECK(r.output.find("checks passed") != std::string::npos);
}
