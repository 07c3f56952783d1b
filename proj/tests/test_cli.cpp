// Copyright 2026 The botnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end checks of the command line tool: exit codes, output
// contracts and byte-stable CSV emission. Runs the installed binary as a
// subprocess against the bundled data files.

#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

std::string data_file(const std::string& name) {
  return std::string(BOTNASH_DATA_DIR) + "/" + name;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string capture = "cli_capture_" + std::to_string(counter++) + ".txt";
  const std::string command =
      std::string(BOTNASH_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
  const int raw = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  std::remove(capture.c_str());
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::ofstream out(name, std::ios::binary);
  out << content;
  return name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

long count_lines(const std::string& text) {
  long n = 0;
  for (char c : text) {
    n += c == '\n';
  }
  return n;
}

}  // namespace

TEST_CASE("equilibrium subcommand reports the closed form") {
  const CliResult table = run_cli("equilibrium --input " + data_file("example-2x2.json"));
  CHECK(table.exit_code == 0);
  CHECK(table.output.find("0.75") != std::string::npos);
  CHECK(table.output.find("all-communication-saturated") != std::string::npos);

  const CliResult as_json =
      run_cli("equilibrium -i " + data_file("example-2x2.json") + " -f json");
  CHECK(as_json.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(as_json.output);
  CHECK(j["nash"]["totals"][0].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(j["system"]["label"] == "example-2x2");
  // serialization round-trips losslessly
  CHECK(nlohmann::json::parse(j.dump()) == j);

  const CliResult again =
      run_cli("equilibrium -i " + data_file("example-2x2.json") + " -f json");
  CHECK(again.output == as_json.output);
}

TEST_CASE("bad inputs exit with code 2 and name the field") {
  write_temp("bad_instance.json",
             R"({"apps":[{"b":0,"w":1}],"workers":[{"bandwidth":1,"power":1}]})");
  const CliResult bad = run_cli("equilibrium --input bad_instance.json");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("apps[1].b") != std::string::npos);

  CHECK(run_cli("equilibrium --input does_not_exist.json").exit_code == 2);
  CHECK(run_cli("equilibrium").exit_code == 2);            // missing --input
  CHECK(run_cli("no-such-subcommand").exit_code == 2);

  write_temp("unknown_key.json",
             R"({"apps":[{"b":1,"w":1}],"workers":[{"bandwidth":1,"power":1}],"mystery":1})");
  const CliResult unknown = run_cli("equilibrium --input unknown_key.json");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.find("mystery") != std::string::npos);
}

TEST_CASE("compare subcommand emits references and metrics") {
  const CliResult r = run_cli("compare -i " + data_file("smk.json") + " -f json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["metrics"]["price_of_anarchy"]["ratio"].get<double>() ==
        doctest::Approx(1.5).epsilon(1e-9));
  for (const auto& v : j["references"]["max_min"]["totals"]) {
    CHECK(v.get<double>() == doctest::Approx(0.4).epsilon(1e-9));
  }
  CHECK(j["metrics"]["pareto_inefficient"] == false);
  CHECK(j["metrics"]["sdf"]["factor"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));

  const CliResult two = run_cli("compare -i " + data_file("example-2x2.json") + " -f json");
  REQUIRE(two.exit_code == 0);
  const nlohmann::json j2 = nlohmann::json::parse(two.output);
  CHECK(j2["metrics"]["sdf"]["factor"].get<double>() ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(j2["metrics"]["pareto_inefficient"] == true);
  CHECK(j2["equivalent_subsystem"][0]["power"].get<double>() ==
        doctest::Approx(1.25).epsilon(1e-9));
}

TEST_CASE("sweep subcommand writes threshold-annotated CSV") {
  const std::string base =
      "sweep -i " + data_file("fig-degradation.json") + " --from 5 --to 12 --steps 141";
  const CliResult r = run_cli(base + " -o sweep_out.csv");
  REQUIRE(r.exit_code == 0);
  const std::string csv = slurp("sweep_out.csv");
  CHECK(csv.find("# bandwidth_threshold_lower: 7.6712328767") != std::string::npos);
  CHECK(csv.find("# bandwidth_threshold_upper: 10.2083333333") != std::string::npos);
  CHECK(csv.find("swept_value,alpha_1,alpha_2,alpha_3,alpha_4,max,min,avg") !=
        std::string::npos);
  CHECK(count_lines(csv) == 5 + 1 + 141);  // metadata, header, rows

  const CliResult again = run_cli(base + " -o sweep_out2.csv");
  REQUIRE(again.exit_code == 0);
  CHECK(slurp("sweep_out2.csv") == csv);  // byte-identical reruns

  CHECK(run_cli(base + " --to 5").exit_code == 2);    // degenerate range
  CHECK(run_cli(base + " --steps 1").exit_code == 2);
  CHECK(run_cli("sweep -i " + data_file("smk.json") +
                " --worker 9 --from 1 --to 2 --steps 3")
            .exit_code == 2);

  SUBCASE("single-application sweep is monotone in bandwidth") {
    write_temp("solo.json",
               R"({"apps":[{"b":1,"w":2}],"workers":[{"bandwidth":1,"power":2}]})");
    const CliResult solo =
        run_cli("sweep -i solo.json --from 0.5 --to 4 --steps 20 -o solo_sweep.csv");
    REQUIRE(solo.exit_code == 0);
    std::istringstream lines(slurp("solo_sweep.csv"));
    std::string line;
    double last = -1.0;
    while (std::getline(lines, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 's') {
        continue;
      }
      const std::size_t comma = line.find(',');
      const double alpha = std::stod(line.substr(comma + 1));
      CHECK(alpha >= last - 1e-12);
      last = alpha;
    }
  }
}

TEST_CASE("braess-scan finds no paradox") {
  const CliResult r = run_cli("braess-scan -i " + data_file("example-2x2.json") +
                              " --seed 1 --trials 300 -f json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["paradoxes"] == 0);
  CHECK(j["trials"] == 300);

  CHECK(run_cli("braess-scan -i " + data_file("example-2x2.json") + " --trials 0")
            .exit_code == 2);
}

TEST_CASE("simulate subcommand compares against the closed form") {
  const std::string input = data_file("example-2x2.json");
  const CliResult ok = run_cli("simulate -i " + input + " --horizon 600 -o sim_run");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("rel-error") != std::string::npos);
  const std::string trace = slurp("sim_run.trace.csv");
  CHECK(trace.rfind("time,kind,app,worker\n", 0) == 0);
  CHECK(count_lines(trace) > 100);
  CHECK(slurp("sim_run.samples.csv").rfind("window_start,app,throughput\n", 0) == 0);

  // a window that is no whole number of periods leaves residual error,
  // so an extreme tolerance trips exit code 5
  CHECK(run_cli("simulate -i " + input + " --horizon 50 --warmup 7 --tolerance 1e-12")
            .exit_code == 5);
  // empty measurement window is an input error
  CHECK(run_cli("simulate -i " + input + " --horizon 1 --warmup 1").exit_code == 2);
}

TEST_CASE("repro regenerates the bundled examples") {
  for (const char* id : {"example-2x2", "smk", "fig-degradation"}) {
    const CliResult r = run_cli(std::string("repro ") + id + " --data-dir " +
                                BOTNASH_DATA_DIR);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
  }
  CHECK(run_cli("repro nonsense --data-dir " + std::string(BOTNASH_DATA_DIR)).exit_code == 2);

  const CliResult fig = run_cli("repro fig-degradation --data-dir " +
                                std::string(BOTNASH_DATA_DIR) + " -o fig_artifact.csv");
  REQUIRE(fig.exit_code == 0);
  CHECK(count_lines(slurp("fig_artifact.csv")) == 5 + 1 + 141);
}

TEST_CASE("version flag") {
  const CliResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0.1.0") != std::string::npos);
}
