// End-to-end checks through the installed binary. Each run shells out via
// popen and captures stdout+stderr; exit codes come from pclose.

#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(STEPFIT_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data_file(const std::string& name) {
  return std::string(STEPFIT_TEST_DATA_DIR) + "/" + name;
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string line =
        text.substr(start, end == std::string::npos ? end : end - start);
    if (!line.empty()) out.push_back(json::parse(line));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("cli fit reproduces the spike example") {
  const auto r =
      run("fit --b 2 --input " + data_file("spikes.txt") + " --format json");
  REQUIRE(r.exit_code == 0);
  const auto recs = json_lines(r.out);
  REQUIRE(recs.size() == 1);
  const json& rec = recs[0];
  CHECK(rec["command"] == "fit");
  CHECK(rec["n"] == 6);
  CHECK(rec["m"] == 4);
  CHECK(rec["steps"].size() == 2);
  CHECK(rec["steps"][0]["lo"] == 1);
  CHECK(rec["steps"][0]["hi"] == 4);
  CHECK(rec["steps"][1]["lo"] == 5);
  CHECK(rec["steps"][1]["hi"] == 6);
  CHECK(rec["steps"][0]["level"].get<double>() == doctest::Approx(5.25));
  CHECK(rec["error"].get<double>() == doctest::Approx(39.25));
}

TEST_CASE("cli fit with b = 1 returns the weighted mean") {
  const auto r =
      run("fit --b 1 --input " + data_file("spikes.txt") + " --format json");
  REQUIRE(r.exit_code == 0);
  const json rec = json_lines(r.out).at(0);
  CHECK(rec["steps"].size() == 1);
  CHECK(rec["steps"][0]["level"].get<double>() ==
        doctest::Approx(40.0 / 6.0));
}

TEST_CASE("cli engines report the same error") {
  json by_engine;
  for (const std::string engine : {"fisher", "monotone", "smawk"}) {
    const auto r = run("fit --b 3 --engine " + engine + " --input " +
                       data_file("spikes.txt") + " --format json");
    REQUIRE(r.exit_code == 0);
    by_engine[engine] = json_lines(r.out).at(0)["error"];
  }
  CHECK(by_engine["fisher"] == by_engine["smawk"]);
  CHECK(by_engine["monotone"] == by_engine["smawk"]);
}

TEST_CASE("cli pav emits the weighted points") {
  const auto r =
      run("pav --input " + data_file("spikes.txt") + " --format json");
  REQUIRE(r.exit_code == 0);
  const json rec = json_lines(r.out).at(0);
  CHECK(rec["m"] == 4);
  CHECK(rec["pieces"][0]["mean"].get<double>() == 5.0);
  CHECK(rec["pieces"][0]["weight"].get<double>() == 3.0);
  CHECK(rec["error"].get<double>() == doctest::Approx(38.0));
}

TEST_CASE("cli kmeans splits the ramp") {
  const auto r = run("kmeans --k 2 --input " + data_file("ramp.txt") +
                     " --format json");
  REQUIRE(r.exit_code == 0);
  const json rec = json_lines(r.out).at(0);
  CHECK(rec["sse"].get<double>() == doctest::Approx(16.0));
  CHECK(rec["clusters"].size() == 2);
  CHECK(rec["clusters"][0]["center"].get<double>() == 2.0);
  CHECK(rec["clusters"][1]["center"].get<double>() == 8.0);
}

TEST_CASE("cli sweep lists nonincreasing errors") {
  const auto r =
      run("sweep --b 6 --input " + data_file("ramp.txt") + " --format json");
  REQUIRE(r.exit_code == 0);
  const auto recs = json_lines(r.out);
  REQUIRE(recs.size() == 6);
  CHECK(recs[1]["error"].get<double>() == doctest::Approx(16.0));
  CHECK(recs[2]["error"].get<double>() == doctest::Approx(6.0));
  double prev = 1e300;
  for (const json& rec : recs) {
    CHECK(rec["error"].get<double>() <= prev + 1e-12);
    prev = rec["error"].get<double>();
  }
}

TEST_CASE("cli oracle agrees with fit on a small file") {
  const auto fit =
      run("fit --b 2 --input " + data_file("spikes.txt") + " --format json");
  const auto oracle = run("oracle --mode reduced --b 2 --input " +
                          data_file("spikes.txt") + " --format json");
  REQUIRE(fit.exit_code == 0);
  REQUIRE(oracle.exit_code == 0);
  const double a = json_lines(fit.out).at(0)["error"].get<double>();
  const double b = json_lines(oracle.out).at(0)["error"].get<double>();
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("cli bench is reproducible apart from timing") {
  const std::string args =
      "bench --n 128,256 --b 4 --engine monotone,smawk --seed 42 "
      "--format json";
  const auto first = run(args);
  const auto second = run(args);
  REQUIRE(first.exit_code == 0);
  auto a = json_lines(first.out);
  auto b = json_lines(second.out);
  REQUIRE(a.size() == 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i].erase("time_ms");
    b[i].erase("time_ms");
    CHECK(a[i] == b[i]);
  }
}

TEST_CASE("cli exit codes: usage, parse, missing file") {
  CHECK(run("fit --input " + data_file("spikes.txt")).exit_code == 1);
  CHECK(run("fit --b 0 --input " + data_file("spikes.txt")).exit_code == 1);
  CHECK(run("fit --b 99 --input " + data_file("spikes.txt")).exit_code == 1);
  CHECK(run("fit --b 2 --input /nonexistent/file.txt").exit_code == 2);
  CHECK(run("nonsense").exit_code == 1);

  const std::string bad = "/tmp/stepfit_bad_input.txt";
  {
    std::ofstream f(bad);
    f << "1\n2\nnot-a-number\n";
  }
  const auto r = run("fit --b 1 --input " + bad);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find(":3") != std::string::npos);  // line-numbered diagnostic
  std::remove(bad.c_str());
}

TEST_CASE("cli reads stdin and weight annotations") {
  const std::string file = "/tmp/stepfit_weighted_input.txt";
  {
    std::ofstream f(file);
    f << "# weighted points\n5, 3\n6, 1\n9, 1\n10, 1\n";
  }
  const auto r = run("fit --b 2 --format json < " + file);
  REQUIRE(r.exit_code == 0);
  const json rec = json_lines(r.out).at(0);
  CHECK(rec["steps"][0]["hi"] == 2);
  CHECK(rec["steps"][0]["level"].get<double>() == doctest::Approx(5.25));
  std::remove(file.c_str());
}

TEST_CASE("cli scalar and avx2 kernels give identical fits") {
  const auto scalar = run("--kernel scalar fit --b 2 --input " +
                          data_file("spikes.txt") + " --format json");
  REQUIRE(scalar.exit_code == 0);
  json srec = json_lines(scalar.out).at(0);
  if (srec["kernel"] != "scalar") return;  // cannot happen; belt and braces
  const auto native = run("fit --b 2 --input " + data_file("spikes.txt") +
                          " --format json");
  REQUIRE(native.exit_code == 0);
  json nrec = json_lines(native.out).at(0);
  srec.erase("time_ms");
  srec.erase("kernel");
  nrec.erase("time_ms");
  nrec.erase("kernel");
  CHECK(srec == nrec);
}
