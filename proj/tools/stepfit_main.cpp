// Command-line front end: fit / pav / kmeans / sweep / bench / oracle.
//
// Input format: one record per line, "value[,weight]" with weight defaulting
// to 1; '#' starts a comment; blank lines are skipped.
//
// Exit codes: 0 success, 1 usage error, 2 unreadable or unparseable input,
// 3 internal invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stepfit/stepfit.hpp"

namespace {

using nlohmann::json;
using namespace stepfit;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view tok, const std::string& where) {
  tok = trim(tok);
  double out = 0.0;
  const auto* begin = tok.data();
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end || tok.empty()) {
    throw input_error(where + ": cannot parse number '" + std::string(tok) +
                      "'");
  }
  return out;
}

WeightedSeries read_series(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  std::string label = "<stdin>";
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw input_error(path + ": cannot open file");
    in = &file;
    label = path;
  }

  std::vector<double> values;
  std::vector<double> weights;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(*in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (const auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    sv = trim(sv);
    if (sv.empty()) continue;
    const std::string where = label + ":" + std::to_string(lineno);
    const auto comma = sv.find(',');
    if (comma == std::string_view::npos) {
      values.push_back(parse_number(sv, where));
      weights.push_back(1.0);
    } else {
      const auto rest = sv.substr(comma + 1);
      if (rest.find(',') != std::string_view::npos) {
        throw input_error(where + ": expected 'value[,weight]'");
      }
      values.push_back(parse_number(sv.substr(0, comma), where));
      weights.push_back(parse_number(rest, where));
    }
  }
  if (values.empty()) throw input_error(label + ": no data records");
  try {
    return WeightedSeries(std::move(values), std::move(weights));
  } catch (const std::invalid_argument& e) {
    throw input_error(label + ": " + e.what());
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    const auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Per-step sse on the original index space.
std::vector<double> step_sses(const PrefixSums& ps, const StepFunction& fn) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(fn.steps()));
  for (std::int64_t s = 1; s <= fn.steps(); ++s) {
    out.push_back(ps.sse(fn.step(s)));
  }
  return out;
}

int run_fit(const std::string& input, std::int64_t b, Engine engine,
            bool as_json) {
  const WeightedSeries series = read_series(input);
  FitReport report;
  const Timer timer;
  const ReducedFit rf = reduced_isotonic_fit(series, b, engine, {}, &report);
  const double ms = timer.ms();
  const PrefixSums ps(series);
  const std::vector<double> sses = step_sses(ps, rf.fit);

  if (as_json) {
    json steps = json::array();
    for (std::int64_t s = 1; s <= rf.fit.steps(); ++s) {
      const Interval iv = rf.fit.step(s);
      steps.push_back({{"lo", iv.lo},
                       {"hi", iv.hi},
                       {"level", rf.fit.levels[static_cast<std::size_t>(s - 1)]},
                       {"sse", sses[static_cast<std::size_t>(s - 1)]}});
    }
    const json rec = {{"command", "fit"},
                      {"engine", engine_name(engine)},
                      {"kernel", kernels::isa_name(kernels::active())},
                      {"n", series.size()},
                      {"m", rf.pieces.count()},
                      {"b", b},
                      {"steps_used", rf.fit.steps()},
                      {"steps", steps},
                      {"error", rf.fit.error},
                      {"evals", report.total_evals()},
                      {"time_ms", ms}};
    std::cout << rec.dump() << "\n";
  } else {
    std::cout << "engine: " << engine_name(engine)
              << "   kernel: " << kernels::isa_name(kernels::active()) << "\n";
    std::cout << "n: " << series.size() << "   pieces: " << rf.pieces.count()
              << "   b: " << b << "   steps: " << rf.fit.steps() << "\n";
    std::printf("%-6s %8s %8s %-18s %s\n", "step", "lo", "hi", "level", "sse");
    for (std::int64_t s = 1; s <= rf.fit.steps(); ++s) {
      const Interval iv = rf.fit.step(s);
      std::printf("%-6lld %8lld %8lld %-18s %s\n",
                  static_cast<long long>(s), static_cast<long long>(iv.lo),
                  static_cast<long long>(iv.hi),
                  fmt(rf.fit.levels[static_cast<std::size_t>(s - 1)]).c_str(),
                  fmt(sses[static_cast<std::size_t>(s - 1)]).c_str());
    }
    std::cout << "total_error: " << fmt(rf.fit.error) << "\n";
    std::cout << "evals: " << report.total_evals() << "\n";
    std::cout << "time_ms: " << fmt(ms) << "\n";
  }
  return 0;
}

int run_pav(const std::string& input, bool as_json) {
  const WeightedSeries series = read_series(input);
  const Timer timer;
  const PavFit pf = pav_fit(series);
  const double ms = timer.ms();

  if (as_json) {
    json pieces = json::array();
    for (const Piece& p : pf.pieces.pieces) {
      pieces.push_back({{"lo", p.range.lo},
                        {"hi", p.range.hi},
                        {"mean", p.mean},
                        {"weight", p.weight},
                        {"sse", p.sse}});
    }
    const json rec = {{"command", "pav"},   {"n", series.size()},
                      {"m", pf.pieces.count()}, {"pieces", pieces},
                      {"error", pf.fit.error},  {"time_ms", ms}};
    std::cout << rec.dump() << "\n";
  } else {
    std::cout << "n: " << series.size() << "   pieces: " << pf.pieces.count()
              << "\n";
    std::printf("%-6s %8s %8s %-18s %-14s %s\n", "piece", "lo", "hi", "mean",
                "weight", "sse");
    std::int64_t id = 0;
    for (const Piece& p : pf.pieces.pieces) {
      std::printf("%-6lld %8lld %8lld %-18s %-14s %s\n",
                  static_cast<long long>(++id),
                  static_cast<long long>(p.range.lo),
                  static_cast<long long>(p.range.hi), fmt(p.mean).c_str(),
                  fmt(p.weight).c_str(), fmt(p.sse).c_str());
    }
    std::cout << "total_error: " << fmt(pf.fit.error) << "\n";
    std::cout << "time_ms: " << fmt(ms) << "\n";
  }
  return 0;
}

int run_kmeans(const std::string& input, std::int64_t k, bool as_json) {
  const WeightedSeries series = read_series(input);
  const Timer timer;
  const KMeansFit km = kmeans_1d(series, k);
  const double ms = timer.ms();

  if (as_json) {
    json clusters = json::array();
    for (std::size_t c = 0; c < km.clusters.size(); ++c) {
      clusters.push_back({{"sorted_lo", km.clusters[c].lo},
                          {"sorted_hi", km.clusters[c].hi},
                          {"center", km.centers[c]},
                          {"members", km.members[c]}});
    }
    const json rec = {{"command", "kmeans"}, {"n", series.size()},
                      {"k", k},              {"clusters", clusters},
                      {"sse", km.sse},       {"time_ms", ms}};
    std::cout << rec.dump() << "\n";
  } else {
    std::cout << "n: " << series.size() << "   k: " << k
              << "   sse: " << fmt(km.sse) << "\n";
    std::printf("%-8s %8s %-18s %s\n", "cluster", "size", "center",
                "members");
    for (std::size_t c = 0; c < km.clusters.size(); ++c) {
      std::string members;
      for (const std::int64_t id : km.members[c]) {
        if (!members.empty()) members += ' ';
        members += std::to_string(id);
      }
      std::printf("%-8zu %8lld %-18s %s\n", c + 1,
                  static_cast<long long>(km.clusters[c].length()),
                  fmt(km.centers[c]).c_str(), members.c_str());
    }
    std::cout << "time_ms: " << fmt(ms) << "\n";
  }
  return 0;
}

int run_sweep(const std::string& input, std::int64_t b_max, Engine engine,
              bool as_json) {
  const WeightedSeries series = read_series(input);
  const std::vector<SweepPoint> sweep = fit_sweep(series, b_max, engine);
  if (as_json) {
    for (const SweepPoint& p : sweep) {
      const json rec = {{"command", "sweep"},
                        {"engine", engine_name(engine)},
                        {"b", p.b},
                        {"error", p.error}};
      std::cout << rec.dump() << "\n";
    }
  } else {
    std::printf("%-6s %s\n", "b", "error");
    for (const SweepPoint& p : sweep) {
      std::printf("%-6lld %s\n", static_cast<long long>(p.b),
                  fmt(p.error).c_str());
    }
  }
  return 0;
}

double u01(std::mt19937_64& gen) {
  // top 53 bits -> [0, 1); identical on every platform, unlike
  // std::uniform_real_distribution
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

WeightedSeries synthetic_isotonic(std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed * 0x9e3779b97f4a7c15ULL +
                      static_cast<std::uint64_t>(n));
  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<double> weights(static_cast<std::size_t>(n));
  double x = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    x += u01(gen);
    values[i] = x;
    weights[i] = 0.5 + 1.5 * u01(gen);
  }
  return WeightedSeries(std::move(values), std::move(weights));
}

int run_bench(const std::vector<std::int64_t>& sizes, std::int64_t b,
              const std::vector<std::string>& engines, std::uint64_t seed,
              bool as_json) {
  if (!as_json) {
    std::printf("%-10s %10s %6s %14s %16s %12s\n", "engine", "n", "b", "evals",
                "evals_per_c_max", "time_ms");
  }
  for (const std::string& name : engines) {
    const Engine engine = parse_engine(name);
    for (const std::int64_t n : sizes) {
      if (n < 1) throw std::invalid_argument("bench sizes must be positive");
      const WeightedSeries series = synthetic_isotonic(n, seed);
      const std::int64_t eff_b = std::min(b, n);
      FitReport report;
      FitOptions opts;
      opts.validate_isotonic = false;
      const Timer timer;
      step_fit(engine, series, eff_b, opts, &report);
      const double ms = timer.ms();
      if (as_json) {
        const json rec = {{"command", "bench"},
                          {"engine", name},
                          {"kernel", kernels::isa_name(kernels::active())},
                          {"n", n},
                          {"b", eff_b},
                          {"seed", seed},
                          {"evals", report.total_evals()},
                          {"evals_per_c_max", report.max_evals_per_step()},
                          {"time_ms", ms}};
        std::cout << rec.dump() << "\n";
      } else {
        std::printf("%-10s %10lld %6lld %14lld %16lld %12s\n", name.c_str(),
                    static_cast<long long>(n), static_cast<long long>(eff_b),
                    static_cast<long long>(report.total_evals()),
                    static_cast<long long>(report.max_evals_per_step()),
                    fmt(ms).c_str());
      }
    }
  }
  return 0;
}

int run_oracle(const std::string& input, const std::string& mode,
               std::int64_t b, std::int64_t max_n, bool as_json) {
  const WeightedSeries series = read_series(input);
  if (mode == "kmeans") {
    const double sse = brute_kmeans_sse(series, b, max_n);
    if (as_json) {
      const json rec = {{"command", "oracle"},
                        {"mode", mode},
                        {"n", series.size()},
                        {"k", b},
                        {"sse", sse}};
      std::cout << rec.dump() << "\n";
    } else {
      std::cout << "oracle kmeans: n=" << series.size() << " k=" << b
                << " sse=" << fmt(sse) << "\n";
    }
    return 0;
  }
  const StepFunction fn = (mode == "step")
                              ? brute_step_fit(series, b, max_n)
                              : brute_reduced_fit(series, b, max_n);
  if (as_json) {
    json steps = json::array();
    for (std::int64_t s = 1; s <= fn.steps(); ++s) {
      const Interval iv = fn.step(s);
      steps.push_back({{"lo", iv.lo},
                       {"hi", iv.hi},
                       {"level", fn.levels[static_cast<std::size_t>(s - 1)]}});
    }
    const json rec = {{"command", "oracle"}, {"mode", mode},
                      {"n", series.size()},  {"b", b},
                      {"steps", steps},      {"error", fn.error}};
    std::cout << rec.dump() << "\n";
  } else {
    std::cout << "oracle " << mode << ": n=" << series.size() << " b=" << b
              << " steps=" << fn.steps() << " error=" << fmt(fn.error) << "\n";
    for (std::int64_t s = 1; s <= fn.steps(); ++s) {
      const Interval iv = fn.step(s);
      std::printf("%-6lld %8lld %8lld %s\n", static_cast<long long>(s),
                  static_cast<long long>(iv.lo),
                  static_cast<long long>(iv.hi),
                  fmt(fn.levels[static_cast<std::size_t>(s - 1)]).c_str());
    }
  }
  return 0;
}

std::vector<std::int64_t> parse_size_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    out.push_back(std::stoll(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty size list");
  return out;
}

std::vector<std::string> parse_name_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal step-function fits for weighted 1-D data"};
  app.require_subcommand(1);

  std::string kernel = "auto";
  app.add_option("--kernel", kernel, "row-scan kernel: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  std::string input;
  std::string format = "table";
  std::int64_t b = 0;
  std::int64_t k = 0;
  std::string engine_str = "smawk";
  std::string mode = "reduced";
  std::string sizes_csv = "256,512,1024";
  std::string engines_csv = "fisher,monotone,smawk";
  std::uint64_t seed = 12345;
  std::int64_t max_oracle_n = 16;

  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
  };
  const auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input,-i", input, "input file ('-' or absent: stdin)");
  };
  const auto add_engine = [&](CLI::App* cmd) {
    cmd->add_option("--engine", engine_str, "DP engine")
        ->check(CLI::IsMember({"fisher", "monotone", "smawk"}));
  };

  CLI::App* fit = app.add_subcommand(
      "fit", "optimal reduced isotonic regression with at most b steps");
  add_input(fit);
  add_format(fit);
  add_engine(fit);
  fit->add_option("--b,-b", b, "maximum number of steps")->required();

  CLI::App* pav = app.add_subcommand(
      "pav", "unrestricted isotonic regression (pieces)");
  add_input(pav);
  add_format(pav);

  CLI::App* kmeans =
      app.add_subcommand("kmeans", "weighted 1-D k-means clustering");
  add_input(kmeans);
  add_format(kmeans);
  kmeans->add_option("--k", k, "number of clusters")->required();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "reduced isotonic error for every b up to a maximum");
  add_input(sweep);
  add_format(sweep);
  add_engine(sweep);
  sweep->add_option("--b,-b", b, "largest step budget")->required();

  CLI::App* bench = app.add_subcommand(
      "bench", "evaluation counts on deterministic synthetic isotonic data");
  add_format(bench);
  bench->add_option("--n", sizes_csv, "comma-separated sizes");
  bench->add_option("--b,-b", b, "steps per run")->default_val(8);
  bench->add_option("--engine", engines_csv, "comma-separated engines");
  bench->add_option("--seed", seed, "PRNG seed");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force reference fits for small inputs (dev)");
  add_input(oracle);
  add_format(oracle);
  oracle->add_option("--mode", mode, "step, reduced or kmeans")
      ->check(CLI::IsMember({"step", "reduced", "kmeans"}));
  oracle->add_option("--b,-b", b, "steps (modes step/reduced)");
  oracle->add_option("--k", k, "clusters (mode kmeans)");
  oracle->add_option("--max-oracle-n", max_oracle_n,
                     "refuse inputs larger than this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (kernel != "auto") {
      kernels::select(kernel == "scalar" ? kernels::Isa::scalar
                                         : kernels::Isa::avx2);
    }
    const bool as_json = format == "json";
    if (fit->parsed()) {
      return run_fit(input, b, parse_engine(engine_str), as_json);
    }
    if (pav->parsed()) {
      return run_pav(input, as_json);
    }
    if (kmeans->parsed()) {
      return run_kmeans(input, k, as_json);
    }
    if (sweep->parsed()) {
      return run_sweep(input, b, parse_engine(engine_str), as_json);
    }
    if (bench->parsed()) {
      return run_bench(parse_size_list(sizes_csv), b,
                       parse_name_list(engines_csv), seed, as_json);
    }
    if (oracle->parsed()) {
      if (mode == "kmeans") {
        if (k < 1) throw std::invalid_argument("oracle kmeans needs --k");
        if (max_oracle_n == 16 && !oracle->count("--max-oracle-n")) {
          max_oracle_n = 12;  // tighter default for the kmeans enumeration
        }
        return run_oracle(input, mode, k, max_oracle_n, as_json);
      }
      if (b < 1) throw std::invalid_argument("oracle needs --b");
      return run_oracle(input, mode, b, max_oracle_n, as_json);
    }
    return 1;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
