// Copyright 2026 The blocknorm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// blocknorm command-line front end.
//
//   blocknorm table1   [--output PATH]
//   blocknorm simulate --process ar1 --rho-grid 0:0.9:0.1 --stat t-star --m 50 ...
//   blocknorm ci       --input panel.csv [--alpha 0.05] [--m auto]
//   blocknorm test     --input panel.csv --mu0 mu0.csv
//   blocknorm generate --process hd-linear --p 20 --n 2000 --output panel.csv
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data or I/O
// error, 3 internal error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <type_traits>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "blocknorm/blocknorm.hpp"
#include "nlohmann/json.hpp"

namespace {

using json = nlohmann::json;
using namespace blocknorm;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- Output helpers -----------------------------------------------------

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw IoError("cannot open '" + path + "' for writing");
  }

  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool is_file() const { return file_ != nullptr; }

  void close() {
    stream().flush();
    if (file_) {
      file_->close();
      if (file_->fail()) throw IoError("failed writing '" + path_ + "'");
    }
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

std::string Fixed(double v, int decimals) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string Full(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json Number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Manifest {
  std::string command;
  json config;
  std::optional<std::uint64_t> seed;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  json ToJson() const {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json j;
    j["command"] = command;
    j["config"] = config;
    j["master_seed"] = seed ? json(*seed) : json(nullptr);
    j["rng_algorithm"] = kRngAlgorithm;
    j["library_version"] = kVersion;
    j["wall_clock_seconds"] = seconds;
    return j;
  }
};

void WriteCompanionManifest(const std::string& path, const Manifest& manifest) {
  Output out(path + ".manifest.json");
  out.stream() << manifest.ToJson().dump(2) << "\n";
  out.close();
}

// ---- Flag parsing helpers -----------------------------------------------

// "start:stop:step", a comma list, or a single value.
std::vector<double> ParseGrid(const std::string& text, const std::string& flag) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
      throw UsageError(flag + ": cannot parse '" + s + "' as a number");
    }
    return v;
  };
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) parts.push_back(part);
  if (sep == ':') {
    if (parts.size() != 3) throw UsageError(flag + ": expected start:stop:step");
    try {
      return make_grid(number(parts[0]), number(parts[1]), number(parts[2]));
    } catch (const ConfigError& e) {
      throw UsageError(flag + ": " + e.what());
    }
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(number(p));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

std::optional<RefDist> ParseRef(const std::string& text) {
  if (text == "auto") return std::nullopt;
  if (text == "normal") return RefDist::Normal();
  if (text.size() > 1 && text[0] == 't') {
    try {
      std::size_t used = 0;
      const int df = std::stoi(text.substr(1), &used);
      if (used == text.size() - 1 && df >= 1) return RefDist::StudentT(df);
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--ref: expected auto, normal or t<df>, got '" + text + "'");
}

Studentization ParseStudentization(const std::string& text) {
  if (text == "student") return Studentization::kStudent;
  if (text == "block-sum") return Studentization::kBlockSum;
  throw UsageError("--studentize: expected student or block-sum");
}

std::string GridLabel(const std::string& name, double v) {
  std::ostringstream os;
  os << name << "=" << v;
  return os.str();
}

std::string JoinArgs(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

// Flat "key = value" lines; '#' starts a comment. Keys are flag names
// without the leading dashes. Flags given on the command line win.
void ApplyConfigFile(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  std::string line;
  for (std::size_t row = 1; std::getline(in, line); ++row) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string t) {
      const auto b = t.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return t.substr(b, t.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config line " + std::to_string(row) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "config") throw UsageError("--config files cannot nest");
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (!opt) {
      throw UsageError("--config line " + std::to_string(row) + ": unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("--config key '" + key + "': " + e.what());
    }
  }
}

unsigned DefaultWorkers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// ---- table1 -------------------------------------------------------------

struct Table1Options {
  std::string output = "-";
};

void RunTable1(const Table1Options& opt, Manifest manifest) {
  manifest.config = {{"output", opt.output}};
  Output out(opt.output);
  auto& os = out.stream();
  os << "x,1-Phi,1-t19,1-t9,(1-t9)/(1-Phi)\n";
  for (const auto& r : table1()) {
    os << Fixed(r.x, 1) << ',' << Fixed(r.normal_tail, 5) << ','
       << Fixed(r.t19_tail, 5) << ',' << Fixed(r.t9_tail, 5) << ','
       << Fixed(r.t9_over_normal, 5) << '\n';
  }
  out.close();
  if (out.is_file()) WriteCompanionManifest(opt.output, manifest);
}

// ---- simulate -----------------------------------------------------------

struct SimulateOptions {
  std::string process = "iid";
  double rho = 0.0;
  std::string rho_grid;
  double a = 1.0;
  double b = 0.0;
  std::string b_grid;
  std::size_t burn_in = 1000;
  std::size_t n = 1000;
  std::string stat = "i-star";
  std::optional<std::size_t> m, m1, m2;
  std::optional<double> alpha1, alpha2;
  double mu0 = 0.0;
  std::string studentize = "student";
  std::size_t reps = 100000;
  std::uint64_t seed = 1;
  std::string x = "1.6:4.0:0.1";
  std::string ref = "auto";
  std::string output = "-";
  std::string format = "csv";
  unsigned workers = DefaultWorkers();
};

struct SimulationPlan {
  SimConfig base;
  std::vector<ProcessSpec> params;
  std::vector<std::string> labels;
  json config_echo;
};

SimulationPlan PlanSimulation(const SimulateOptions& o, bool rho_set, bool b_set,
                              bool a_set) {
  SimulationPlan plan;
  SimConfig& cfg = plan.base;
  cfg.n = o.n;
  cfg.reps = o.reps;
  cfg.master_seed = Seed{o.seed};
  cfg.x_grid = ParseGrid(o.x, "--x");
  cfg.ref = ParseRef(o.ref);

  // Statistic and block scheme.
  StatKind kind;
  if (o.stat == "w") kind = StatKind::kWn;
  else if (o.stat == "w-star") kind = StatKind::kWnStar;
  else if (o.stat == "i") kind = StatKind::kIn;
  else if (o.stat == "i-star") kind = StatKind::kInStar;
  else if (o.stat == "t-star") kind = StatKind::kTnStar;
  else throw UsageError("--stat: expected w, w-star, i, i-star or t-star");

  const bool big_small = kind == StatKind::kWn || kind == StatKind::kWnStar;
  const bool any_pair = o.m1 || o.m2 || o.alpha1 || o.alpha2;
  if (big_small) {
    if (o.m) throw UsageError("--m applies to i, i-star and t-star; use --m1/--m2");
    if ((o.m1 || o.m2) && (o.alpha1 || o.alpha2)) {
      throw UsageError("give either --m1/--m2 or --alpha1/--alpha2, not both");
    }
    std::size_t m1 = 43, m2 = 7;
    if (o.alpha1 || o.alpha2) {
      if (!(o.alpha1 && o.alpha2)) throw UsageError("--alpha1 and --alpha2 go together");
      std::tie(m1, m2) = exponents_to_sizes(o.n, *o.alpha1, *o.alpha2);
    } else if (o.m1 || o.m2) {
      if (!(o.m1 && o.m2)) throw UsageError("--m1 and --m2 go together");
      m1 = *o.m1;
      m2 = *o.m2;
    }
    cfg.statistic.scheme = BigSmall{m1, m2};
  } else {
    if (any_pair) {
      throw UsageError("--m1/--m2/--alpha1/--alpha2 apply to w and w-star; use --m");
    }
    const std::size_t m = o.m.value_or(50);
    if (kind == StatKind::kTnStar) cfg.statistic.scheme = Batch{m};
    else cfg.statistic.scheme = Interlace{m};
  }
  cfg.statistic.kind = kind;
  cfg.statistic.mu = o.mu0;
  cfg.statistic.studentization = ParseStudentization(o.studentize);

  // Process and parameter grid.
  if (o.process == "iid") {
    if (rho_set || b_set || a_set || !o.rho_grid.empty() || !o.b_grid.empty()) {
      throw UsageError("iid process takes no --rho/--a/--b parameters");
    }
    plan.params = {IIDNormal{}};
    plan.labels = {"iid"};
  } else if (o.process == "ar1") {
    if (b_set || a_set || !o.b_grid.empty()) {
      throw UsageError("ar1 takes --rho or --rho-grid, not --a/--b");
    }
    if (rho_set && !o.rho_grid.empty()) {
      throw UsageError("give either --rho or --rho-grid");
    }
    const auto rhos = o.rho_grid.empty() ? std::vector<double>{o.rho}
                                         : ParseGrid(o.rho_grid, "--rho-grid");
    for (double r : rhos) {
      plan.params.push_back(AR1{r});
      plan.labels.push_back(GridLabel("rho", r));
    }
  } else if (o.process == "arch1") {
    if (rho_set || !o.rho_grid.empty()) {
      throw UsageError("arch1 takes --a and --b or --b-grid, not --rho");
    }
    if (b_set && !o.b_grid.empty()) throw UsageError("give either --b or --b-grid");
    const auto bs = o.b_grid.empty() ? std::vector<double>{o.b}
                                     : ParseGrid(o.b_grid, "--b-grid");
    for (double b : bs) {
      plan.params.push_back(ARCH1{o.a, b, o.burn_in});
      plan.labels.push_back(GridLabel("b", b));
    }
  } else {
    throw UsageError("--process: expected iid, ar1 or arch1");
  }
  cfg.process = plan.params.front();
  for (const auto& p : plan.params) validate_process(p);
  validate_config(cfg);

  json scheme;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, BigSmall>) {
          scheme = {{"type", "big-small"}, {"m1", s.m1}, {"m2", s.m2}};
        } else if constexpr (std::is_same_v<S, Interlace>) {
          scheme = {{"type", "interlace"}, {"m", s.m}};
        } else {
          scheme = {{"type", "batch"}, {"m", s.m}};
        }
      },
      cfg.statistic.scheme);
  json procs = json::array();
  for (const auto& p : plan.params) procs.push_back(describe(p));
  plan.config_echo = {
      {"process", o.process},
      {"processes", procs},
      {"n", o.n},
      {"stat", o.stat},
      {"scheme", scheme},
      {"mu0", o.mu0},
      {"studentize", o.studentize},
      {"reps", o.reps},
      {"seed", o.seed},
      {"x", cfg.x_grid},
      {"ref", reference_for(cfg).name()},
      {"ref_override", o.ref != "auto"},
      {"format", o.format},
  };
  if (o.process == "arch1") {
    plan.config_echo["a"] = o.a;
    plan.config_echo["burn_in"] = o.burn_in;
  }
  return plan;
}

void WriteGridCsv(std::ostream& os, const RatioGrid& grid,
                  const std::vector<std::string>& labels) {
  os << 'x';
  for (const auto& l : labels) os << ',' << l;
  for (const auto& l : labels) {
    os << ',' << l << "_ratio," << l << "_mc_tail," << l << "_ref_tail," << l
       << "_mc_se," << l << "_degenerate";
  }
  os << '\n';
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    os << Full(grid.x[i]);
    for (std::size_t c = 0; c < grid.tables.size(); ++c) {
      os << ',' << Fixed(grid.ratio(i, c), 2);
    }
    for (const auto& t : grid.tables) {
      const auto& r = t.rows[i];
      os << ',' << Full(r.ratio) << ',' << Full(r.mc_tail) << ',' << Full(r.ref_tail)
         << ',' << Full(r.mc_se) << ',' << r.degenerate_count;
    }
    os << '\n';
  }
}

json GridJson(const RatioGrid& grid, const std::vector<std::string>& labels) {
  json cols = json::array();
  for (std::size_t c = 0; c < grid.tables.size(); ++c) {
    const auto& t = grid.tables[c];
    json rows = json::array();
    for (const auto& r : t.rows) {
      rows.push_back({{"x", r.x},
                      {"mc_tail", r.mc_tail},
                      {"ref_tail", r.ref_tail},
                      {"ratio", Number(r.ratio)},
                      {"mc_se", r.mc_se},
                      {"degenerate_count", r.degenerate_count}});
    }
    cols.push_back({{"label", labels[c]},
                    {"process", describe(grid.params[c])},
                    {"reference", t.ref.name()},
                    {"reps", t.reps},
                    {"used_reps", t.used_reps},
                    {"degenerate_count", t.degenerate_count},
                    {"rows", rows}});
  }
  return {{"x", grid.x}, {"columns", cols}};
}

void RunSimulate(const SimulateOptions& o, bool rho_set, bool b_set, bool a_set,
                 Manifest manifest) {
  if (o.format != "csv" && o.format != "json") {
    throw UsageError("--format: expected csv or json");
  }
  const SimulationPlan plan = PlanSimulation(o, rho_set, b_set, a_set);
  manifest.config = plan.config_echo;
  manifest.seed = o.seed;
  const RatioGrid grid = ratio_grid(plan.base, plan.params, o.workers);

  Output out(o.output);
  if (o.format == "csv") {
    WriteGridCsv(out.stream(), grid, plan.labels);
    out.close();
    if (out.is_file()) WriteCompanionManifest(o.output, manifest);
  } else {
    json doc = GridJson(grid, plan.labels);
    doc["manifest"] = manifest.ToJson();
    out.stream() << doc.dump(2) << '\n';
    out.close();
  }
}

// ---- ci / test ----------------------------------------------------------

struct InferOptions {
  std::string input;
  std::string mu0;
  double alpha = 0.05;
  std::string m = "auto";
  bool use_t = true;
  std::string studentize = "student";
  std::string output = "-";
  std::string table;
};

struct LoadedPanel {
  CsvPanel csv;
  CiSet ci;
};

LoadedPanel LoadAndEstimate(const InferOptions& o) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  LoadedPanel lp;
  lp.csv = read_panel_csv_file(o.input);
  std::size_t m = 0;
  if (o.m == "auto") {
    m = auto_block_length(lp.csv.panel.rows());
  } else {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(o.m, &used);
      if (used != o.m.size() || v < 1) throw std::invalid_argument("m");
      m = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw UsageError("--m: expected a positive integer or 'auto'");
    }
  }
  lp.ci = simultaneous_ci(lp.csv.panel, o.alpha, m, o.use_t,
                          ParseStudentization(o.studentize));
  return lp;
}

std::string ColumnName(const CsvPanel& csv, std::size_t l) {
  return l < csv.header.size() ? csv.header[l] : "z" + std::to_string(l + 1);
}

json CiJson(const LoadedPanel& lp) {
  const CiSet& ci = lp.ci;
  json intervals = json::array();
  for (std::size_t l = 0; l < ci.size(); ++l) {
    intervals.push_back({{"coordinate", l + 1},
                         {"name", ColumnName(lp.csv, l)},
                         {"center", ci.center[l]},
                         {"halfwidth", ci.halfwidth[l]},
                         {"lower", ci.lower(l)},
                         {"upper", ci.upper(l)}});
  }
  return {{"alpha", ci.alpha},
          {"n", lp.csv.panel.rows()},
          {"p", ci.size()},
          {"m", ci.m},
          {"k", ci.k},
          {"quantile_source", ci.quantile_source.name()},
          {"quantile", ci.quantile},
          {"studentization", to_string(ci.studentization)},
          {"dimension_warning", ci.dimension_warning},
          {"intervals", intervals}};
}

void WriteCiTable(std::ostream& os, const LoadedPanel& lp, const TestResult* test) {
  const CiSet& ci = lp.ci;
  os << "Simultaneous " << Fixed(100.0 * (1.0 - ci.alpha), 1)
     << "% intervals (Bonferroni, " << ci.quantile_source.name()
     << " quantile " << Fixed(ci.quantile, 4) << ", m=" << ci.m << ", k=" << ci.k
     << ")\n";
  char line[256];
  std::snprintf(line, sizeof line, "%6s  %-12s %14s %14s %14s%s\n", "coord", "name",
                "lower", "center", "upper", test ? "  mu0 / verdict" : "");
  os << line;
  for (std::size_t l = 0; l < ci.size(); ++l) {
    std::string extra;
    if (test) {
      const bool bad = std::find(test->violating_coordinates.begin(),
                                 test->violating_coordinates.end(),
                                 l) != test->violating_coordinates.end();
      extra = "  " + Fixed(test->mu0[l], 6) + (bad ? "  OUTSIDE" : "  inside");
    }
    std::snprintf(line, sizeof line, "%6zu  %-12.12s %14.6f %14.6f %14.6f%s\n", l + 1,
                  ColumnName(lp.csv, l).c_str(), ci.lower(l), ci.center[l], ci.upper(l),
                  extra.c_str());
    os << line;
  }
  if (test) os << (test->reject ? "Reject H0" : "Do not reject H0") << '\n';
  if (ci.dimension_warning) {
    os << "warning: log(p) exceeds n^(1/4); coverage may be unreliable\n";
  }
}

json InferConfig(const InferOptions& o) {
  json j = {{"input", o.input},   {"alpha", o.alpha},
            {"m", o.m},           {"use_t", o.use_t},
            {"studentize", o.studentize}, {"output", o.output}};
  if (!o.mu0.empty()) j["mu0"] = o.mu0;
  return j;
}

void EmitInfer(const InferOptions& o, json doc, const LoadedPanel& lp,
               const TestResult* test, Manifest& manifest) {
  manifest.config = InferConfig(o);
  doc["manifest"] = manifest.ToJson();
  Output out(o.output);
  out.stream() << doc.dump(2) << '\n';
  out.close();
  if (!o.table.empty()) {
    Output tab(o.table);
    WriteCiTable(tab.stream(), lp, test);
    tab.close();
  }
  if (lp.ci.dimension_warning) {
    std::cerr << "warning: log(p) exceeds n^(1/4); coverage may be unreliable\n";
  }
}

void RunCi(const InferOptions& o, Manifest manifest) {
  const LoadedPanel lp = LoadAndEstimate(o);
  EmitInfer(o, CiJson(lp), lp, nullptr, manifest);
}

void RunTest(const InferOptions& o, Manifest manifest) {
  const LoadedPanel lp = LoadAndEstimate(o);
  std::ifstream in(o.mu0);
  if (!in) throw ParseError("cannot open '" + o.mu0 + "'");
  const std::vector<double> mu0 = read_vector_csv(in);
  const TestResult res = mean_test(lp.ci, mu0);
  json violating = json::array();
  for (auto l : res.violating_coordinates) violating.push_back(l + 1);
  json doc = {{"reject", res.reject},
              {"violating_coordinates", violating},
              {"alpha", res.alpha},
              {"mu0", res.mu0},
              {"ci", CiJson(lp)}};
  EmitInfer(o, doc, lp, &res, manifest);
}

// ---- generate -----------------------------------------------------------

struct GenerateOptions {
  std::string process = "iid";
  std::size_t n = 1000;
  std::size_t p = 1;
  double rho = 0.0;
  double a = 1.0;
  double b = 0.0;
  std::size_t burn_in = 1000;
  double decay = 0.5;
  std::size_t lag_cap = 200;
  double mean = 0.0;
  std::uint64_t seed = 1;
  std::string output = "-";
};

void RunGenerate(const GenerateOptions& o, Manifest manifest) {
  if (o.n < 1) throw UsageError("--n must be >= 1");
  if (o.p < 1) throw UsageError("--p must be >= 1");
  PanelSeries panel;
  if (o.process == "hd-linear") {
    panel = gen_hd_linear(o.n, HDLinear{o.p, o.decay, o.lag_cap}, Seed{o.seed});
  } else {
    ProcessSpec spec;
    if (o.process == "iid") spec = IIDNormal{};
    else if (o.process == "ar1") spec = AR1{o.rho};
    else if (o.process == "arch1") spec = ARCH1{o.a, o.b, o.burn_in};
    else throw UsageError("--process: expected iid, ar1, arch1 or hd-linear");
    validate_process(spec);
    // Column l is an independent path seeded with derive_rep_seed(seed, l).
    panel = PanelSeries(o.n, o.p);
    for (std::size_t l = 0; l < o.p; ++l) {
      const Series s = generate(spec, o.n, derive_rep_seed(Seed{o.seed}, l));
      for (std::size_t i = 0; i < o.n; ++i) panel(i, l) = s[i];
    }
  }
  manifest.seed = o.seed;
  manifest.config = {{"process", o.process}, {"n", o.n},       {"p", o.p},
                     {"rho", o.rho},         {"a", o.a},       {"b", o.b},
                     {"decay", o.decay},     {"lag_cap", o.lag_cap},
                     {"mean", o.mean},       {"seed", o.seed}};
  Output out(o.output);
  auto& os = out.stream();
  for (std::size_t l = 0; l < o.p; ++l) os << (l ? "," : "") << 'z' << l + 1;
  os << '\n';
  for (std::size_t i = 0; i < o.n; ++i) {
    for (std::size_t l = 0; l < o.p; ++l) os << (l ? "," : "") << Full(panel(i, l) + o.mean);
    os << '\n';
  }
  out.close();
  if (out.is_file()) WriteCompanionManifest(o.output, manifest);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-normalized block statistics for dependent time series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Manifest manifest;
  manifest.command = JoinArgs(argc, argv);

  // table1
  Table1Options t1;
  auto* table1_cmd = app.add_subcommand("table1", "Write normal / t19 / t9 upper tails on x = 1.6..4.0 as CSV");
  table1_cmd->add_option("-o,--output", t1.output, "Output path, '-' for stdout")->capture_default_str();

  // simulate
  SimulateOptions so;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo tail ratios of a block statistic");
  std::string sim_config, ci_config, test_config, gen_config;
  sim->add_option("--config", sim_config, "Flat key=value file of flag values (flags take precedence)");
  sim->add_option("--process", so.process, "iid, ar1 or arch1")->capture_default_str();
  auto* rho_opt = sim->add_option("--rho", so.rho, "AR(1) coefficient, |rho| < 1");
  sim->add_option("--rho-grid", so.rho_grid, "AR(1) coefficients: start:stop:step or comma list");
  auto* a_opt = sim->add_option("--a", so.a, "ARCH(1) intercept a > 0")->capture_default_str();
  auto* b_opt = sim->add_option("--b", so.b, "ARCH(1) coefficient, 0 <= b < 1");
  sim->add_option("--b-grid", so.b_grid, "ARCH(1) coefficients: start:stop:step or comma list");
  sim->add_option("--burn-in", so.burn_in, "ARCH(1) discarded warm-up steps")->capture_default_str();
  sim->add_option("--n", so.n, "Series length")->capture_default_str();
  sim->add_option("--stat", so.stat, "w, w-star, i, i-star or t-star")->capture_default_str();
  sim->add_option("--m", so.m, "Block length for i, i-star, t-star (default 50)");
  sim->add_option("--m1", so.m1, "Big block length for w, w-star (default 43)");
  sim->add_option("--m2", so.m2, "Small block length for w, w-star (default 7)");
  sim->add_option("--alpha1", so.alpha1, "Big block exponent: m1 = floor(n^alpha1)");
  sim->add_option("--alpha2", so.alpha2, "Small block exponent: m2 = floor(n^alpha2)");
  sim->add_option("--mu0", so.mu0, "Null mean for starred statistics")->capture_default_str();
  sim->add_option("--studentize", so.studentize, "student or block-sum")->capture_default_str();
  sim->add_option("--reps", so.reps, "Monte Carlo replications")->capture_default_str();
  sim->add_option("--seed", so.seed, "Master seed")->capture_default_str();
  sim->add_option("--x", so.x, "Tail points: start:stop:step or comma list")->capture_default_str();
  sim->add_option("--ref", so.ref, "Reference law: auto, normal or t<df>")->capture_default_str();
  sim->add_option("-o,--output", so.output, "Output path, '-' for stdout")->capture_default_str();
  sim->add_option("--format", so.format, "csv or json")->capture_default_str();
  sim->add_option("--workers", so.workers, "Worker threads (never changes results)")
      ->envname("BLOCKNORM_WORKERS")
      ->check(CLI::PositiveNumber);

  // ci and test share their options.
  InferOptions ci_opt, test_opt;
  auto add_infer = [](CLI::App* cmd, InferOptions& o, std::string& config) {
    cmd->add_option("--config", config, "Flat key=value file of flag values (flags take precedence)");
    cmd->add_option("-i,--input", o.input, "Panel CSV: n rows x p numeric columns, optional header (required)");
    cmd->add_option("--alpha", o.alpha, "Family-wise level")->capture_default_str();
    cmd->add_option("--m", o.m, "Block length or 'auto' for round(n^(1/4))")->capture_default_str();
    cmd->add_flag("--use-t,!--no-use-t", o.use_t, "Student-t quantiles (default) or normal");
    cmd->add_option("--studentize", o.studentize, "student or block-sum")->capture_default_str();
    cmd->add_option("-o,--output", o.output, "JSON output path, '-' for stdout")->capture_default_str();
    cmd->add_option("--table", o.table, "Also write a readable table to this path ('-' for stdout)");
  };
  auto* ci_cmd = app.add_subcommand("ci", "Bonferroni simultaneous confidence intervals for a mean vector");
  add_infer(ci_cmd, ci_opt, ci_config);
  auto* test_cmd = app.add_subcommand("test", "Test H0: mu = mu0 with the simultaneous intervals");
  add_infer(test_cmd, test_opt, test_config);
  test_cmd->add_option("--mu0", test_opt.mu0, "CSV with the p hypothesized means (required)");

  // generate
  GenerateOptions go;
  auto* gen = app.add_subcommand("generate", "Write a simulated panel as CSV");
  gen->add_option("--config", gen_config, "Flat key=value file of flag values (flags take precedence)");
  gen->add_option("--process", go.process, "iid, ar1, arch1 or hd-linear")->capture_default_str();
  gen->add_option("--n", go.n, "Rows (time points)")->capture_default_str();
  gen->add_option("--p", go.p, "Columns")->capture_default_str();
  gen->add_option("--rho", go.rho, "AR(1) coefficient")->capture_default_str();
  gen->add_option("--a", go.a, "ARCH(1) intercept")->capture_default_str();
  gen->add_option("--b", go.b, "ARCH(1) coefficient")->capture_default_str();
  gen->add_option("--burn-in", go.burn_in, "ARCH(1) warm-up")->capture_default_str();
  gen->add_option("--decay", go.decay, "hd-linear coefficient decay in [0, 1)")->capture_default_str();
  gen->add_option("--lag-cap", go.lag_cap, "hd-linear truncation lag")->capture_default_str();
  gen->add_option("--mean", go.mean, "Constant added to every entry")->capture_default_str();
  gen->add_option("--seed", go.seed, "Seed")->capture_default_str();
  gen->add_option("-o,--output", go.output, "Output path, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const std::pair<CLI::App*, const std::string*> configs[] = {
        {sim, &sim_config}, {ci_cmd, &ci_config}, {test_cmd, &test_config}, {gen, &gen_config}};
    for (const auto& [cmd, path] : configs) {
      if (*cmd && !path->empty()) ApplyConfigFile(cmd, *path);
    }
    if ((*ci_cmd && ci_opt.input.empty()) || (*test_cmd && test_opt.input.empty())) {
      throw UsageError("--input is required");
    }
    if (*test_cmd && test_opt.mu0.empty()) throw UsageError("--mu0 is required");
    if (*table1_cmd) RunTable1(t1, manifest);
    else if (*sim) RunSimulate(so, rho_opt->count() > 0, b_opt->count() > 0, a_opt->count() > 0, manifest);
    else if (*ci_cmd) RunCi(ci_opt, manifest);
    else if (*test_cmd) RunTest(test_opt, manifest);
    else if (*gen) RunGenerate(go, manifest);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitData;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitData;
  } catch (const blocknorm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
