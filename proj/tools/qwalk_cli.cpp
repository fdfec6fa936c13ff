// Copyright 2026 The qwalk Authors
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

// qwalk command-line driver.
//
//   qwalk walk    --theta 51 --phi 0 --steps 20 --sequence FFHFHFHHFFFFFHFHHHHH --out run
//   qwalk entropy --theta 51 --phi 0 90 180 --steps 1024 --ordered H --tail-window 64 --out run
//   qwalk sweep   --n 20 --theta 51 --out run
//   qwalk lz      --input data/lz_sequences.txt --out run
//   qwalk fit     --theta 51 --steps 20 --ordered H --out run
//   qwalk tomo    --theta 51 --steps 20 --ordered H --counts 24000 --counts-seed 1 --out run
//
// Every subcommand also reads a flat key = value config file via --config.
// Keys are the long option names and schema_version = 1 is required. Flags
// given on the command line take precedence over the file.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/io.hpp"
#include "qwalk/sequence.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qwalk;

namespace {

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string out;
  bool force = false;
  std::string format = "both";

  double theta = 0.0;
  std::vector<double> phi{0.0};
  int steps = 0;
  std::string ordered;
  std::string sequence;
  std::string random;
  std::uint64_t seed = 0;
  std::uint64_t dynamic_seed = 1;

  bool eigenvalues = false;
  int tail_window = 0;

  int n = 0;
  int bins = 12;
  double threshold = 0.9;
  std::uint64_t samples = 0;
  int workers = 0;
  int top = 64;
  bool lz_correlation = false;
  std::string measured;

  std::string input;

  std::string series;
  bool classical = false;
  int ensemble = 256;
  int t_min = 1;
  int t_max = -1;
  std::string method = "nlls";

  std::int64_t counts = 24000;
  std::uint64_t counts_seed = 0;
  bool noiseless = false;
};

// Left out of the config echo: they do not affect results.
const std::set<std::string> kNotEchoed = {"help", "config", "out", "force", "workers", "format"};

// Options of which at most one may be given; a command-line choice replaces the file's.
const std::vector<std::set<std::string>> kExclusive = {{"ordered", "sequence", "random"}, {"series", "classical"}};

void add_common(CLI::App* sub, Options& o, bool strict) {
  sub->add_option("--config", o.config, "Flat key = value config file")->check(CLI::ExistingFile);
  auto* out = sub->add_option("--out", o.out, "Output directory");
  if (strict) out->required();
  sub->add_flag("--force", o.force, "Overwrite existing output files");
  sub->add_option("--format", o.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
}

void add_init(CLI::App* sub, Options& o, bool many_phi) {
  sub->add_option("--theta", o.theta, "Initial coin polar angle, degrees")->capture_default_str();
  auto* phi = sub->add_option("--phi", o.phi, many_phi ? "Initial coin phases, degrees" : "Initial coin phase, degrees")
                  ->capture_default_str();
  if (!many_phi) phi->expected(1);
}

void add_policy(CLI::App* sub, Options& o) {
  sub->add_option("--steps", o.steps, "Number of steps (default: sequence length)");
  auto* ord = sub->add_option("--ordered", o.ordered, "Same coin at every step")->check(CLI::IsMember({"H", "F"}));
  auto* seq = sub->add_option("--sequence", o.sequence, "Coin sequence over {F, H}");
  auto* rnd = sub->add_option("--random", o.random, "Random disorder")
                  ->check(CLI::IsMember({"dynamic", "static", "static-dynamic"}));
  ord->excludes(seq)->excludes(rnd);
  seq->excludes(rnd);
  sub->add_option("--seed", o.seed, "Disorder seed (site seed for static-dynamic)")->capture_default_str();
  sub->add_option("--dynamic-seed", o.dynamic_seed, "Step seed for static-dynamic")->capture_default_str();
}

void build(CLI::App& app, Options& o, bool strict) {
  app.require_subcommand(1);

  auto* walk = app.add_subcommand("walk", "Evolve a walk and write its trajectory and final distribution");
  add_common(walk, o, strict);
  add_init(walk, o, false);
  add_policy(walk, o);

  auto* entropy = app.add_subcommand("entropy", "Entanglement entropy curves, one per initial phase");
  add_common(entropy, o, strict);
  add_init(entropy, o, true);
  add_policy(entropy, o);
  entropy->add_flag("--eigenvalues", o.eigenvalues, "Also write reduced-density eigenvalues");
  entropy->add_option("--tail-window", o.tail_window, "Report the mean of the last N points")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Entropy statistics over coin-sequence space");
  add_common(sweep, o, strict);
  add_init(sweep, o, false);
  auto* n = sweep->add_option("--n", o.n, "Sequence length");
  if (strict) n->required();
  sweep->add_option("--bins", o.bins, "Histogram bins over [0, 1]")->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--threshold", o.threshold, "Entropy threshold")->capture_default_str();
  sweep->add_option("--samples", o.samples, "Random samples, 0 enumerates all")->capture_default_str();
  sweep->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  sweep->add_option("--workers", o.workers, "Worker threads, 0 uses all cores")->check(CLI::NonNegativeNumber);
  sweep->add_option("--top", o.top, "Best sequences to keep")->check(CLI::NonNegativeNumber)->capture_default_str();
  sweep->add_flag("--lz-correlation", o.lz_correlation, "Rank correlation of LZ complexity with entropy");
  sweep->add_option("--measured", o.measured, "Measured entropies for the interval-weighted mean")
      ->check(CLI::ExistingFile);

  auto* lz = app.add_subcommand("lz", "Lempel-Ziv complexity of a list of sequences");
  add_common(lz, o, strict);
  auto* input = lz->add_option("--input", o.input, "One sequence per line, optionally followed by its expected value")
                    ->check(CLI::ExistingFile);
  if (strict) input->required();

  auto* fit = app.add_subcommand("fit", "Power-law fit of the second moment");
  add_common(fit, o, strict);
  add_init(fit, o, false);
  add_policy(fit, o);
  auto* series = fit->add_option("--series", o.series, "Moment table with header t,m2")->check(CLI::ExistingFile);
  auto* classical = fit->add_flag("--classical", o.classical, "Fit the classical random walk m2 = t");
  series->excludes(classical);
  fit->add_option("--ensemble", o.ensemble, "Walks averaged for random disorder")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit->add_option("--t-min", o.t_min, "First step of the fit window")->capture_default_str();
  fit->add_option("--t-max", o.t_max, "Last step of the fit window, -1 for the end")->capture_default_str();
  fit->add_option("--method", o.method, "nlls or loglog")->check(CLI::IsMember({"nlls", "loglog"}))->capture_default_str();

  auto* tomo = app.add_subcommand("tomo", "Emulated projective tomography of the final walk state");
  add_common(tomo, o, strict);
  add_init(tomo, o, false);
  add_policy(tomo, o);
  tomo->add_option("--counts", o.counts, "Total detection events")->capture_default_str();
  tomo->add_option("--counts-seed", o.counts_seed, "Seed of the counting noise")->capture_default_str();
  tomo->add_flag("--noiseless", o.noiseless, "Use expected counts");
}

CLI::App* selected(CLI::App& app) {
  auto subs = app.get_subcommands();
  return subs.empty() ? nullptr : subs.front();
}

bool given(CLI::App* sub, const std::string& name) {
  const auto* opt = sub->get_option_no_throw("--" + name);
  return opt != nullptr && opt->count() > 0;
}

// Turns config file entries into command-line tokens for options not already given.
std::vector<std::string> config_tokens(CLI::App* sub, const std::string& path) {
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::ParseError& e) {
    throw UsageError("config: " + std::string(e.what()));
  }
  bool have_version = false;
  std::vector<std::string> tokens;
  std::set<std::string> seen;
  for (const auto& item : items) {
    if (!item.parents.empty()) throw UsageError("config: sections are not supported ('" + item.fullname() + "')");
    const std::string& key = item.name;
    if (!seen.insert(key).second) throw UsageError("config: duplicate key '" + key + "'");
    if (key == "schema_version") {
      if (item.inputs.size() != 1 || item.inputs[0] != std::to_string(kSchemaVersion)) {
        throw UsageError("config: unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
      }
      have_version = true;
      continue;
    }
    const auto* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config" || key == "help") {
      throw UsageError("config: unknown key '" + key + "' for " + sub->get_name());
    }
    if (opt->count() > 0) continue;
    bool overridden = false;
    for (const auto& group : kExclusive) {
      if (!group.count(key)) continue;
      for (const auto& other : group) overridden |= given(sub, other);
    }
    if (overridden) continue;
    if (opt->get_type_size() == 0) {
      if (item.inputs.size() != 1) throw UsageError("config: '" + key + "' takes true or false");
      const bool on = CLI::detail::to_flag_value(item.inputs[0]) > 0;
      if (on) tokens.push_back("--" + key);
      continue;
    }
    tokens.push_back("--" + key);
    tokens.insert(tokens.end(), item.inputs.begin(), item.inputs.end());
  }
  if (!have_version) throw UsageError("config: missing schema_version");
  return tokens;
}

json typed(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  try {
    std::size_t used = 0;
    if (s.find_first_of(".eEn") == std::string::npos) {
      if (!s.empty() && s[0] == '-') {
        const long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
      } else {
        const unsigned long long v = std::stoull(s, &used);
        if (used == s.size()) return v;
      }
    }
    const double d = std::stod(s, &used);
    if (used == s.size()) return d;
  } catch (const std::logic_error&) {
  }
  return s;
}

// Effective settings of every result-affecting option, as JSON.
json config_echo(CLI::App* sub) {
  json cfg = json::object();
  cfg["schema_version"] = kSchemaVersion;
  cfg["command"] = sub->get_name();
  for (const auto* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (kNotEchoed.count(name)) continue;
    if (opt->get_type_size() == 0) {
      cfg[name] = opt->count() > 0 && opt->as<bool>();
      continue;
    }
    std::vector<std::string> values = opt->results();
    if (values.empty()) {
      if (opt->get_default_str().empty()) continue;
      values = CLI::detail::split_up(opt->get_default_str());
      if (values.size() == 1 && values[0].front() == '[') {
        std::string inner = values[0].substr(1, values[0].size() - 2);
        values = CLI::detail::split(inner, ',');
        for (auto& v : values) v = CLI::detail::trim_copy(v);
      }
    }
    if (opt->get_expected_max() > 1) {
      json arr = json::array();
      for (const auto& v : values) arr.push_back(typed(v));
      cfg[name] = arr;
    } else {
      cfg[name] = typed(values.back());
    }
  }
  return cfg;
}

// The echo in config-file form; feeding it back with --config reproduces the run.
std::string config_file_text(const json& cfg) {
  std::ostringstream os;
  os << "schema_version = " << kSchemaVersion << '\n';
  for (const auto& [key, value] : cfg.items()) {
    if (key == "schema_version" || key == "command") continue;
    os << key << " = " << value.dump() << '\n';
  }
  return os.str();
}

class Outputs {
 public:
  Outputs(const Options& o, std::string echo_name)
      : dir_(o.out), force_(o.force), csv_(o.format != "json"), json_(o.format != "csv"), echo_(std::move(echo_name)) {}

  bool csv() const { return csv_; }
  bool json_enabled() const { return json_; }

  // Fails before any compute if a planned file exists and --force is absent.
  void plan(std::vector<std::string> names) {
    names_ = std::move(names);
    names_.push_back(echo_);
    for (const auto& name : names_) {
      if (!force_ && fs::exists(dir_ / name)) {
        throw UsageError("output " + (dir_ / name).string() + " exists (use --force to overwrite)");
      }
    }
  }

  void write(const std::string& name, const std::string& text) {
    fs::create_directories(dir_);
    const fs::path path = dir_ / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    f.close();
    if (!f) throw std::runtime_error("cannot write " + path.string());
    written_.push_back(path.string());
  }

  const std::vector<std::string>& written() const { return written_; }

 private:
  fs::path dir_;
  bool force_;
  bool csv_;
  bool json_;
  std::string echo_;
  std::vector<std::string> names_;
  std::vector<std::string> written_;
};

template <typename Writer>
std::string to_text(Writer&& w) {
  std::ostringstream os;
  w(os);
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

InitialCoin init_of(const Options& o, double phi) {
  InitialCoin init{o.theta, phi};
  try {
    init.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return init;
}

InitialCoin single_init(const Options& o) { return init_of(o, o.phi.front()); }

// Resolves the policy flags; fills in `steps` from a sequence when not given.
CoinPolicy policy_of(const Options& o, int& steps) {
  steps = o.steps;
  CoinPolicy policy = Ordered{hadamard_coin()};
  if (!o.sequence.empty()) {
    CoinSequence seq;
    try {
      seq = parse_sequence(o.sequence);
    } catch (const SequenceParseError& e) {
      throw UsageError(e.what());
    }
    if (steps == 0) steps = seq.size();
    if (steps != seq.size()) {
      throw UsageError("--steps " + std::to_string(steps) + " does not match sequence length " +
                       std::to_string(seq.size()));
    }
    policy = DynamicSequence{seq};
  } else if (o.random == "dynamic") {
    policy = DynamicRandom{default_alphabet(), o.seed};
  } else if (o.random == "static") {
    policy = StaticRandom{default_alphabet(), o.seed};
  } else if (o.random == "static-dynamic") {
    policy = StaticAndDynamic{default_alphabet(), o.seed, o.dynamic_seed};
  } else if (o.ordered == "F") {
    policy = Ordered{fourier_coin()};
  }
  if (steps < 1) throw UsageError("--steps must be at least 1");
  return policy;
}

json run_walk(const Options& o, Outputs& out, const json& cfg) {
  const InitialCoin init = single_init(o);
  int steps = 0;
  const CoinPolicy policy = policy_of(o, steps);
  std::vector<std::string> files;
  if (out.csv()) files.insert(files.end(), {"trajectory.csv", "distribution.csv"});
  if (out.json_enabled()) files.push_back("walk.json");
  out.plan(files);

  const auto traj = evolve(init, policy, steps);
  const auto dist = position_distribution(traj.back());
  dist.validate(1e-9);
  const json summary = {{"steps", steps},
                        {"total_probability", io::round12(dist.total())},
                        {"m2", io::round12(second_moment(dist))},
                        {"entropy", io::round12(von_neumann_entropy(reduced_coin_density(traj.back())))}};
  if (out.csv()) {
    out.write("trajectory.csv", to_text([&](std::ostream& os) { io::write_trajectory_csv(os, traj); }));
    out.write("distribution.csv", to_text([&](std::ostream& os) { io::write_distribution_csv(os, dist); }));
  }
  if (out.json_enabled()) {
    out.write("walk.json", dump({{"config", cfg},
                                 {"summary", summary},
                                 {"distribution", io::distribution_json(dist)},
                                 {"trajectory", io::trajectory_json(traj)}}));
  }
  return summary;
}

json run_entropy(const Options& o, Outputs& out, const json& cfg) {
  int steps = 0;
  const CoinPolicy policy = policy_of(o, steps);
  if (o.tail_window > steps) throw UsageError("--tail-window exceeds --steps");
  std::vector<InitialCoin> inits;
  std::vector<std::string> files;
  for (double phi : o.phi) {
    inits.push_back(init_of(o, phi));
    if (out.csv()) files.push_back("entropy_phi" + io::format_double(phi) + ".csv");
  }
  if (out.json_enabled()) files.push_back("entropy.json");
  out.plan(files);

  json curves = json::array();
  json summary = json::array();
  for (std::size_t k = 0; k < inits.size(); ++k) {
    const auto curve = entropy_curve(inits[k], policy, steps);
    json s = {{"init", io::init_json(inits[k])}, {"final_entropy", io::round12(curve.back().entropy)}};
    if (o.tail_window > 0) {
      s["tail_average"] = io::round12(tail_average(curve, steps - o.tail_window + 1, steps));
      s["tail_window"] = {steps - o.tail_window + 1, steps};
    }
    summary.push_back(s);
    if (out.csv()) {
      out.write(files[k], to_text([&](std::ostream& os) { io::write_entropy_csv(os, curve, o.eigenvalues); }));
    }
    curves.push_back({{"init", io::init_json(inits[k])}, {"points", io::entropy_json(curve)}});
  }
  if (out.json_enabled()) out.write("entropy.json", dump({{"config", cfg}, {"summary", summary}, {"curves", curves}}));
  return summary;
}

std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  std::vector<double> v;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (tok.front() == '#') break;
      try {
        std::size_t used = 0;
        v.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw UsageError(path + ":" + std::to_string(row) + ": not a number '" + tok + "'");
      }
    }
  }
  return v;
}

json run_sweep(const Options& o, Outputs& out, const json& cfg) {
  const InitialCoin init = single_init(o);
  SweepOptions opt;
  opt.bin_edges = uniform_bin_edges(o.bins);
  opt.threshold = o.threshold;
  opt.workers = o.workers;
  opt.keep_top = o.top;
  opt.lz_correlation = o.lz_correlation;
  std::vector<double> measured;
  if (!o.measured.empty()) measured = read_values(o.measured);
  std::vector<std::string> files;
  if (out.csv()) files.insert(files.end(), {"histogram.csv", "top.csv"});
  if (out.json_enabled()) files.push_back("sweep.json");
  out.plan(files);

  const SweepReport r = o.samples == 0 ? exhaustive_sweep(init, o.n, opt) : sampled_sweep(init, o.n, o.samples, o.seed, opt);
  json report = io::sweep_json(r);
  if (!measured.empty()) report["interval_weighted_entropy"] = io::round12(interval_weighted_entropy(r, measured));
  if (out.csv()) {
    out.write("histogram.csv", to_text([&](std::ostream& os) {
                const auto rates = r.bin_rates();
                os << "lower,upper,count,rate\n";
                for (std::size_t k = 0; k < r.bin_counts.size(); ++k) {
                  os << io::format_double(r.bin_edges[k]) << ',' << io::format_double(r.bin_edges[k + 1]) << ','
                     << r.bin_counts[k] << ',' << io::format_double(rates[k]) << '\n';
                }
              }));
    out.write("top.csv", to_text([&](std::ostream& os) {
                os << "rank,sequence,entropy\n";
                for (std::size_t k = 0; k < r.top.size(); ++k) {
                  os << k + 1 << ',' << r.top[k].sequence.text() << ',' << io::format_double(r.top[k].entropy) << '\n';
                }
              }));
  }
  if (out.json_enabled()) out.write("sweep.json", dump({{"config", cfg}, {"report", report}}));
  json summary = {{"count", r.count},
                  {"mean", report["mean"]},
                  {"fraction_above", report["fraction_above"]},
                  {"wall_seconds", r.wall_seconds}};
  return summary;
}

json run_lz(const Options& o, Outputs& out, const json& cfg) {
  std::ifstream in(o.input);
  std::vector<io::FixtureEntry> entries;
  try {
    entries = io::read_sequence_fixture(in);
  } catch (const SequenceParseError& e) {
    throw UsageError(o.input + ": " + e.what());
  }
  if (entries.empty()) throw UsageError(o.input + ": no sequences");
  std::vector<std::string> files;
  if (out.csv()) files.push_back("lz.csv");
  if (out.json_enabled()) files.push_back("lz.json");
  out.plan(files);

  json rows = json::array();
  std::ostringstream csv;
  csv << "index,sequence,complexity,expected,parse\n";
  int mismatches = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const auto words = lz_parse(e.sequence);
    std::string parse;
    for (const auto& w : words) parse += w + ".";
    const int c = static_cast<int>(words.size());
    json row = {{"index", k + 1}, {"sequence", e.sequence.text()}, {"complexity", c}, {"parse", parse}};
    csv << k + 1 << ',' << e.sequence.text() << ',' << c << ',';
    if (e.expected_lz) {
      row["expected"] = *e.expected_lz;
      row["matches"] = *e.expected_lz == c;
      mismatches += *e.expected_lz != c;
      csv << *e.expected_lz;
    }
    csv << ',' << parse << '\n';
    rows.push_back(row);
  }
  if (out.csv()) out.write("lz.csv", csv.str());
  if (out.json_enabled()) out.write("lz.json", dump({{"config", cfg}, {"sequences", rows}}));
  return {{"sequences", entries.size()}, {"mismatches", mismatches}};
}

MomentSeries averaged(const std::function<MomentSeries(int)>& one, int walks) {
  MomentSeries mean = one(0);
  for (int k = 1; k < walks; ++k) {
    const auto s = one(k);
    for (std::size_t t = 0; t < mean.size(); ++t) mean[t].m2 += s[t].m2;
  }
  for (auto& p : mean) p.m2 /= walks;
  return mean;
}

json run_fit(const Options& o, Outputs& out, const json& cfg) {
  const FitMethod method = o.method == "loglog" ? FitMethod::LogLog : FitMethod::NonlinearLeastSquares;
  MomentSeries series;
  std::string source;
  if (!o.series.empty()) {
    std::ifstream in(o.series);
    try {
      series = io::read_moment_csv(in);
    } catch (const std::runtime_error& e) {
      throw UsageError(o.series + ": " + e.what());
    }
    source = "file";
  } else if (o.classical) {
    if (o.steps < 1) throw UsageError("--steps must be at least 1");
    series = classical_baseline(o.steps);
    source = "classical";
  }
  std::vector<std::string> files;
  if (out.csv()) files.insert(files.end(), {"moments.csv", "fit.csv"});
  if (out.json_enabled()) files.push_back("fit.json");
  out.plan(files);

  if (source.empty()) {
    const InitialCoin init = single_init(o);
    int steps = 0;
    const CoinPolicy policy = policy_of(o, steps);
    if (o.random == "dynamic") {
      series = ensemble_moment_series(init, default_alphabet(), steps, o.ensemble, o.seed);
      source = "ensemble";
    } else if (o.random == "static") {
      series = averaged(
          [&](int k) { return moment_series(init, StaticRandom{default_alphabet(), o.seed + k}, steps); }, o.ensemble);
      source = "ensemble";
    } else if (o.random == "static-dynamic") {
      series = averaged(
          [&](int k) {
            return moment_series(init, StaticAndDynamic{default_alphabet(), o.seed + k, o.dynamic_seed + k}, steps);
          },
          o.ensemble);
      source = "ensemble";
    } else {
      series = moment_series(init, policy, steps);
      source = "walk";
    }
  }
  const PowerLawFit fit = fit_power_law(series, o.t_min, o.t_max, method);
  if (out.csv()) {
    out.write("moments.csv", to_text([&](std::ostream& os) { io::write_moment_csv(os, series); }));
    out.write("fit.csv", "prefactor,exponent,residual,t_min,t_max,points,method\n" + io::format_double(fit.prefactor) +
                             ',' + io::format_double(fit.exponent) + ',' + io::format_double(fit.residual) + ',' +
                             std::to_string(fit.t_min) + ',' + std::to_string(fit.t_max) + ',' +
                             std::to_string(fit.points) + ',' + to_string(fit.method) + '\n');
  }
  json result = io::fit_json(fit);
  result["source"] = source;
  if (out.json_enabled()) {
    out.write("fit.json", dump({{"config", cfg}, {"fit", result}, {"moments", io::moment_json(series)}}));
  }
  return result;
}

json run_tomo(const Options& o, Outputs& out, const json& cfg) {
  const InitialCoin init = single_init(o);
  int steps = 0;
  const CoinPolicy policy = policy_of(o, steps);
  if (o.counts < 1) throw UsageError("--counts must be at least 1");
  std::vector<std::string> files;
  if (out.csv()) files.insert(files.end(), {"counts.csv", "sites.csv"});
  if (out.json_enabled()) files.push_back("tomography.json");
  out.plan(files);

  const WalkState state = final_state(init, policy, steps);
  const ProjectionCounts counts = simulate_counts(state, o.counts, o.counts_seed, o.noiseless);
  TomographyResult r = reconstruct(state, counts);
  r.seed = o.counts_seed;
  const json tj = io::tomography_json(r);
  if (out.csv()) {
    out.write("counts.csv", to_text([&](std::ostream& os) { io::write_counts_csv(os, counts); }));
    out.write("sites.csv", to_text([&](std::ostream& os) {
                os << "j,probability,fidelity,rho_00,re_rho_01,im_rho_01,rho_11\n";
                for (const auto& s : r.sites) {
                  os << s.site << ',' << io::format_double(s.probability) << ',' << io::format_double(s.fidelity)
                     << ',' << io::format_double(s.rho(0, 0).real()) << ',' << io::format_double(s.rho(0, 1).real())
                     << ',' << io::format_double(s.rho(0, 1).imag()) << ',' << io::format_double(s.rho(1, 1).real())
                     << '\n';
                }
              }));
  }
  if (out.json_enabled()) {
    json doc = tj;
    doc["config"] = cfg;
    out.write("tomography.json", dump(doc));
  }
  return tj["summary"];
}

int fail(const std::string& type, const std::string& message, int code) {
  std::cerr << json{{"error", {{"type", type}, {"message", message}}}}.dump() << '\n';
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  // First pass: find the subcommand, the flags actually given and the config file.
  std::vector<std::string> extra;
  {
    Options probe;
    CLI::App app{"qwalk"};
    build(app, probe, false);
    try {
      app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
      std::cout << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      std::cout << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      return fail("usage", e.what(), 2);
    }
    CLI::App* sub = selected(app);
    if (sub != nullptr && !probe.config.empty()) extra = config_tokens(sub, probe.config);
  }

  // Second pass with config entries placed right after the subcommand name.
  if (!extra.empty()) {
    args.insert(args.begin() + 1, extra.begin(), extra.end());
  }
  Options o;
  CLI::App app{"qwalk"};
  build(app, o, true);
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }
  CLI::App* sub = selected(app);
  const json cfg = config_echo(sub);
  const std::string cmd = sub->get_name();
  Outputs out(o, cmd + ".config.toml");
  json summary;
  if (cmd == "walk") summary = run_walk(o, out, cfg);
  if (cmd == "entropy") summary = run_entropy(o, out, cfg);
  if (cmd == "sweep") summary = run_sweep(o, out, cfg);
  if (cmd == "lz") summary = run_lz(o, out, cfg);
  if (cmd == "fit") summary = run_fit(o, out, cfg);
  if (cmd == "tomo") summary = run_tomo(o, out, cfg);
  out.write(cmd + ".config.toml", config_file_text(cfg));
  std::cout << json{{"command", cmd}, {"summary", summary}, {"files", out.written()}}.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    return fail("usage", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), 1);
  }
}
