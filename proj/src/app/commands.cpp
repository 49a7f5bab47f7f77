// Copyright 2026 The Consilience Authors
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

#include "consilience/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "consilience/config.hpp"
#include "consilience/critical.hpp"
#include "consilience/dataset.hpp"
#include "consilience/error.hpp"
#include "consilience/nullmodels.hpp"
#include "consilience/report.hpp"
#include "consilience/svg.hpp"

namespace consilience {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kSeedEnv = "CONSILIENCE_SEED";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << contents;
}

std::uint64_t parse_seed_text(const std::string& text, const char* origin) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string(origin) + " seed '" + text +
                     "' is not a non-negative integer");
  }
  return v;
}

struct SeedChoice {
  std::optional<std::uint64_t> seed;
  std::string source;
};

// --seed, then the config file, then CONSILIENCE_SEED.
SeedChoice choose_seed(const std::optional<std::string>& flag,
                       const AnalysisConfig& config) {
  if (flag) return {parse_seed_text(*flag, "--seed"), "flag"};
  if (config.seed) return {config.seed, "config"};
  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    return {parse_seed_text(env, kSeedEnv), "environment"};
  }
  return {std::nullopt, "none"};
}

// Common inputs of the data-driven subcommands.
struct DataOptions {
  std::string data_path;
  std::optional<std::string> config_path;
  std::optional<std::string> scalar;
  std::optional<std::size_t> max_rows;
  std::string out_dir = ".";
};

void add_data_options(CLI::App* cmd, DataOptions& o) {
  cmd->add_option("data", o.data_path, "input CSV")->required();
  cmd->add_option("--config", o.config_path, "JSON sidecar config");
  cmd->add_option("--scalar", o.scalar, "error scalar: stdev|iqr|mean|median");
  cmd->add_option("--max-rows", o.max_rows, "maximum number of data rows");
  cmd->add_option("--out-dir", o.out_dir, "directory for output files");
}

struct LoadedData {
  AnalysisConfig config;
  Dataset dataset;
  std::string digest;
};

LoadedData load(const DataOptions& o) {
  AnalysisConfig config =
      o.config_path ? parse_config_file(*o.config_path) : AnalysisConfig{};
  if (o.scalar) config.scalar = parse_scalar_kind(*o.scalar);
  if (o.max_rows) config.max_rows = *o.max_rows;
  const auto bytes = read_file(o.data_path);
  std::istringstream in(bytes);
  auto dataset = apply_config(parse_dataset(in, {config.max_rows}), config);
  return {config, std::move(dataset), input_digest(bytes)};
}

int cmd_analyze(const DataOptions& o, const std::optional<std::string>& seed,
                std::ostream& out) {
  auto data = load(o);
  const auto choice = choose_seed(seed, data.config);
  data.config.seed = choice.seed;
  const auto report = analyze(data.dataset, data.config, data.digest);
  const auto text = to_text(report);
  write_file(fs::path(o.out_dir) / "report.json", to_json(report).dump(2) + "\n");
  write_file(fs::path(o.out_dir) / "report.txt", text);
  out << text;
  return kExitOk;
}

struct NullOptions {
  std::string kind = "randnorm";
  std::optional<std::size_t> reps;
  std::optional<std::string> seed;
  unsigned threads = 1;
  std::string clip_mode = "clamp";
  double clip_lo = 0.001;
  double clip_hi = 0.999;
};

int cmd_null(const DataOptions& o, const NullOptions& n, std::ostream& out) {
  const auto data = load(o);
  NullSpec spec;
  spec.kind = parse_null_kind(n.kind);
  spec.replicates = n.reps.value_or(data.config.replicates);
  spec.threads = n.threads;
  spec.clip = {n.clip_lo, n.clip_hi,
               n.clip_mode == "truncate" ? ClipMode::kTruncate : ClipMode::kClamp};
  if (n.clip_mode != "clamp" && n.clip_mode != "truncate") {
    throw UsageError("--clip-mode must be clamp or truncate");
  }
  auto choice = choose_seed(n.seed, data.config);
  if (!choice.seed) {
    std::random_device rd;
    choice.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    choice.source = "generated";
  }
  spec.seed = *choice.seed;

  const auto observed = analyze(data.dataset, data.config, data.digest);
  NullReport report;
  report.input_digest = data.digest;
  report.spec = spec;
  report.seed_source = choice.source;
  report.scalar = data.config.scalar;
  report.m = data.dataset.size();
  report.effn = observed.weights.effn;
  report.observed_c = observed.joint_c;
  report.distribution =
      null_distribution(data.dataset, spec, data.config.scalar,
                        data.config.overlap_policy);

  const auto summary = to_json(report);
  write_file(fs::path(o.out_dir) / "null_c_values.csv",
             null_values_csv(report.distribution));
  write_file(fs::path(o.out_dir) / "null_summary.json", summary.dump(2) + "\n");
  out << "null " << to_string(spec.kind) << "  replicates " << spec.replicates
      << "  seed " << spec.seed << " (" << choice.source << ")\n";
  out << "mean C " << format6(report.distribution.mean_c()) << "  observed C "
      << format6(report.observed_c) << "  empirical p "
      << format6(summary.at("empirical_p").get<double>()) << "\n";
  for (const auto& [p, q] : summary.at("quantiles").items()) {
    out << "  q(" << p << ") = " << format6(q.get<double>()) << "\n";
  }
  return kExitOk;
}

int cmd_enumerate(const DataOptions& o, const std::optional<std::string>& only,
                  std::ostream& out) {
  const auto data = load(o);
  json results = json::array();
  bool matched = false;
  for (const auto& s : data.dataset.all_series()) {
    if (only && s.name != *only) continue;
    matched = true;
    const auto yobs = s.observed();
    RandMixMeans m;
    try {
      m = enumerate_randmix(yobs, data.config.scalar);
    } catch (const DegenerateError& e) {
      throw DegenerateError(e.kind(), "series '" + s.name + "': " + e.what());
    }
    out << s.name << ": n = " << yobs.size() << ", " << m.permutations
        << " pairings" << (m.has_ties ? " (ties present)" : "") << "\n";
    out << "  mean MSEsys = " << format6(m.means.mse_sys)
        << "  mean MSEran = " << format6(m.means.mse_ran)
        << "  mean MSEtot = " << format6(m.means.mse_tot) << "\n";
    out << "  mean C = " << format6(m.means.c)
        << "  mean R^2 = " << format6(m.mean_r_squared) << "\n";
    results.push_back({{"name", s.name},
                       {"n", yobs.size()},
                       {"permutations", m.permutations},
                       {"has_ties", m.has_ties},
                       {"mean_mse_sys", m.means.mse_sys},
                       {"mean_mse_ran", m.means.mse_ran},
                       {"mean_mse_tot", m.means.mse_tot},
                       {"mean_c", m.means.c},
                       {"mean_r_squared", m.mean_r_squared}});
  }
  if (!matched) throw UsageError("no series named '" + only.value_or("") + "'");
  json j = {{"tool", "consilience"},
            {"version", std::string(kVersion)},
            {"provenance", {{"input_digest", data.digest}}},
            {"scalar", std::string(to_string(data.config.scalar))},
            {"series", results}};
  write_file(fs::path(o.out_dir) / "enumerate.json", j.dump(2) + "\n");
  return kExitOk;
}

struct CriticalOptions {
  std::vector<double> alphas;
  std::optional<double> mn;
  std::optional<double> m;
  std::optional<double> effn;
  std::optional<double> c;
  std::optional<std::string> nomogram_path;
};

int cmd_critical(const CriticalOptions& o, std::ostream& out) {
  if (o.nomogram_path) {
    std::ostringstream csv;
    csv << "m_effn";
    for (const auto& l : kCriticalLevels) csv << ",alpha_" << format6(l.alpha);
    csv << '\n';
    char buf[40];
    for (const auto& row : nomogram()) {
      std::snprintf(buf, sizeof(buf), "%.17g", row.m_effn);
      csv << buf;
      for (double v : row.critical) {
        std::snprintf(buf, sizeof(buf), ",%.17g", v);
        csv << buf;
      }
      csv << '\n';
    }
    write_file(*o.nomogram_path, csv.str());
    out << "nomogram written to " << *o.nomogram_path << "\n";
    if (!o.mn && !o.m && !o.effn) return kExitOk;
  }

  double m = 1.0;
  double effn = 0.0;
  if (o.mn) {
    if (o.m || o.effn) throw UsageError("use either --mn or --m/--effn, not both");
    effn = *o.mn;
  } else if (o.effn) {
    m = o.m.value_or(1.0);
    effn = *o.effn;
  } else {
    throw UsageError("critical needs --mn or --effn");
  }

  std::vector<double> alphas = o.alphas;
  if (alphas.empty()) {
    for (const auto& l : kCriticalLevels) alphas.push_back(l.alpha);
  }
  if (!in_calibrated_range(m * effn)) {
    out << "warning: M*effN = " << format6(m * effn)
        << " is outside the calibrated range\n";
  }
  for (double a : alphas) {
    out << "alpha " << format6(a) << "  M*effN " << format6(m * effn)
        << "  critical C " << format6(critical_c(a, m, effn)) << "\n";
  }
  if (o.c) {
    const auto b = significance_bracket(*o.c, m, effn);
    out << "C " << format6(*o.c) << ": ";
    if (b.significant_at) out << "p <= " << format6(*b.significant_at);
    if (b.significant_at && b.not_significant_at) out << ", ";
    if (b.not_significant_at) out << "p > " << format6(*b.not_significant_at);
    if (b.near_alpha) out << " (~" << format6(*b.near_alpha) << ")";
    out << "\n";
  }
  return kExitOk;
}

int cmd_compare(const DataOptions& o, std::ostream& out) {
  const auto data = load(o);
  const auto report = compare(data.dataset, data.config.scalar, data.digest);
  const auto text = to_text(report);
  write_file(fs::path(o.out_dir) / "compare.json", to_json(report).dump(2) + "\n");
  write_file(fs::path(o.out_dir) / "compare.txt", text);
  out << text;
  return kExitOk;
}

int cmd_plot(const std::string& report_path, const std::string& out_dir,
             std::ostream& out) {
  json report;
  try {
    report = json::parse(read_file(report_path));
  } catch (const json::exception& e) {
    throw ParseError("report '" + report_path + "' is not valid JSON: " + e.what());
  }
  try {
    for (const auto& s : report.at("series")) {
      std::string name = s.at("name").get<std::string>();
      for (auto& ch : name) {
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
      }
      const auto path = fs::path(out_dir) / (name + "_scatter.svg");
      write_file(path, scatter_svg(s));
      out << "wrote " << path.string() << "\n";
    }
    const auto path = fs::path(out_dir) / "nomogram.svg";
    write_file(path, nomogram_svg(report));
    out << "wrote " << path.string() << "\n";
  } catch (const json::exception& e) {
    throw ParseError("report '" + report_path + "' is missing fields: " + e.what());
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Consilience goodness-of-fit analysis", "consilience"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  DataOptions analyze_opts, null_opts, enum_opts, compare_opts;
  std::optional<std::string> analyze_seed;
  NullOptions null_extra;
  std::optional<std::string> enum_series;
  CriticalOptions crit;
  std::string plot_report, plot_out = ".";

  auto* analyze_cmd = app.add_subcommand("analyze", "decompose errors, weight, score C and joint C");
  add_data_options(analyze_cmd, analyze_opts);
  analyze_cmd->add_option("--seed", analyze_seed, "seed recorded in provenance");

  auto* null_cmd = app.add_subcommand("null", "sample the null distribution of C / joint C");
  add_data_options(null_cmd, null_opts);
  null_cmd->add_option("--kind", null_extra.kind, "randnorm or randmix");
  null_cmd->add_option("--reps", null_extra.reps, "number of replicates");
  null_cmd->add_option("--seed", null_extra.seed, "RNG seed (falls back to CONSILIENCE_SEED)");
  null_cmd->add_option("--threads", null_extra.threads, "worker threads");
  null_cmd->add_option("--clip-mode", null_extra.clip_mode, "clamp or truncate");
  null_cmd->add_option("--clip-lo", null_extra.clip_lo, "lower probability clip");
  null_cmd->add_option("--clip-hi", null_extra.clip_hi, "upper probability clip");

  auto* enum_cmd = app.add_subcommand("enumerate", "exact RandMix means over all pairings (n <= 8)");
  add_data_options(enum_cmd, enum_opts);
  enum_cmd->add_option("--series", enum_series, "only this series");

  auto* crit_cmd = app.add_subcommand("critical", "critical C from the empirical curves");
  crit_cmd->add_option("--alpha", crit.alphas, "tabulated alpha (repeatable)");
  crit_cmd->add_option("--mn", crit.mn, "product M*effN");
  crit_cmd->add_option("--m", crit.m, "number of responses M");
  crit_cmd->add_option("--effn", crit.effn, "effective N");
  crit_cmd->add_option("--c", crit.c, "observed C to bracket");
  crit_cmd->add_option("--nomogram", crit.nomogram_path, "write nomogram CSV here");

  auto* compare_cmd = app.add_subcommand("compare", "conventional tests alongside C");
  add_data_options(compare_cmd, compare_opts);

  auto* plot_cmd = app.add_subcommand("plot", "SVG plots from an analyze report");
  plot_cmd->add_option("report", plot_report, "report.json from analyze")->required();
  plot_cmd->add_option("--out-dir", plot_out, "directory for SVG files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze_opts, analyze_seed, out);
    if (*null_cmd) return cmd_null(null_opts, null_extra, out);
    if (*enum_cmd) return cmd_enumerate(enum_opts, enum_series, out);
    if (*crit_cmd) return cmd_critical(crit, out);
    if (*compare_cmd) return cmd_compare(compare_opts, out);
    if (*plot_cmd) return cmd_plot(plot_report, plot_out, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DegenerateError& e) {
    err << "degenerate data (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace consilience
