// Command-line front end: loads a corpus directory, runs one analysis stage
// and writes deterministic reports plus a run manifest.

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resev/resev.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string input;
  std::string out;
  std::string period;
  long min_outputs = 3;
  double alpha = 0.05;
  std::string indicator = "FQP";
  std::string format = "csv";
  int top_k = 10;
  bool stamp = false;
};

std::optional<resev::Period> parse_period(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw resev::Error("--period must look like Y1:Y2");
  try {
    resev::Period p{std::stoi(text.substr(0, colon)),
                    std::stoi(text.substr(colon + 1))};
    if (p.start_year > p.end_year)
      throw resev::Error("--period start year exceeds end year");
    return p;
  } catch (const std::invalid_argument&) {
    throw resev::Error("--period must look like Y1:Y2");
  }
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw resev::Error("cannot write " + path.string());
  out << content;
}

// Hash of the effective configuration plus all input file bytes; equal
// inputs and flags always produce the same hash.
std::string config_hash(const std::string& command,
                        const std::vector<std::pair<std::string, std::string>>& flags,
                        const std::string& input_dir) {
  std::uint64_t hash = resev::fnv1a(command);
  for (const auto& [name, value] : flags) {
    hash = resev::fnv1a(name, hash);
    hash = resev::fnv1a("=", hash);
    hash = resev::fnv1a(value, hash);
    hash = resev::fnv1a("\n", hash);
  }
  if (!input_dir.empty()) {
    for (const auto& name : resev::kCorpusFiles) {
      const fs::path path = fs::path(input_dir) / name;
      if (!fs::exists(path)) continue;
      std::ifstream in(path, std::ios::binary);
      std::ostringstream bytes;
      bytes << in.rdbuf();
      hash = resev::fnv1a(name, hash);
      hash = resev::fnv1a(bytes.str(), hash);
    }
  }
  return resev::hex64(hash);
}

void write_manifest(const std::string& command, const CommonOptions& opts,
                    const std::vector<std::pair<std::string, std::string>>& flags,
                    const std::vector<std::string>& outputs,
                    const fs::path& manifest_path) {
  resev::RunManifest manifest;
  manifest.tool_version = resev::kVersion;
  manifest.command = command;
  manifest.flags = flags;
  manifest.input = opts.input;
  manifest.config_hash = config_hash(command, flags, opts.input);
  manifest.outputs = outputs;
  if (opts.stamp) manifest.timestamp = utc_timestamp();
  write_file(manifest_path, resev::render_manifest(manifest));
}

// Effective flag list for hashing and the manifest, sorted by name.
std::vector<std::pair<std::string, std::string>> common_flags(
    const CommonOptions& opts) {
  return {{"alpha", resev::format_number(opts.alpha)},
          {"format", opts.format},
          {"indicator", opts.indicator},
          {"input", opts.input},
          {"min_outputs", std::to_string(opts.min_outputs)},
          {"out", opts.out},
          {"period", opts.period},
          {"top_k", std::to_string(opts.top_k)}};
}

resev::ReportFormat report_format(const CommonOptions& opts) {
  auto format = resev::parse_report_format(opts.format);
  if (!format) throw resev::Error("--format must be csv or json");
  return *format;
}

resev::ProductivityKind indicator_kind(const CommonOptions& opts) {
  auto kind = resev::parse_productivity_kind(opts.indicator);
  if (!kind) throw resev::Error("--indicator must be one of P, FP, QP, FQP");
  return *kind;
}

std::string default_name(const std::string& stem, const CommonOptions& opts) {
  return stem + (report_format(opts) == resev::ReportFormat::Json ? ".json"
                                                                  : ".csv");
}

int run_validate(const CommonOptions& opts) {
  const resev::Corpus corpus =
      resev::load_corpus(opts.input, parse_period(opts.period));
  std::cout << "ok: " << corpus.sectors().size() << " sectors, "
            << corpus.journals().size() << " journals, "
            << corpus.researchers().size() << " researchers, "
            << corpus.publications().size() << " publications, "
            << corpus.staff().size() << " staff records, "
            << corpus.submissions().size() << " submissions, "
            << corpus.universities().size() << " universities\n";
  const fs::path manifest_path =
      opts.out.empty() ? fs::path("run_manifest.json") : fs::path(opts.out);
  write_manifest("validate", opts, common_flags(opts), {}, manifest_path);
  return 0;
}

int run_indicators(const CommonOptions& opts) {
  const resev::Corpus corpus =
      resev::load_corpus(opts.input, parse_period(opts.period));
  const resev::QualityIndex quality(corpus);
  const resev::IndicatorTable table(corpus, quality);
  const fs::path out =
      opts.out.empty() ? fs::path(default_name("indicators", opts)) : fs::path(opts.out);
  write_file(out,
             resev::render(resev::indicators_report(table.rows()),
                           report_format(opts)));
  write_manifest("indicators", opts, common_flags(opts), {out.string()},
                 out.string() + ".manifest.json");
  return 0;
}

int run_vtr_score(const CommonOptions& opts) {
  const resev::Corpus corpus =
      resev::load_corpus(opts.input, parse_period(opts.period));
  const fs::path out =
      opts.out.empty() ? fs::path(default_name("vtr_scores", opts)) : fs::path(opts.out);
  write_file(out, resev::render(
                      resev::vtr_report(resev::score_all(corpus), opts.min_outputs),
                      report_format(opts)));
  write_manifest("vtr-score", opts, common_flags(opts), {out.string()},
                 out.string() + ".manifest.json");
  return 0;
}

int run_aggregate(const CommonOptions& opts) {
  const resev::Corpus corpus =
      resev::load_corpus(opts.input, parse_period(opts.period));
  const resev::QualityIndex quality(corpus);
  const resev::IndicatorTable table(corpus, quality);
  const fs::path out = opts.out.empty() ? fs::path(default_name("area_productivity", opts))
                                        : fs::path(opts.out);
  write_file(out, resev::render(resev::area_productivity_report(
                                    resev::all_area_productivity(
                                        table, indicator_kind(opts))),
                                report_format(opts)));
  write_manifest("aggregate", opts, common_flags(opts), {out.string()},
                 out.string() + ".manifest.json");
  return 0;
}

int run_compare(const CommonOptions& opts) {
  const resev::Corpus corpus =
      resev::load_corpus(opts.input, parse_period(opts.period));
  const resev::QualityIndex quality(corpus);
  const resev::IndicatorTable table(corpus, quality);
  const fs::path dir = opts.out.empty() ? fs::path(".") : fs::path(opts.out);
  fs::create_directories(dir);
  const fs::path correlations = dir / default_name("correlations", opts);
  const fs::path variations = dir / default_name("variations", opts);
  write_file(correlations,
             resev::render(resev::correlations_report(
                               resev::compute_correlations(
                                   corpus, quality, table, opts.min_outputs,
                                   opts.alpha)),
                           report_format(opts)));
  write_file(variations,
             resev::render(resev::variations_report(resev::compute_variations(
                               corpus, table, indicator_kind(opts),
                               opts.min_outputs, opts.top_k)),
                           report_format(opts)));
  write_manifest("compare", opts, common_flags(opts),
                 {correlations.string(), variations.string()},
                 dir / "run_manifest.json");
  return 0;
}

int run_audit(const CommonOptions& opts) {
  const resev::Corpus corpus =
      resev::load_corpus(opts.input, parse_period(opts.period));
  const resev::QualityIndex quality(corpus);
  const fs::path out =
      opts.out.empty() ? fs::path(default_name("audit", opts)) : fs::path(opts.out);
  write_file(out,
             resev::render(resev::audit_report(
                               resev::compute_audits(corpus, quality)),
                           report_format(opts)));
  write_manifest("audit", opts, common_flags(opts), {out.string()},
                 out.string() + ".manifest.json");
  return 0;
}

struct SynthOptions {
  CommonOptions common;
  resev::SynthConfig config;
  std::string strategy = "random";
};

int run_synth(SynthOptions& opts) {
  auto strategy = resev::parse_selection_strategy(opts.strategy);
  if (!strategy)
    throw resev::Error(
        "--strategy must be top_by_quality, random or below_median_biased");
  opts.config.selection_strategy = *strategy;
  const resev::Corpus corpus = resev::generate(opts.config);
  const fs::path dir =
      opts.common.out.empty() ? fs::path("synth_corpus") : fs::path(opts.common.out);
  resev::save_corpus(corpus, dir);
  std::vector<std::string> outputs;
  for (const auto& name : resev::kCorpusFiles)
    outputs.push_back((dir / name).string());
  const auto& c = opts.config;
  std::vector<std::pair<std::string, std::string>> flags = {
      {"areas", std::to_string(c.n_areas)},
      {"end_year", std::to_string(c.end_year)},
      {"fraction", resev::format_number(c.submission_fraction)},
      {"if_mu", resev::format_number(c.if_log_mean)},
      {"if_sigma", resev::format_number(c.if_log_sigma)},
      {"journals_per_sector", std::to_string(c.n_journals_per_sector)},
      {"out", dir.string()},
      {"pub_rate", resev::format_number(c.publication_rate)},
      {"researchers", std::to_string(c.n_researchers)},
      {"sectors_per_area", std::to_string(c.n_sectors_per_area)},
      {"seed", std::to_string(c.seed)},
      {"start_year", std::to_string(c.start_year)},
      {"strategy", opts.strategy},
      {"universities", std::to_string(c.n_universities)}};
  write_manifest("synth", opts.common, flags, outputs, dir / "run_manifest.json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"research-assessment analytics over publication corpora"};
  app.require_subcommand(1);

  CommonOptions opts;
  SynthOptions synth_opts;

  auto add_common = [&opts](CLI::App* cmd, bool needs_input) {
    auto* input = cmd->add_option("--input", opts.input, "corpus directory");
    if (needs_input) input->required();
    cmd->add_option("--out", opts.out, "output path");
    cmd->add_option("--period", opts.period, "evaluation period Y1:Y2");
    cmd->add_option("--min-outputs", opts.min_outputs,
                    "minimum submissions for ranking/correlation")->capture_default_str();
    cmd->add_option("--alpha", opts.alpha, "significance level")->capture_default_str();
    cmd->add_option("--indicator", opts.indicator,
                    "productivity indicator: P, FP, QP or FQP")->capture_default_str();
    cmd->add_option("--format", opts.format, "report format: csv or json")->capture_default_str();
    cmd->add_option("--top-k", opts.top_k, "top-k for ranking overlap")->capture_default_str();
    cmd->add_flag("--stamp", opts.stamp, "add a timestamp to the manifest");
  };

  auto* validate = app.add_subcommand("validate", "load and validate a corpus");
  add_common(validate, true);
  auto* indicators =
      app.add_subcommand("indicators", "per-sector indicator suite");
  add_common(indicators, true);
  auto* vtr_score =
      app.add_subcommand("vtr-score", "peer-review scores and ranks");
  add_common(vtr_score, true);
  auto* aggregate =
      app.add_subcommand("aggregate", "area-level productivity ratings");
  add_common(aggregate, true);
  auto* compare =
      app.add_subcommand("compare", "correlations and ranking variations");
  add_common(compare, true);
  auto* audit = app.add_subcommand("audit", "selection-effectiveness audit");
  add_common(audit, true);

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  add_common(synth, false);
  synth->add_option("--seed", synth_opts.config.seed, "random seed")->capture_default_str();
  synth->add_option("--universities", synth_opts.config.n_universities, "")->capture_default_str();
  synth->add_option("--areas", synth_opts.config.n_areas, "")->capture_default_str();
  synth->add_option("--sectors-per-area", synth_opts.config.n_sectors_per_area,
                    "")->capture_default_str();
  synth->add_option("--journals-per-sector",
                    synth_opts.config.n_journals_per_sector, "")->capture_default_str();
  synth->add_option("--researchers", synth_opts.config.n_researchers, "")->capture_default_str();
  synth->add_option("--pub-rate", synth_opts.config.publication_rate,
                    "mean publications per researcher per year")->capture_default_str();
  synth->add_option("--if-mu", synth_opts.config.if_log_mean,
                    "impact-factor lognormal mu")->capture_default_str();
  synth->add_option("--if-sigma", synth_opts.config.if_log_sigma,
                    "impact-factor lognormal sigma")->capture_default_str();
  synth->add_option("--strategy", synth_opts.strategy,
                    "top_by_quality, random or below_median_biased")->capture_default_str();
  synth->add_option("--fraction", synth_opts.config.submission_fraction,
                    "submitted fraction of each portfolio")->capture_default_str();
  synth->add_option("--start-year", synth_opts.config.start_year, "")->capture_default_str();
  synth->add_option("--end-year", synth_opts.config.end_year, "")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return run_validate(opts);
    if (indicators->parsed()) return run_indicators(opts);
    if (vtr_score->parsed()) return run_vtr_score(opts);
    if (aggregate->parsed()) return run_aggregate(opts);
    if (compare->parsed()) return run_compare(opts);
    if (audit->parsed()) return run_audit(opts);
    if (synth->parsed()) {
      synth_opts.common = opts;
      return run_synth(synth_opts);
    }
  } catch (const resev::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
