// Command-line front end: manifest validation, synthetic pair generation,
// batch evaluation, human-correlation statistics, and a single-pair probe.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "taseval/codec.hpp"
#include "taseval/errors.hpp"
#include "taseval/manifest.hpp"
#include "taseval/runner.hpp"
#include "taseval/synth.hpp"

namespace fs = std::filesystem;
using namespace taseval;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

PairManifest load_manifest_any(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
    return parse_manifest_csv(path);
  return parse_manifest(path);
}

int cmd_validate(const std::string& manifest_path) {
  const PairManifest m = load_manifest_any(manifest_path);
  const ValidationReport report = validate_manifest(m);
  std::cout << "entries: " << report.entries_checked
            << "  violations: " << report.violations.size() << "\n";
  for (const Violation& v : report.violations)
    std::cout << v.pair_id << '\t' << v.field << '\t' << v.reason << "\n";
  return report.ok() ? kExitOk : kExitData;
}

int cmd_synth(const std::string& config_path, const std::string& out_dir) {
  const VariationConfig cfg = parse_variation_config(config_path);
  fs::create_directories(out_dir);
  const SynthResult result = synth_variations(cfg, out_dir);
  write_manifest(result.manifest, (fs::path(out_dir) / "manifest.jsonl").string());
  write_sidecar(result.sidecar, (fs::path(out_dir) / "sidecar.json").string());
  std::cout << "wrote " << result.manifest.entries.size() << " pairs to "
            << out_dir << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& manifest_path, const std::string& mode,
             const std::string& extractor, const std::string& ocr,
             const std::string& atlas, int threads,
             const std::string& out_dir) {
  RunConfig cfg;
  if (mode == "gt")
    cfg.mode = EvalMode::WITH_GT;
  else if (mode == "gtfree")
    cfg.mode = EvalMode::GT_FREE;
  else
    throw InvalidConfig("--mode must be gt or gtfree");

  if (extractor == "classical") {
    cfg.extractor = ExtractorMode::classical();
  } else if (extractor.rfind("external:", 0) == 0) {
    cfg.extractor = ExtractorMode::external(extractor.substr(9));
  } else {
    throw InvalidConfig("--extractor must be classical or external:<dir>");
  }
  cfg.atlas = atlas;
  cfg.ocr_tsv = ocr;
  cfg.threads = threads;

  const PairManifest m = load_manifest_any(manifest_path);
  fs::create_directories(out_dir);
  const EvalReport report = run_eval(m, cfg);
  write_report_csv(report, (fs::path(out_dir) / "report.csv").string());
  write_report_json(report, (fs::path(out_dir) / "report.json").string());
  std::cout << format_summary(report);
  return kExitOk;
}

int cmd_correlate(const std::string& report_csv, const std::string& ratings_csv,
                  const std::string& out_dir) {
  const RatingsFile ratings = parse_ratings_csv(ratings_csv);
  const CorrelationTable table = correlate_csv(report_csv, ratings);
  fs::create_directories(out_dir);
  const std::string out_path =
      (fs::path(out_dir) / "correlations.csv").string();
  write_correlation_csv(table, out_path);
  for (const CorrelationRow& r : table.spearman_rows)
    std::cout << "spearman " << r.metric << " vs " << r.attribute << ": "
              << r.rho << "\n";
  for (const auto& [attr, icc] : table.icc_by_attribute)
    std::cout << "icc3k " << attr << ": " << icc << "\n";
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_tas(const std::string& img_a, const std::string& img_b,
            const std::string& text_b, const std::string& atlas,
            const std::string& extractor, const std::string& pair_id) {
  ExtractorMode mode = ExtractorMode::classical();
  if (extractor.rfind("external:", 0) == 0)
    mode = ExtractorMode::external(extractor.substr(9));
  else if (extractor != "classical")
    throw InvalidConfig("--extractor must be classical or external:<dir>");

  const GlyphTemplate tpl = make_builtin_atlas(atlas);
  const TasReport r =
      tas(load_image(img_a), load_image(img_b), text_b, tpl, mode, pair_id);
  nlohmann::json j{{"s_clr", r.s_clr},
                   {"s_fnt", r.s_fnt},
                   {"s_bg", r.s_bg},
                   {"tas", r.tas},
                   {"extractor", r.extractor == ExtractorKind::CLASSICAL
                                     ? "classical"
                                     : "external"},
                   {"aggregation", r.aggregation_note}};
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scene-text-editing evaluation toolkit"};
  app.require_subcommand(1);

  std::string manifest_path, config_path, out_dir = ".";
  std::string mode = "gtfree", extractor = "classical", ocr, atlas = "sans";
  std::string report_csv, ratings_csv, img_a, img_b, text_b, pair_id = "pair";
  int threads = 0;

  CLI::App* validate = app.add_subcommand("validate", "Check a pair manifest");
  validate->add_option("manifest", manifest_path)->required();

  CLI::App* synth =
      app.add_subcommand("synth", "Generate controlled-variation pairs");
  synth->add_option("config", config_path)->required();
  synth->add_option("-o,--out", out_dir)->required();

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a manifest");
  eval->add_option("manifest", manifest_path)->required();
  eval->add_option("--mode", mode, "gt or gtfree");
  eval->add_option("--extractor", extractor, "classical or external:<dir>");
  eval->add_option("--ocr", ocr, "transcripts TSV (pair_id, side, text)");
  eval->add_option("--atlas", atlas, "glyph atlas id");
  eval->add_option("--threads", threads, "worker count (0 = auto)");
  eval->add_option("-o,--out", out_dir)->required();

  CLI::App* corr =
      app.add_subcommand("correlate", "Metric vs human-rating statistics");
  corr->add_option("report", report_csv)->required();
  corr->add_option("ratings", ratings_csv)->required();
  corr->add_option("-o,--out", out_dir)->required();

  CLI::App* tas_cmd = app.add_subcommand("tas", "Score one image pair");
  tas_cmd->add_option("image_a", img_a)->required();
  tas_cmd->add_option("image_b", img_b)->required();
  tas_cmd->add_option("--text-b", text_b)->required();
  tas_cmd->add_option("--atlas", atlas);
  tas_cmd->add_option("--extractor", extractor);
  tas_cmd->add_option("--pair-id", pair_id);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(manifest_path);
    if (synth->parsed()) return cmd_synth(config_path, out_dir);
    if (eval->parsed())
      return cmd_eval(manifest_path, mode, extractor, ocr, atlas, threads,
                      out_dir);
    if (corr->parsed()) return cmd_correlate(report_csv, ratings_csv, out_dir);
    if (tas_cmd->parsed())
      return cmd_tas(img_a, img_b, text_b, atlas, extractor, pair_id);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
