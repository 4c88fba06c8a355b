#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taseval/manifest.hpp"
#include "taseval/stats.hpp"
#include "taseval/tas.hpp"

namespace taseval {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum class EvalMode { WITH_GT, GT_FREE };

struct PairTexts {
  std::string text_a;
  std::string text_b;
  std::optional<std::string> ocr_pred;  // transcript of the generated image
};

/// One evaluated pair. GT_FREE rows carry the same fields, compared against
/// the source image instead of ground truth.
struct MetricRow {
  std::string pair_id;
  std::string lang;
  EvalMode mode = EvalMode::GT_FREE;
  double ssim_value = 0.0;
  double psnr_value = 0.0;  // +inf sentinel for identical images
  double mse_value = 0.0;
  TasReport tas_report;
  std::optional<double> ned_value;
  std::optional<bool> recognized;
};

/// Evaluates one generated image against ground truth (WITH_GT) or the
/// source (GT_FREE). gt may be null in GT_FREE mode and is never read there.
MetricRow evaluate_pair(const RasterImage& gen, const RasterImage& src,
                        const RasterImage* gt, const PairTexts& texts,
                        const GlyphTemplate& tpl, const ExtractorMode& extractor,
                        EvalMode mode, const std::string& pair_id = "pair");

struct LangAggregate {
  int pairs = 0;
  double ssim_mean = 0.0;
  double psnr_mean = 0.0;  // rows capped at 100 dB
  double mse_mean = 0.0;
  double s_clr_mean = 0.0;
  double s_fnt_mean = 0.0;
  double s_bg_mean = 0.0;
  double tas_mean = 0.0;
  int scored_texts = 0;  // rows with transcripts
  double ned_mean = 0.0;
  double rec_acc = 0.0;
};

struct PairError {
  std::string pair_id;
  std::string message;
};

struct EvalReport {
  std::vector<MetricRow> rows;  // sorted by pair id
  std::vector<PairError> errors;
  std::map<std::string, LangAggregate> per_lang;  // includes "all"
  std::string extractor_desc;
  std::string mode_desc;
};

struct RunConfig {
  EvalMode mode = EvalMode::GT_FREE;
  ExtractorMode extractor = ExtractorMode::classical();
  std::string atlas = "sans";
  std::string ocr_tsv;  // optional transcripts, pair_id<TAB>side<TAB>text
  int threads = 0;      // 0: TASEVAL_THREADS env or hardware concurrency
};

/// Batch evaluation; per-pair failures become error records, never aborts.
EvalReport run_eval(const PairManifest& manifest, const RunConfig& cfg);

void write_report_csv(const EvalReport& report, const std::string& path);
void write_report_json(const EvalReport& report, const std::string& path);
std::string format_summary(const EvalReport& report);

/// Per-attribute human ratings: item rows by rater columns.
struct RatingsFile {
  std::map<std::string, RatingsMatrix> by_attribute;  // color/font/background/...
};

RatingsFile parse_ratings_csv(const std::string& path);

struct CorrelationRow {
  std::string metric;
  std::string attribute;
  double rho;
};

struct CorrelationTable {
  std::vector<CorrelationRow> spearman_rows;
  std::map<std::string, double> icc_by_attribute;  // plus "item_mean"
};

/// Spearman rho of each metric against the matching human attribute mean
/// and ICC(3,k) per attribute. Item ids must align exactly.
CorrelationTable correlate(const EvalReport& report, const RatingsFile& ratings);
CorrelationTable correlate_csv(const std::string& report_csv,
                               const RatingsFile& ratings);
void write_correlation_csv(const CorrelationTable& table,
                           const std::string& path);

}  // namespace taseval
