#pragma once

#include <optional>
#include <string>
#include <vector>

namespace taseval {

struct PairEntry {
  std::string pair_id;
  std::string lang;  // ko, ar, ja, other
  std::string image_a;            // source image
  std::string image_b;            // edited/generated image under evaluation
  std::optional<std::string> image_gt;  // ground-truth edited image
  std::string text_a;
  std::string text_b;
  std::string source = "synth";  // open, crawl, synth
  std::string split = "eval";    // train, eval
};

struct PairManifest {
  std::vector<PairEntry> entries;
};

/// One JSON object per line. Unknown fields are ignored; duplicate pair ids
/// and malformed lines are errors carrying the line number.
PairManifest parse_manifest(const std::string& path);

/// CSV interchange: header pair_id,lang,image_a,image_b,image_gt,text_a,
/// text_b,source,split.
PairManifest parse_manifest_csv(const std::string& path);

void write_manifest(const PairManifest& m, const std::string& path);

struct Violation {
  std::string pair_id;
  std::string field;  // image_a / image_b / text_a / text_b
  std::string reason;
};

struct ValidationReport {
  int entries_checked = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the corpus filter semantics per entry: images decode, pixel area
/// >= 1000, landscape orientation (width > height), non-empty texts.
ValidationReport validate_manifest(const PairManifest& m);

}  // namespace taseval
