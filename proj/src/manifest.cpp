#include "taseval/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "taseval/codec.hpp"
#include "taseval/errors.hpp"

namespace taseval {

namespace {

using nlohmann::json;

PairEntry entry_from_json(const json& j, int line) {
  PairEntry e;
  try {
    e.pair_id = j.at("pair_id").get<std::string>();
    e.image_a = j.at("image_a").get<std::string>();
    e.image_b = j.at("image_b").get<std::string>();
    e.text_a = j.at("text_a").get<std::string>();
    e.text_b = j.at("text_b").get<std::string>();
    e.lang = j.value("lang", "other");
    e.source = j.value("source", "synth");
    e.split = j.value("split", "eval");
    if (j.contains("image_gt") && !j.at("image_gt").is_null())
      e.image_gt = j.at("image_gt").get<std::string>();
  } catch (const json::exception& ex) {
    throw ParseError("line " + std::to_string(line) + ": " + ex.what());
  }
  return e;
}

void check_duplicates(const PairManifest& m) {
  std::set<std::string> seen;
  for (const PairEntry& e : m.entries)
    if (!seen.insert(e.pair_id).second)
      throw DuplicatePairId("duplicate pair_id: " + e.pair_id);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  // minimal CSV: double quotes guard commas, "" escapes a quote
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  out.push_back(std::move(field));
  return out;
}

}  // namespace

PairManifest parse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  PairManifest m;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw ParseError("line " + std::to_string(line_no) + ": " + ex.what());
    }
    m.entries.push_back(entry_from_json(j, line_no));
  }
  check_duplicates(m);
  return m;
}

PairManifest parse_manifest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  PairManifest m;
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (fields.size() < header.size())
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected " + std::to_string(header.size()) +
                       " fields");
    PairEntry e;
    for (size_t i = 0; i < header.size(); ++i) {
      const std::string& key = header[i];
      const std::string& val = fields[i];
      if (key == "pair_id") e.pair_id = val;
      else if (key == "lang") e.lang = val;
      else if (key == "image_a") e.image_a = val;
      else if (key == "image_b") e.image_b = val;
      else if (key == "image_gt" && !val.empty()) e.image_gt = val;
      else if (key == "text_a") e.text_a = val;
      else if (key == "text_b") e.text_b = val;
      else if (key == "source") e.source = val;
      else if (key == "split") e.split = val;
    }
    if (e.pair_id.empty())
      throw ParseError("line " + std::to_string(line_no) + ": missing pair_id");
    m.entries.push_back(std::move(e));
  }
  check_duplicates(m);
  return m;
}

void write_manifest(const PairManifest& m, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const PairEntry& e : m.entries) {
    json j{{"pair_id", e.pair_id}, {"lang", e.lang},
           {"image_a", e.image_a}, {"image_b", e.image_b},
           {"text_a", e.text_a},   {"text_b", e.text_b},
           {"source", e.source},   {"split", e.split}};
    if (e.image_gt) j["image_gt"] = *e.image_gt;
    out << j.dump() << "\n";
  }
  if (!out) throw IoError("short write to " + path);
}

ValidationReport validate_manifest(const PairManifest& m) {
  ValidationReport report;
  for (const PairEntry& e : m.entries) {
    ++report.entries_checked;
    auto check_image = [&](const std::string& field, const std::string& path) {
      try {
        const RasterImage img = load_image(path);
        if (img.width() * img.height() < 1000)
          report.violations.push_back(
              {e.pair_id, field,
               "pixel area below 1000 (" + std::to_string(img.width()) + "x" +
                   std::to_string(img.height()) + ")"});
        if (img.width() <= img.height())
          report.violations.push_back(
              {e.pair_id, field, "not landscape (width must exceed height)"});
      } catch (const Error& err) {
        report.violations.push_back({e.pair_id, field, err.what()});
      }
    };
    check_image("image_a", e.image_a);
    check_image("image_b", e.image_b);
    if (e.image_gt) check_image("image_gt", *e.image_gt);
    if (e.text_a.empty())
      report.violations.push_back({e.pair_id, "text_a", "empty text"});
    if (e.text_b.empty())
      report.violations.push_back({e.pair_id, "text_b", "empty text"});
  }
  return report;
}

}  // namespace taseval
