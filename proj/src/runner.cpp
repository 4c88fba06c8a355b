#include "taseval/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "taseval/codec.hpp"
#include "taseval/colorconv.hpp"
#include "taseval/resample.hpp"
#include "taseval/simmetrics.hpp"
#include "taseval/textmetrics.hpp"

namespace taseval {

namespace {

using nlohmann::json;

constexpr double kPsnrCap = 100.0;

std::string fmt6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TASEVAL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// pair_id<TAB>side<TAB>text; only side "b" transcripts feed NED/Rec.Acc.
std::map<std::string, std::string> load_transcripts(const std::string& path) {
  std::map<std::string, std::string> out;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const size_t t1 = line.find('\t');
    const size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      throw ParseError("transcript line " + std::to_string(line_no) +
                       ": expected pair_id<TAB>side<TAB>text");
    const std::string pair_id = line.substr(0, t1);
    const std::string side = line.substr(t1 + 1, t2 - t1 - 1);
    std::string text = line.substr(t2 + 1);
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (side == "b") out[pair_id] = std::move(text);
  }
  return out;
}

}  // namespace

MetricRow evaluate_pair(const RasterImage& gen, const RasterImage& src,
                        const RasterImage* gt, const PairTexts& texts,
                        const GlyphTemplate& tpl, const ExtractorMode& extractor,
                        EvalMode mode, const std::string& pair_id) {
  if (mode == EvalMode::WITH_GT && gt == nullptr)
    throw MissingGroundTruth("WITH_GT evaluation requires a ground truth image");
  const RasterImage& ref = mode == EvalMode::WITH_GT ? *gt : src;

  const RasterImage gen_sized =
      gen.width() == ref.width() && gen.height() == ref.height()
          ? gen
          : resize_bilinear(gen, ref.width(), ref.height());

  MetricRow row;
  row.pair_id = pair_id;
  row.mode = mode;
  row.mse_value = mse(ref, gen_sized);
  row.psnr_value = psnr(ref, gen_sized);
  row.ssim_value = ssim(to_grayscale(ref), to_grayscale(gen_sized));
  row.tas_report = tas(ref, gen, texts.text_b, tpl, extractor, pair_id);

  if (texts.ocr_pred) {
    row.ned_value = ned(*texts.ocr_pred, texts.text_b);
    row.recognized = transcript_matches(*texts.ocr_pred, texts.text_b);
  }
  return row;
}

EvalReport run_eval(const PairManifest& manifest, const RunConfig& cfg) {
  std::map<std::string, std::string> transcripts;
  if (!cfg.ocr_tsv.empty()) transcripts = load_transcripts(cfg.ocr_tsv);

  const GlyphTemplate tpl = make_builtin_atlas(cfg.atlas);
  const int n = static_cast<int>(manifest.entries.size());
  std::vector<std::optional<MetricRow>> rows(n);
  std::vector<std::optional<PairError>> errors(n);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      const PairEntry& e = manifest.entries[i];
      try {
        const RasterImage src = load_image(e.image_a);
        const RasterImage gen = load_image(e.image_b);
        std::optional<RasterImage> gt;
        if (cfg.mode == EvalMode::WITH_GT) {
          if (!e.image_gt)
            throw MissingGroundTruth("pair " + e.pair_id +
                                     " has no image_gt path");
          gt = load_image(*e.image_gt);
        }
        PairTexts texts;
        texts.text_a = e.text_a;
        texts.text_b = e.text_b;
        if (auto it = transcripts.find(e.pair_id); it != transcripts.end())
          texts.ocr_pred = it->second;

        MetricRow row = evaluate_pair(gen, src, gt ? &*gt : nullptr, texts,
                                      tpl, cfg.extractor, cfg.mode, e.pair_id);
        row.lang = e.lang;
        rows[i] = std::move(row);
      } catch (const std::exception& ex) {
        errors[i] = PairError{e.pair_id, ex.what()};
      }
    }
  };

  const int threads = std::min(resolve_threads(cfg.threads), std::max(n, 1));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  EvalReport report;
  report.mode_desc = cfg.mode == EvalMode::WITH_GT ? "gt" : "gtfree";
  report.extractor_desc =
      cfg.extractor.kind == ExtractorKind::CLASSICAL
          ? "classical(atlas=" + cfg.atlas + ")"
          : "external(" + cfg.extractor.external_dir + ")";
  for (auto& r : rows)
    if (r) report.rows.push_back(std::move(*r));
  for (auto& e : errors)
    if (e) report.errors.push_back(std::move(*e));
  std::sort(report.rows.begin(), report.rows.end(),
            [](const MetricRow& a, const MetricRow& b) {
              return a.pair_id < b.pair_id;
            });
  std::sort(report.errors.begin(), report.errors.end(),
            [](const PairError& a, const PairError& b) {
              return a.pair_id < b.pair_id;
            });

  // Aggregates reduce in sorted pair-id order; PSNR rows cap at 100 dB.
  auto accumulate = [&](const std::string& key, const MetricRow& r) {
    LangAggregate& a = report.per_lang[key];
    ++a.pairs;
    a.ssim_mean += r.ssim_value;
    a.psnr_mean += std::min(r.psnr_value, kPsnrCap);
    a.mse_mean += r.mse_value;
    a.s_clr_mean += r.tas_report.s_clr;
    a.s_fnt_mean += r.tas_report.s_fnt;
    a.s_bg_mean += r.tas_report.s_bg;
    a.tas_mean += r.tas_report.tas;
    if (r.ned_value) {
      ++a.scored_texts;
      a.ned_mean += *r.ned_value;
      a.rec_acc += *r.recognized ? 1.0 : 0.0;
    }
  };
  for (const MetricRow& r : report.rows) {
    accumulate(r.lang.empty() ? "other" : r.lang, r);
    accumulate("all", r);
  }
  for (auto& [key, a] : report.per_lang) {
    if (a.pairs > 0) {
      a.ssim_mean /= a.pairs;
      a.psnr_mean /= a.pairs;
      a.mse_mean /= a.pairs;
      a.s_clr_mean /= a.pairs;
      a.s_fnt_mean /= a.pairs;
      a.s_bg_mean /= a.pairs;
      a.tas_mean /= a.pairs;
    }
    if (a.scored_texts > 0) {
      a.ned_mean /= a.scored_texts;
      a.rec_acc /= a.scored_texts;
    }
  }
  return report;
}

void write_report_csv(const EvalReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "pair_id,lang,mode,ssim,psnr,mse,s_clr,s_fnt,s_bg,tas,ned,"
         "recognized,error\n";
  for (const MetricRow& r : report.rows) {
    out << r.pair_id << ',' << r.lang << ','
        << (r.mode == EvalMode::WITH_GT ? "gt" : "gtfree") << ','
        << fmt6(r.ssim_value) << ',' << fmt6(r.psnr_value) << ','
        << fmt6(r.mse_value) << ',' << fmt6(r.tas_report.s_clr) << ','
        << fmt6(r.tas_report.s_fnt) << ',' << fmt6(r.tas_report.s_bg) << ','
        << fmt6(r.tas_report.tas) << ','
        << (r.ned_value ? fmt6(*r.ned_value) : "") << ','
        << (r.recognized ? (*r.recognized ? "1" : "0") : "") << ",\n";
  }
  for (const PairError& e : report.errors) {
    std::string msg = e.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    out << e.pair_id << ",,,,,,,,,,,," << msg << "\n";
  }
  if (!out) throw IoError("short write to " + path);
}

void write_report_json(const EvalReport& report, const std::string& path) {
  json j;
  j["toolkit_version"] = kToolkitVersion;
  j["mode"] = report.mode_desc;
  j["extractor"] = report.extractor_desc;
  j["psnr_cap_db"] = kPsnrCap;
  json rows = json::array();
  for (const MetricRow& r : report.rows) {
    json row{{"pair_id", r.pair_id},
             {"lang", r.lang},
             {"ssim", r.ssim_value},
             {"psnr_capped", std::min(r.psnr_value, kPsnrCap)},
             {"mse", r.mse_value},
             {"s_clr", r.tas_report.s_clr},
             {"s_fnt", r.tas_report.s_fnt},
             {"s_bg", r.tas_report.s_bg},
             {"tas", r.tas_report.tas}};
    if (r.ned_value) {
      row["ned"] = *r.ned_value;
      row["recognized"] = *r.recognized;
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  json errs = json::array();
  for (const PairError& e : report.errors)
    errs.push_back({{"pair_id", e.pair_id}, {"error", e.message}});
  j["errors"] = std::move(errs);
  json aggs;
  for (const auto& [lang, a] : report.per_lang) {
    aggs[lang] = {{"pairs", a.pairs},
                  {"ssim", a.ssim_mean},
                  {"psnr", a.psnr_mean},
                  {"mse", a.mse_mean},
                  {"s_clr", a.s_clr_mean},
                  {"s_fnt", a.s_fnt_mean},
                  {"s_bg", a.s_bg_mean},
                  {"tas", a.tas_mean},
                  {"scored_texts", a.scored_texts},
                  {"ned", a.ned_mean},
                  {"rec_acc", a.rec_acc}};
  }
  j["aggregates"] = std::move(aggs);

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("short write to " + path);
}

std::string format_summary(const EvalReport& report) {
  std::vector<std::string> langs;
  for (const auto& [lang, agg] : report.per_lang)
    if (lang != "all") langs.push_back(lang);
  langs.push_back("all");

  std::ostringstream os;
  os << "metric";
  for (const std::string& l : langs) os << '\t' << l;
  os << '\n';
  auto row = [&](const char* name, auto getter) {
    os << name;
    for (const std::string& l : langs) {
      const LangAggregate& a = report.per_lang.at(l);
      os << '\t' << fmt6(getter(a));
    }
    os << '\n';
  };
  row("SSIM", [](const LangAggregate& a) { return a.ssim_mean; });
  row("PSNR", [](const LangAggregate& a) { return a.psnr_mean; });
  row("MSE", [](const LangAggregate& a) { return a.mse_mean; });
  row("s_clr", [](const LangAggregate& a) { return a.s_clr_mean; });
  row("s_fnt", [](const LangAggregate& a) { return a.s_fnt_mean; });
  row("s_bg", [](const LangAggregate& a) { return a.s_bg_mean; });
  row("TAS", [](const LangAggregate& a) { return a.tas_mean; });
  row("Rec.Acc", [](const LangAggregate& a) { return a.rec_acc; });
  row("NED", [](const LangAggregate& a) { return a.ned_mean; });
  os << "pairs";
  for (const std::string& l : langs)
    os << '\t' << report.per_lang.at(l).pairs;
  os << "\nerrors\t" << report.errors.size() << '\n';
  return os.str();
}

RatingsFile parse_ratings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  RatingsFile rf;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  int raters = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::vector<std::string> fields;
    std::string f;
    while (std::getline(ss, f, ',')) {
      if (!f.empty() && f.back() == '\r') f.pop_back();
      fields.push_back(f);
    }
    if (!header_seen) {
      header_seen = true;
      if (fields.size() < 3 || fields[0] != "item_id" ||
          fields[1] != "attribute")
        throw ParseError("ratings header must be item_id,attribute,r1,...");
      raters = static_cast<int>(fields.size()) - 2;
      continue;
    }
    if (static_cast<int>(fields.size()) != raters + 2)
      throw ParseError("ratings line " + std::to_string(line_no) +
                       ": wrong field count");
    RatingsMatrix& m = rf.by_attribute[fields[1]];
    m.item_ids.push_back(fields[0]);
    std::vector<double> row;
    for (int i = 0; i < raters; ++i) {
      try {
        row.push_back(std::stod(fields[2 + i]));
      } catch (const std::exception&) {
        throw ParseError("ratings line " + std::to_string(line_no) +
                         ": non-numeric score");
      }
    }
    m.rows.push_back(std::move(row));
  }
  return rf;
}

namespace {

std::map<std::string, double> item_means(const RatingsMatrix& m) {
  std::map<std::string, double> out;
  for (int i = 0; i < m.items(); ++i) {
    double s = 0.0;
    for (double v : m.rows[i]) s += v;
    out[m.item_ids[i]] = s / m.raters();
  }
  return out;
}

double metric_value(const MetricRow& r, const std::string& metric) {
  if (metric == "ssim") return r.ssim_value;
  if (metric == "psnr") return std::min(r.psnr_value, kPsnrCap);
  if (metric == "mse") return r.mse_value;
  if (metric == "s_clr") return r.tas_report.s_clr;
  if (metric == "s_fnt") return r.tas_report.s_fnt;
  if (metric == "s_bg") return r.tas_report.s_bg;
  return r.tas_report.tas;
}

}  // namespace

CorrelationTable correlate(const EvalReport& report, const RatingsFile& ratings) {
  std::map<std::string, const MetricRow*> by_id;
  for (const MetricRow& r : report.rows) by_id[r.pair_id] = &r;

  // Human attribute means per item; overall falls back to the mean of the
  // three attribute scores when not rated explicitly.
  std::map<std::string, std::map<std::string, double>> human;  // attr -> item -> mean
  for (const auto& [attr, matrix] : ratings.by_attribute)
    human[attr] = item_means(matrix);
  if (!human.count("overall")) {
    std::map<std::string, double> overall;
    std::map<std::string, int> counts;
    for (const char* attr : {"color", "font", "background"}) {
      auto it = human.find(attr);
      if (it == human.end()) continue;
      for (const auto& [item, v] : it->second) {
        overall[item] += v;
        ++counts[item];
      }
    }
    for (auto& [item, v] : overall) v /= counts[item];
    human["overall"] = std::move(overall);
  }

  for (const auto& [attr, items] : human)
    for (const auto& [item, v] : items)
      if (!by_id.count(item))
        throw ItemMismatch("rated item " + item + " missing from the report");

  const std::vector<std::pair<std::string, std::string>> plan = {
      {"ssim", "overall"},  {"psnr", "overall"}, {"mse", "overall"},
      {"s_clr", "color"},   {"s_fnt", "font"},   {"s_bg", "background"},
      {"tas", "overall"},
  };

  CorrelationTable table;
  for (const auto& [metric, attr] : plan) {
    auto it = human.find(attr);
    if (it == human.end() || it->second.size() < 3) continue;
    std::vector<double> x, y;
    for (const auto& [item, score] : it->second) {
      x.push_back(metric_value(*by_id.at(item), metric));
      y.push_back(score);
    }
    table.spearman_rows.push_back({metric, attr, spearman(x, y)});
  }

  for (const auto& [attr, matrix] : ratings.by_attribute)
    table.icc_by_attribute[attr] = icc3k(matrix);

  // ICC over the per-item mean of all rated attributes (same rater count).
  if (!ratings.by_attribute.empty()) {
    const RatingsMatrix& first = ratings.by_attribute.begin()->second;
    RatingsMatrix mean_matrix;
    mean_matrix.item_ids = first.item_ids;
    mean_matrix.rows.assign(first.items(),
                            std::vector<double>(first.raters(), 0.0));
    bool consistent = true;
    for (const auto& [attr, matrix] : ratings.by_attribute) {
      if (matrix.item_ids != first.item_ids ||
          matrix.raters() != first.raters()) {
        consistent = false;
        break;
      }
      for (int i = 0; i < matrix.items(); ++i)
        for (int j = 0; j < matrix.raters(); ++j)
          mean_matrix.rows[i][j] += matrix.rows[i][j];
    }
    if (consistent) {
      const double k = static_cast<double>(ratings.by_attribute.size());
      for (auto& row : mean_matrix.rows)
        for (double& v : row) v /= k;
      table.icc_by_attribute["item_mean"] = icc3k(mean_matrix);
    }
  }
  return table;
}

CorrelationTable correlate_csv(const std::string& report_csv,
                               const RatingsFile& ratings) {
  std::ifstream in(report_csv);
  if (!in) throw IoError("cannot open " + report_csv);
  EvalReport report;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> f;
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() < 10 || f[3].empty()) continue;  // error row
    MetricRow r;
    r.pair_id = f[0];
    r.lang = f[1];
    r.ssim_value = std::stod(f[3]);
    r.psnr_value = f[4] == "inf" ? std::numeric_limits<double>::infinity()
                                  : std::stod(f[4]);
    r.mse_value = std::stod(f[5]);
    r.tas_report.s_clr = std::stod(f[6]);
    r.tas_report.s_fnt = std::stod(f[7]);
    r.tas_report.s_bg = std::stod(f[8]);
    r.tas_report.tas = std::stod(f[9]);
    report.rows.push_back(std::move(r));
  }
  return correlate(report, ratings);
}

void write_correlation_csv(const CorrelationTable& table,
                           const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "kind,metric_or_attribute,reference,value\n";
  for (const CorrelationRow& r : table.spearman_rows)
    out << "spearman," << r.metric << ',' << r.attribute << ','
        << fmt6(r.rho) << "\n";
  for (const auto& [attr, icc] : table.icc_by_attribute)
    out << "icc3k," << attr << ",," << fmt6(icc) << "\n";
  if (!out) throw IoError("short write to " + path);
}

}  // namespace taseval
