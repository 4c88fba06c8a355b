#include "taseval/textmetrics.hpp"

#include <algorithm>

#include "taseval/errors.hpp"
#include "taseval/unicode.hpp"

namespace taseval {

std::vector<uint32_t> utf8_decode(const std::string& s) {
  std::vector<uint32_t> out;
  size_t i = 0;
  const auto* b = reinterpret_cast<const uint8_t*>(s.data());
  while (i < s.size()) {
    const uint8_t c = b[i];
    uint32_t cp = 0xFFFD;
    size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xE0) == 0xC0 && i + 1 < s.size() &&
               (b[i + 1] & 0xC0) == 0x80) {
      cp = (c & 0x1Fu) << 6 | (b[i + 1] & 0x3Fu);
      len = 2;
      if (cp < 0x80) cp = 0xFFFD;
    } else if ((c & 0xF0) == 0xE0 && i + 2 < s.size() &&
               (b[i + 1] & 0xC0) == 0x80 && (b[i + 2] & 0xC0) == 0x80) {
      cp = (c & 0x0Fu) << 12 | (b[i + 1] & 0x3Fu) << 6 | (b[i + 2] & 0x3Fu);
      len = 3;
      if (cp < 0x800) cp = 0xFFFD;
    } else if ((c & 0xF8) == 0xF0 && i + 3 < s.size() &&
               (b[i + 1] & 0xC0) == 0x80 && (b[i + 2] & 0xC0) == 0x80 &&
               (b[i + 3] & 0xC0) == 0x80) {
      cp = (c & 0x07u) << 18 | (b[i + 1] & 0x3Fu) << 12 |
           (b[i + 2] & 0x3Fu) << 6 | (b[i + 3] & 0x3Fu);
      len = 4;
      if (cp < 0x10000 || cp > 0x10FFFF) cp = 0xFFFD;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string utf8_encode(const std::vector<uint32_t>& cps) {
  std::string out;
  for (uint32_t cp : cps) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

namespace {

// Hangul syllable composition constants.
constexpr uint32_t kLBase = 0x1100, kVBase = 0x1161, kTBase = 0x11A7;
constexpr uint32_t kSBase = 0xAC00;
constexpr int kVCount = 21, kTCount = 28;

bool is_l(uint32_t c) { return c >= 0x1100 && c <= 0x1112; }
bool is_v(uint32_t c) { return c >= 0x1161 && c <= 0x1175; }
bool is_t(uint32_t c) { return c > 0x11A7 && c <= 0x11C2; }
bool is_lv_syllable(uint32_t c) {
  return c >= kSBase && c <= 0xD7A3 && (c - kSBase) % kTCount == 0;
}

// Kana + voicing mark (U+3099 dakuten, U+309A handakuten) compositions.
uint32_t compose_kana(uint32_t base, uint32_t mark) {
  struct Entry {
    uint32_t base, voiced, semivoiced;
  };
  static const Entry table[] = {
      {0x304B, 0x304C, 0}, {0x304D, 0x304E, 0}, {0x304F, 0x3050, 0},
      {0x3051, 0x3052, 0}, {0x3053, 0x3054, 0}, {0x3055, 0x3056, 0},
      {0x3057, 0x3058, 0}, {0x3059, 0x305A, 0}, {0x305B, 0x305C, 0},
      {0x305D, 0x305E, 0}, {0x305F, 0x3060, 0}, {0x3061, 0x3062, 0},
      {0x3064, 0x3065, 0}, {0x3066, 0x3067, 0}, {0x3068, 0x3069, 0},
      {0x306F, 0x3070, 0x3071}, {0x3072, 0x3073, 0x3074},
      {0x3075, 0x3076, 0x3077}, {0x3078, 0x3079, 0x307A},
      {0x307B, 0x307C, 0x307D}, {0x3046, 0x3094, 0},
      {0x30AB, 0x30AC, 0}, {0x30AD, 0x30AE, 0}, {0x30AF, 0x30B0, 0},
      {0x30B1, 0x30B2, 0}, {0x30B3, 0x30B4, 0}, {0x30B5, 0x30B6, 0},
      {0x30B7, 0x30B8, 0}, {0x30B9, 0x30BA, 0}, {0x30BB, 0x30BC, 0},
      {0x30BD, 0x30BE, 0}, {0x30BF, 0x30C0, 0}, {0x30C1, 0x30C2, 0},
      {0x30C4, 0x30C5, 0}, {0x30C6, 0x30C7, 0}, {0x30C8, 0x30C9, 0},
      {0x30CF, 0x30D0, 0x30D1}, {0x30D2, 0x30D3, 0x30D4},
      {0x30D5, 0x30D6, 0x30D7}, {0x30D8, 0x30D9, 0x30DA},
      {0x30DB, 0x30DC, 0x30DD}, {0x30A6, 0x30F4, 0},
      {0x30EF, 0x30F7, 0}, {0x30F2, 0x30FA, 0},
  };
  for (const Entry& e : table) {
    if (e.base != base) continue;
    if (mark == 0x3099 && e.voiced) return e.voiced;
    if (mark == 0x309A && e.semivoiced) return e.semivoiced;
  }
  return 0;
}

}  // namespace

std::vector<uint32_t> normalize_nfc(const std::vector<uint32_t>& cps) {
  std::vector<uint32_t> out;
  out.reserve(cps.size());
  for (uint32_t cp : cps) {
    if (!out.empty()) {
      const uint32_t prev = out.back();
      if (is_l(prev) && is_v(cp)) {
        out.back() = kSBase + ((prev - kLBase) * kVCount + (cp - kVBase)) *
                                  kTCount;
        continue;
      }
      if (is_lv_syllable(prev) && is_t(cp)) {
        out.back() = prev + (cp - kTBase);
        continue;
      }
      if (cp == 0x3099 || cp == 0x309A) {
        if (const uint32_t composed = compose_kana(prev, cp)) {
          out.back() = composed;
          continue;
        }
      }
    }
    out.push_back(cp);
  }
  return out;
}

bool is_arabic_text(const std::vector<uint32_t>& cps) {
  return std::any_of(cps.begin(), cps.end(), [](uint32_t c) {
    return (c >= 0x0600 && c <= 0x06FF) || (c >= 0x0750 && c <= 0x077F);
  });
}

std::vector<uint32_t> strip_whitespace(const std::vector<uint32_t>& cps) {
  std::vector<uint32_t> out;
  for (uint32_t c : cps)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' &&
        c != '\v' && c != 0x00A0 && c != 0x3000)
      out.push_back(c);
  return out;
}

double ned(const std::string& pred, const std::string& gt) {
  const std::vector<uint32_t> a = normalize_nfc(utf8_decode(pred));
  const std::vector<uint32_t> b = normalize_nfc(utf8_decode(gt));
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;

  // single-row Levenshtein
  std::vector<int> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      const int sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
    }
  }
  const double dist = row[b.size()];
  return 1.0 - dist / static_cast<double>(std::max(a.size(), b.size()));
}

bool transcript_matches(const std::string& pred, const std::string& gt) {
  const std::vector<uint32_t> a =
      strip_whitespace(normalize_nfc(utf8_decode(pred)));
  const std::vector<uint32_t> b =
      strip_whitespace(normalize_nfc(utf8_decode(gt)));
  return a == b;
}

double rec_acc(const std::vector<std::pair<std::string, std::string>>& rows) {
  if (rows.empty()) throw EmptyBatch("rec_acc over an empty batch");
  size_t hits = 0;
  for (const auto& [pred, gt] : rows)
    if (transcript_matches(pred, gt)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

}  // namespace taseval
