#include "taseval/glyph.hpp"

#include <algorithm>
#include <cmath>

#include "taseval/resample.hpp"
#include "taseval/unicode.hpp"

namespace taseval {

namespace {

struct Segment {
  double x0, y0, x1, y1;
};

// ASCII skeletons on a 5x7 grid (x 0..4, y 0..6, y grows downward), four
// digits per segment. Stylized display shapes; curves are polylines.
struct SkeletonEntry {
  uint32_t cp;
  const char* segs;
};

const SkeletonEntry kAsciiSkeletons[] = {
    {'A', "062020461434"},
    {'B', "00060030303603330636"},
    {'C', "400000060646"},
    {'D', "000600202042424444260626"},
    {'E', "0006004003330646"},
    {'F', "000600400333"},
    {'G', "40000006064646442444"},
    {'H', "000640460343"},
    {'I', "103020261636"},
    {'J', "1040303636161605"},
    {'K', "000640030346"},
    {'L', "00060646"},
    {'M', "0600002323404046"},
    {'N', "060000464640"},
    {'O', "10303041414545363616160505010110"},
    {'P', "0006004040430343"},
    {'Q', "103030414145453636161605050101102446"},
    {'R', "00060040404303331346"},
    {'S', "40000003034343460646"},
    {'T', "00402026"},
    {'U', "00050516163636454540"},
    {'V', "00262640"},
    {'W', "0016162323363640"},
    {'X', "00464006"},
    {'Y', "002340232326"},
    {'Z', "004040060646"},
    {'0', "103030414145453636161605050101101432"},
    {'1', "112020261636"},
    {'2', "011010303041414242060646"},
    {'3', "0040404606461343"},
    {'4', "000303433036"},
    {'5', "40000003033333360636"},
    {'6', "010601101030064646434303"},
    {'7', "00404016"},
    {'8', "00064046004003430646"},
    {'9', "00400003034340461646"},
    {' ', ""},
    {'.', "2526"},
    {',', "2516"},
    {'-', "1333"},
    {'_', "0646"},
    {':', "21222425"},
    {';', "21222415"},
    {'!', "20242526"},
    {'?', "011010303041412323242526"},
    {'\'', "2021"},
    {'"', "10113031"},
    {'(', "302222242436"},
    {')', "102222242416"},
    {'[', "302020262636"},
    {']', "102020262616"},
    {'+', "21250343"},
    {'*', "2125034311353115"},
    {'/', "0640"},
    {'\\', "0046"},
    {'=', "02424404"},
    {'%', "101106403536"},
    {'#', "1016303602420444"},
    {'&', "46131311112020313146"},
    {'@', "103030414145453636161605050101102242"},
    {'<', "31030335"},
    {'>', "11434315"},
    {'^', "12202032"},
    {'$', "400000030343434606462026"},
    {'|', "2026"},
    {'~', "031212343443"},
    {'`', "2031"},
    {'{', "302121222213132424252536"},
    {'}', "102121222233332424252516"},
};

bool decode_digit(char c, double* out) {
  if (c < '0' || c > '6') return false;
  *out = c - '0';
  return true;
}

std::vector<Segment> parse_segments(const char* s) {
  std::vector<Segment> segs;
  const size_t len = std::char_traits<char>::length(s);
  for (size_t i = 0; i + 3 < len; i += 4) {
    Segment seg{};
    if (decode_digit(s[i], &seg.x0) && decode_digit(s[i + 1], &seg.y0) &&
        decode_digit(s[i + 2], &seg.x1) && decode_digit(s[i + 3], &seg.y1))
      segs.push_back(seg);
  }
  return segs;
}

// splitmix64 step; seeds the procedural skeletons for non-Latin blocks.
uint64_t mix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool in_arabic(uint32_t cp) { return cp >= 0x0600 && cp <= 0x06FF; }
bool in_hangul(uint32_t cp) {
  return (cp >= 0xAC00 && cp <= 0xD7A3) || (cp >= 0x1100 && cp <= 0x11FF) ||
         (cp >= 0x3130 && cp <= 0x318F);
}
bool in_kana(uint32_t cp) { return cp >= 0x3040 && cp <= 0x30FF; }
bool in_cjk(uint32_t cp) { return cp >= 0x4E00 && cp <= 0x9FFF; }

// Deterministic synthetic skeletons for non-Latin scripts. Arabic shapes
// share a low connector stroke; CJK-like shapes are denser stroke lattices.
std::vector<Segment> procedural_skeleton(uint32_t cp) {
  std::vector<Segment> segs;
  uint64_t state = cp * 0x9e3779b97f4a7c15ULL + 0x1234567;
  auto next = [&]() {
    state = mix(state);
    return state;
  };
  auto pick = [&](int n) { return static_cast<double>(next() % n); };

  if (in_arabic(cp)) {
    segs.push_back({0, 5, 4, 5});  // connector baseline
    const double x = pick(5);
    const double top = 1.0 + pick(3);
    segs.push_back({x, top, x, 5});
    if (next() % 2) {
      const double x2 = pick(5), x3 = pick(5);
      segs.push_back({x2, 2 + pick(2), x3, 5});
    }
    const int dots = static_cast<int>(next() % 4);
    const bool below = next() % 2;
    for (int i = 0; i < dots; ++i) {
      const double dx = 1.0 + pick(3);
      const double dy = below ? 6.0 : 0.0;
      segs.push_back({dx, dy, dx + 0.3, dy});
    }
    return segs;
  }

  // Hangul/Kana/CJK: 4-7 strokes on the grid, denser for CJK.
  const int strokes = in_cjk(cp) ? 5 + static_cast<int>(next() % 3)
                                 : 3 + static_cast<int>(next() % 3);
  for (int i = 0; i < strokes; ++i) {
    const int kind = static_cast<int>(next() % 3);
    const double a = pick(5), b = pick(7);
    if (kind == 0)
      segs.push_back({a, b, a, std::min(b + 2 + pick(3), 6.0)});  // vertical
    else if (kind == 1)
      segs.push_back({std::max(a - 2 - pick(2), 0.0), b, a, b});  // horizontal
    else
      segs.push_back({a, b, std::clamp(a + 2 - pick(4), 0.0, 4.0),
                      std::clamp(b + 1 + pick(2), 0.0, 6.0)});
  }
  return segs;
}

const std::map<uint32_t, std::vector<Segment>>& ascii_table() {
  static const std::map<uint32_t, std::vector<Segment>> table = [] {
    std::map<uint32_t, std::vector<Segment>> t;
    for (const SkeletonEntry& e : kAsciiSkeletons)
      t[e.cp] = parse_segments(e.segs);
    return t;
  }();
  return table;
}

// Lowercase letters reuse the capital skeleton compressed into the
// x-height band; glyph coverage matters here, not typographic fidelity.
std::vector<Segment> skeleton_for(uint32_t cp) {
  const auto& table = ascii_table();
  if (cp >= 'a' && cp <= 'z') {
    std::vector<Segment> segs = table.at(cp - 'a' + 'A');
    for (Segment& s : segs) {
      s.y0 = 2.2 + s.y0 * (3.8 / 6.0);
      s.y1 = 2.2 + s.y1 * (3.8 / 6.0);
    }
    return segs;
  }
  auto it = table.find(cp);
  if (it != table.end()) return it->second;
  return procedural_skeleton(cp);
}

double dist_to_segment(double px, double py, const Segment& s) {
  const double dx = s.x1 - s.x0, dy = s.y1 - s.y0;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((px - s.x0) * dx + (py - s.y0) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (s.x0 + t * dx), py - (s.y0 + t * dy));
}

}  // namespace

GlyphTemplate::GlyphTemplate(std::string name, GlyphStyle style, int cell_size)
    : name_(std::move(name)),
      style_(style),
      cell_size_(cell_size),
      coverage_({"latin", "arab", "hang", "kana", "hani"}) {}

bool GlyphTemplate::covers(uint32_t cp) const {
  if (cp >= 0x20 && cp <= 0x7E) return true;
  return in_arabic(cp) || in_hangul(cp) || in_kana(cp) || in_cjk(cp);
}

RasterImage GlyphTemplate::rasterize(uint32_t cp) const {
  RasterImage bitmap(cell_size_, cell_size_, 1, Colorspace::GRAY, 0.0f);
  std::vector<Segment> segs = skeleton_for(cp);
  if (segs.empty()) return bitmap;  // space

  // Grid -> unit cell with padding; shear for slant around mid-height.
  std::vector<Segment> unit;
  unit.reserve(segs.size() * (style_.serif ? 2 : 1));
  for (const Segment& s : segs) {
    Segment u;
    u.x0 = 0.16 + 0.68 * s.x0 / 4.0;
    u.y0 = 0.10 + 0.80 * s.y0 / 6.0;
    u.x1 = 0.16 + 0.68 * s.x1 / 4.0;
    u.y1 = 0.10 + 0.80 * s.y1 / 6.0;
    u.x0 += style_.slant * (0.5 - u.y0);
    u.x1 += style_.slant * (0.5 - u.y1);
    unit.push_back(u);
    if (style_.serif && std::abs(u.x1 - u.x0) < 0.02) {
      // short horizontal feet on near-vertical strokes
      const double foot = 0.07;
      unit.push_back({u.x0 - foot, u.y0, u.x0 + foot, u.y0});
      unit.push_back({u.x1 - foot, u.y1, u.x1 + foot, u.y1});
    }
  }

  const double aa = 0.75 / cell_size_;  // soft edge, about 3/4 pixel
  for (int y = 0; y < cell_size_; ++y)
    for (int x = 0; x < cell_size_; ++x) {
      const double px = (x + 0.5) / cell_size_;
      const double py = (y + 0.5) / cell_size_;
      double coverage = 0.0;
      for (const Segment& s : unit) {
        const double d = dist_to_segment(px, py, s);
        const double c =
            std::clamp(0.5 + (style_.stroke - d) / aa, 0.0, 1.0);
        coverage = std::max(coverage, c);
        if (coverage >= 1.0) break;
      }
      bitmap.at(x, y) = static_cast<float>(coverage);
    }
  return bitmap;
}

const std::vector<std::string>& builtin_atlas_names() {
  static const std::vector<std::string> names = {"sans", "bold", "slab",
                                                 "italic", "thin"};
  return names;
}

GlyphTemplate make_builtin_atlas(const std::string& name) {
  if (name == "sans") return GlyphTemplate(name, {0.050, 0.0, false});
  if (name == "bold") return GlyphTemplate(name, {0.150, 0.0, false});
  if (name == "slab") return GlyphTemplate(name, {0.085, 0.0, true});
  if (name == "italic") return GlyphTemplate(name, {0.050, 0.45, false});
  if (name == "thin") return GlyphTemplate(name, {0.024, 0.0, false});
  throw InvalidConfig("unknown atlas id: " + name);
}

RasterImage render_text_gray(const std::string& text, const GlyphTemplate& tpl,
                             int canvas_w, int canvas_h) {
  std::vector<uint32_t> cps = utf8_decode(text);
  if (cps.empty()) throw EmptyText("cannot render empty text");
  for (uint32_t cp : cps)
    if (!tpl.covers(cp))
      throw UncoveredCodepoint("codepoint U+" + [cp] {
        char buf[16];
        snprintf(buf, sizeof(buf), "%04X", cp);
        return std::string(buf);
      }() + " not covered by atlas");

  if (is_arabic_text(cps)) std::reverse(cps.begin(), cps.end());

  // Natural-scale strip: monospaced advance slightly under the cell.
  const int cell = tpl.cell_size();
  const int advance = static_cast<int>(cell * 0.74);
  const int strip_w = advance * static_cast<int>(cps.size() - 1) + cell;
  RasterImage strip(strip_w, cell, 1, Colorspace::GRAY, 0.0f);
  for (size_t i = 0; i < cps.size(); ++i) {
    const RasterImage glyph = tpl.rasterize(cps[i]);
    const int ox = static_cast<int>(i) * advance;
    for (int y = 0; y < cell; ++y)
      for (int x = 0; x < cell; ++x)
        strip.at(ox + x, y) = std::max(strip.at(ox + x, y), glyph.at(x, y));
  }

  // Ink tight box.
  int min_x = strip_w, max_x = -1, min_y = cell, max_y = -1;
  for (int y = 0; y < cell; ++y)
    for (int x = 0; x < strip_w; ++x)
      if (strip.at(x, y) > 0.02f) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
      }

  RasterImage canvas(canvas_w, canvas_h, 1, Colorspace::GRAY, 1.0f);
  if (max_x < 0) return canvas;  // whitespace-only text

  const int bw = max_x - min_x + 1, bh = max_y - min_y + 1;
  RasterImage cropped(bw, bh, 1, Colorspace::GRAY);
  for (int y = 0; y < bh; ++y)
    for (int x = 0; x < bw; ++x)
      cropped.at(x, y) = strip.at(min_x + x, min_y + y);

  const double scale =
      std::min(0.8 * canvas_w / bw, 0.8 * canvas_h / bh);
  const int tw = std::max(1, static_cast<int>(std::lround(bw * scale)));
  const int th = std::max(1, static_cast<int>(std::lround(bh * scale)));
  const RasterImage scaled = resize_bilinear(cropped, tw, th);

  const int ox = (canvas_w - tw) / 2, oy = (canvas_h - th) / 2;
  for (int y = 0; y < th; ++y)
    for (int x = 0; x < tw; ++x)
      canvas.at(ox + x, oy + y) = 1.0f - scaled.at(x, y);
  return canvas;
}

}  // namespace taseval
