#include "taseval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "taseval/codec.hpp"
#include "taseval/colorconv.hpp"
#include "taseval/colordiff.hpp"
#include "taseval/glyph.hpp"

namespace taseval {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// splitmix64 stream; all sampling goes through this for reproducibility.
struct Rng {
  uint64_t state;
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  int pick(int n) { return static_cast<int>(next() % n); }
};

LabPixel to_lab(const std::array<double, 3>& rgb) {
  return srgb_pixel_to_lab(rgb[0], rgb[1], rgb[2]);
}

double fill_delta_e(const std::array<double, 3>& a,
                    const std::array<double, 3>& b) {
  return ciede2000(to_lab(a), to_lab(b));
}

std::string random_text(Rng& rng, int len = 0) {
  static const char alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  if (len <= 0) len = 4 + rng.pick(5);
  std::string s;
  for (int i = 0; i < len; ++i) s.push_back(alphabet[rng.pick(36)]);
  return s;
}

struct BgSpec {
  std::string family;
  std::array<double, 3> color;
  double angle = 0.0;      // gradient
  uint64_t noise_seed = 0; // noise
};

RasterImage render_background(const BgSpec& bg, int canvas) {
  RasterImage img(canvas, canvas, 3, Colorspace::SRGB);
  if (bg.family == "solid") {
    for (int y = 0; y < canvas; ++y)
      for (int x = 0; x < canvas; ++x)
        for (int c = 0; c < 3; ++c)
          img.at(x, y, c) = static_cast<float>(bg.color[c]);
    return img;
  }
  if (bg.family == "gradient") {
    const double ca = std::cos(bg.angle), sa = std::sin(bg.angle);
    for (int y = 0; y < canvas; ++y)
      for (int x = 0; x < canvas; ++x) {
        const double t =
            0.5 + 0.5 * ((x * ca + y * sa) / canvas - 0.5 * (ca + sa)) * 2.0;
        const double shade = 0.75 + 0.5 * std::clamp(t, 0.0, 1.0) * 0.5;
        for (int c = 0; c < 3; ++c)
          img.at(x, y, c) =
              static_cast<float>(std::clamp(bg.color[c] * shade, 0.0, 1.0));
      }
    return img;
  }
  // smooth value noise around the base color
  Rng nrng{bg.noise_seed};
  const int grid = 9;
  std::vector<double> coarse(static_cast<size_t>(grid) * grid);
  for (double& v : coarse) v = nrng.uniform() - 0.5;
  for (int y = 0; y < canvas; ++y)
    for (int x = 0; x < canvas; ++x) {
      const double gx = static_cast<double>(x) / canvas * (grid - 1);
      const double gy = static_cast<double>(y) / canvas * (grid - 1);
      const int x0 = static_cast<int>(gx), y0 = static_cast<int>(gy);
      const double ax = gx - x0, ay = gy - y0;
      auto at = [&](int i, int j) {
        return coarse[static_cast<size_t>(std::min(j, grid - 1)) * grid +
                      std::min(i, grid - 1)];
      };
      const double v = (1 - ax) * (1 - ay) * at(x0, y0) +
                       ax * (1 - ay) * at(x0 + 1, y0) +
                       (1 - ax) * ay * at(x0, y0 + 1) +
                       ax * ay * at(x0 + 1, y0 + 1);
      for (int c = 0; c < 3; ++c)
        img.at(x, y, c) = static_cast<float>(
            std::clamp(bg.color[c] + 0.22 * v, 0.0, 1.0));
    }
  return img;
}

struct SampleSpec {
  std::string text;
  int font;
  int palette;  // fill color index
  BgSpec bg;
};

RasterImage compose(const SampleSpec& spec, const VariationConfig& cfg,
                    const std::vector<GlyphTemplate>& atlases,
                    RasterImage* mask_out) {
  const RasterImage gray = render_text_gray(spec.text, atlases[spec.font],
                                            cfg.canvas, cfg.canvas);
  const RasterImage bg_img = render_background(spec.bg, cfg.canvas);
  const auto& fill = cfg.palette[spec.palette].fill;

  RasterImage img(cfg.canvas, cfg.canvas, 3, Colorspace::SRGB);
  RasterImage mask(cfg.canvas, cfg.canvas, 1, Colorspace::GRAY, 0.0f);
  for (int y = 0; y < cfg.canvas; ++y)
    for (int x = 0; x < cfg.canvas; ++x) {
      const double g = gray.at(x, y);  // 1 background, 0 ink
      for (int c = 0; c < 3; ++c)
        img.at(x, y, c) = static_cast<float>(
            g * bg_img.at(x, y, c) + (1.0 - g) * fill[c]);
      mask.at(x, y) = g < 0.5f ? 1.0f : 0.0f;
    }
  if (mask_out) *mask_out = std::move(mask);
  return img;
}

int pick_distinct(Rng& rng, int n, int avoid) {
  if (n < 2) throw InvalidConfig("need at least 2 options to vary");
  int v = rng.pick(n);
  while (v == avoid) v = rng.pick(n);
  return v;
}

// Fill with deltaE >= 20 from the current fill and enough contrast against
// the background to stay extractable.
int pick_contrasting_fill(Rng& rng, const VariationConfig& cfg, int avoid,
                          const std::array<double, 3>& bg_color) {
  std::vector<int> candidates;
  for (int i = 0; i < static_cast<int>(cfg.palette.size()); ++i) {
    if (i == avoid) continue;
    if (fill_delta_e(cfg.palette[i].fill, cfg.palette[avoid].fill) < 20.0)
      continue;
    if (fill_delta_e(cfg.palette[i].fill, bg_color) < 15.0) continue;
    candidates.push_back(i);
  }
  if (candidates.empty())
    throw InvalidConfig("palette has no fill 20 deltaE away with contrast");
  return candidates[rng.pick(static_cast<int>(candidates.size()))];
}

}  // namespace

Variation variation_from_string(const std::string& s) {
  if (s == "T") return Variation::T;
  if (s == "F") return Variation::F;
  if (s == "C") return Variation::C;
  if (s == "B") return Variation::B;
  if (s == "FCB") return Variation::FCB;
  throw InvalidConfig("unknown variation: " + s);
}

std::string to_string(Variation v) {
  switch (v) {
    case Variation::T: return "T";
    case Variation::F: return "F";
    case Variation::C: return "C";
    case Variation::B: return "B";
    case Variation::FCB: return "FCB";
  }
  return "?";
}

const std::vector<PaletteEntry>& default_palette() {
  static const std::vector<PaletteEntry> p = {
      {{0.10, 0.10, 0.10}, {0.95, 0.95, 0.92}},
      {{0.85, 0.10, 0.10}, {0.98, 0.95, 0.86}},
      {{0.05, 0.20, 0.60}, {0.90, 0.93, 0.98}},
      {{0.95, 0.95, 0.95}, {0.15, 0.15, 0.20}},
      {{0.92, 0.80, 0.10}, {0.20, 0.10, 0.30}},
      {{0.00, 0.45, 0.20}, {0.93, 1.00, 0.90}},
      {{0.60, 0.10, 0.50}, {0.96, 0.90, 0.95}},
      {{1.00, 0.55, 0.00}, {0.10, 0.15, 0.20}},
      {{0.20, 0.70, 0.90}, {0.05, 0.05, 0.10}},
      {{0.45, 0.28, 0.08}, {0.96, 0.91, 0.80}},
  };
  return p;
}

SynthResult synth_variations(const VariationConfig& cfg,
                             const std::string& out_dir) {
  VariationConfig c = cfg;
  if (c.palette.empty()) c.palette = default_palette();
  if (c.n_pairs < 1) throw InvalidConfig("n_pairs must be >= 1");
  if (c.canvas < 32) throw InvalidConfig("canvas must be >= 32");
  if ((c.variation == Variation::F || c.variation == Variation::FCB) &&
      c.fonts.size() < 2)
    throw InvalidConfig("font variation needs at least 2 atlases");
  if (c.backgrounds.empty()) throw InvalidConfig("no background families");

  std::vector<GlyphTemplate> atlases;
  for (const std::string& name : c.fonts)
    atlases.push_back(make_builtin_atlas(name));

  const fs::path root(out_dir);
  fs::create_directories(root / "img");
  fs::create_directories(root / "masks");

  SynthResult result;
  const std::string tag = to_string(c.variation);

  for (int i = 0; i < c.n_pairs; ++i) {
    Rng rng{c.seed * 0x100000001b3ULL + static_cast<uint64_t>(i) * 7919 + 17};

    SampleSpec a;
    a.text = random_text(rng);
    a.font = rng.pick(static_cast<int>(atlases.size()));
    a.palette = rng.pick(static_cast<int>(c.palette.size()));
    a.bg.family = c.backgrounds[rng.pick(static_cast<int>(c.backgrounds.size()))];
    a.bg.color = c.palette[a.palette].bg;
    a.bg.angle = rng.uniform() * 2.0 * M_PI;
    a.bg.noise_seed = rng.next();

    SampleSpec b = a;  // same everything unless varied below
    switch (c.variation) {
      case Variation::T: {
        // same length keeps the bbox-normalized layouts comparable, so the
        // text change probes content robustness rather than scale
        const int len = static_cast<int>(a.text.size());
        std::string t = random_text(rng, len);
        while (t == a.text) t = random_text(rng, len);
        b.text = t;
        break;
      }
      case Variation::F:
        b.font = pick_distinct(rng, static_cast<int>(atlases.size()), a.font);
        break;
      case Variation::C: {
        const int nf =
            pick_contrasting_fill(rng, c, a.palette, a.bg.color);
        // fill changes, background keeps image A's
        b.palette = nf;
        b.bg.color = a.bg.color;
        break;
      }
      case Variation::B: {
        const std::string old = a.bg.family;
        std::string family = old;
        while (family == old)
          family = c.backgrounds[rng.pick(
              static_cast<int>(c.backgrounds.size()))];
        b.bg.family = family;
        const int np = pick_distinct(
            rng, static_cast<int>(c.palette.size()), a.palette);
        b.bg.color = c.palette[np].bg;
        b.bg.angle = rng.uniform() * 2.0 * M_PI;
        b.bg.noise_seed = rng.next();
        break;
      }
      case Variation::FCB: {
        b.font = pick_distinct(rng, static_cast<int>(atlases.size()), a.font);
        const std::string old = a.bg.family;
        std::string family = old;
        while (family == old)
          family = c.backgrounds[rng.pick(
              static_cast<int>(c.backgrounds.size()))];
        b.bg.family = family;
        const int np = pick_distinct(
            rng, static_cast<int>(c.palette.size()), a.palette);
        b.bg.color = c.palette[np].bg;
        b.bg.angle = rng.uniform() * 2.0 * M_PI;
        b.bg.noise_seed = rng.next();
        b.palette = pick_contrasting_fill(rng, c, a.palette, b.bg.color);
        break;
      }
    }
    if (c.variation == Variation::C || c.variation == Variation::B ||
        c.variation == Variation::F || c.variation == Variation::FCB)
      b.text = a.text;

    char pair_id[32];
    snprintf(pair_id, sizeof(pair_id), "%s-%05d", tag.c_str(), i);

    RasterImage mask_a, mask_b;
    const RasterImage img_a = compose(a, c, atlases, &mask_a);
    const RasterImage img_b = compose(b, c, atlases, &mask_b);

    PairEntry entry;
    entry.pair_id = pair_id;
    entry.lang = "other";
    entry.image_a = (root / "img" / (std::string(pair_id) + ".a.png")).string();
    entry.image_b = (root / "img" / (std::string(pair_id) + ".b.png")).string();
    entry.text_a = a.text;
    entry.text_b = b.text;
    entry.source = "synth";
    entry.split = "eval";
    save_png(img_a, entry.image_a);
    save_png(img_b, entry.image_b);

    SidecarEntry sc;
    sc.pair_id = pair_id;
    sc.font_a = c.fonts[a.font];
    sc.font_b = c.fonts[b.font];
    sc.fill_a = c.palette[a.palette].fill;
    sc.fill_b = c.palette[b.palette].fill;
    sc.bg_a = a.bg.family;
    sc.bg_b = b.bg.family;
    sc.mask_a = (root / "masks" / (std::string(pair_id) + ".a.png")).string();
    sc.mask_b = (root / "masks" / (std::string(pair_id) + ".b.png")).string();
    save_png(mask_a, sc.mask_a);
    save_png(mask_b, sc.mask_b);

    result.manifest.entries.push_back(std::move(entry));
    result.sidecar.push_back(std::move(sc));
  }
  return result;
}

VariationConfig parse_variation_config(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw IoError("cannot open " + json_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("config parse: ") + ex.what());
  }
  VariationConfig cfg;
  try {
    cfg.variation = variation_from_string(j.at("variation").get<std::string>());
    cfg.n_pairs = j.value("n_pairs", cfg.n_pairs);
    cfg.canvas = j.value("canvas", cfg.canvas);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("fonts")) cfg.fonts = j.at("fonts").get<std::vector<std::string>>();
    if (j.contains("backgrounds"))
      cfg.backgrounds = j.at("backgrounds").get<std::vector<std::string>>();
    if (j.contains("palette")) {
      cfg.palette.clear();
      for (const auto& e : j.at("palette")) {
        PaletteEntry p{};
        for (int i = 0; i < 3; ++i) {
          p.fill[i] = e.at("fill").at(i).get<double>();
          p.bg[i] = e.at("bg").at(i).get<double>();
        }
        cfg.palette.push_back(p);
      }
    }
  } catch (const json::exception& ex) {
    throw InvalidConfig(std::string("config: ") + ex.what());
  }
  return cfg;
}

void write_sidecar(const std::vector<SidecarEntry>& sidecar,
                   const std::string& path) {
  json arr = json::array();
  for (const SidecarEntry& e : sidecar) {
    arr.push_back({{"pair_id", e.pair_id},
                   {"font_a", e.font_a},
                   {"font_b", e.font_b},
                   {"fill_a", e.fill_a},
                   {"fill_b", e.fill_b},
                   {"bg_a", e.bg_a},
                   {"bg_b", e.bg_b},
                   {"mask_a", e.mask_a},
                   {"mask_b", e.mask_b}});
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << arr.dump(2) << "\n";
  if (!out) throw IoError("short write to " + path);
}

}  // namespace taseval
