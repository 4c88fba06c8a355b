#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "taseval/codec.hpp"
#include "taseval/colorconv.hpp"
#include "taseval/colordiff.hpp"
#include "taseval/fsim.hpp"
#include "taseval/styleextract.hpp"
#include "taseval/unicode.hpp"
#include "test_support.hpp"

using namespace taseval;
namespace fs = std::filesystem;

namespace {

RasterImage gray_to_srgb(const RasterImage& g) {
  RasterImage out(g.width(), g.height(), 3, Colorspace::SRGB);
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x)
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = g.at(x, y);
  return out;
}

// Text composed over a solid or gradient card, plus the exact ink mask.
RasterImage compose_card(const std::string& text, const GlyphTemplate& tpl,
                         const std::array<float, 3>& fill,
                         const std::array<float, 3>& bg_top,
                         const std::array<float, 3>& bg_bottom,
                         RasterImage* gt_mask = nullptr) {
  const RasterImage render = render_text_gray(text, tpl, 128, 128);
  RasterImage img(128, 128, 3, Colorspace::SRGB);
  RasterImage mask(128, 128, 1, Colorspace::GRAY, 0.0f);
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) {
      const float g = render.at(x, y);
      const float t = static_cast<float>(y) / 127.0f;
      for (int c = 0; c < 3; ++c) {
        const float bg = bg_top[c] + (bg_bottom[c] - bg_top[c]) * t;
        img.at(x, y, c) = g * bg + (1.0f - g) * fill[c];
      }
      mask.at(x, y) = g < 0.5f ? 1.0f : 0.0f;
    }
  if (gt_mask) *gt_mask = std::move(mask);
  return img;
}

double mask_iou(const RasterImage& a, const RasterImage& b) {
  double inter = 0.0, uni = 0.0;
  for (size_t i = 0; i < a.data().size(); ++i) {
    const bool pa = a.data()[i] > 0.5f, pb = b.data()[i] > 0.5f;
    inter += pa && pb;
    uni += pa || pb;
  }
  return uni == 0.0 ? 1.0 : inter / uni;
}

}  // namespace

TEST_CASE("extract_text_mask: recovers the glyph support") {
  const GlyphTemplate tpl = make_builtin_atlas("bold");
  RasterImage gt;
  const RasterImage img = compose_card("HELLO", tpl, {0.05f, 0.05f, 0.05f},
                                       {0.95f, 0.95f, 0.95f},
                                       {0.95f, 0.95f, 0.95f}, &gt);
  const TextMask tm = extract_text_mask(img);
  CHECK_FALSE(tm.degenerate);
  CHECK(mask_iou(tm.mask, gt) > 0.9);
  for (float v : tm.mask.data()) CHECK((v == 0.0f || v == 1.0f));
}

TEST_CASE("extract_text_mask: polarity invariance on inverted input") {
  const GlyphTemplate tpl = make_builtin_atlas("bold");
  const RasterImage img = compose_card("INK", tpl, {0.1f, 0.1f, 0.1f},
                                       {0.9f, 0.9f, 0.9f}, {0.9f, 0.9f, 0.9f});
  RasterImage inverted = img;
  for (float& v : inverted.data()) v = 1.0f - v;

  const TextMask m0 = extract_text_mask(img);
  const TextMask m1 = extract_text_mask(inverted);
  CHECK(mask_iou(m0.mask, m1.mask) > 0.99);
}

TEST_CASE("extract_text_mask: constant image is degenerate") {
  RasterImage flat(64, 64, 3, Colorspace::SRGB, 0.5f);
  const TextMask tm = extract_text_mask(flat);
  CHECK(tm.degenerate);
  for (float v : tm.mask.data()) CHECK(v == 0.0f);
}

TEST_CASE("estimate_text_color: uniform region and median majority") {
  RasterImage img(10, 1, 3, Colorspace::SRGB);
  RasterImage mask(10, 1, 1, Colorspace::GRAY, 1.0f);
  for (int x = 0; x < 10; ++x) {
    img.at(x, 0, 0) = x < 6 ? 0.8f : 0.1f;  // 60% red-ish, 40% blue-ish
    img.at(x, 0, 1) = 0.1f;
    img.at(x, 0, 2) = x < 6 ? 0.1f : 0.8f;
  }
  const LabPixel est = estimate_text_color(img, mask);
  const LabPixel red = srgb_pixel_to_lab(0.8, 0.1, 0.1);
  CHECK(est.L == doctest::Approx(red.L).epsilon(1e-4));
  CHECK(est.a == doctest::Approx(red.a).epsilon(1e-4));
  CHECK(est.b == doctest::Approx(red.b).epsilon(1e-4));

  RasterImage uniform(4, 4, 3, Colorspace::SRGB);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      uniform.at(x, y, 0) = 0.6f;
      uniform.at(x, y, 1) = 0.2f;
      uniform.at(x, y, 2) = 0.3f;
    }
  RasterImage all(4, 4, 1, Colorspace::GRAY, 1.0f);
  const LabPixel u = estimate_text_color(uniform, all);
  const LabPixel expected = srgb_pixel_to_lab(0.6f, 0.2f, 0.3f);
  CHECK(u.L == doctest::Approx(expected.L).epsilon(1e-6));

  RasterImage none(4, 4, 1, Colorspace::GRAY, 0.0f);
  CHECK_THROWS_AS(estimate_text_color(uniform, none), EmptyMask);
}

TEST_CASE("estimate via extract_style: anti-aliased fill within deltaE 3") {
  const GlyphTemplate tpl = make_builtin_atlas("sans");
  const std::array<float, 3> fill = {0.75f, 0.15f, 0.1f};
  const RasterImage img = compose_card("COLOR", tpl, fill, {0.93f, 0.94f, 0.9f},
                                       {0.93f, 0.94f, 0.9f});
  const StyleTriple t =
      extract_style(img, "COLOR", tpl, ExtractorMode::classical());
  // the colorized render's ink pixels carry the estimated fill
  const TextMask tm = extract_text_mask(t.colorized);
  REQUIRE_FALSE(tm.degenerate);
  const LabPixel est = estimate_text_color(t.colorized, tm.mask);
  const LabPixel truth = srgb_pixel_to_lab(fill[0], fill[1], fill[2]);
  CHECK(ciede2000(est, truth) < 3.0);
}

TEST_CASE("render_text_gray: errors and shape") {
  const GlyphTemplate tpl = make_builtin_atlas("sans");
  CHECK_THROWS_AS(render_text_gray("", tpl, 64, 64), EmptyText);
  CHECK_THROWS_AS(render_text_gray("a\xE2\x98\x83", tpl, 64, 64),
                  UncoveredCodepoint);  // snowman U+2603

  const RasterImage r = render_text_gray("AB", tpl, 96, 64);
  CHECK(r.width() == 96);
  CHECK(r.height() == 64);
  float lo = 1.0f;
  for (float v : r.data()) lo = std::min(lo, v);
  CHECK(lo < 0.5f);  // some ink
  // margins stay clear: the 10% frame has no ink
  for (int x = 0; x < 96; ++x) {
    CHECK(r.at(x, 0) == 1.0f);
    CHECK(r.at(x, 63) == 1.0f);
  }
}

TEST_CASE("render_text_gray: single glyph ink scales with the layout") {
  const GlyphTemplate tpl = make_builtin_atlas("sans");
  const RasterImage cell = tpl.rasterize('M');

  double cell_ink = 0.0;
  int min_x = cell.width(), max_x = -1, min_y = cell.height(), max_y = -1;
  for (int y = 0; y < cell.height(); ++y)
    for (int x = 0; x < cell.width(); ++x) {
      cell_ink += cell.at(x, y);
      if (cell.at(x, y) > 0.02f) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
      }
    }

  const RasterImage r = render_text_gray("M", tpl, 128, 128);
  double render_ink = 0.0;
  int rmin_y = 128, rmax_y = -1;
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) {
      render_ink += 1.0 - r.at(x, y);
      if (1.0f - r.at(x, y) > 0.02f) {
        rmin_y = std::min(rmin_y, y);
        rmax_y = std::max(rmax_y, y);
      }
    }
  const double scale =
      static_cast<double>(rmax_y - rmin_y + 1) / (max_y - min_y + 1);
  CHECK(render_ink ==
        doctest::Approx(cell_ink * scale * scale).epsilon(0.05));
}

TEST_CASE("render_text_gray: Arabic renders right-to-left") {
  const GlyphTemplate tpl = make_builtin_atlas("sans");

  // pick the heaviest and lightest covered glyphs in the Arabic block
  uint32_t heavy = 0x0627, light = 0x0627;
  double heavy_ink = -1.0, light_ink = 1e18;
  for (uint32_t cp = 0x0621; cp <= 0x063A; ++cp) {
    const RasterImage cell = tpl.rasterize(cp);
    double ink = 0.0;
    for (float v : cell.data()) ink += v;
    if (ink > heavy_ink) {
      heavy_ink = ink;
      heavy = cp;
    }
    if (ink < light_ink) {
      light_ink = ink;
      light = cp;
    }
  }
  REQUIRE(heavy != light);
  REQUIRE(heavy_ink > 1.5 * light_ink);

  auto half_masses = [&](const std::vector<uint32_t>& cps) {
    const RasterImage img = render_text_gray(utf8_encode(cps), tpl, 128, 64);
    double left = 0.0, right = 0.0;
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 128; ++x)
        (x < 64 ? left : right) += 1.0 - img.at(x, y);
    return std::pair{left, right};
  };

  // logical order heavy,light: right-to-left puts the heavy glyph right
  const auto [l1, r1] = half_masses({heavy, light});
  CHECK(r1 > l1);
  const auto [l2, r2] = half_masses({light, heavy});
  CHECK(l2 > r2);
}

TEST_CASE("colorize: endpoints and midpoint") {
  const LabPixel fill = srgb_pixel_to_lab(0.8, 0.2, 0.1);
  const LabPixel bg = srgb_pixel_to_lab(0.1, 0.3, 0.9);

  RasterImage zeros(3, 3, 1, Colorspace::GRAY, 0.0f);
  RasterImage c0 = colorize(zeros, fill, bg);
  CHECK(c0.at(1, 1, 0) == doctest::Approx(0.8).epsilon(1e-2));
  CHECK(c0.at(1, 1, 1) == doctest::Approx(0.2).epsilon(1e-2));

  RasterImage ones(3, 3, 1, Colorspace::GRAY, 1.0f);
  RasterImage c1 = colorize(ones, fill, bg);
  CHECK(c1.at(1, 1, 2) == doctest::Approx(0.9).epsilon(1e-2));

  RasterImage half(3, 3, 1, Colorspace::GRAY, 0.5f);
  RasterImage cm = colorize(half, fill, bg);
  const LabPixel got = srgb_pixel_to_lab(cm.at(1, 1, 0), cm.at(1, 1, 1),
                                         cm.at(1, 1, 2));
  CHECK(got.L == doctest::Approx(0.5 * (fill.L + bg.L)).epsilon(5e-3));
  CHECK(got.a == doctest::Approx(0.5 * (fill.a + bg.a)).epsilon(0.02).scale(1));
  CHECK(got.b == doctest::Approx(0.5 * (fill.b + bg.b)).epsilon(0.02).scale(1));
}

TEST_CASE("reshape_font_template: stroke geometry survives, fonts separate") {
  const GlyphTemplate thin = make_builtin_atlas("thin");
  const GlyphTemplate bold = make_builtin_atlas("bold");
  const GlyphTemplate tpl = make_builtin_atlas("sans");

  auto reshape_of = [&](const GlyphTemplate& font) {
    const RasterImage img = gray_to_srgb(render_text_gray("REF", font, 128, 128));
    const TextMask tm = extract_text_mask(img);
    REQUIRE_FALSE(tm.degenerate);
    return reshape_font_template(img, tm.mask, tpl);
  };

  const RasterImage thin_a = reshape_of(thin);
  const RasterImage bold_a = reshape_of(bold);
  // a second thin source with a different background level, same font
  RasterImage thin_src = gray_to_srgb(render_text_gray("REF", thin, 128, 128));
  for (float& v : thin_src.data()) v = 0.1f + 0.85f * v;
  const TextMask tm2 = extract_text_mask(thin_src);
  const RasterImage thin_b = reshape_font_template(thin_src, tm2.mask, tpl);

  const double same_font = fsim(thin_a, thin_b);
  const double cross_font = fsim(thin_a, bold_a);
  CHECK(same_font > cross_font);
}

TEST_CASE("reshape_font_template: whole-image mask degenerates to a resample") {
  const GlyphTemplate tpl = make_builtin_atlas("sans");
  RasterImage img(64, 32, 3, Colorspace::SRGB, 0.4f);
  RasterImage mask(64, 32, 1, Colorspace::GRAY, 1.0f);
  const RasterImage out = reshape_font_template(img, mask, tpl, 128);
  // the mask box fills the 80% layout box as ink
  int ink = 0;
  for (float v : out.data()) ink += v == 0.0f;
  // 102x51 box (80% of 128 wide, aspect 2:1)
  CHECK(ink == doctest::Approx(102 * 51).epsilon(0.05));
  CHECK(out.at(0, 0) == 1.0f);

  RasterImage empty(64, 32, 1, Colorspace::GRAY, 0.0f);
  CHECK_THROWS_AS(reshape_font_template(img, empty, tpl, 128), EmptyMask);
}

TEST_CASE("reshape_font_template: template glyph round trip") {
  const GlyphTemplate tpl = make_builtin_atlas("sans");
  const RasterImage render = render_text_gray("A", tpl, 128, 128);
  const RasterImage img = gray_to_srgb(render);
  const TextMask tm = extract_text_mask(img);
  REQUIRE_FALSE(tm.degenerate);
  const RasterImage reshaped = reshape_font_template(img, tm.mask, tpl, 128);

  // compare ink supports
  RasterImage render_mask(128, 128, 1, Colorspace::GRAY);
  RasterImage reshaped_mask(128, 128, 1, Colorspace::GRAY);
  for (size_t i = 0; i < render.data().size(); ++i) {
    render_mask.data()[i] = render.data()[i] < 0.5f ? 1.0f : 0.0f;
    reshaped_mask.data()[i] = reshaped.data()[i] < 0.5f ? 1.0f : 0.0f;
  }
  CHECK(mask_iou(render_mask, reshaped_mask) > 0.95);
}

TEST_CASE("remove_text: identity, uniform card, gradient card") {
  RasterImage img(64, 64, 3, Colorspace::SRGB, 0.37f);
  RasterImage empty(64, 64, 1, Colorspace::GRAY, 0.0f);
  const RasterImage same = remove_text(img, empty);
  CHECK(std::equal(img.data().begin(), img.data().end(), same.data().begin()));

  const GlyphTemplate tpl = make_builtin_atlas("bold");
  RasterImage gt_mask;
  const RasterImage uniform_card =
      compose_card("GONE", tpl, {0.1f, 0.1f, 0.2f}, {0.8f, 0.82f, 0.8f},
                   {0.8f, 0.82f, 0.8f}, &gt_mask);
  const RasterImage cleaned = remove_text(uniform_card, gt_mask);
  float max_dev = 0.0f;
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x)
      for (int c = 0; c < 3; ++c)
        max_dev = std::max(max_dev,
                           std::abs(cleaned.at(x, y, c) -
                                    uniform_card.at(0, 0, c)));
  CHECK(max_dev <= 2.0f / 255.0f);

  RasterImage grad_mask;
  const RasterImage grad_card =
      compose_card("GRAD", tpl, {0.05f, 0.05f, 0.05f}, {0.9f, 0.9f, 0.9f},
                   {0.3f, 0.3f, 0.3f}, &grad_mask);
  const RasterImage grad_clean = remove_text(grad_card, grad_mask);
  double mae = 0.0;
  int count = 0;
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) {
      if (grad_mask.at(x, y) <= 0.5f) continue;
      const float t = static_cast<float>(y) / 127.0f;
      const float truth = 0.9f + (0.3f - 0.9f) * t;
      for (int c = 0; c < 3; ++c) {
        mae += std::abs(grad_clean.at(x, y, c) - truth);
        ++count;
      }
    }
  mae /= count;
  CHECK(mae < 5.0 / 255.0);
}

TEST_CASE("extract_style: classical contract and determinism") {
  const GlyphTemplate tpl = make_builtin_atlas("sans");
  const RasterImage img = compose_card("STYLE", make_builtin_atlas("bold"),
                                       {0.1f, 0.1f, 0.5f}, {0.9f, 0.9f, 0.85f},
                                       {0.9f, 0.9f, 0.85f});
  const StyleTriple t =
      extract_style(img, "STYLE", tpl, ExtractorMode::classical());
  CHECK(t.extractor == ExtractorKind::CLASSICAL);
  for (const RasterImage* plane :
       {&t.colorized, &t.background}) {
    CHECK(plane->width() == 128);
    CHECK(plane->height() == 128);
    CHECK(plane->channels() == 3);
  }
  CHECK(t.font_glyph.width() == 128);
  CHECK(t.font_glyph.channels() == 1);
  for (float v : t.mask.data()) CHECK((v == 0.0f || v == 1.0f));

  const StyleTriple t2 =
      extract_style(img, "STYLE", tpl, ExtractorMode::classical());
  CHECK(std::equal(t.colorized.data().begin(), t.colorized.data().end(),
                   t2.colorized.data().begin()));
  CHECK(std::equal(t.background.data().begin(), t.background.data().end(),
                   t2.background.data().begin()));
}

TEST_CASE("extract_style: external triple layout") {
  const GlyphTemplate tpl = make_builtin_atlas("sans");
  const fs::path dir = fs::temp_directory_path() / "taseval_ext_triple";
  fs::create_directories(dir);

  testsup::Rng rng(77);
  const RasterImage clr = testsup::random_srgb(128, 128, rng);
  const RasterImage fnt = testsup::random_srgb(64, 64, rng);  // resized on load
  const RasterImage bg = testsup::random_srgb(128, 128, rng);
  RasterImage seg(128, 128, 1, Colorspace::GRAY, 0.0f);
  for (int y = 40; y < 90; ++y)
    for (int x = 20; x < 100; ++x) seg.at(x, y) = 1.0f;

  save_png(clr, (dir / "p1.a.clr.png").string());
  save_png(fnt, (dir / "p1.a.fnt.png").string());
  save_png(bg, (dir / "p1.a.bg.png").string());
  save_png(seg, (dir / "p1.a.seg.png").string());

  const StyleTriple t = extract_style(RasterImage(8, 8, 3, Colorspace::SRGB),
                                      "X", tpl,
                                      ExtractorMode::external(dir.string()),
                                      "p1", "a");
  CHECK(t.extractor == ExtractorKind::EXTERNAL);
  CHECK(t.colorized.width() == 128);
  CHECK(t.font_glyph.width() == 128);
  CHECK(t.font_glyph.channels() == 1);
  for (float v : t.mask.data()) CHECK((v == 0.0f || v == 1.0f));

  fs::remove(dir / "p1.a.bg.png");
  try {
    extract_style(RasterImage(8, 8, 3, Colorspace::SRGB), "X", tpl,
                  ExtractorMode::external(dir.string()), "p1", "a");
    FAIL("expected MissingExternalFile");
  } catch (const MissingExternalFile& e) {
    CHECK(std::string(e.what()).find("p1.a.bg.png") != std::string::npos);
  }
}
