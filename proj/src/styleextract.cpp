#include "taseval/styleextract.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <queue>

#include "taseval/codec.hpp"
#include "taseval/colorconv.hpp"
#include "taseval/inpaint.hpp"
#include "taseval/resample.hpp"

namespace taseval {

namespace {

// Otsu threshold over a 256-bin histogram; returns the bin split.
int otsu_threshold(const std::vector<int>& hist, int total) {
  double sum = 0.0;
  for (int i = 0; i < 256; ++i) sum += static_cast<double>(i) * hist[i];
  double sum_b = 0.0;
  int w_b = 0;
  double best_var = -1.0;
  int best_t = 127;
  for (int ti = 0; ti < 256; ++ti) {
    w_b += hist[ti];
    if (w_b == 0) continue;
    const int w_f = total - w_b;
    if (w_f == 0) break;
    sum_b += static_cast<double>(ti) * hist[ti];
    const double m_b = sum_b / w_b;
    const double m_f = (sum - sum_b) / w_f;
    const double between =
        static_cast<double>(w_b) * w_f * (m_b - m_f) * (m_b - m_f);
    if (between > best_var) {
      best_var = between;
      best_t = ti;
    }
  }
  return best_t;
}

// Remove 8-connected components below min_area.
void drop_small_components(RasterImage& mask, int min_area) {
  const int w = mask.width(), h = mask.height();
  std::vector<int> label(static_cast<size_t>(w) * h, -1);
  auto idx = [&](int x, int y) { return static_cast<size_t>(y) * w + x; };
  int next_label = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (mask.at(x, y) <= 0.5f || label[idx(x, y)] >= 0) continue;
      std::vector<std::pair<int, int>> pixels;
      std::queue<std::pair<int, int>> q;
      q.push({x, y});
      label[idx(x, y)] = next_label;
      while (!q.empty()) {
        const auto [cx, cy] = q.front();
        q.pop();
        pixels.push_back({cx, cy});
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            if (mask.at(nx, ny) > 0.5f && label[idx(nx, ny)] < 0) {
              label[idx(nx, ny)] = next_label;
              q.push({nx, ny});
            }
          }
      }
      if (static_cast<int>(pixels.size()) < min_area)
        for (const auto& [px, py] : pixels) mask.at(px, py) = 0.0f;
      ++next_label;
    }
}

double channel_median(std::vector<float>& v) {
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

LabPixel median_lab(const RasterImage& lab, const RasterImage* mask,
                    bool inverted) {
  std::vector<float> ls, as, bs;
  for (int y = 0; y < lab.height(); ++y)
    for (int x = 0; x < lab.width(); ++x) {
      if (mask) {
        const bool in = mask->at(x, y) > 0.5f;
        if (in == inverted) continue;
      }
      ls.push_back(lab.at(x, y, 0));
      as.push_back(lab.at(x, y, 1));
      bs.push_back(lab.at(x, y, 2));
    }
  if (ls.empty()) throw EmptyMask("mask selects no pixels");
  return {channel_median(ls), channel_median(as), channel_median(bs)};
}

RasterImage load_external_plane(const std::string& dir,
                                const std::string& pair_id,
                                const std::string& side,
                                const std::string& kind) {
  const std::filesystem::path path =
      std::filesystem::path(dir) / (pair_id + "." + side + "." + kind + ".png");
  if (!std::filesystem::exists(path))
    throw MissingExternalFile("missing style plane: " + path.string());
  RasterImage img = load_image(path.string());
  if (img.width() != kStyleResolution || img.height() != kStyleResolution)
    img = resize_bilinear(img, kStyleResolution, kStyleResolution);
  return img;
}

}  // namespace

TextMask extract_text_mask(const RasterImage& img) {
  const RasterImage luma =
      img.channels() == 1 ? img : to_grayscale(img);
  const int w = luma.width(), h = luma.height();

  std::vector<int> hist(256, 0);
  float lo = 1.0f, hi = 0.0f;
  for (float v : luma.data()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    const int bin = std::clamp(static_cast<int>(v * 255.0f + 0.5f), 0, 255);
    ++hist[bin];
  }
  if (hi - lo < 1.0f / 255.0f) {
    return {RasterImage(w, h, 1, Colorspace::GRAY, 0.0f), true};
  }

  const int t = otsu_threshold(hist, w * h);
  const float thr = t / 255.0f;

  // Polarity: the class occupying less of the border is the text.
  int border_above = 0, border_total = 0;
  auto count_border = [&](int x, int y) {
    ++border_total;
    if (luma.at(x, y) > thr) ++border_above;
  };
  for (int x = 0; x < w; ++x) {
    count_border(x, 0);
    if (h > 1) count_border(x, h - 1);
  }
  for (int y = 1; y + 1 < h; ++y) {
    count_border(0, y);
    if (w > 1) count_border(w - 1, y);
  }
  const bool fg_above = 2 * border_above < border_total;

  RasterImage mask(w, h, 1, Colorspace::GRAY, 0.0f);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      mask.at(x, y) = (luma.at(x, y) > thr) == fg_above ? 1.0f : 0.0f;

  const int min_area = std::max(1, w * h / 1000);
  drop_small_components(mask, min_area);
  mask = erode(dilate(mask, 1), 1);  // 3x3 close
  return {std::move(mask), false};
}

LabPixel estimate_text_color(const RasterImage& img, const RasterImage& mask) {
  if (img.width() != mask.width() || img.height() != mask.height())
    throw ShapeMismatch("mask size differs from image");
  const RasterImage lab =
      img.colorspace() == Colorspace::LAB ? img : srgb_to_lab(img);
  return median_lab(lab, &mask, false);
}

RasterImage colorize(const RasterImage& gray, const LabPixel& fill,
                     const LabPixel& bg) {
  if (gray.channels() != 1)
    throw WrongColorspace("colorize expects a grayscale render");
  RasterImage out(gray.width(), gray.height(), 3, Colorspace::SRGB);
  for (int y = 0; y < gray.height(); ++y)
    for (int x = 0; x < gray.width(); ++x) {
      const double g = std::clamp<double>(gray.at(x, y), 0.0, 1.0);
      const LabPixel mix{fill.L + (bg.L - fill.L) * g,
                         fill.a + (bg.a - fill.a) * g,
                         fill.b + (bg.b - fill.b) * g};
      double r, gg, b;
      lab_pixel_to_srgb(mix, &r, &gg, &b);
      out.at(x, y, 0) = static_cast<float>(r);
      out.at(x, y, 1) = static_cast<float>(gg);
      out.at(x, y, 2) = static_cast<float>(b);
    }
  return out;
}

RasterImage reshape_font_template(const RasterImage& img,
                                  const RasterImage& mask,
                                  const GlyphTemplate& tpl, int canvas) {
  (void)img;  // geometry comes from the mask; tpl fixes the layout metrics
  (void)tpl;
  int min_x = mask.width(), max_x = -1, min_y = mask.height(), max_y = -1;
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (mask.at(x, y) > 0.5f) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
      }
  if (max_x < 0) throw EmptyMask("reshape_font_template needs a non-empty mask");

  const int bw = max_x - min_x + 1, bh = max_y - min_y + 1;
  RasterImage crop(bw, bh, 1, Colorspace::GRAY);
  for (int y = 0; y < bh; ++y)
    for (int x = 0; x < bw; ++x)
      crop.at(x, y) = mask.at(min_x + x, min_y + y);

  const double scale = std::min(0.8 * canvas / bw, 0.8 * canvas / bh);
  const int tw = std::max(1, static_cast<int>(std::lround(bw * scale)));
  const int th = std::max(1, static_cast<int>(std::lround(bh * scale)));
  const RasterImage scaled = resize_bilinear(crop, tw, th);

  RasterImage out(canvas, canvas, 1, Colorspace::GRAY, 1.0f);
  const int ox = (canvas - tw) / 2, oy = (canvas - th) / 2;
  for (int y = 0; y < th; ++y)
    for (int x = 0; x < tw; ++x)
      out.at(ox + x, oy + y) = scaled.at(x, y) > 0.5f ? 0.0f : 1.0f;
  return out;
}

RasterImage remove_text(const RasterImage& img, const RasterImage& mask) {
  bool any = false;
  for (float v : mask.data())
    if (v > 0.5f) {
      any = true;
      break;
    }
  if (!any) return img;
  return inpaint_fast_marching(img, dilate(mask, 2));
}

StyleTriple extract_style(const RasterImage& img, const std::string& render_text,
                          const GlyphTemplate& tpl, const ExtractorMode& mode,
                          const std::string& pair_id, const std::string& side) {
  StyleTriple triple;
  if (mode.kind == ExtractorKind::EXTERNAL) {
    triple.extractor = ExtractorKind::EXTERNAL;
    triple.colorized =
        load_external_plane(mode.external_dir, pair_id, side, "clr");
    RasterImage fnt = load_external_plane(mode.external_dir, pair_id, side, "fnt");
    triple.font_glyph = fnt.channels() == 1 ? fnt : to_grayscale(fnt);
    triple.background =
        load_external_plane(mode.external_dir, pair_id, side, "bg");
    RasterImage seg = load_external_plane(mode.external_dir, pair_id, side, "seg");
    if (seg.channels() != 1) seg = to_grayscale(seg);
    for (float& v : seg.data()) v = v > 0.5f ? 1.0f : 0.0f;
    triple.mask = std::move(seg);
    return triple;
  }

  const RasterImage norm =
      img.width() == kStyleResolution && img.height() == kStyleResolution
          ? img
          : resize_bilinear(img, kStyleResolution, kStyleResolution);

  TextMask tm = extract_text_mask(norm);
  triple.degenerate_mask = tm.degenerate;
  const RasterImage lab = srgb_to_lab(norm);

  LabPixel fill, bg;
  bool mask_usable = !tm.degenerate;
  if (mask_usable) {
    // masks hugging the whole frame leave no background sample
    int on = 0;
    for (float v : tm.mask.data()) on += v > 0.5f;
    if (on == 0 || on == static_cast<int>(tm.mask.data().size()))
      mask_usable = false;
  }
  if (mask_usable) {
    bg = median_lab(lab, &tm.mask, true);
    // Anti-aliased stroke pixels blend toward the background; the median
    // over the half of the mask farthest from it sits on the stroke core.
    std::vector<std::pair<double, LabPixel>> ink;
    for (int y = 0; y < lab.height(); ++y)
      for (int x = 0; x < lab.width(); ++x) {
        if (tm.mask.at(x, y) <= 0.5f) continue;
        const LabPixel p{lab.at(x, y, 0), lab.at(x, y, 1), lab.at(x, y, 2)};
        const double d = std::hypot(p.L - bg.L, p.a - bg.a, p.b - bg.b);
        ink.push_back({d, p});
      }
    std::sort(ink.begin(), ink.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    const size_t keep = std::max<size_t>(1, ink.size() / 2);
    std::vector<float> ls, as, bs;
    for (size_t i = 0; i < keep; ++i) {
      ls.push_back(static_cast<float>(ink[i].second.L));
      as.push_back(static_cast<float>(ink[i].second.a));
      bs.push_back(static_cast<float>(ink[i].second.b));
    }
    fill = {channel_median(ls), channel_median(as), channel_median(bs)};
  } else {
    fill = bg = median_lab(lab, nullptr, false);
  }

  const RasterImage render = render_text_gray(
      render_text, tpl, kStyleResolution, kStyleResolution);
  triple.colorized = colorize(render, fill, bg);
  triple.color_support =
      RasterImage(kStyleResolution, kStyleResolution, 1, Colorspace::GRAY);
  for (size_t i = 0; i < render.data().size(); ++i)
    triple.color_support.data()[i] = render.data()[i] < 0.5f ? 1.0f : 0.0f;

  if (mask_usable) {
    triple.font_glyph = reshape_font_template(norm, tm.mask, tpl);
    triple.background = remove_text(norm, tm.mask);
  } else {
    triple.font_glyph =
        RasterImage(kStyleResolution, kStyleResolution, 1, Colorspace::GRAY, 1.0f);
    triple.background = norm;
  }
  triple.mask = std::move(tm.mask);
  triple.extractor = ExtractorKind::CLASSICAL;
  return triple;
}

}  // namespace taseval
