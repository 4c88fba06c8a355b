#include "taseval/inpaint.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace taseval {

RasterImage dilate(const RasterImage& mask, int radius) {
  const int w = mask.width(), h = mask.height();
  RasterImage out(w, h, 1, Colorspace::GRAY, 0.0f);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      float v = 0.0f;
      for (int dy = -radius; dy <= radius && v < 0.5f; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
          if (mask.at_clamped(x + dx, y + dy) > 0.5f) {
            v = 1.0f;
            break;
          }
      out.at(x, y) = v;
    }
  return out;
}

RasterImage erode(const RasterImage& mask, int radius) {
  const int w = mask.width(), h = mask.height();
  RasterImage out(w, h, 1, Colorspace::GRAY, 1.0f);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      float v = 1.0f;
      for (int dy = -radius; dy <= radius && v > 0.5f; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
          if (mask.at_clamped(x + dx, y + dy) <= 0.5f) {
            v = 0.0f;
            break;
          }
      out.at(x, y) = v;
    }
  return out;
}

namespace {

enum class State : uint8_t { KNOWN, BAND, INSIDE };

struct HeapEntry {
  double t;
  int x, y;
  bool operator>(const HeapEntry& o) const { return t > o.t; }
};

// Eikonal update from two orthogonal neighbors.
double solve_step(double t1, double t2) {
  const double tmin = std::min(t1, t2);
  const double tmax = std::max(t1, t2);
  if (tmax >= 1e9) return tmin + 1.0;
  const double d = tmax - tmin;
  if (d >= 1.0) return tmin + 1.0;
  return 0.5 * (t1 + t2 + std::sqrt(2.0 - d * d));
}

}  // namespace

RasterImage inpaint_fast_marching(const RasterImage& img,
                                  const RasterImage& mask, int radius) {
  const int w = img.width(), h = img.height(), ch = img.channels();
  bool any = false;
  for (float v : mask.data())
    if (v > 0.5f) {
      any = true;
      break;
    }
  if (!any) return img;

  RasterImage out = img;
  std::vector<State> state(static_cast<size_t>(w) * h, State::KNOWN);
  std::vector<double> t(static_cast<size_t>(w) * h, 0.0);
  auto idx = [&](int x, int y) { return static_cast<size_t>(y) * w + x; };

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (mask.at(x, y) > 0.5f) {
        state[idx(x, y)] = State::INSIDE;
        t[idx(x, y)] = 1e10;
      }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (state[idx(x, y)] != State::INSIDE) continue;
      const bool boundary =
          (x > 0 && state[idx(x - 1, y)] == State::KNOWN) ||
          (x + 1 < w && state[idx(x + 1, y)] == State::KNOWN) ||
          (y > 0 && state[idx(x, y - 1)] == State::KNOWN) ||
          (y + 1 < h && state[idx(x, y + 1)] == State::KNOWN);
      if (boundary) {
        state[idx(x, y)] = State::BAND;
        t[idx(x, y)] = 0.0;
        heap.push({0.0, x, y});
      }
    }

  auto tval = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 1e10;
    return state[idx(x, y)] == State::INSIDE ? 1e10 : t[idx(x, y)];
  };

  auto inpaint_pixel = [&](int px, int py) {
    // normal to the advancing front from the distance field
    double nx = tval(px + 1, py) - tval(px - 1, py);
    double ny = tval(px, py + 1) - tval(px, py - 1);
    if (std::abs(nx) > 1e9) nx = 0.0;
    if (std::abs(ny) > 1e9) ny = 0.0;
    const double nlen = std::hypot(nx, ny);
    if (nlen > 1e-12) {
      nx /= nlen;
      ny /= nlen;
    }

    std::vector<double> acc(ch, 0.0);
    double wsum = 0.0;
    const double tp = t[idx(px, py)];
    for (int dy = -radius; dy <= radius; ++dy)
      for (int dx = -radius; dx <= radius; ++dx) {
        const int qx = px + dx, qy = py + dy;
        if ((dx == 0 && dy == 0) || qx < 0 || qy < 0 || qx >= w || qy >= h)
          continue;
        if (state[idx(qx, qy)] != State::KNOWN) continue;
        const double d = std::hypot(dx, dy);
        if (d > radius) continue;

        double dir = std::abs(dx * nx + dy * ny) / d;
        if (dir < 1e-6) dir = 1e-6;
        const double dst = 1.0 / (d * d);
        const double lev = 1.0 / (1.0 + std::abs(t[idx(qx, qy)] - tp));
        const double wgt = dir * dst * lev;

        for (int c = 0; c < ch; ++c) {
          // first-order term: extrapolate along the image gradient at q,
          // estimated from known neighbors only
          double gx = 0.0, gy = 0.0;
          if (qx > 0 && qx + 1 < w && state[idx(qx - 1, qy)] == State::KNOWN &&
              state[idx(qx + 1, qy)] == State::KNOWN)
            gx = 0.5 * (out.at(qx + 1, qy, c) - out.at(qx - 1, qy, c));
          if (qy > 0 && qy + 1 < h && state[idx(qx, qy - 1)] == State::KNOWN &&
              state[idx(qx, qy + 1)] == State::KNOWN)
            gy = 0.5 * (out.at(qx, qy + 1, c) - out.at(qx, qy - 1, c));
          acc[c] += wgt * (out.at(qx, qy, c) - gx * dx - gy * dy);
        }
        wsum += wgt;
      }
    for (int c = 0; c < ch; ++c)
      out.at(px, py, c) =
          static_cast<float>(std::clamp(acc[c] / wsum, 0.0, 1.0));
  };

  while (!heap.empty()) {
    const HeapEntry e = heap.top();
    heap.pop();
    if (state[idx(e.x, e.y)] == State::KNOWN) continue;
    state[idx(e.x, e.y)] = State::KNOWN;

    const int nx4[] = {e.x - 1, e.x + 1, e.x, e.x};
    const int ny4[] = {e.y, e.y, e.y - 1, e.y + 1};
    for (int k = 0; k < 4; ++k) {
      const int qx = nx4[k], qy = ny4[k];
      if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
      if (state[idx(qx, qy)] != State::INSIDE) continue;
      t[idx(qx, qy)] = std::min(
          {solve_step(tval(qx - 1, qy), tval(qx, qy - 1)),
           solve_step(tval(qx + 1, qy), tval(qx, qy - 1)),
           solve_step(tval(qx - 1, qy), tval(qx, qy + 1)),
           solve_step(tval(qx + 1, qy), tval(qx, qy + 1))});
      inpaint_pixel(qx, qy);
      state[idx(qx, qy)] = State::BAND;
      heap.push({t[idx(qx, qy)], qx, qy});
    }
  }
  return out;
}

}  // namespace taseval
