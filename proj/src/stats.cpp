#include "taseval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "taseval/errors.hpp"

namespace taseval {

namespace {

// Average ranks (1-based); tie groups share the mean rank.
std::vector<double> average_ranks(const std::vector<double>& v) {
  const size_t n = v.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double mean_rank = (static_cast<double>(i) + j) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw LengthMismatch("spearman input lengths differ");
  if (x.size() < 3) throw LengthMismatch("spearman needs at least 3 samples");

  const auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y))
    throw ConstantInput("spearman undefined for constant input");

  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, dx = 0.0, dy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

double icc3k(const RatingsMatrix& m) {
  const int n = m.items(), k = m.raters();
  if (n < 2 || k < 2)
    throw DegenerateVariance("icc3k needs >= 2 items and >= 2 raters");
  for (const auto& row : m.rows)
    if (static_cast<int>(row.size()) != k)
      throw LengthMismatch("ragged ratings matrix");

  double grand = 0.0;
  for (const auto& row : m.rows)
    for (double v : row) grand += v;
  grand /= static_cast<double>(n) * k;

  double ss_rows = 0.0, ss_cols = 0.0, ss_total = 0.0;
  for (int i = 0; i < n; ++i) {
    double rm = 0.0;
    for (double v : m.rows[i]) rm += v;
    rm /= k;
    ss_rows += k * (rm - grand) * (rm - grand);
  }
  for (int j = 0; j < k; ++j) {
    double cm = 0.0;
    for (int i = 0; i < n; ++i) cm += m.rows[i][j];
    cm /= n;
    ss_cols += n * (cm - grand) * (cm - grand);
  }
  for (const auto& row : m.rows)
    for (double v : row) ss_total += (v - grand) * (v - grand);

  const double ms_rows = ss_rows / (n - 1);
  if (ms_rows == 0.0)
    throw DegenerateVariance("no between-item variance");
  const double ms_err = (ss_total - ss_rows - ss_cols) /
                        (static_cast<double>(n - 1) * (k - 1));
  return (ms_rows - ms_err) / ms_rows;
}

}  // namespace taseval
