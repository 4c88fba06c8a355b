#pragma once

#include <string>
#include <vector>

namespace taseval {

/// Items-by-raters rating table, no missing cells.
struct RatingsMatrix {
  std::vector<std::string> item_ids;
  std::vector<std::vector<double>> rows;  // one row per item
  std::string scale_note = "1-10";

  int items() const { return static_cast<int>(rows.size()); }
  int raters() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

/// Spearman rank correlation; ties take the mean rank.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// ICC(3,k): two-way mixed consistency, (MS_rows - MS_err) / MS_rows.
double icc3k(const RatingsMatrix& m);

}  // namespace taseval
