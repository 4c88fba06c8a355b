#pragma once

#include <string>
#include <vector>

namespace taseval {

/// n samples of d-dimensional feature vectors, row-major.
struct FeatureSet {
  int n = 0;
  int d = 0;
  std::vector<double> rows;

  double at(int i, int j) const {
    return rows[static_cast<size_t>(i) * d + j];
  }
};

/// Fréchet distance between the Gaussians fitted to two feature sets:
/// |mu_a - mu_b|^2 + Tr(Sa + Sb - 2 (Sa Sb)^{1/2}), with the matrix square
/// root taken through the symmetric eigendecomposition of
/// Sa^{1/2} Sb Sa^{1/2} and eigenvalues clamped at zero.
double frechet_distance(const FeatureSet& fa, const FeatureSet& fb);

/// Binary format: magic "FSET", u32 n, u32 d (little endian), then n*d
/// float64 row-major.
FeatureSet load_feature_set(const std::string& path);
void save_feature_set(const FeatureSet& fs, const std::string& path);

/// CSV alternative: one row per sample; a non-numeric first line is treated
/// as a header and skipped.
FeatureSet load_feature_set_csv(const std::string& path);

}  // namespace taseval
