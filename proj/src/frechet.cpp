#include "taseval/frechet.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "taseval/errors.hpp"

namespace taseval {

namespace {

using Matrix = std::vector<double>;  // d x d, row-major

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
// eigenvalues; eigenvectors are not needed for the trace of the square root.
std::vector<double> symmetric_eigenvalues(Matrix m, int d) {
  std::vector<double> eig(d);
  if (d == 1) {
    eig[0] = m[0];
    return eig;
  }
  auto at = [&](int i, int j) -> double& {
    return m[static_cast<size_t>(i) * d + j];
  };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-26) break;
    for (int p = 0; p < d - 1; ++p)
      for (int q = p + 1; q < d; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  for (int i = 0; i < d; ++i) eig[i] = at(i, i);
  return eig;
}

// Full eigendecomposition (values + vectors), needed for Sa^{1/2}.
void symmetric_eigen(Matrix m, int d, std::vector<double>* values,
                     Matrix* vectors) {
  Matrix v(static_cast<size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) v[static_cast<size_t>(i) * d + i] = 1.0;
  auto at = [&](int i, int j) -> double& {
    return m[static_cast<size_t>(i) * d + j];
  };
  auto vat = [&](int i, int j) -> double& {
    return v[static_cast<size_t>(i) * d + j];
  };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-26) break;
    for (int p = 0; p < d - 1; ++p)
      for (int q = p + 1; q < d; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < d; ++k) {
          const double vkp = vat(k, p), vkq = vat(k, q);
          vat(k, p) = c * vkp - s * vkq;
          vat(k, q) = s * vkp + c * vkq;
        }
      }
  }
  values->resize(d);
  for (int i = 0; i < d; ++i) (*values)[i] = at(i, i);
  *vectors = std::move(v);
}

Matrix matmul(const Matrix& a, const Matrix& b, int d) {
  Matrix c(static_cast<size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const double aik = a[static_cast<size_t>(i) * d + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < d; ++j)
        c[static_cast<size_t>(i) * d + j] +=
            aik * b[static_cast<size_t>(k) * d + j];
    }
  return c;
}

void clamp_eigenvalues(std::vector<double>& eig) {
  double max_eig = 0.0;
  for (double e : eig) max_eig = std::max(max_eig, e);
  const double floor_val = max_eig * 1e-10;
  for (double& e : eig) e = e < floor_val ? 0.0 : e;
}

struct Moments {
  std::vector<double> mean;
  Matrix cov;
};

Moments fit_moments(const FeatureSet& fs) {
  if (fs.n < 2) throw DegenerateCovariance("need at least 2 samples");
  for (double v : fs.rows)
    if (!std::isfinite(v))
      throw DegenerateCovariance("non-finite feature value");
  Moments m;
  m.mean.assign(fs.d, 0.0);
  for (int i = 0; i < fs.n; ++i)
    for (int j = 0; j < fs.d; ++j) m.mean[j] += fs.at(i, j);
  for (double& v : m.mean) v /= fs.n;

  m.cov.assign(static_cast<size_t>(fs.d) * fs.d, 0.0);
  for (int i = 0; i < fs.n; ++i)
    for (int j = 0; j < fs.d; ++j) {
      const double dj = fs.at(i, j) - m.mean[j];
      for (int k = j; k < fs.d; ++k)
        m.cov[static_cast<size_t>(j) * fs.d + k] +=
            dj * (fs.at(i, k) - m.mean[k]);
    }
  for (int j = 0; j < fs.d; ++j)
    for (int k = j; k < fs.d; ++k) {
      const double v = m.cov[static_cast<size_t>(j) * fs.d + k] / (fs.n - 1);
      m.cov[static_cast<size_t>(j) * fs.d + k] = v;
      m.cov[static_cast<size_t>(k) * fs.d + j] = v;
    }
  return m;
}

}  // namespace

double frechet_distance(const FeatureSet& fa, const FeatureSet& fb) {
  if (fa.d != fb.d) throw DimensionMismatch("feature dimensions differ");
  const int d = fa.d;
  const Moments ma = fit_moments(fa);
  const Moments mb = fit_moments(fb);

  double mean_term = 0.0;
  for (int j = 0; j < d; ++j) {
    const double diff = ma.mean[j] - mb.mean[j];
    mean_term += diff * diff;
  }

  double trace_a = 0.0, trace_b = 0.0;
  for (int j = 0; j < d; ++j) {
    trace_a += ma.cov[static_cast<size_t>(j) * d + j];
    trace_b += mb.cov[static_cast<size_t>(j) * d + j];
  }

  // Sa^{1/2} from the eigendecomposition of Sa.
  std::vector<double> eig_a;
  Matrix vec_a;
  symmetric_eigen(ma.cov, d, &eig_a, &vec_a);
  clamp_eigenvalues(eig_a);
  Matrix sqrt_a(static_cast<size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double acc = 0.0;
      for (int k = 0; k < d; ++k)
        acc += vec_a[static_cast<size_t>(i) * d + k] * std::sqrt(eig_a[k]) *
               vec_a[static_cast<size_t>(j) * d + k];
      sqrt_a[static_cast<size_t>(i) * d + j] = acc;
    }

  // M = Sa^{1/2} Sb Sa^{1/2}; symmetrize against roundoff.
  Matrix m = matmul(matmul(sqrt_a, mb.cov, d), sqrt_a, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double v = 0.5 * (m[static_cast<size_t>(i) * d + j] +
                              m[static_cast<size_t>(j) * d + i]);
      m[static_cast<size_t>(i) * d + j] = v;
      m[static_cast<size_t>(j) * d + i] = v;
    }

  std::vector<double> eig_m = symmetric_eigenvalues(std::move(m), d);
  clamp_eigenvalues(eig_m);
  double trace_sqrt = 0.0;
  for (double e : eig_m) trace_sqrt += std::sqrt(e);

  const double fd = mean_term + trace_a + trace_b - 2.0 * trace_sqrt;
  return fd < 0.0 ? 0.0 : fd;
}

FeatureSet load_feature_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[4];
  uint32_t n = 0, d = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&d), 4);
  if (!in || std::memcmp(magic, "FSET", 4) != 0)
    throw ParseError("not a FSET file: " + path);
  FeatureSet fs;
  fs.n = static_cast<int>(n);
  fs.d = static_cast<int>(d);
  fs.rows.resize(static_cast<size_t>(n) * d);
  in.read(reinterpret_cast<char*>(fs.rows.data()),
          static_cast<std::streamsize>(fs.rows.size() * sizeof(double)));
  if (!in) throw ParseError("truncated FSET file: " + path);
  return fs;
}

void save_feature_set(const FeatureSet& fs, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const uint32_t n = static_cast<uint32_t>(fs.n);
  const uint32_t d = static_cast<uint32_t>(fs.d);
  out.write("FSET", 4);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&d), 4);
  out.write(reinterpret_cast<const char*>(fs.rows.data()),
            static_cast<std::streamsize>(fs.rows.size() * sizeof(double)));
  if (!out) throw IoError("short write to " + path);
}

FeatureSet load_feature_set_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  FeatureSet fs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    bool numeric = true;
    while (std::getline(ss, field, ',')) {
      try {
        size_t pos = 0;
        const double v = std::stod(field, &pos);
        row.push_back(v);
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header line
      }
      throw ParseError("non-numeric CSV row in " + path);
    }
    first = false;
    if (fs.d == 0)
      fs.d = static_cast<int>(row.size());
    else if (static_cast<int>(row.size()) != fs.d)
      throw ParseError("ragged CSV rows in " + path);
    fs.rows.insert(fs.rows.end(), row.begin(), row.end());
    ++fs.n;
  }
  return fs;
}

}  // namespace taseval
