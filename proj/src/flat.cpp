#include "mink/flat.hpp"

#include <cmath>

namespace mink {

Flat::Flat(Vec base, std::vector<Vec> directions) : base_(std::move(base)) {
  require(base_.size() >= 1, "flat: empty base point");
  require(all_finite(base_), "flat: base must be finite");
  require(!directions.empty(), "flat: needs at least one direction");
  const int d = static_cast<int>(base_.size());
  const int k = static_cast<int>(directions.size());
  require(k <= d, "flat: more directions than ambient dimensions");
  Mat m(d, k);
  for (int j = 0; j < k; ++j) {
    require(static_cast<int>(directions[j].size()) == d, "flat: direction dimension mismatch");
    require(all_finite(directions[j]), "flat: directions must be finite");
    const double n = directions[j].norm();
    require(n > 1e-14, "flat: zero direction");
    m.col(j) = directions[j] / n;
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  require(svd.singularValues().minCoeff() > 1e-10, "flat: directions are rank deficient");
  user_dirs_ = std::move(directions);
  onb_ = svd.matrixU().leftCols(k);
}

Vec Flat::point_at(const Vec& params) const {
  require(static_cast<int>(params.size()) == dim(), "flat: parameter dimension mismatch");
  return base_ + onb_ * params;
}

Vec Flat::parameters_of(const Vec& x) const {
  require(static_cast<int>(x.size()) == ambient_dim(), "flat: point dimension mismatch");
  return onb_.transpose() * (x - base_);
}

Vec Flat::project(const Vec& y) const {
  require(static_cast<int>(y.size()) == ambient_dim(), "flat: point dimension mismatch");
  return base_ + onb_ * (onb_.transpose() * (y - base_));
}

bool Flat::contains(const Vec& x, double tol) const {
  return (x - project(x)).norm() <= tol;
}

std::vector<Vec> Flat::sample(double bound, int count, std::uint64_t seed) const {
  require(bound > 0.0, "flat sample: bound must be positive");
  require(count >= 1, "flat sample: count must be >= 1");
  const int k = dim();
  std::vector<Vec> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(base_);
    return out;
  }
  int per_axis = 2;
  while (std::pow(static_cast<double>(per_axis + 1), k) <= count + 1e-9) ++per_axis;
  std::vector<int> idx(k, 0);
  while (static_cast<int>(out.size()) < count) {
    Vec p(k);
    for (int j = 0; j < k; ++j)
      p[j] = -bound + 2.0 * bound * idx[j] / (per_axis - 1);
    out.push_back(point_at(p));
    int j = 0;
    for (; j < k; ++j) {
      if (++idx[j] < per_axis) break;
      idx[j] = 0;
    }
    if (j == k) break;  // lattice exhausted
  }
  Rng rng(seed);
  while (static_cast<int>(out.size()) < count) out.push_back(point_at(rng.in_box(k, bound)));
  return out;
}

Flat Flat::translated(const Vec& v) const {
  require(static_cast<int>(v.size()) == ambient_dim(), "flat: translation dimension mismatch");
  return Flat(base_ + v, user_dirs_);
}

Flat hyperplane_from_functional(const LinearFunctional& f, double level) {
  const int d = static_cast<int>(f.coeffs.size());
  require(d >= 2, "hyperplane: ambient dimension must be >= 2");
  const double n2 = f.coeffs.squaredNorm();
  require(n2 > 1e-20, "hyperplane: zero functional");
  const Vec base = (level / n2) * f.coeffs;
  // Null-space basis from a full decomposition of the 1-column matrix.
  Eigen::FullPivHouseholderQR<Mat> qr(Mat(f.coeffs));
  const Mat q = qr.matrixQ();
  std::vector<Vec> dirs;
  for (int j = 1; j < d; ++j) dirs.push_back(q.col(j));
  return Flat(base, dirs);
}

LinearFunctional functional_from_hyperplane(const Flat& h) {
  require(h.dim() == h.ambient_dim() - 1, "functional: flat must be 1-codimensional");
  // Unit normal: complete the flat's basis.
  const Mat& u = h.onb();
  const int d = h.ambient_dim();
  Eigen::FullPivHouseholderQR<Mat> qr(u);
  const Mat q = qr.matrixQ();
  Vec n = q.col(d - 1);
  LinearFunctional f;
  f.coeffs = n;
  return f;
}

}  // namespace mink
