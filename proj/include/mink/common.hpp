#ifndef MINK_COMMON_HPP
#define MINK_COMMON_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mink {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Deterministic RNG. The engine (mt19937_64) is fully specified by the
/// standard; all conversions to doubles are done by hand so that sampled
/// streams do not depend on the standard library's distribution
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in {0, ..., n-1}, n >= 1.
  int uniform_int(int n) {
    int k = static_cast<int>(uniform() * n);
    return k < n ? k : n - 1;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double twopi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(twopi * u2);
    have_spare_ = true;
    return r * std::cos(twopi * u2);
  }

  Vec unit_vector(int dim) {
    Vec v(dim);
    double n2 = 0.0;
    do {
      for (int i = 0; i < dim; ++i) v[i] = normal();
      n2 = v.norm();
    } while (n2 < 1e-12);
    return v / n2;
  }

  Vec in_box(int dim, double halfwidth) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = uniform(-halfwidth, halfwidth);
    return v;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(static_cast<int>(i)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline bool all_finite(const Vec& v) { return v.allFinite(); }

/// Shortest fixed-precision decimal used in CSV/SVG output (17 significant
/// digits round-trips doubles exactly).
std::string format_double(double x, int digits = 17);

}  // namespace mink

#endif  // MINK_COMMON_HPP
