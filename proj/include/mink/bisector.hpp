#ifndef MINK_BISECTOR_HPP
#define MINK_BISECTOR_HPP

#include "mink/gauge.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mink {

enum class BisectorLabel : std::uint8_t { Negative, Positive, Band };

/// Classified planar grid of F(z) = gauge(z - x) - gauge(z - y) plus the
/// extracted zero contours. Labels and contours are byte-reproducible for
/// identical inputs.
struct BisectorSample {
  Vec min_corner, max_corner;
  int nx = 0, ny = 0;
  Vec x, y;
  double band_tol = 0.0;
  std::vector<double> values;          // row-major: iy * nx + ix
  std::vector<BisectorLabel> labels;   // same layout
  std::vector<std::vector<Vec>> contours;
};

BisectorLabel classify_point(const Gauge& g, const Vec& x, const Vec& y, const Vec& z,
                             double band_tol);

/// Scale-aware default: 1e-3 * window diagonal * Lipschitz estimate of the
/// gauge.
double default_band_tol(const Gauge& g, const Vec& min_corner, const Vec& max_corner);

/// Grid classification plus marching-squares contour extraction with
/// on-edge root polishing; every contour vertex satisfies |F| <= 2*band_tol.
/// Pass band_tol <= 0 to use the default.
BisectorSample sample_bisector(const Gauge& g, const Vec& x, const Vec& y,
                               const Vec& min_corner, const Vec& max_corner, int nx, int ny,
                               double band_tol = 0.0);

void emit_bisector_svg(const BisectorSample& s, const std::string& path);
void emit_bisector_csv(const BisectorSample& s, const std::string& path);

const char* label_name(BisectorLabel l);

}  // namespace mink

#endif  // MINK_BISECTOR_HPP
