#include "mink/bisector.hpp"

#include "mink/analysis.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace mink;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Gauge triangle_gauge() { return Gauge::from_vertices(2, {v2(1, 0), v2(0, 1), v2(-1, -1)}); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("classify_point") {
  const Gauge e = Gauge::euclidean(2);
  CHECK(classify_point(e, v2(1, 1), v2(1, 1), v2(0.3, -2), 1e-9) == BisectorLabel::Band);
  CHECK(classify_point(e, v2(-1, 0), v2(1, 0), v2(0, 5), 1e-9) == BisectorLabel::Band);
  CHECK(classify_point(e, v2(-1, 0), v2(1, 0), v2(1, 0), 1e-9) == BisectorLabel::Positive);
  CHECK(classify_point(e, v2(-1, 0), v2(1, 0), v2(-1, 0), 1e-9) == BisectorLabel::Negative);
}

TEST_CASE("euclidean bisector is the perpendicular axis") {
  const Gauge e = Gauge::euclidean(2);
  const auto s = sample_bisector(e, v2(-1, 0), v2(1, 0), v2(-2, -2), v2(2, 2), 65, 65);
  REQUIRE(s.contours.size() == 1);
  const double cell = 4.0 / 64.0;
  for (const auto& poly : s.contours)
    for (const Vec& p : poly) CHECK(std::abs(p[0]) <= cell);
}

TEST_CASE("max-norm bisector has flat regions") {
  const Gauge g = Gauge::lp(2, std::numeric_limits<double>::infinity());
  const auto s = sample_bisector(g, v2(-1, 0), v2(1, 0), v2(-3, -3), v2(3, 3), 97, 97);
  // The fan beyond |z2| > 1 + |z1| is exactly equidistant.
  auto label_at = [&](double x, double y) {
    const int ix = static_cast<int>(std::lround((x + 3.0) / 6.0 * 96));
    const int iy = static_cast<int>(std::lround((y + 3.0) / 6.0 * 96));
    return s.labels[static_cast<std::size_t>(iy) * 97 + ix];
  };
  CHECK(label_at(0.5, 2.5) == BisectorLabel::Band);
  CHECK(label_at(-0.5, -2.5) == BisectorLabel::Band);
  CHECK(label_at(2.5, 0.0) == BisectorLabel::Positive);
  CHECK(label_at(-2.5, 0.0) == BisectorLabel::Negative);

  // The central vertical segment belongs to the contour.
  bool found_mid = false;
  for (const auto& poly : s.contours)
    for (const Vec& p : poly)
      if (std::abs(p[0]) < 0.1 && std::abs(p[1]) < 0.9) found_mid = true;
  CHECK(found_mid);
}

TEST_CASE("contour vertices stay inside the band") {
  const Gauge g = triangle_gauge();
  const auto s = sample_bisector(g, v2(0, 0), v2(1, 0), v2(-2.5, -2.5), v2(2.5, 2.5), 81, 81);
  int vertices = 0;
  for (const auto& poly : s.contours)
    for (const Vec& p : poly) {
      const double f = g.eval(p - v2(0, 0)) - g.eval(p - v2(1, 0));
      CHECK(std::abs(f) <= 2.0 * s.band_tol);
      ++vertices;
    }
  CHECK(vertices > 10);
}

TEST_CASE("swap antisymmetry is cell-exact") {
  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const Gauge g = trial % 2 == 0 ? random_asymmetric_polygon(rng)
                                   : Gauge::shifted(Gauge::euclidean(2), v2(0.2, 0.1));
    const Vec x = rng.in_box(2, 1.5), y = rng.in_box(2, 1.5);
    const auto a = sample_bisector(g, x, y, v2(-3, -3), v2(3, 3), 33, 33);
    const auto b = sample_bisector(g, y, x, v2(-3, -3), v2(3, 3), 33, 33);
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
      if (a.labels[i] == BisectorLabel::Band) {
        CHECK(b.labels[i] == BisectorLabel::Band);
      } else {
        CHECK(b.labels[i] == (a.labels[i] == BisectorLabel::Positive ? BisectorLabel::Negative
                                                                     : BisectorLabel::Positive));
      }
    }
  }
}

TEST_CASE("ellipsoid bisector matches its closed form") {
  // For a metric ball the bisector is the hyperplane
  // 2 (y-x)^T M z == y^T M y - x^T M x.
  const Mat m = (Mat(2, 2) << 2, 0.5, 0.5, 1).finished();
  const Gauge g = Gauge::ellipsoid(m);
  const Vec x = v2(-0.8, 0.3), y = v2(1.1, -0.4);
  const auto s = sample_bisector(g, x, y, v2(-3, -3), v2(3, 3), 129, 129);
  const Vec n = 2.0 * (m * (y - x));
  const double c = y.dot(m * y) - x.dot(m * x);
  const double cell = std::hypot(6.0 / 128.0, 6.0 / 128.0);
  REQUIRE(!s.contours.empty());
  for (const auto& poly : s.contours)
    for (const Vec& p : poly) CHECK(std::abs(n.dot(p) - c) / n.norm() <= cell);
}

TEST_CASE("translation equivariance on a dyadic grid") {
  const Gauge g = triangle_gauge();
  const Vec shift = v2(0.5, -0.25);
  const auto a = sample_bisector(g, v2(0, 0), v2(1, 0), v2(-2, -2), v2(2, 2), 65, 65);
  const auto b =
      sample_bisector(g, shift, v2(1, 0) + shift, v2(-2, -2) + shift, v2(2, 2) + shift, 65, 65);
  REQUIRE(a.labels.size() == b.labels.size());
  for (std::size_t i = 0; i < a.labels.size(); ++i) CHECK(a.labels[i] == b.labels[i]);
}

TEST_CASE("emitters") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "mink_bisector_test";
  fs::create_directories(dir);

  const Gauge e = Gauge::euclidean(2);
  SUBCASE("csv 2x2") {
    const auto s = sample_bisector(e, v2(-1, 0), v2(1, 0), v2(-1, -1), v2(1, 1), 2, 2);
    const auto path = (dir / "tiny.csv").string();
    emit_bisector_csv(s, path);
    const std::string text = slurp(path);
    CHECK(text.rfind("zx,zy,F,label\n", 0) == 0);
    int lines = 0;
    for (char c : text)
      if (c == '\n') ++lines;
    CHECK(lines == 5);  // header + 4 rows
  }
  SUBCASE("svg single polyline and determinism") {
    const auto s = sample_bisector(e, v2(-1, 0), v2(1, 0), v2(-2, -2), v2(2, 2), 33, 33);
    const auto p1 = (dir / "a.svg").string(), p2 = (dir / "b.svg").string();
    emit_bisector_svg(s, p1);
    emit_bisector_svg(s, p2);
    const std::string t1 = slurp(p1);
    CHECK(slurp(p2) == t1);
    std::size_t count = 0, pos = 0;
    while ((pos = t1.find("<polyline", pos)) != std::string::npos) {
      ++count;
      pos += 9;
    }
    CHECK(count == 1);
  }
  SUBCASE("empty contours still shade") {
    const auto s = sample_bisector(e, v2(-1, 0), v2(1, 0), v2(1, 1), v2(2, 2), 8, 8);
    CHECK(s.contours.empty());
    const auto path = (dir / "shade.svg").string();
    emit_bisector_svg(s, path);
    CHECK(slurp(path).find("<rect") != std::string::npos);
  }
}
