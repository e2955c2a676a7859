#include "mink/serialize.hpp"

#include <fstream>
#include <limits>

namespace mink {
namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                const char* where) {
  require(j.is_object(), std::string(where) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw std::invalid_argument(std::string(where) + ": unknown field '" + key + "'");
  }
  for (const char* a : allowed)
    if (!j.contains(a))
      throw std::invalid_argument(std::string(where) + ": missing field '" + std::string(a) + "'");
}

std::vector<Vec> vec_list_from_json(const Json& j, const char* where) {
  require(j.is_array(), std::string(where) + ": expected an array of points");
  std::vector<Vec> out;
  for (const auto& row : j) out.push_back(vec_from_json(row));
  return out;
}

Json vec_list_to_json(const std::vector<Vec>& v) {
  Json j = Json::array();
  for (const Vec& p : v) j.push_back(vec_to_json(p));
  return j;
}

Mat mat_from_json(const Json& j, const char* where) {
  require(j.is_array() && !j.empty(), std::string(where) + ": expected a matrix");
  const auto rows = vec_list_from_json(j, where);
  Mat m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == m.cols(), std::string(where) + ": ragged matrix");
    m.row(i) = rows[i].transpose();
  }
  return m;
}

Json mat_to_json(const Mat& m) {
  Json j = Json::array();
  for (int i = 0; i < m.rows(); ++i) j.push_back(vec_to_json(m.row(i).transpose()));
  return j;
}

}  // namespace

Json vec_to_json(const Vec& v) {
  Json j = Json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Vec vec_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), "expected a numeric array");
  Vec v(j.size());
  int i = 0;
  for (const auto& e : j) {
    require(e.is_number(), "expected a numeric array");
    v[i++] = e.get<double>();
  }
  return v;
}

Json gauge_to_json(const Gauge& g) {
  Json j;
  j["dim"] = g.dim();
  switch (g.kind()) {
    case GaugeKind::Halfspaces:
      j["kind"] = "halfspaces";
      j["data"] = vec_list_to_json(g.halfspaces());
      break;
    case GaugeKind::VertexLp:
      j["kind"] = "vertices";
      j["data"] = vec_list_to_json(g.ball_vertices());
      break;
    case GaugeKind::Euclidean:
      j["kind"] = "builtin";
      j["data"] = Json{{"tag", "euclidean"}, {"params", Json::object()}};
      break;
    case GaugeKind::L1:
      j["kind"] = "builtin";
      j["data"] = Json{{"tag", "l1"}, {"params", Json::object()}};
      break;
    case GaugeKind::LInf:
      j["kind"] = "builtin";
      j["data"] = Json{{"tag", "linf"}, {"params", Json::object()}};
      break;
    case GaugeKind::Ellipsoid:
      j["kind"] = "builtin";
      j["data"] = Json{{"tag", "ellipsoid"}, {"params", Json{{"matrix", mat_to_json(g.metric())}}}};
      break;
    case GaugeKind::Shifted: {
      Json base;
      base["dim"] = g.dim();
      base["kind"] = "builtin";
      if (g.shift_base_is_euclidean())
        base["data"] = Json{{"tag", "euclidean"}, {"params", Json::object()}};
      else
        base["data"] =
            Json{{"tag", "ellipsoid"}, {"params", Json{{"matrix", mat_to_json(g.metric())}}}};
      j["kind"] = "builtin";
      j["data"] = Json{{"tag", "shifted"},
                       {"params", Json{{"base", base}, {"offset", vec_to_json(g.shift_offset())}}}};
      break;
    }
  }
  return j;
}

Gauge gauge_from_json(const Json& j) {
  check_keys(j, {"dim", "kind", "data"}, "gauge");
  require(j["dim"].is_number_integer(), "gauge: 'dim' must be an integer");
  const int dim = j["dim"].get<int>();
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "vertices") return Gauge::from_vertices(dim, vec_list_from_json(j["data"], "gauge"));
  if (kind == "halfspaces")
    return Gauge::from_halfspaces(dim, vec_list_from_json(j["data"], "gauge"));
  if (kind != "builtin") throw std::invalid_argument("gauge: unknown kind '" + kind + "'");

  const Json& data = j["data"];
  check_keys(data, {"tag", "params"}, "gauge builtin");
  const std::string tag = data["tag"].get<std::string>();
  const Json& params = data["params"];
  if (tag == "euclidean") {
    check_keys(params, {}, "euclidean params");
    return Gauge::euclidean(dim);
  }
  if (tag == "l1") {
    check_keys(params, {}, "l1 params");
    return Gauge::lp(dim, 1.0);
  }
  if (tag == "linf") {
    check_keys(params, {}, "linf params");
    return Gauge::lp(dim, std::numeric_limits<double>::infinity());
  }
  if (tag == "ellipsoid") {
    check_keys(params, {"matrix"}, "ellipsoid params");
    const Mat m = mat_from_json(params["matrix"], "ellipsoid");
    require(static_cast<int>(m.rows()) == dim, "ellipsoid: matrix size vs dim");
    return Gauge::ellipsoid(m);
  }
  if (tag == "shifted") {
    check_keys(params, {"base", "offset"}, "shifted params");
    return Gauge::shifted(gauge_from_json(params["base"]), vec_from_json(params["offset"]));
  }
  throw std::invalid_argument("gauge: unknown builtin tag '" + tag + "'");
}

Gauge load_gauge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open gauge file: " + path);
  Json j;
  in >> j;
  return gauge_from_json(j);
}

void save_gauge_file(const Gauge& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write gauge file: " + path);
  out << gauge_to_json(g).dump(2) << "\n";
}

Json flat_to_json(const Flat& f) {
  Json j;
  j["base"] = vec_to_json(f.base());
  j["directions"] = vec_list_to_json(f.directions());
  return j;
}

Flat flat_from_json(const Json& j) {
  check_keys(j, {"base", "directions"}, "flat");
  return Flat(vec_from_json(j["base"]), vec_list_from_json(j["directions"], "flat"));
}

const char* status_name(CoapproxStatus s) {
  switch (s) {
    case CoapproxStatus::NonEmpty:
      return "nonempty";
    case CoapproxStatus::Empty:
      return "empty";
    case CoapproxStatus::Undecided:
      return "undecided";
  }
  return "?";
}

Json coapprox_to_json(const CoapproxResult& r) {
  Json j;
  j["status"] = status_name(r.status);
  j["witness"] = r.witness ? vec_to_json(*r.witness) : Json(nullptr);
  j["violation"] = r.violation_at_witness;
  j["lower_bound"] = r.emptiness_lower_bound ? Json(*r.emptiness_lower_bound) : Json(nullptr);
  j["iterations"] = r.iterations;
  j["active_z"] = vec_list_to_json(r.active_z);
  return j;
}

Json chord_witness_to_json(const ChordWitness& w) {
  Json j;
  j["x0"] = vec_to_json(w.x0);
  j["x1"] = vec_to_json(w.x1);
  j["y0"] = vec_to_json(w.y0);
  j["y1"] = vec_to_json(w.y1);
  j["lambda"] = w.lambda;
  j["K"] = flat_to_json(w.line());
  j["target"] = vec_to_json(w.target);
  return j;
}

ChordWitness chord_witness_from_json(const Json& j) {
  check_keys(j, {"x0", "x1", "y0", "y1", "lambda", "K", "target"}, "witness");
  ChordWitness w;
  w.x0 = vec_from_json(j["x0"]);
  w.x1 = vec_from_json(j["x1"]);
  w.y0 = vec_from_json(j["y0"]);
  w.y1 = vec_from_json(j["y1"]);
  w.lambda = j["lambda"].get<double>();
  w.k = flat_from_json(j["K"]);
  w.target = vec_from_json(j["target"]);
  return w;
}

Json separation_to_json(const SeparationWitness& w) {
  Json j;
  Json h;
  h["coeffs"] = vec_to_json(w.h.coeffs);
  h["alpha"] = w.h.alpha ? Json(*w.h.alpha) : Json(nullptr);
  j["h"] = h;
  j["H"] = flat_to_json(*w.hyperplane);
  j["X0"] = flat_to_json(*w.x0_line);
  j["y0"] = vec_to_json(w.y0);
  j["n0"] = w.n0;
  j["margin"] = w.margin;
  j["c_samples"] = static_cast<int>(w.c_samples.size());
  return j;
}

Json suite_report_to_json(const SuiteReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["cases"] = r.cases;
  Json fails = Json::array();
  for (const auto& f : r.failures) fails.push_back(Json{{"case", f.case_id}, {"detail", f.detail}});
  j["failures"] = fails;
  Json margins = Json::object();
  for (const auto& [k, v] : r.worst_margins) margins[k] = v;
  j["worst_margins"] = margins;
  j["passed"] = r.passed();
  return j;
}

}  // namespace mink
