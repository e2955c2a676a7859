#include "mink/analysis.hpp"
#include "mink/bisector.hpp"
#include "mink/coapprox.hpp"
#include "mink/serialize.hpp"
#include "mink/witness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace {

using mink::Flat;
using mink::Gauge;
using mink::Json;
using mink::Vec;

Vec parse_point(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number in point: '" + item + "'");
    vals.push_back(v);
  }
  if (vals.empty()) throw std::invalid_argument("empty point");
  Vec out(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) out[i] = vals[i];
  return out;
}

// base=0,0;dirs=1,0|0,1
Flat parse_flat(const std::string& text) {
  std::string base_part, dirs_part;
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw std::invalid_argument("flat: expected 'base=...;dirs=...'");
  base_part = text.substr(0, semi);
  dirs_part = text.substr(semi + 1);
  if (base_part.rfind("base=", 0) != 0 || dirs_part.rfind("dirs=", 0) != 0)
    throw std::invalid_argument("flat: expected 'base=...;dirs=...'");
  const Vec base = parse_point(base_part.substr(5));
  std::vector<Vec> dirs;
  std::stringstream ss(dirs_part.substr(5));
  std::string item;
  while (std::getline(ss, item, '|')) dirs.push_back(parse_point(item));
  return Flat(base, dirs);
}

Gauge parse_builtin(const std::string& spec, int dim_hint) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty() || parts[0] != "builtin")
    throw std::invalid_argument("bad builtin spec: " + spec);
  if (parts.size() < 2) throw std::invalid_argument("builtin spec needs a name");
  const std::string& name = parts[1];
  const double inf = std::numeric_limits<double>::infinity();
  if (name == "euclidean" || name == "l1" || name == "linf" || name == "l2") {
    if (parts.size() != 2) throw std::invalid_argument("unexpected arguments for " + name);
    if (dim_hint < 1)
      throw std::invalid_argument("cannot infer dimension for " + name + "; pass --dim");
    if (name == "euclidean" || name == "l2") return Gauge::euclidean(dim_hint);
    return Gauge::lp(dim_hint, name == "l1" ? 1.0 : inf);
  }
  if (name == "ellipsoid") {
    if (parts.size() != 3) throw std::invalid_argument("ellipsoid spec: builtin:ellipsoid:a11,a12,a22");
    const Vec packed = parse_point(parts[2]);
    int d;
    if (packed.size() == 3)
      d = 2;
    else if (packed.size() == 6)
      d = 3;
    else
      throw std::invalid_argument("ellipsoid spec: pass the packed upper triangle (3 or 6 numbers)");
    mink::Mat m(d, d);
    int t = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        m(i, j) = packed[t];
        m(j, i) = packed[t];
        ++t;
      }
    return Gauge::ellipsoid(m);
  }
  if (name == "shifted") {
    if (parts.size() != 4)
      throw std::invalid_argument("shifted spec: builtin:shifted:<base>:<offset>");
    const Vec offset = parse_point(parts[3]);
    const Gauge base = parse_builtin("builtin:" + parts[2], static_cast<int>(offset.size()));
    return Gauge::shifted(base, offset);
  }
  throw std::invalid_argument("unknown builtin '" + name + "'");
}

Gauge resolve_gauge(const std::string& source, int dim_hint) {
  if (source.rfind("builtin:", 0) == 0) return parse_builtin(source, dim_hint);
  return mink::load_gauge_file(source);
}

void emit(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << text;
  }
}

mink::TheoremSuiteConfig config_from_json(const Json& j) {
  mink::TheoremSuiteConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "a_gauges")
      cfg.a_gauges = val.get<int>();
    else if (key == "a_pairs")
      cfg.a_pairs = val.get<int>();
    else if (key == "b_gauges")
      cfg.b_gauges = val.get<int>();
    else if (key == "c_gauges")
      cfg.c_gauges = val.get<int>();
    else if (key == "d_planes")
      cfg.d_planes = val.get<int>();
    else if (key == "d_draws")
      cfg.d_draws = val.get<int>();
    else
      throw std::invalid_argument("verify config: unknown count '" + key + "'");
  }
  return cfg;
}

int run_verify(const std::string& config_path, std::uint64_t seed, bool seed_given,
               const std::string& out_path) {
  Json cfg_json;
  {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config: " + config_path);
    in >> cfg_json;
  }
  std::vector<std::string> suites{"A", "B", "C", "D", "sequence", "projection", "parallelogram"};
  mink::TheoremSuiteConfig tcfg;
  double tol = 1e-6;
  int sequence_n = 100, sequence_m = 60, projection_trials = 30;
  for (const auto& [key, val] : cfg_json.items()) {
    if (key == "seed") {
      if (!seed_given) seed = val.get<std::uint64_t>();
    } else if (key == "tol") {
      tol = val.get<double>();
    } else if (key == "suites") {
      suites.clear();
      for (const auto& s : val) suites.push_back(s.get<std::string>());
    } else if (key == "counts") {
      for (const auto& [ck, cv] : val.items()) {
        if (ck == "sequence_n")
          sequence_n = cv.get<int>();
        else if (ck == "sequence_m")
          sequence_m = cv.get<int>();
        else if (ck == "projection_trials")
          projection_trials = cv.get<int>();
        else {
          Json one;
          one[ck] = cv;
          const auto partial = config_from_json(one);
          if (ck == "a_gauges") tcfg.a_gauges = partial.a_gauges;
          if (ck == "a_pairs") tcfg.a_pairs = partial.a_pairs;
          if (ck == "b_gauges") tcfg.b_gauges = partial.b_gauges;
          if (ck == "c_gauges") tcfg.c_gauges = partial.c_gauges;
          if (ck == "d_planes") tcfg.d_planes = partial.d_planes;
          if (ck == "d_draws") tcfg.d_draws = partial.d_draws;
        }
      }
    } else {
      throw std::invalid_argument("verify config: unknown field '" + key + "'");
    }
  }
  tcfg.seed = seed;
  tcfg.tol = tol;
  tcfg.run_a = tcfg.run_b = tcfg.run_c = tcfg.run_d = false;
  bool run_theorems = false;
  std::vector<mink::SuiteReport> reports;
  for (const std::string& s : suites) {
    if (s == "A") tcfg.run_a = run_theorems = true;
    else if (s == "B") tcfg.run_b = run_theorems = true;
    else if (s == "C") tcfg.run_c = run_theorems = true;
    else if (s == "D") tcfg.run_d = run_theorems = true;
    else if (s == "sequence") {
      reports.push_back(mink::l1_example_check(sequence_n, std::max(sequence_m, sequence_n)));
    } else if (s == "projection") {
      reports.push_back(
          mink::projection_coapprox_check(Gauge::euclidean(2), projection_trials, seed));
      mink::Mat m(2, 2);
      m << 1.0, 0.0, 0.0, 4.0;
      reports.push_back(mink::projection_coapprox_check(Gauge::ellipsoid(m), projection_trials, seed));
    } else if (s == "parallelogram") {
      mink::SuiteReport rep;
      rep.suite = "parallelogram-defect";
      const double inf = std::numeric_limits<double>::infinity();
      struct Case {
        const char* name;
        Gauge g;
        bool expect_zero;
      };
      mink::Mat m(2, 2);
      m << 1.0, 0.0, 0.0, 4.0;
      const Case cases[] = {{"euclidean", Gauge::euclidean(2), true},
                            {"ellipsoid", Gauge::ellipsoid(m), true},
                            {"linf", Gauge::lp(2, inf), false},
                            {"l1", Gauge::lp(2, 1.0), false}};
      for (const auto& c : cases) {
        ++rep.cases;
        const double dfx = mink::parallelogram_defect(c.g, 400, seed);
        rep.margin(std::string("defect_") + c.name, dfx);
        if (c.expect_zero && dfx > 1e-8) rep.fail(c.name, "defect " + mink::format_double(dfx));
        if (!c.expect_zero && dfx < 0.1) rep.fail(c.name, "defect " + mink::format_double(dfx));
      }
      reports.push_back(rep);
    } else {
      throw std::invalid_argument("verify config: unknown suite '" + s + "'");
    }
  }
  if (run_theorems) reports.push_back(mink::verify_theorems(tcfg));

  bool all_passed = true;
  Json out;
  out["reports"] = Json::array();
  for (const auto& r : reports) {
    out["reports"].push_back(mink::suite_report_to_json(r));
    all_passed = all_passed && r.passed();
    std::cerr << (r.passed() ? "[pass] " : "[FAIL] ") << r.suite << " (" << r.cases << " cases, "
              << r.failures.size() << " failures, " << r.wall_ms << " ms)\n";
  }
  out["passed"] = all_passed;
  emit(out, out_path);
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gauges, best coapproximation, and bisectors in generalized Minkowski spaces"};
  app.require_subcommand(1);

  std::string gauge_src, gauge2_src, flat_src, point_src, out_path;
  std::string x_src, y_src, window_src, res_src = "128,128", svg_path, csv_path;
  std::string config_path, emit_gauge_path;
  double tol = 1e-6, band_tol = 0.0;
  std::uint64_t seed = 0;
  bool reversed = false;
  int dim = 0, rounds = 200;

  auto* c_eval = app.add_subcommand("eval", "evaluate a gauge at a point");
  c_eval->add_option("--gauge", gauge_src, "gauge file or builtin:<spec>")->required();
  c_eval->add_option("--point", point_src)->required();
  c_eval->add_option("--out", out_path);

  auto* c_co = app.add_subcommand("coapprox", "best-coapproximation solve");
  c_co->add_option("--gauge", gauge_src)->required();
  c_co->add_option("--flat", flat_src, "base=...;dirs=...|...")->required();
  c_co->add_option("--point", point_src)->required();
  c_co->add_option("--tol", tol);
  c_co->add_option("--rounds", rounds);
  c_co->add_option("--out", out_path);

  auto* c_ba = app.add_subcommand("bestapprox", "gauge distance minimizer onto a flat");
  c_ba->add_option("--gauge", gauge_src)->required();
  c_ba->add_option("--flat", flat_src)->required();
  c_ba->add_option("--point", point_src)->required();
  c_ba->add_option("--out", out_path);

  auto* c_w = app.add_subcommand("witness", "construct and verify a non-coproximinal line witness");
  c_w->add_option("--gauge", gauge_src)->required();
  c_w->add_option("--dim", dim, "dimension for builtin gauges (default 2)");
  c_w->add_option("--emit-gauge", emit_gauge_path, "write the gauge spec back to a file");
  c_w->add_option("--out", out_path);

  auto* c_bi = app.add_subcommand("bisector", "sample and export a planar bisector");
  c_bi->add_option("--gauge", gauge_src)->required();
  c_bi->add_option("--x", x_src)->required();
  c_bi->add_option("--y", y_src)->required();
  c_bi->add_option("--window", window_src, "xmin,ymin,xmax,ymax")->required();
  c_bi->add_option("--res", res_src, "nx,ny");
  c_bi->add_option("--band-tol", band_tol);
  c_bi->add_flag("--reversed", reversed, "sample with the reversed gauge");
  c_bi->add_option("--svg", svg_path);
  c_bi->add_option("--csv", csv_path);
  c_bi->add_option("--out", out_path);

  auto* c_k = app.add_subcommand("constants", "equivalence constants of two gauges");
  c_k->add_option("--gauge", gauge_src)->required();
  c_k->add_option("--gauge2", gauge2_src)->required();
  c_k->add_option("--dim", dim, "dimension for builtin gauges (default 2)");
  c_k->add_option("--out", out_path);

  auto* c_v = app.add_subcommand("verify", "run verification suites from a config file");
  c_v->add_option("--config", config_path)->required();
  auto* seed_opt = c_v->add_option("--seed", seed);
  c_v->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_eval) {
      const Vec p = parse_point(point_src);
      const Gauge g = resolve_gauge(gauge_src, static_cast<int>(p.size()));
      Json j;
      j["value"] = g.eval(p);
      emit(j, out_path);
      return 0;
    }
    if (*c_co) {
      const Vec p = parse_point(point_src);
      const Flat flat = parse_flat(flat_src);
      const Gauge g = resolve_gauge(gauge_src, static_cast<int>(p.size()));
      mink::SearchBudget budget;
      budget.max_rounds = rounds;
      emit(mink::coapprox_to_json(mink::coapprox_solve(g, flat, p, tol, budget)), out_path);
      return 0;
    }
    if (*c_ba) {
      const Vec p = parse_point(point_src);
      const Flat flat = parse_flat(flat_src);
      const Gauge g = resolve_gauge(gauge_src, static_cast<int>(p.size()));
      const auto [x, value] = mink::best_approx(g, flat, p);
      Json j;
      j["witness"] = mink::vec_to_json(x);
      j["value"] = value;
      emit(j, out_path);
      return 0;
    }
    if (*c_w) {
      const Gauge g = resolve_gauge(gauge_src, dim > 0 ? dim : 2);
      if (!emit_gauge_path.empty()) mink::save_gauge_file(g, emit_gauge_path);
      Json j;
      const auto w = mink::construct_witness(g);
      j["found"] = w.has_value();
      if (w) {
        std::string log;
        const bool ok = mink::verify_witness(g, *w, &log);
        j["witness"] = mink::chord_witness_to_json(*w);
        j["verified"] = ok;
        j["report"] = log;
      } else {
        j["witness"] = nullptr;
        j["verified"] = false;
        j["report"] = "gauge is a norm; no witness exists";
      }
      emit(j, out_path);
      return 0;
    }
    if (*c_bi) {
      const Vec x = parse_point(x_src);
      const Vec y = parse_point(y_src);
      const Vec win = parse_point(window_src);
      if (win.size() != 4) throw std::invalid_argument("window: xmin,ymin,xmax,ymax");
      const Vec res = parse_point(res_src);
      if (res.size() != 2) throw std::invalid_argument("res: nx,ny");
      Gauge g = resolve_gauge(gauge_src, 2);
      if (reversed) g = g.reversed();
      Vec lo(2), hi(2);
      lo << win[0], win[1];
      hi << win[2], win[3];
      const auto sample = mink::sample_bisector(g, x, y, lo, hi, static_cast<int>(res[0]),
                                                static_cast<int>(res[1]), band_tol);
      if (!svg_path.empty()) mink::emit_bisector_svg(sample, svg_path);
      if (!csv_path.empty()) mink::emit_bisector_csv(sample, csv_path);
      int band_cells = 0;
      for (const auto l : sample.labels)
        if (l == mink::BisectorLabel::Band) ++band_cells;
      Json j;
      j["contours"] = static_cast<int>(sample.contours.size());
      j["band_cells"] = band_cells;
      j["band_tol"] = sample.band_tol;
      emit(j, out_path);
      return 0;
    }
    if (*c_k) {
      const Gauge g1 = resolve_gauge(gauge_src, dim > 0 ? dim : 2);
      const Gauge g2 = resolve_gauge(gauge2_src, g1.dim());
      const auto ec = mink::equivalence_constants(g1, g2);
      Json j;
      j["c0"] = ec.c0;
      j["c1"] = ec.c1;
      j["approximate"] = ec.approximate;
      emit(j, out_path);
      return 0;
    }
    if (*c_v) return run_verify(config_path, seed, seed_opt->count() > 0, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
