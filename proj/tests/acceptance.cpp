// Acceptance suite: one criterion per section, one pass/fail line each.
#include "mink/analysis.hpp"
#include "mink/bisector.hpp"
#include "mink/serialize.hpp"
#include "mink/witness.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mink;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;
int g_failures = 0;

struct Criterion {
  const char* name;
  bool (*run)(std::string& detail);
};

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Gauge triangle_gauge() { return Gauge::from_vertices(2, {v2(1, 0), v2(0, 1), v2(-1, -1)}); }

// 1. Gauge axioms on 25 gauges within 1e-9 on 1e3 samples each.
bool c1_axioms(std::string& detail) {
  std::vector<Gauge> gauges;
  gauges.push_back(Gauge::euclidean(2));
  gauges.push_back(Gauge::lp(2, 1.0));
  gauges.push_back(Gauge::lp(3, std::numeric_limits<double>::infinity()));
  gauges.push_back(Gauge::ellipsoid((Mat(2, 2) << 1, 0, 0, 4).finished()));
  gauges.push_back(Gauge::shifted(Gauge::euclidean(2), v2(0.3, 0)));
  Rng rng(2024);
  for (int i = 0; i < 5; ++i) gauges.push_back(random_symmetric_polygon(rng));
  for (int i = 0; i < 5; ++i) gauges.push_back(random_asymmetric_polygon(rng));
  for (int i = 0; i < 5; ++i) gauges.push_back(random_polytope_3d(rng, true));
  for (int i = 0; i < 5; ++i) gauges.push_back(random_polytope_3d(rng, false));
  if (gauges.size() != 25) {
    detail = "gauge pool size";
    return false;
  }
  double worst = 0.0;
  for (std::size_t gi = 0; gi < gauges.size(); ++gi) {
    const Gauge& g = gauges[gi];
    Rng sampler(1000 + gi);
    for (int i = 0; i < 1000; ++i) {
      const Vec x = sampler.in_box(g.dim(), 5.0);
      const Vec y = sampler.in_box(g.dim(), 5.0);
      const double lam = sampler.uniform(1e-3, 10.0);
      const double gx = g.eval(x);
      const double hom = std::abs(g.eval(lam * x) - lam * gx) / (1.0 + lam * gx);
      const double sub = g.eval(x + y) - g.eval(x) - g.eval(y);
      worst = std::max(worst, hom);
      worst = std::max(worst, sub);
      if (hom > 1e-9 || sub > 1e-9 || (x.norm() > 1e-6 && !(gx > 0.0))) {
        detail = "gauge " + std::to_string(gi) + " violates an axiom";
        return false;
      }
    }
  }
  detail = "worst deviation " + format_double(worst, 3);
  return true;
}

// 2. Sequence-space example closed forms.
bool c2_sequence(std::string& detail) {
  for (int n = 1; n <= 1000; ++n) {
    TruncatedSequence xn;
    xn.entries.assign(n, 1.0 / n);
    if (std::abs(l1_gauge_eval(xn) - 1.0) > 1e-15) {
      detail = "gauge(x_n) off at n=" + std::to_string(n);
      return false;
    }
    TruncatedSequence mxn;
    mxn.entries.assign(n, -1.0 / n);
    if (l1_gauge_eval(mxn) != 1.0 / n) {
      detail = "gauge(-x_n) off at n=" + std::to_string(n);
      return false;
    }
  }
  for (int m = 2; m <= 60; ++m) {
    TruncatedSequence x0;
    for (int i = 0; i < m; ++i) x0.entries.push_back(std::ldexp(1.0, -i));
    if (l1_gauge_eval(x0) != 2.0 - std::ldexp(1.0, 1 - m)) {
      detail = "gauge(x0^(m)) off at m=" + std::to_string(m);
      return false;
    }
  }
  return true;
}

// 3. Symmetric planar gauges: 20 x 50 certified nonempty.
bool c3_lines_nonempty(std::string& detail) {
  Rng rng(0xa11ce5ULL);
  double worst = -1e300;
  for (int gi = 0; gi < 20; ++gi) {
    const Gauge g = random_symmetric_polygon(rng);
    for (int pi = 0; pi < 50; ++pi) {
      const Flat k = random_flat(rng, 2, 1);
      const Vec y = rng.in_box(2, 3.0);
      const auto r = coapprox_solve(g, k, y, 1e-6);
      if (r.status != CoapproxStatus::NonEmpty) {
        detail = "not nonempty at gauge " + std::to_string(gi) + " pair " + std::to_string(pi);
        return false;
      }
      const double audit = audit_violation(g, k, y, *r.witness, 10000, gi * 100 + pi);
      worst = std::max(worst, audit);
      if (audit > 1e-6) {
        detail = "audit " + format_double(audit, 3) + " at gauge " + std::to_string(gi);
        return false;
      }
    }
  }
  detail = "1000/1000, worst audited violation " + format_double(worst, 3);
  return true;
}

// 4. Asymmetric planar gauges: witness chain with certified emptiness.
bool c4_witnesses(std::string& detail) {
  Rng rng(0xb0b5ULL);
  double min_lb = 1e300;
  for (int gi = 0; gi < 20; ++gi) {
    const Gauge g = random_asymmetric_polygon(rng);
    const auto w = construct_witness(g);
    if (!w) {
      detail = "no witness at gauge " + std::to_string(gi);
      return false;
    }
    std::string log;
    if (!verify_witness(g, *w, &log)) {
      detail = "verification failed at gauge " + std::to_string(gi) + "\n" + log;
      return false;
    }
    const auto r = coapprox_solve(g, w->line(), w->target, 1e-6);
    if (r.status != CoapproxStatus::Empty || !r.emptiness_lower_bound ||
        *r.emptiness_lower_bound < 2e-6) {
      detail = "emptiness not certified at gauge " + std::to_string(gi);
      return false;
    }
    min_lb = std::min(min_lb, *r.emptiness_lower_bound);
  }
  detail = "20/20, smallest emptiness bound " + format_double(min_lb, 3);
  return true;
}

// 5. Inner-product projections coincide with coapprox witnesses.
bool c5_projection(std::string& detail) {
  struct Item {
    Gauge g;
    int dim;
  };
  std::vector<Item> items;
  items.push_back({Gauge::euclidean(2), 2});
  items.push_back({Gauge::euclidean(3), 3});
  items.push_back({Gauge::ellipsoid((Mat(2, 2) << 1, 0, 0, 4).finished()), 2});
  items.push_back({Gauge::ellipsoid((Mat(3, 3) << 1, 0, 0, 0, 4, 0, 0, 0, 2).finished()), 3});
  Rng rng(555);
  double worst_dist = 0.0;
  int done = 0;
  while (done < 100) {
    const Item& it = items[done % items.size()];
    const int d = it.dim;
    const int k = 1 + (done % (d - 1));
    const Flat flat = random_flat(rng, d, k);
    const Vec y = rng.in_box(d, 3.0);
    if (flat.contains(y, 1e-6)) continue;
    const Mat m = it.g.kind() == GaugeKind::Ellipsoid ? it.g.metric() : Mat(Mat::Identity(d, d));
    const Mat umu = flat.onb().transpose() * m * flat.onb();
    const Vec foot = flat.point_at(umu.ldlt().solve(flat.onb().transpose() * (m * (y - flat.base()))));

    const auto r = coapprox_solve(it.g, flat, y, 1e-6);
    if (r.status != CoapproxStatus::NonEmpty) {
      detail = "nonempty expected at trial " + std::to_string(done);
      return false;
    }
    const double dist = (*r.witness - foot).norm();
    worst_dist = std::max(worst_dist, dist);
    if (dist > 1e-6) {
      detail = "witness " + format_double(dist, 3) + " from the metric foot";
      return false;
    }
    const Vec perturbed = foot + 1e-2 * flat.onb().col(0);
    if (!(audit_violation(it.g, flat, y, perturbed, 4000, done) > 0.0)) {
      detail = "perturbed foot passed the audit at trial " + std::to_string(done);
      return false;
    }
    ++done;
  }
  detail = "100/100, worst witness-foot distance " + format_double(worst_dist, 3);
  return true;
}

// 6. Parallelogram defect thresholds, pinned at the axis pair.
bool c6_defect(std::string& detail) {
  const double inf = std::numeric_limits<double>::infinity();
  const double de = parallelogram_defect(Gauge::euclidean(2), 400, 0);
  const double dell =
      parallelogram_defect(Gauge::ellipsoid((Mat(2, 2) << 2, 0.4, 0.4, 1).finished()), 400, 0);
  const double dinf = parallelogram_defect(Gauge::lp(2, inf), 400, 0);
  const double d1 = parallelogram_defect(Gauge::lp(2, 1.0), 400, 0);

  auto pair_defect = [](const Gauge& g, const Vec& u, const Vec& v) {
    const double a = g.eval(u + v), b = g.eval(u - v), cu = g.eval(u), cv = g.eval(v);
    return std::abs(a * a + b * b - 2.0 * cu * cu - 2.0 * cv * cv);
  };
  const double at_pair_inf = pair_defect(Gauge::lp(2, inf), v2(1, 0), v2(0, 1));
  const double at_pair_1 = pair_defect(Gauge::lp(2, 1.0), v2(1, 0), v2(0, 1));

  detail = "euclid " + format_double(de, 3) + ", ellipsoid " + format_double(dell, 3) +
           ", linf@pair " + format_double(at_pair_inf, 3) + ", l1@pair " +
           format_double(at_pair_1, 3);
  return de <= 1e-8 && dell <= 1e-8 && at_pair_inf >= 2.0 - 1e-9 && at_pair_1 >= 2.0 - 1e-9 &&
         dinf >= at_pair_inf && d1 >= at_pair_1;
}

// 7. 3D: euclidean planes all coproximinal; max norm yields an emptiness
// certificate within 500 draws.
bool c7_hilbert_contrast(std::string& detail) {
  Rng rng(0);
  const Gauge e3 = Gauge::euclidean(3);
  for (int i = 0; i < 30; ++i) {
    const Flat k = random_flat(rng, 3, 2);
    const Vec y = rng.in_box(3, 3.0);
    const auto r = coapprox_solve(e3, k, y, 1e-6);
    if (r.status != CoapproxStatus::NonEmpty) {
      detail = "euclidean plane " + std::to_string(i) + " not certified";
      return false;
    }
    if (audit_violation(e3, k, y, *r.witness, 10000, i) > 1e-6) {
      detail = "euclidean audit failed at plane " + std::to_string(i);
      return false;
    }
  }
  const Gauge linf = Gauge::lp(3, std::numeric_limits<double>::infinity());
  for (int i = 0; i < 500; ++i) {
    const Flat k = random_flat(rng, 3, 2);
    const Vec y = rng.in_box(3, 3.0);
    const auto r = coapprox_solve(linf, k, y, 1e-6);
    if (r.status == CoapproxStatus::Empty) {
      detail = "30/30 euclidean nonempty; max-norm emptiness at draw " + std::to_string(i) +
               " with bound " + format_double(*r.emptiness_lower_bound, 3);
      return true;
    }
  }
  detail = "no max-norm emptiness certificate in 500 draws";
  return false;
}

// 8. Witness line extends to a non-coproximinal plane in the 3D product.
bool c8_extension(std::string& detail) {
  const Gauge g2 = triangle_gauge();
  const auto w = construct_witness(g2);
  if (!w) {
    detail = "no planar witness";
    return false;
  }
  const Gauge g3 = Gauge::product_with_interval(g2);
  const Flat x0(v3(w->x0[0], w->x0[1], 0), {v3(w->x1[0] - w->x0[0], w->x1[1] - w->x0[1], 0)});
  const Vec y0 = v3(w->target[0], w->target[1], 0);
  const auto out = extend_to_hyperplane(g3, x0, y0, 0);
  if (out.status != SeparationStatus::Ok) {
    detail = "extension failed: " + out.detail;
    return false;
  }
  const auto r = coapprox_solve(g3, *out.witness->hyperplane, y0, 1e-6);
  if (r.status != CoapproxStatus::Empty) {
    detail = "returned plane not certified empty";
    return false;
  }
  detail = "margin " + format_double(out.witness->margin, 3) + ", n0 " +
           std::to_string(out.witness->n0) + ", plane emptiness bound " +
           format_double(*r.emptiness_lower_bound, 3);
  return true;
}

// 9. Bisector contours and swap antisymmetry.
bool c9_bisector(std::string& detail) {
  const Gauge e = Gauge::euclidean(2);
  const auto s = sample_bisector(e, v2(-1, 0), v2(1, 0), v2(-2, -2), v2(2, 2), 256, 256);
  const double cell = std::hypot(4.0 / 255.0, 4.0 / 255.0);
  for (const auto& poly : s.contours)
    for (const Vec& p : poly)
      if (std::abs(p[0]) > cell) {
        detail = "contour vertex " + format_double(p[0], 3) + " off the exact bisector";
        return false;
      }
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const Gauge g = trial % 2 == 0 ? random_asymmetric_polygon(rng) : random_symmetric_polygon(rng);
    const Vec x = rng.in_box(2, 1.5), y = rng.in_box(2, 1.5);
    const auto a = sample_bisector(g, x, y, v2(-3, -3), v2(3, 3), 64, 64);
    const auto b = sample_bisector(g, y, x, v2(-3, -3), v2(3, 3), 64, 64);
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
      const bool ok =
          (a.labels[i] == BisectorLabel::Band && b.labels[i] == BisectorLabel::Band) ||
          (a.labels[i] == BisectorLabel::Positive && b.labels[i] == BisectorLabel::Negative) ||
          (a.labels[i] == BisectorLabel::Negative && b.labels[i] == BisectorLabel::Positive);
      if (!ok) {
        detail = "swap antisymmetry broken at cell " + std::to_string(i) + " trial " +
                 std::to_string(trial);
        return false;
      }
    }
  }
  return true;
}

// 10. CLI byte determinism.
bool c10_cli(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "no --cli path given";
    return false;
  }
  const fs::path dir = fs::temp_directory_path() / "mink_acceptance";
  fs::create_directories(dir);
  const std::string tri = (dir / "triangle.json").string();
  save_gauge_file(triangle_gauge(), tri);
  const std::string cfg = (dir / "suites.json").string();
  {
    std::ofstream out(cfg);
    out << R"({"suites":["B","sequence","parallelogram"],"seed":0,"counts":{"b_gauges":3}})";
  }

  auto run = [&](const std::string& args, const std::string& out_file) {
    const std::string cmd = g_cli_path + " " + args + " --out " + out_file + " 2>/dev/null";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  struct Cmd {
    std::string name, args;
    int expect_code;
  };
  const std::vector<Cmd> cmds = {
      {"eval", "eval --gauge builtin:linf --point 3,4", 0},
      {"coapprox", "coapprox --gauge " + tri + " --flat \"base=0,0;dirs=1,0\" --point 0.5,2", 0},
      {"bestapprox", "bestapprox --gauge builtin:linf --flat \"base=0,0;dirs=1,0\" --point 0,1", 0},
      {"witness", "witness --gauge " + tri + " --emit-gauge " + (dir / "emit.json").string(), 0},
      {"bisector", "bisector --gauge " + tri +
                       " --x 0,0 --y 1,0 --window=-2,-2,2,2 --res 64,64 --svg " +
                       (dir / "bis.svg").string() + " --csv " + (dir / "bis.csv").string(),
       0},
      {"constants", "constants --gauge builtin:linf --gauge2 builtin:l1 --dim 2", 0},
      {"verify", "verify --config " + cfg + " --seed 0", 0},
  };
  for (const auto& cmd : cmds) {
    const std::string f1 = (dir / (cmd.name + ".1.json")).string();
    const std::string f2 = (dir / (cmd.name + ".2.json")).string();
    const int rc1 = run(cmd.args, f1);
    const int rc2 = run(cmd.args, f2);
    if (rc1 != rc2) {
      detail = cmd.name + ": exit codes differ";
      return false;
    }
    if (WEXITSTATUS(rc1) != cmd.expect_code) {
      detail = cmd.name + ": exit code " + std::to_string(WEXITSTATUS(rc1));
      return false;
    }
    if (slurp(f1) != slurp(f2) || slurp(f1).empty()) {
      detail = cmd.name + ": outputs differ between runs";
      return false;
    }
  }
  // The side files are byte-deterministic too.
  const std::string svg1 = slurp((dir / "bis.svg").string());
  run(cmds[4].args, (dir / "bisector.3.json").string());
  if (slurp((dir / "bis.svg").string()) != svg1) {
    detail = "svg differs between runs";
    return false;
  }
  // eval value spot check
  if (slurp((dir / "eval.1.json").string()).find("\"value\": 4.0") == std::string::npos) {
    detail = "eval output unexpected";
    return false;
  }
  // The emitted gauge file reloads to an identical evaluator.
  {
    const Gauge back = load_gauge_file((dir / "emit.json").string());
    const Gauge tri_g = triangle_gauge();
    Rng rng(321);
    for (int i = 0; i < 200; ++i) {
      const Vec p = rng.in_box(2, 4.0);
      if (std::abs(back.eval(p) - tri_g.eval(p)) > 1e-12 * (1.0 + tri_g.eval(p))) {
        detail = "emitted gauge does not round-trip";
        return false;
      }
    }
  }
  // Malformed gauge file reports a usage error.
  const std::string broken = (dir / "broken.json").string();
  {
    std::ofstream out(broken);
    out << R"({"dim": 2, "kind": "vertices", "data": [[1,0]], "junk": true})";
  }
  const int rc = run("eval --gauge " + broken + " --point 1,0", (dir / "broken.out").string());
  if (WEXITSTATUS(rc) != 2) {
    detail = "malformed gauge exit code " + std::to_string(WEXITSTATUS(rc));
    return false;
  }
  return true;
}

void run_criterion(int index, const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = c.run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %2d %-34s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", index, c.name, secs,
              detail.empty() ? "" : " - ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];

  const Criterion criteria[] = {
      {"gauge axioms on 25 gauges", c1_axioms},
      {"sequence-gauge closed forms", c2_sequence},
      {"norm lines coproximinal (1000x)", c3_lines_nonempty},
      {"asymmetric witnesses certified (20x)", c4_witnesses},
      {"projection = coapproximation (100x)", c5_projection},
      {"parallelogram defect thresholds", c6_defect},
      {"3D plane contrast (euclid vs max)", c7_hilbert_contrast},
      {"witness line extends to a plane", c8_extension},
      {"bisector contours + swap antisymmetry", c9_bisector},
      {"CLI byte determinism", c10_cli},
  };
  int idx = 1;
  for (const auto& c : criteria) run_criterion(idx++, c);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
