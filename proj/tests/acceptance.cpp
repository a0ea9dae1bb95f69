// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <complex>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "boundary_checks.hpp"
#include "otto/cli.hpp"
#include "otto/error.hpp"
#include "otto/io.hpp"
#include "otto/optimize.hpp"
#include "support.hpp"

using namespace otto;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const std::string& id, const std::string& what, bool ok, const std::string& detail) {
  std::printf("%s [%s] %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

// Runs one criterion; an exception counts as a failure.
void criterion(const std::string& id, const std::string& what,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" threw: ") + e.what();
  }
  report(id, what, ok, detail);
}

bool near(double got, double want, double tol, std::string& detail, const char* name) {
  const bool ok = std::abs(got - want) <= tol;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s%s=%.8g(want %.8g)", detail.empty() ? "" : " ", name, got, want);
  detail += buf;
  return ok;
}

OptimizationProblem problem(CaseFamily f, double r1, double r2, double tc, double th, Window w) {
  OptimizationProblem p;
  p.plane.family = f;
  p.plane.r1 = r1;
  p.plane.r2 = r2;
  p.plane.tc = tc;
  p.plane.th = th;
  p.window = w;
  return p;
}

int run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return cli::main_entry(std::move(args), out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// Two-qubit Hamiltonian as a sum of Pauli products.
Eigen::Matrix4cd hamiltonian(const SpinParams& p) {
  const std::complex<double> I(0.0, 1.0);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -I, I, 0;
  sz << 1, 0, 0, -1;
  return p.jx * kron(sx, sx) + p.jy * kron(sy, sy) + p.jz * kron(sz, sz) +
         p.dz * (kron(sx, sy) - kron(sy, sx)) + p.gz * (kron(sx, sy) + kron(sy, sx)) +
         p.b1 * kron(sz, id) + p.b2 * kron(id, sz);
}

const fs::path kDir = fs::temp_directory_path() / "otto_acceptance";

}  // namespace

int main() {
  fs::create_directories(kDir);

  criterion("1", "three-level optimum per hot temperature", [](std::string& d) {
    const fs::path out = kDir / "table1.json";
    const auto t0 = std::chrono::steady_clock::now();
    const int status = run_cli({"table1", "--tc", "1", "--th", "1.5,2,2.5,3", "--format", "json", "-o",
                            out.string()});
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (status != 0) {
      d = "exit status " + std::to_string(status);
      return false;
    }
    const auto rows = io::Json::parse(slurp(out))["rows"];
    // th, r1_i, r1_f, W, eta_mp %, eta_C %, eta_N %
    const double expect[4][7] = {{1.5, 2.65857, 3.25929, -0.044155, 18.43, 33.3, 18.35},
                                {2, 2.86075, 4.06548, -0.148615, 29.6, 50, 29.3},
                                {2.5, 3.02699, 4.83933, -0.289598, 37.5, 60, 36.8},
                                {3, 3.16836, 5.59152, -0.454983, 43.3, 66.7, 42.3}};
    bool ok = rows.size() == 4;
    for (std::size_t k = 0; ok && k < 4; ++k) {
      const auto& r = rows[k];
      std::string row;
      bool rok = r["th"].get<double>() == expect[k][0];
      rok &= near(r["r1_i"].get<double>(), expect[k][1], 1e-3, row, "r1_i");
      rok &= near(r["r1_f"].get<double>(), expect[k][2], 1e-3, row, "r1_f");
      rok &= near(r["w"].get<double>(), expect[k][3], 1e-5, row, "W");
      rok &= near(100 * r["eta_mp"].get<double>(), expect[k][4], 0.1, row, "eta_mp%");
      rok &= near(100 * r["eta_c"].get<double>(), expect[k][5], 0.1, row, "eta_C%");
      rok &= near(100 * r["eta_n"].get<double>(), expect[k][6], 0.1, row, "eta_N%");
      if (!rok) d += " row th=" + io::format_double(expect[k][0]) + ":" + row;
      ok &= rok;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s4 rows, %.3f s", d.empty() ? "" : " | ", seconds);
    d += buf;
    return ok && seconds < 5.0;
  });

  criterion("2", "three-level minimum and mirrored maximum", [](std::string& d) {
    auto p = problem(CaseFamily::ThreeLevel, 0, 0, 1, 2, {0, 8, 0, 8});
    const auto mn = find_minima(p);
    p.objective = Objective::MaximizeWork;
    const auto mx = find_minima(p);
    bool ok = mn.size() == 1 && mx.size() == 1;
    if (!ok) return false;
    ok &= near(mn[0].location.x, 2.86075, 1e-3, d, "min.x");
    ok &= near(mn[0].location.y, 4.06548, 1e-3, d, "min.y");
    ok &= near(mn[0].w, -0.148615, 1e-5, d, "min.W");
    ok &= near(mx[0].location.x, 4.06548, 1e-3, d, "max.x");
    ok &= near(mx[0].location.y, 2.86075, 1e-3, d, "max.y");
    ok &= near(mx[0].w, 0.148615, 1e-5, d, "max.W");
    ok &= mx[0].cop.has_value() && near(*mx[0].cop, 2.37, 0.01, d, "CoP");
    return ok;
  });

  criterion("3", "constant-r2 planes: one and two minima", [](std::string& d) {
    const auto a = find_minima(problem(CaseFamily::R2Const, 0, 1.8, 1, 2, {0, 10, 0, 10}));
    const auto b = find_minima(problem(CaseFamily::R2Const, 0, 2.9, 1, 2, {0, 10, 0, 10}));
    d = "count(1.8)=" + std::to_string(a.size()) + " count(2.9)=" + std::to_string(b.size());
    if (a.size() != 1 || b.size() != 2) return false;
    const double eta_n = novikov_efficiency(1, 2);
    bool ok = near(a[0].location.x, 4.32922, 1e-3, d, "a.x");
    ok &= near(a[0].location.y, 5.51837, 1e-3, d, "a.y");
    ok &= near(a[0].w, -0.09977, 1e-5, d, "a.W");
    ok &= near(b[0].location.x, 5.62759, 1e-3, d, "b1.x");
    ok &= near(b[0].location.y, 6.82585, 1e-3, d, "b1.y");
    ok &= near(b[0].w, -0.08299, 1e-5, d, "b1.W");
    ok &= near(100 * *b[0].efficiency, 26.3, 0.1, d, "b1.eta%");
    ok &= near(b[1].location.x, 1.31298, 1e-3, d, "b2.x");
    ok &= near(b[1].location.y, 1.15942, 1e-3, d, "b2.y");
    ok &= near(b[1].w, -0.00366, 1e-5, d, "b2.W");
    ok &= near(100 * *b[1].efficiency, 0.58, 0.1, d, "b2.eta%");
    ok &= *b[0].efficiency < eta_n && *b[1].efficiency < eta_n;
    ok &= near(100 * eta_n, 29.3, 0.1, d, "eta_N%");
    return ok;
  });

  criterion("4", "critical coupling and loop of the W=0 curve", [](std::string& d) {
    const double rc = critical_r2(1, 2);
    bool ok = near(rc, 2.12255, 1e-4, d, "critical_r2");
    ok &= near(kappa(rc, 1, 2), 1.0, 1e-5, d, "kappa");
    const auto loop = r2const_diagonal_crossings(2.9, 1, 2);
    const auto none = r2const_diagonal_crossings(1.8, 1, 2);
    d += " crossings(2.9)=" + std::to_string(loop.size()) +
         " crossings(1.8)=" + std::to_string(none.size());
    return ok && loop.size() == 1 && none.empty();
  });

  criterion("5", "varying-jz minima and line intersection", [](std::string& d) {
    const auto a = find_minima(problem(CaseFamily::Jz, 0.7, 2, 1, 1.5, {-3, 5, -3, 5}));
    const auto b = find_minima(problem(CaseFamily::Jz, 3, 0.05, 1, 2, {-3, 5, -3, 5}));
    if (a.empty() || b.size() != 2) {
      d = "unexpected minima count";
      return false;
    }
    bool ok = near(a[0].location.x, 0.659225, 1e-3, d, "a.x");
    ok &= near(a[0].location.y, 0.976325, 1e-3, d, "a.y");
    ok &= near(a[0].w, -0.030259, 1e-5, d, "a.W");
    ok &= near(a[0].q_h, 0.343863, 1e-4, d, "a.Qh");
    ok &= near(100 * *a[0].efficiency, 8.8, 0.1, d, "a.eta%");
    ok &= near(100 * novikov_efficiency(1, 1.5), 18.4, 0.1, d, "eta_N%");
    ok &= *a[0].efficiency < novikov_efficiency(1, 1.5);
    const JzLines l = jz_lines(3, 0.05, 1, 2);
    const Point x = intersection(l.diagonal, l.zero_work);
    ok &= near(x.x, 1.45295, 1e-3, d, "cross.x");
    ok &= near(x.y, 1.45295, 1e-3, d, "cross.y");
    ok &= near(b[1].location.x, 2.79285, 1e-3, d, "b1.x");
    ok &= near(b[1].location.y, 3.35601, 1e-3, d, "b1.y");
    ok &= near(b[1].w, -0.044432, 1e-5, d, "b1.W");
    ok &= near(100 * *b[1].efficiency, 26.3, 0.1, d, "b1.eta%");
    ok &= near(b[0].location.x, -0.104884, 1e-3, d, "b2.x");
    ok &= near(b[0].location.y, -0.762864, 1e-3, d, "b2.y");
    ok &= near(b[0].w, -0.119575, 1e-5, d, "b2.W");
    ok &= near(b[0].q_h, 0.63495, 1e-4, d, "b2.Qh");
    ok &= near(100 * *b[0].efficiency, 18.8, 0.1, d, "b2.eta%");
    return ok;
  });

  criterion("6a", "first law on 10^4 random cycles", [](std::string& d) {
    otto::testing::Rng rng(0xacce6a);
    double worst = 0;
    for (int k = 0; k < 10000; ++k) {
      const CycleResult r = analyze(rng.cycle());
      worst = std::max(worst, std::abs(r.w + r.q_h + r.q_c));
    }
    d = "max |W+Qh+Qc| = " + io::format_double(worst);
    return worst < 1e-10;
  });

  criterion("6b", "closed-form strokes equal probability-weighted sums", [](std::string& d) {
    otto::testing::Rng rng(0xacce6b);
    double worst = 0;
    for (int k = 0; k < 10000; ++k) {
      const CycleSpec c = rng.cycle();
      const Levels ei = c.spec_i.energies(), ef = c.spec_f.energies();
      const Levels pa = thermal_state(c.spec_i, c.tc).p(), pc = thermal_state(c.spec_f, c.th).p();
      worst = std::max({worst, std::abs(w_in(c) - stroke_work_general(pa, ei, ef)),
                        std::abs(w_out(c) - stroke_work_general(pc, ef, ei)),
                        std::abs(q_h(c) - stroke_heat_general(ef, pa, pc)),
                        std::abs(q_c(c) - stroke_heat_general(ei, pc, pa))});
    }
    d = "max deviation = " + io::format_double(worst);
    return worst < 1e-10;
  });

  criterion("6c", "spectrum closed form equals 4x4 eigendecomposition", [](std::string& d) {
    otto::testing::Rng rng(0xacce6c);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      const SpinParams p = rng.spin_params();
      Levels e = reduce(p).energies();
      std::sort(e.begin(), e.end());
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(hamiltonian(p));
      for (int n = 0; n < 4; ++n) worst = std::max(worst, std::abs(e[n] - solver.eigenvalues()(n)));
    }
    d = "max deviation = " + io::format_double(worst) + " over 1000 draws";
    return worst < 1e-10;
  });

  criterion("6d", "Gibbs entropy equals -sum p ln p", [](std::string& d) {
    otto::testing::Rng rng(0xacce6d);
    double worst = 0;
    for (int k = 0; k < 10000; ++k) {
      const Spectrum s = rng.spectrum(10.0);
      const double t = rng.log_uniform(0.05, 20.0);
      double vn = 0;
      for (double p : thermal_state(s, t).p())
        if (p > 0) vn -= p * std::log(p);
      worst = std::max(worst, std::abs(entropy_gibbs(s, t) - vn));
    }
    d = "max deviation = " + io::format_double(worst);
    return worst < 1e-10;
  });

  criterion("6e", "engine efficiency below Carnot", [](std::string& d) {
    otto::testing::Rng rng(0xacce6e);
    double worst = -1;
    std::size_t engines = 0;
    for (int k = 0; k < 20000; ++k) {
      const CycleSpec c = rng.cycle();
      const CycleResult r = analyze(c);
      if (r.mode != OperatingMode::Engine) continue;
      ++engines;
      worst = std::max(worst, *r.efficiency - carnot_efficiency(c.tc, c.th));
    }
    d = std::to_string(engines) + " engines, max(eta - eta_C) = " + io::format_double(worst);
    return engines > 0 && worst <= 1e-12;
  });

  criterion("6f", "only admissible sign patterns occur", [](std::string& d) {
    otto::testing::Rng rng(0xacce6f);
    int seen[5] = {0, 0, 0, 0, 0};
    for (int k = 0; k < 20000; ++k) ++seen[static_cast<int>(analyze(rng.cycle()).mode)];
    ControlPlane jz;
    jz.family = CaseFamily::Jz;
    jz.r1 = 0.7;
    jz.r2 = 2;
    jz.tc = 1;
    jz.th = 1.5;
    for (const Cell& c : region_map(jz, {-3, 5, -3, 5}, 128, 128).cells)
      ++seen[static_cast<int>(c.mode)];
    char buf[160];
    std::snprintf(buf, sizeof buf, "engine %d, refrigerator %d, heater %d, accelerator %d, idle %d",
                  seen[0], seen[1], seen[2], seen[3], seen[4]);
    d = buf;
    return true;  // any forbidden pattern throws ForbiddenModePattern
  });

  criterion("6g", "mode flips across every boundary sample", [](std::string& d) {
    struct Case {
      CaseFamily f;
      double r1, r2, th;
      Window w;
    };
    std::size_t checked = 0, failed = 0;
    for (const Case& c : {Case{CaseFamily::ThreeLevel, 0, 0, 2, {0, 8, 0, 8}},
                          Case{CaseFamily::R2Const, 0, 1.8, 2, {0, 10, 0, 10}},
                          Case{CaseFamily::R2Const, 0, 2.9, 2, {0, 10, 0, 10}},
                          Case{CaseFamily::Jz, 0.7, 2, 1.5, {-3, 5, -3, 5}},
                          Case{CaseFamily::Jz, 3, 0.05, 2, {-3, 5, -3, 5}}}) {
      ControlPlane p;
      p.family = c.f;
      p.r1 = c.r1;
      p.r2 = c.r2;
      p.tc = 1;
      p.th = c.th;
      const RegionMap m = region_map(p, c.w, 64, 64);
      const auto t = otto::testing::boundary_flips(p, c.w, m.boundaries, 1e-5);
      checked += t.checked;
      failed += t.failed;
    }
    d = std::to_string(checked) + " samples probed, " + std::to_string(failed) + " without a flip";
    return checked > 1000 && failed == 0;
  });

  criterion("7", "acceptance commands are byte-identical on repeat", [](std::string& d) {
    const std::vector<std::vector<std::string>> commands = {
        {"table1", "--tc", "1", "--th", "1.5,2,2.5,3"},
        {"optimize", "--family", "three-level", "--tc", "1", "--th", "2"},
        {"optimize", "--family", "three-level", "--tc", "1", "--th", "2", "--maximize"},
        {"optimize", "--family", "r2const", "--r2", "1.8", "--tc", "1", "--th", "2"},
        {"optimize", "--family", "r2const", "--r2", "2.9", "--tc", "1", "--th", "2"},
        {"boundaries", "--family", "r2const", "--r2", "2.9", "--tc", "1", "--th", "2"},
        {"optimize", "--family", "jz", "--r1", "0.7", "--r2", "2", "--tc", "1", "--th", "1.5"},
        {"optimize", "--family", "jz", "--r1", "3", "--r2", "0.05", "--tc", "1", "--th", "2"},
        {"boundaries", "--family", "jz", "--r1", "3", "--r2", "0.05", "--tc", "1", "--th", "2"},
        {"sweep", "--family", "jz", "--r1", "0.7", "--r2", "2", "--tc", "1", "--th", "1.5"},
        {"analyze", "--jz-i", "0.659225", "--jz-f", "0.976325", "--r1", "0.7", "--r2", "2", "--tc",
         "1", "--th", "1.5", "--format", "json"},
    };
    int k = 0, same = 0;
    for (auto args : commands) {
      const fs::path out = kDir / ("cmd" + std::to_string(k++));
      args.insert(args.end(), {"-o", out.string()});
      if (run_cli(args) != 0) continue;
      const std::string first = slurp(out);
      if (run_cli(args) != 0) continue;
      if (slurp(out) == first && !first.empty()) ++same;
    }
    d = std::to_string(same) + "/" + std::to_string(commands.size()) + " commands identical";
    return same == static_cast<int>(commands.size());
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
