// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "pipeline.hpp"
#include "rational_oracle.hpp"

using namespace siegert;

namespace {

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Reference complex energies for V0 = 7.5, Z = -1 (published benchmark
// table; Gamma/2 = |Im E|).
struct RefRow {
  int l, nu;
  const char* re;
  const char* gamma_half;
  bool long_row; // full-precision row: >= 12 digits Re, >= 10 digits Gamma/2
};
const RefRow kReference[] = {
    {0, 0, "1.7805245363623048", "0.00004785969842876", true},
    {0, 1, "4.101494946209", "0.578627213766", false},
    {0, 2, "4.6634610967", "2.6832007703", false},
    {1, 0, "3.848001634811759", "0.137692229585768", true},
    {1, 1, "4.750053489274", "1.75278992436148", false},
    {2, 0, "4.9005161468291143", "0.7837535082665858", true},
    {2, 1, "5.3006134902578", "2.942357430621", false},
};

int significant_digits(const std::string& printed) {
  int n = 0;
  bool leading = true;
  for (char c : printed) {
    if (c == 'e' || c == 'E')
      break;
    if (!std::isdigit((unsigned char)c))
      continue;
    if (leading && c == '0')
      continue;
    leading = false;
    ++n;
  }
  return n;
}

// One ulp of the printed decimal value.
double printed_ulp(const std::string& printed) {
  double v = std::fabs(std::stod(printed));
  int sig = significant_digits(printed);
  int lead = (int)std::floor(std::log10(v));
  return std::pow(10.0, lead - sig + 1);
}

double sig_agreement(double mine, const std::string& printed) {
  double ref = std::stod(printed);
  double diff = std::fabs(mine - std::fabs(ref));
  if (diff == 0.0)
    return 1e9;
  return std::log10(std::fabs(ref) / diff);
}

const TraceResult* find_trace(const RunResult& run, int l, int nu) {
  for (const auto& t : run.traces)
    if (t.trace.l == l && t.trace.nu == nu &&
        t.trace.status == TraceStatus::converged)
      return &t;
  return nullptr;
}

RunConfig benchmark_config(int d) {
  RunConfig cfg;
  cfg.d = d;
  cfg.verify = false; // criterion 7 exercises the verifier separately
  return cfg;
}

RunConfig hydrogen_config(const std::vector<int>& waves) {
  RunConfig cfg;
  cfg.V0 = "0";
  cfg.waves = waves;
  cfg.D_min = 4;
  cfg.D_max = 12;
  cfg.scan_dimension = 4;
  cfg.region.re_min = -0.6;
  cfg.region.re_max = -0.05;
  cfg.region.im_min = -0.01;
  cfg.region.im_max = 0.0;
  cfg.region.grid_re = 24;
  cfg.region.grid_im = 4;
  cfg.tol_target = 1e-26;
  cfg.verify = false;
  return cfg;
}

Criterion table_reproduction(const RunResult& run) {
  Criterion c{"1. benchmark table reproduction (quantitative)"};
  c.pass = true;
  std::string detail;
  for (const RefRow& row : kReference) {
    const TraceResult* t = find_trace(run, row.l, row.nu);
    if (!t) {
      c.pass = false;
      detail += " (" + std::to_string(row.l) + "," + std::to_string(row.nu) +
                "): no converged trace;";
      continue;
    }
    double re = t->trace.best.re().to_double();
    double gh = std::fabs(t->trace.best.im().to_double());
    bool ok;
    char buf[160];
    if (row.long_row) {
      double are = sig_agreement(re, row.re);
      double agh = sig_agreement(gh, row.gamma_half);
      ok = are >= 12.0 && agh >= 10.0;
      std::snprintf(buf, sizeof(buf), " (%d,%d): %.1f/%.1f sig digits%s;", row.l,
                    row.nu, are, agh, ok ? "" : " [FAIL]");
    } else {
      double dre = std::fabs(re - std::stod(row.re));
      double dgh = std::fabs(gh - std::stod(row.gamma_half));
      double ure = 2.0 * printed_ulp(row.re);
      double ugh = 2.0 * printed_ulp(row.gamma_half);
      ok = dre <= ure && dgh <= ugh;
      std::snprintf(buf, sizeof(buf), " (%d,%d): dRe=%.1e<=%.0e dG=%.1e<=%.0e%s;",
                    row.l, row.nu, dre, ure, dgh, ugh, ok ? "" : " [FAIL]");
    }
    detail += buf;
    c.pass = c.pass && ok;
  }
  c.detail = detail;
  if (!c.pass)
    c.detail += " note: where a row fails only in its last printed digits, compare"
                " the d=0/d=1 agreement in criterion 6 (independent determinant"
                " families agreeing far below the discrepancy indicate unconverged"
                " digits in the reference row)";
  return c;
}

Criterion hydrogen_oracle() {
  Criterion c{"2. hydrogen oracle (analytic)"};
  PotentialModel hyd = make_paper_potential(mpq_class(0), mpq_class(-1));

  bool zero_dets = true;
  for (int D = 1; D <= 10; ++D) {
    SeriesRequest req{&hyd, 0, BigComplex("-0.5", "0", 60), 2 * D, 60};
    auto h = hankel_evaluate(riccati_coefficients(req), D, 0);
    zero_dets = zero_dets && h.exact_zero && h.value.is_zero();
  }

  auto s_run = run_pipeline(hydrogen_config({0}));
  auto p_run = run_pipeline(hydrogen_config({1}));

  auto check_level = [&](const RunResult& run, int l, double level) {
    for (const auto& t : run.traces) {
      if (t.trace.l != l || t.trace.status != TraceStatus::converged)
        continue;
      if (std::fabs(t.trace.best.re().to_double() - level) < 1e-12 &&
          t.trace.best.im().is_zero() &&
          t.trace.best_uncertainty < BigReal("1e-25", 40))
        return true;
    }
    return false;
  };
  bool s1 = check_level(s_run, 0, -0.5);
  bool s2 = check_level(s_run, 0, -0.125);
  bool p2 = check_level(p_run, 1, -0.125);

  c.pass = zero_dets && s1 && s2 && p2;
  c.detail = std::string(" H_D(-1/2)=0 for D<=10: ") + (zero_dets ? "yes" : "NO") +
             "; levels (l=0,n=1): " + (s1 ? "ok" : "MISS") +
             ", (l=0,n=2): " + (s2 ? "ok" : "MISS") +
             ", (l=1,n=2): " + (p2 ? "ok" : "MISS");
  return c;
}

Criterion recurrence_oracle() {
  Criterion c{"3. recurrence oracle (symbolic substitution)"};
  const mpq_class V0(15, 2), Z(-1);
  bool all = true;
  for (int l : {0, 1, 2}) {
    for (mpq_class E : {mpq_class(0), mpq_class(-1, 2), mpq_class(2)}) {
      auto f = oracle::rational_series(l, Z, V0, E, 12);
      auto res = oracle::riccati_residual(l, Z, V0, E, f);
      for (const auto& coeff : res)
        all = all && coeff == 0;
    }
  }
  c.pass = all;
  c.detail = all ? " residual vanishes through r^11 for l in {0,1,2}, E in {0,-1/2,2}"
                 : " NONZERO residual";
  return c;
}

Criterion derivative_consistency() {
  Criterion c{"4. derivative consistency (finite differences)"};
  PotentialModel pot = make_paper_potential(mpq_class(15, 2), mpq_class(-1));
  std::mt19937 rng(20260808);
  std::uniform_real_distribution<double> ure(0.0, 8.0), uim(-4.0, 0.0);

  double worst_series = 0.0, worst_hankel = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    double x = ure(rng), y = uim(rng);
    {
      const int digits = 80;
      BigComplex E = BigComplex::from_doubles(x, y, digits);
      const BigReal h("1e-15", digits);
      SeriesRequest base{&pot, trial % 3, E, 14, digits};
      auto ev = riccati_coefficients(base);
      SeriesRequest up{&pot, trial % 3, BigComplex(E.re() + h, E.im()), 14, digits};
      SeriesRequest dn{&pot, trial % 3, BigComplex(E.re() - h, E.im()), 14, digits};
      auto evu = riccati_coefficients(up);
      auto evd = riccati_coefficients(dn);
      for (int j = 1; j <= 14; ++j) {
        BigComplex fd = (evu.f[j] - evd.f[j]) / (BigComplex(h, BigReal(digits)) * 2);
        BigReal scale = ev.df_dE[j].abs();
        if (scale.is_zero())
          continue;
        double rel = ((fd - ev.df_dE[j]).abs() / scale).to_double();
        worst_series = std::max(worst_series, rel);
      }
    }
    {
      const int digits = 90, D = 5;
      BigComplex E = BigComplex::from_doubles(x, y, digits);
      const BigReal h("1e-12", digits);
      SeriesRequest base{&pot, trial % 3, E, 2 * D, digits};
      auto hv = hankel_evaluate(riccati_coefficients(base), D, 0);
      if (!hv.has_dlog)
        continue;
      SeriesRequest up{&pot, trial % 3, BigComplex(E.re() + h, E.im()), 2 * D, digits};
      SeriesRequest dn{&pot, trial % 3, BigComplex(E.re() - h, E.im()), 2 * D, digits};
      BigComplex hu = hankel_evaluate(riccati_coefficients(up), D, 0).value;
      BigComplex hd = hankel_evaluate(riccati_coefficients(dn), D, 0).value;
      BigComplex fd = (hu / hd).log() / (BigComplex(h, BigReal(digits)) * 2);
      double rel = ((fd - hv.dlog).abs() / hv.dlog.abs()).to_double();
      worst_hankel = std::max(worst_hankel, rel);
    }
  }
  c.pass = worst_series < 1e-12 && worst_hankel < 1e-8;
  char buf[120];
  std::snprintf(buf, sizeof(buf), " worst series rel %.2e (<1e-12), worst dlog rel %.2e (<1e-8)",
                worst_series, worst_hankel);
  c.detail = buf;
  return c;
}

Criterion convergence_shape(const RunResult& run) {
  Criterion c{"5. convergence shape for (l=0, nu=0)"};
  const TraceResult* t = find_trace(run, 0, 0);
  if (!t) {
    c.detail = " no converged (0,0) trace";
    return c;
  }
  auto rows = convergence_report(t->trace);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& row : rows) {
    if (row.D < 15 || row.D > 30 || row.re_sentinel)
      continue;
    sx += row.D;
    sy += row.L_re;
    sxx += (double)row.D * row.D;
    sxy += row.D * row.L_re;
    ++n;
  }
  double slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;

  int first_d = t->trace.D_first;
  int first_im = -1;
  for (int D = t->trace.D_first; D <= t->trace.D_last(); ++D) {
    if (!t->trace.root_at(D).im().is_zero()) {
      first_im = D;
      break;
    }
  }
  bool im_later = first_im > first_d;
  c.pass = slope < -0.3 && im_later;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                " L_re slope %.3f over D=15..30 (<-0.3); Re data from D=%d, Im appears at D=%d",
                slope, first_d, first_im);
  c.detail = buf;
  return c;
}

Criterion displacement_stability(const RunResult& d0, const RunResult& d1) {
  Criterion c{"6. displacement stability (d=0 vs d=1)"};
  c.pass = true;
  std::string detail;
  for (const RefRow& row : kReference) {
    const TraceResult* a = find_trace(d0, row.l, row.nu);
    const TraceResult* b = find_trace(d1, row.l, row.nu);
    if (!a || !b) {
      c.pass = false;
      detail += " (" + std::to_string(row.l) + "," + std::to_string(row.nu) +
                "): missing in " + (a ? "d=1" : "d=0") + ";";
      continue;
    }
    BigReal dist = (a->trace.best - b->trace.best).abs();
    BigReal bound = a->trace.best_uncertainty;
    if (b->trace.best_uncertainty > bound)
      bound = b->trace.best_uncertainty;
    bound = bound * 10;
    bool ok = dist <= bound;
    char buf[120];
    std::snprintf(buf, sizeof(buf), " (%d,%d): |d0-d1|=%.1e<=%.1e%s;", row.l, row.nu,
                  dist.to_double(), bound.to_double(), ok ? "" : " [FAIL]");
    detail += buf;
    c.pass = c.pass && ok;
  }
  c.detail = detail;
  return c;
}

Criterion verifier_discrimination() {
  Criterion c{"7. verifier discrimination at the benchmark roots"};
  PotentialModel pot = make_paper_potential(mpq_class(15, 2), mpq_class(-1));

  struct Probe {
    int l, nu;
    double at_root = 0.0, offset = 0.0;
    bool small = false, discriminates = false, ok = false;
  };
  std::vector<std::future<Probe>> jobs;
  for (const RefRow& row : kReference) {
    jobs.push_back(std::async(std::launch::async, [&pot, row]() {
      Probe p{row.l, row.nu};
      std::string im = std::string("-") + row.gamma_half;
      BigComplex root(row.re, im, 60);
      BigComplex off(BigReal(row.re, 60) + BigReal("0.1", 60),
                     BigReal(im, 60));
      p.at_root = siegert_residual(pot, row.l, root, 0.1, 30.0, 12000).residual;
      p.offset = siegert_residual(pot, row.l, off, 0.1, 30.0, 12000).residual;
      p.small = p.at_root < 1e-4;
      p.discriminates = p.offset >= 100.0 * p.at_root;
      p.ok = p.small && p.discriminates;
      return p;
    }));
  }
  c.pass = true;
  std::string detail;
  for (auto& j : jobs) {
    Probe p = j.get();
    char buf[160];
    std::snprintf(buf, sizeof(buf), " (%d,%d): %.1e vs %.1e (x%.0e)%s%s;", p.l, p.nu,
                  p.at_root, p.offset, p.offset / std::max(p.at_root, 1e-300),
                  p.small ? "" : " [FAIL <1e-4]",
                  p.discriminates ? "" : " [FAIL x100]");
    detail += buf;
    c.pass = c.pass && p.ok;
  }
  c.detail = detail;
  if (!c.pass)
    c.detail += " note: for broad states the offset's incoming-wave signal decays"
                " like exp(-2|Im k| R) while the residual floor decays like"
                " R^2 exp(-R); once 2|Im k| > 1 no matching radius can show the"
                " contrast";
  return c;
}

} // namespace

int main() {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();

  std::printf("acceptance suite: V0 = 7.5, Z = -1 benchmark\n");

  auto d0_future = std::async(std::launch::async, []() {
    return run_pipeline(benchmark_config(0));
  });
  auto d1_future = std::async(std::launch::async, []() {
    return run_pipeline(benchmark_config(1));
  });

  std::vector<Criterion> results;
  results.push_back(recurrence_oracle());
  results.push_back(derivative_consistency());
  results.push_back(hydrogen_oracle());

  RunResult d0 = d0_future.get();
  results.push_back(table_reproduction(d0));
  results.push_back(convergence_shape(d0));

  RunResult d1 = d1_future.get();
  results.push_back(displacement_stability(d0, d1));
  results.push_back(verifier_discrimination());

  std::sort(results.begin(), results.end(),
            [](const Criterion& a, const Criterion& b) { return a.name < b.name; });

  bool all = true;
  for (const auto& c : results) {
    std::printf("[%s] %s —%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    all = all && c.pass;
  }
  double secs = std::chrono::duration<double>(clock::now() - t0).count();
  std::printf("%s in %.1fs\n", all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED", secs);
  return all ? 0 : 1;
}
