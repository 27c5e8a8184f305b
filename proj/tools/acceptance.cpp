// One PASS/FAIL line per acceptance criterion. Exit status 1 when any
// criterion fails.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bgeom/borel.hpp"
#include "bgeom/corpus.hpp"
#include "bgeom/dual_access.hpp"
#include "bgeom/errors.hpp"
#include "bgeom/geometry.hpp"
#include "bgeom/oracles.hpp"
#include "bgeom/parallel.hpp"

using namespace bgeom;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Functional normalized_row(const Space& s, std::size_t k) {
  const Functional f(s.rows()[k]);
  return Functional(s.rows()[k] / dual_norm(s, f));
}

std::vector<Vec> basis(int n, int k) {
  std::vector<Vec> b;
  for (int i = 0; i < k; ++i) b.push_back(Vec::Unit(n, i));
  return b;
}

Outcome knocerrado() {
  const auto r = verify_k_counterexample(30, 20, 1e-8, 30);
  double worst_slack = 0.0;
  for (const auto& m : r.membership) worst_slack = std::max(worst_slack, m.defect);
  const double last = r.distance.back();
  const bool small = last < 1e-4;
  return {r.clause_i && r.clause_ii && small && r.clause_iii,
          fmt("members %s (max slack %.2g), distance monotone %s, d(20)=%.5f %s 1e-4, limit outside K_mu %s",
              r.clause_i ? "yes" : "no", worst_slack, r.clause_ii ? "yes" : "no", last, small ? "<" : ">=",
              r.clause_iii ? "yes" : "no")};
}

Outcome slices() {
  const Functional e1 = Functional::coordinate(2, 0);
  double slowest = 0.0;
  const auto timed = [&](const Space& s, double alpha) {
    const auto t0 = std::chrono::steady_clock::now();
    const double d = slice_diameter(s, {e1, alpha}).value;
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return d;
  };
  const double inf = timed(Space::linf(2), 0.5);
  const double two = timed(Space::l2(2), 0.5);
  const double one = timed(Space::l1(2), 0.25);
  const bool ok = inf == 2.0 && std::abs(two - std::sqrt(3.0)) <= 1e-3 && std::abs(one - 0.5) <= 1e-9 && slowest < 1.0;
  return {ok, fmt("linf %.17g, l2 %.9f (chord %.9f), l1 %.17g, slowest %.3fs", inf, two, std::sqrt(3.0), one, slowest)};
}

Outcome daugavet() {
  Vec e2 = Vec::Unit(2, 1);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double d2 = daugavet_defect_rank1(Space::l2(2), Functional::coordinate(2, 0), e2).value;
  const double dinf = daugavet_defect_rank1(Space::linf(2), Functional::coordinate(2, 0), e2).value;
  const bool ok = std::abs(d2 - (2.0 - golden)) <= 1e-6 && std::abs(dinf) <= 1e-9;
  return {ok, fmt("l2 %.9f vs %.9f, linf %.3g", d2, 2.0 - golden, dinf)};
}

Outcome oracle_equivalence() {
  const auto corpus = facet_corpus();
  std::vector<int> agree(corpus.size());
  std::vector<std::string> notes(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t k) {
    bool all = true;
    for (const auto& r : crossval_regions(corpus[k], 100000, 0.02)) {
      if (r.agree) continue;
      all = false;
      notes[k] += fmt(" #%zu %s exact %.4f oracle %.4f+-%.4f", k, r.region.c_str(), r.exact.value, r.oracle.estimate,
                      r.oracle.half_width);
    }
    agree[k] = all;
  });
  int count = 0;
  std::string bad;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    count += agree[k];
    bad += notes[k];
  }
  return {count == static_cast<int>(corpus.size()), fmt("%d/%zu spaces agree;", count, corpus.size()) + bad};
}

Outcome hull_fidelity() {
  constexpr double kTolHull = 0.1, kMargin = 0.05;
  constexpr std::size_t kPoints = 200;
  const auto corpus = facet_corpus();
  struct Tally {
    int compared = 0, matched = 0, borderline = 0;
    std::string bad;
  };
  std::vector<Tally> tallies(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t k) {
    const Space& s = corpus[k];
    Tally& t = tallies[k];
    HullOptions opt;
    opt.hull_tol = kTolHull;
    opt.budget = 4;
    const auto zs = interior_grid(s, opt.budget);
    const auto xs = unit_grid(s, opt.budget);
    const auto record = [&](const char* name, double eps, const Verdict& v, double oracle) {
      if (std::abs(v.defect - kTolHull) <= kMargin) {
        ++t.borderline;
        return;
      }
      ++t.compared;
      if (v.pass == (oracle <= kTolHull)) {
        ++t.matched;
      } else {
        t.bad += fmt(" #%zu %s eps=%g checker %.4f oracle %.4f", k, name, eps, v.defect, oracle);
      }
    };
    for (double eps : {0.5, 1.5}) {
      double o = 0.0;
      for (const auto& z : zs) o = std::max(o, ldp_hull_oracle(s, z, 2.0, eps, kPoints).estimate);
      record("ldp", eps, ldp_check(s, 2.0, eps, opt), o);

      double od = 0.0, ol = 0.0;
      for (const auto& x : xs) {
        const double r = norm(s, x);
        const double self = dp_hull_oracle(s, x, x, eps, kPoints).estimate;
        ol = std::max(ol, self);
        od = std::max(od, self);
        for (const auto& z : zs) {
          const double nz = norm(s, z);
          const Vec zz = nz >= r ? Vec(z * (0.9 * r / nz)) : z;
          od = std::max(od, dp_hull_oracle(s, x, zz, eps, kPoints).estimate);
        }
      }
      record("dp", eps, dp_check(s, eps, opt), od);
      record("dld2p", eps, dld2p_check(s, eps, opt), ol);
    }
  });
  Tally sum;
  for (const auto& t : tallies) {
    sum.compared += t.compared;
    sum.matched += t.matched;
    sum.borderline += t.borderline;
    sum.bad += t.bad;
  }
  return {sum.matched == sum.compared,
          fmt("%d/%d non-borderline verdicts match, %d borderline skipped;", sum.matched, sum.compared, sum.borderline) +
              sum.bad};
}

Outcome asymptotics() {
  std::string detail;
  bool ok = true;
  double worst_linf = 0.0;
  for (int n = 8; n <= 16; ++n) {
    HullOptions opt;
    opt.grid = {Vec::Constant(n, 0.9)};
    worst_linf = std::max(worst_linf, ldp_check(Space::linf(n), 2.0, 0.5, opt).defect);
  }
  ok = ok && worst_linf <= 0.1;
  double worst_oh = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const auto s = Space::l1(n);
    for (int k = 1; k < n; ++k) worst_oh = std::max(worst_oh, oh_check(s, 1e-6, aligned_octa_grid(s, {basis(n, k)}, 2)).defect);
  }
  ok = ok && worst_oh <= 1e-12;
  double last = -1.0;
  bool monotone = true;
  for (int n = 2; n <= 16; ++n) {
    const double fraction = 1.0 - woh_szlenk_check(encode_space(Space::l1(n), DenseRule::basis()), {2, 0.1}).defect;
    monotone = monotone && fraction >= last;
    last = fraction;
  }
  ok = ok && monotone;
  return {ok, fmt("linf^8..16 ld2p max defect %.4f, l1^2..8 oh max defect %.2g, l1 szlenk fraction %s (n=16: %.4f)",
                  worst_linf, worst_oh, monotone ? "non-decreasing" : "DECREASES", last)};
}

Outcome transcription() {
  const auto corpus = facet_corpus();
  std::vector<std::string> notes(corpus.size());
  std::vector<int> bad(corpus.size()), passes(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t k) {
    const auto code = encode_space(corpus[k], DenseRule::basis());
    LevelSpec level;
    level.m_max = level.k_max = 4;
    level.search_depth = 500;
    level.g_tuple = facet_g_tuple(code, level.search_depth);
    for (auto id : all_formulas()) {
      const auto a = formula_eval(code, id, level);
      const auto b = formula_mirror(code, id, level);
      passes[k] += a.pass;
      if (a.pass != b.pass || a.detail != b.detail) {
        ++bad[k];
        notes[k] += fmt(" #%zu %s", k, to_string(id).c_str());
      }
    }
  });
  int discrepancies = 0, pass_count = 0;
  std::string detail;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    discrepancies += bad[k];
    pass_count += passes[k];
    detail += notes[k];
  }
  return {discrepancies == 0, fmt("%d discrepancies over %zu evaluations (%d passing);", discrepancies,
                                  corpus.size() * all_formulas().size(), pass_count) +
                                  detail};
}

Outcome implications() {
  const auto corpus = facet_corpus();
  std::atomic<int> broken{0};
  std::atomic<int> checks{0};
  std::vector<std::string> notes(corpus.size());
  std::vector<double> cc_gap(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t k) {
    const Space& s = corpus[k];
    const auto fail = [&](const std::string& what) {
      ++broken;
      notes[k] += fmt(" #%zu ", k) + what;
    };
    const auto g = aligned_octa_grid(s, {basis(s.dim(), 1), basis(s.dim(), 2)}, 2);
    for (double eps : {0.05, 0.2, 0.5, 0.9}) {
      const bool oh = oh_check(s, eps, g).pass, woh = woh_direct_check(s, eps, g).pass, loh = loh_check(s, eps, g).pass;
      checks += 2;
      if (oh && !woh) fail(fmt("oh!woh eps=%g", eps));
      if (woh && !loh) fail(fmt("woh!loh eps=%g", eps));
    }
    HullOptions opt;
    opt.budget = 4;
    for (double eps : {0.5, 1.0, 1.5}) {
      ++checks;
      if (dp_check(s, eps, opt).pass && !dld2p_check(s, eps, opt).pass) fail(fmt("dp!dld2p eps=%g", eps));
    }
    for (std::size_t r = 0; r < s.rows().size(); ++r) {
      const SliceSpec one[] = {{normalized_row(s, r), 0.3}};
      const double w[] = {1.0};
      cc_gap[k] = std::max(cc_gap[k], std::abs(cc_slice_diameter(s, one, w).value - slice_diameter(s, one[0]).value));
    }
  });
  double gap = 0.0;
  std::string detail;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    gap = std::max(gap, cc_gap[k]);
    detail += notes[k];
  }
  return {broken == 0 && gap <= 1e-9,
          fmt("%d implication checks, %d broken, max |cc - slice| %.2g;", checks.load(), broken.load(), gap) + detail};
}

std::vector<Vec> square_boundary(double h) {
  std::vector<Vec> out;
  const int n = static_cast<int>(std::lround(2.0 / h));
  for (int i = 0; i < n; ++i) {
    const double s = -1.0 + i * h;
    out.push_back((Vec(2) << s, -1).finished());
    out.push_back((Vec(2) << 1, s).finished());
    out.push_back((Vec(2) << -s, 1).finished());
    out.push_back((Vec(2) << -1, -s).finished());
  }
  return out;
}

Outcome szlenk() {
  const auto code = encode_space(Space::l1(2), DenseRule::basis());
  const auto cloud = square_boundary(0.01);
  const auto full = szlenk_derivative(cloud, 0.05, {2, 0.1}, code);
  const auto thin = szlenk_derivative(cloud, 0.05, {2, 0.005}, code);
  return {full.size() == cloud.size() && thin.empty(),
          fmt("spacing 0.01: delta 0.1 keeps %zu/%zu, delta 0.005 keeps %zu", full.size(), cloud.size(), thin.size())};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "knocerrado", 10.0, knocerrado},
      {2, "exact slice geometry", 0.0, slices},
      {3, "daugavet defect", 1.0, daugavet},
      {4, "oracle equivalence", 300.0, oracle_equivalence},
      {5, "hull characterization fidelity", 0.0, hull_fidelity},
      {6, "asymptotic trends", 0.0, asymptotics},
      {7, "formula transcription fidelity", 0.0, transcription},
      {8, "implication chains", 0.0, implications},
      {9, "szlenk sanity", 0.0, szlenk},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %d %s: %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                in_time ? "" : fmt(", over %.0fs", c.budget_s).c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
