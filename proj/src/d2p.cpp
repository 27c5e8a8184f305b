#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bgeom/errors.hpp"
#include "bgeom/geometry.hpp"
#include "bgeom/parallel.hpp"

namespace bgeom {

namespace {

std::vector<int> iota_vars(int first, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), first);
  return v;
}

// C(k + m - 1, m): multisets of size m from k items.
double multiset_count(std::size_t k, int m) {
  double c = 1.0;
  for (int i = 1; i <= m; ++i) c = c * static_cast<double>(k + static_cast<std::size_t>(i) - 1) / i;
  return c;
}

double lp_count(std::size_t k, int m_max) {
  double total = 0.0;
  for (int m = 1; m <= m_max; ++m) total += multiset_count(k, m);
  return total;
}

// Non-decreasing index sequences of length m over [0, k).
std::vector<std::vector<std::size_t>> multisets(std::size_t k, int m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(static_cast<std::size_t>(m), 0);
  while (true) {
    out.push_back(cur);
    int pos = m - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] + 1 == k) --pos;
    if (pos < 0) break;
    const std::size_t next = cur[static_cast<std::size_t>(pos)] + 1;
    for (int q = pos; q < m; ++q) cur[static_cast<std::size_t>(q)] = next;
  }
  return out;
}

struct Sd2pTrial {
  double t = std::numeric_limits<double>::infinity();
  std::vector<Vec> means;
  bool exact = true;
};

// min t with y_ij in B_X, ||x_i - mean_j y_ij|| <= t, psi_j(mean_i y_ij) >= 1 - t.
Sd2pTrial sd2p_trial(const Space& space, std::span<const Vec> xs, const std::vector<Vec>& psis) {
  const int d = space.dim();
  const int n = static_cast<int>(xs.size());
  const int m = static_cast<int>(psis.size());
  lp::Problem prob;
  const int t = prob.add_variable(true);
  const int y0 = prob.add_variables(n * m * d);
  const int r0 = prob.add_variables(n * d);
  const auto y = [&](int i, int j, int c) { return y0 + (i * m + j) * d + c; };
  Sd2pTrial out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) out.exact = emit_ball(prob, space, iota_vars(y(i, j, 0), d), Radius::constant(1.0)) && out.exact;
    for (int c = 0; c < d; ++c) {
      std::vector<lp::Term> row{{r0 + i * d + c, 1.0}};
      for (int j = 0; j < m; ++j) row.push_back({y(i, j, c), 1.0 / m});
      prob.add_row(std::move(row), lp::Sense::Equal, xs[static_cast<std::size_t>(i)][c]);
    }
    out.exact = emit_ball(prob, space, iota_vars(r0 + i * d, d), Radius::variable(t)) && out.exact;
  }
  for (int j = 0; j < m; ++j) {
    std::vector<lp::Term> row{{t, 1.0}};
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < d; ++c) row.push_back({y(i, j, c), psis[static_cast<std::size_t>(j)][c] / n});
    }
    prob.add_row(std::move(row), lp::Sense::GreaterEq, 1.0);
  }
  prob.set_objective(t, 1.0);
  const auto sol = prob.minimize();
  if (!sol.optimal()) throw NumericalFailure("sd2p LP did not reach optimality");
  out.t = std::max(0.0, sol.value);
  for (int j = 0; j < m; ++j) {
    Vec mean = Vec::Zero(d);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < d; ++c) mean[c] += sol.x[static_cast<std::size_t>(y(i, j, c))] / n;
    }
    out.means.push_back(std::move(mean));
  }
  return out;
}

}  // namespace

Verdict sd2p_check(const Space& space, std::span<const Vec> xs, double eps, const Sd2pOptions& opt) {
  if (xs.empty()) throw std::invalid_argument("sd2p_check needs vectors");
  if (!(eps > 0.0)) throw std::invalid_argument("sd2p_check needs eps > 0");
  if (opt.m_max < 1) throw std::invalid_argument("m_max must be positive");
  for (const auto& x : xs) {
    if (x.size() != space.dim()) throw DimensionMismatch("sd2p vector dimension");
    if (norm(space, x) > 1.0 + kTol) throw std::invalid_argument("sd2p vectors must lie in the unit ball");
  }
  const auto ns = norming_functionals(space);
  std::vector<Vec> cands;
  for (const auto& f : ns.functionals) {
    cands.push_back(f);
    cands.push_back(-f);
  }
  bool exact = ns.exact;
  const auto cap = static_cast<double>(ns.exact ? opt.max_lps : opt.smooth_lps);
  if (lp_count(cands.size(), opt.m_max) > cap) {
    std::size_t k = cands.size();
    while (k > 1 && lp_count(k, opt.m_max) > cap) --k;
    std::vector<Vec> kept;
    for (std::size_t q = 0; q < k; ++q) kept.push_back(cands[q * cands.size() / k]);
    cands = std::move(kept);
    exact = false;
  }
  std::vector<std::vector<std::size_t>> trials;
  for (int m = 1; m <= opt.m_max; ++m) {
    for (auto& ms : multisets(cands.size(), m)) trials.push_back(std::move(ms));
  }
  std::vector<Sd2pTrial> results(trials.size());
  parallel_for(trials.size(), [&](std::size_t k) {
    std::vector<Vec> psis;
    for (std::size_t idx : trials[k]) psis.push_back(cands[idx]);
    results[k] = sd2p_trial(space, xs, psis);
  });
  // Identity decomposition, scored with the exact norm.
  Vec mean = Vec::Zero(space.dim());
  for (const auto& x : xs) mean += x / static_cast<double>(xs.size());
  Sd2pTrial identity;
  identity.t = std::max(0.0, 1.0 - norm(space, mean));
  identity.means = {mean};
  results.push_back(std::move(identity));
  trials.push_back({0});

  std::size_t best = results.size() - 1;
  for (std::size_t k = 0; k < results.size(); ++k) {
    exact = exact && results[k].exact;
    if (results[k].t < results[best].t) best = k;
  }
  Verdict v = Verdict::from_defect(results[best].t, eps, exact);
  v.witness = results[best].means;
  v.detail = "m=" + std::to_string(trials[best].size());
  return v;
}

Estimate far_point_in_region(const Space& space, const Vec& x, std::span<const LinearConstraint> region) {
  if (x.size() != space.dim()) throw DimensionMismatch("far point dimension");
  const auto ns = norming_functionals(space);
  struct Far {
    double value = -1.0;
    Vec y;
    bool exact = true;
  };
  std::vector<Far> far(ns.functionals.size());
  parallel_for(far.size(), [&](std::size_t k) {
    const Vec& psi = ns.functionals[k];
    const auto hi = linmax(space, Functional(psi), region);
    const auto lo = linmax(space, Functional(Vec(-psi)), region);
    const double px = psi.dot(x);
    far[k].exact = hi.exact && lo.exact;
    if (hi.value - px >= px + lo.value) {
      far[k].value = hi.value - px;
      far[k].y = hi.argmax;
    } else {
      far[k].value = px + lo.value;
      far[k].y = lo.argmax;
    }
  });
  Estimate e;
  e.exact = ns.exact;
  e.value = 0.0;
  for (const auto& f : far) {
    e.exact = e.exact && f.exact;
    if (f.value > e.value) {
      e.value = f.value;
      e.witness = {f.y};
    }
  }
  return e;
}

namespace {

std::vector<LinearConstraint> closed_box(const WeakOpenSpec& u) {
  std::vector<LinearConstraint> cons;
  for (const auto& f : u.functionals) {
    const double c = f(u.center);
    cons.push_back({f.coords, c + u.delta});
    cons.push_back({-f.coords, u.delta - c});
  }
  return cons;
}

}  // namespace

Verdict dd2p_check(const Space& space, double eps, std::span<const Dd2pInstance> instances) {
  if (!(eps > 0.0)) throw std::invalid_argument("dd2p_check needs eps > 0");
  Verdict v = Verdict::from_defect(0.0, eps, true);
  for (const auto& inst : instances) {
    if (inst.x.size() != space.dim()) throw DimensionMismatch("dd2p point dimension");
    for (const auto& f : inst.u.functionals) {
      if (std::abs(f(inst.x) - f(inst.u.center)) >= inst.u.delta) throw std::invalid_argument("dd2p point must lie in U");
    }
    const double nx = norm(space, inst.x);
    if (nx > 1.0 + kTol) throw std::invalid_argument("dd2p point must lie in the unit ball");
    const auto cons = closed_box(inst.u);
    const auto far = far_point_in_region(space, inst.x, cons);
    const double defect = 2.0 * nx - far.value;
    v.exact = v.exact && far.exact;
    if (defect > v.defect || v.witness.empty()) {
      v.defect = defect;
      v.witness = {inst.x};
      for (const auto& y : far.witness) v.witness.push_back(y);
    }
  }
  v.pass = v.defect <= v.threshold;
  return v;
}

std::vector<Dd2pInstance> default_dd2p_instances(const Space& space, std::size_t budget, double delta, std::size_t k) {
  const auto fs = functional_grid(space, std::max<std::size_t>(k, 1));
  std::vector<Functional> chosen(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(std::min(k, fs.size())));
  std::vector<Dd2pInstance> out;
  for (const auto& x : unit_grid(space, budget)) out.push_back({WeakOpenSpec{x, chosen, delta}, x});
  return out;
}

}  // namespace bgeom
