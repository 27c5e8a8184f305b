#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "bgeom/errors.hpp"
#include "bgeom/geometry.hpp"
#include "bgeom/parallel.hpp"

namespace bgeom {

namespace {

bool euclidean(const Space& s) { return s.kind() == Space::Kind::Lp && s.p() == 2.0; }

struct Width {
  double lo = 0.0, hi = 0.0;
  Vec argmin, argmax;
  bool exact = true;
};

Width width(const Space& space, const Vec& psi, std::span<const LinearConstraint> region) {
  const auto hi = linmax(space, Functional(psi), region);
  const auto lo = linmax(space, Functional(Vec(-psi)), region);
  return {-lo.value, hi.value, lo.argmax, hi.argmax, hi.exact && lo.exact};
}

void check_slice(const Space& space, const SliceSpec& s) {
  if (s.f.dim() != space.dim()) throw DimensionMismatch("slice functional dimension");
  if (!(s.alpha > 0.0)) throw EmptySlice("alpha must be positive");
  const double fn = dual_norm(space, s.f);
  if (std::abs(fn - 1.0) > 1e-6) throw NotInDualBall("slice functional must have dual norm one, got " + std::to_string(fn));
}

std::vector<LinearConstraint> slice_constraints(const SliceSpec& s) {
  return {LinearConstraint{-s.f.coords, -(1.0 - s.alpha)}};
}

// Widths of every region along every norming functional, in parallel.
std::vector<std::vector<Width>> all_widths(const Space& space, const std::vector<Vec>& psis,
                                           const std::vector<std::vector<LinearConstraint>>& regions) {
  std::vector<std::vector<Width>> out(psis.size(), std::vector<Width>(regions.size()));
  parallel_for(psis.size() * regions.size(), [&](std::size_t k) {
    const std::size_t i = k / regions.size(), r = k % regions.size();
    out[i][r] = width(space, psis[i], regions[r]);
  });
  return out;
}

}  // namespace

Estimate region_diameter(const Space& space, std::span<const LinearConstraint> constraints) {
  const auto ns = norming_functionals(space);
  const std::vector<std::vector<LinearConstraint>> regions{{constraints.begin(), constraints.end()}};
  // Fails fast with Infeasible on an empty region.
  linmax(space, Functional(Vec::Zero(space.dim())), constraints);
  const auto widths = all_widths(space, ns.functionals, regions);
  Estimate e;
  e.exact = ns.exact;
  e.value = -1.0;
  for (const auto& row : widths) {
    const Width& w = row[0];
    e.exact = e.exact && w.exact;
    if (w.hi - w.lo > e.value) {
      e.value = w.hi - w.lo;
      e.witness = {w.argmax, w.argmin};
    }
  }
  e.value = std::max(0.0, e.value);
  return e;
}

Estimate slice_diameter(const Space& space, const SliceSpec& slice) {
  check_slice(space, slice);
  const auto cons = slice_constraints(slice);
  const auto top = linmax(space, slice.f);
  if (top.value <= 1.0 - slice.alpha + kRetreat) throw EmptySlice("functional never exceeds 1 - alpha on the ball");
  return region_diameter(space, cons);
}

namespace {

std::vector<LinearConstraint> weak_open_constraints(const WeakOpenSpec& u, double delta) {
  std::vector<LinearConstraint> cons;
  for (const auto& f : u.functionals) {
    const double c = f(u.center);
    cons.push_back({f.coords, c + delta});
    cons.push_back({-f.coords, delta - c});
  }
  return cons;
}

}  // namespace

Estimate weak_open_diameter(const Space& space, const WeakOpenSpec& u) {
  if (u.center.size() != space.dim()) throw DimensionMismatch("weak open center dimension");
  for (const auto& f : u.functionals) {
    if (f.dim() != space.dim()) throw DimensionMismatch("weak open functional dimension");
  }
  if (!(u.delta > kRetreat)) throw EmptyRegion("delta must be positive");
  const auto open = weak_open_constraints(u, u.delta - kRetreat);
  try {
    linmax(space, Functional(Vec::Zero(space.dim())), open);
  } catch (const Infeasible&) {
    throw EmptyRegion("the neighborhood misses the unit ball");
  }
  return region_diameter(space, weak_open_constraints(u, u.delta));
}

Estimate cc_slice_diameter(const Space& space, std::span<const SliceSpec> slices, std::span<const double> weights) {
  if (slices.size() != weights.size() || slices.empty()) throw DimensionMismatch("one weight per slice required");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to one");
  std::vector<std::vector<LinearConstraint>> regions;
  for (const auto& s : slices) {
    check_slice(space, s);
    if (linmax(space, s.f).value <= 1.0 - s.alpha + kRetreat) throw EmptySlice("a slice of the combination is empty");
    regions.push_back(slice_constraints(s));
  }
  const auto ns = norming_functionals(space);
  const auto widths = all_widths(space, ns.functionals, regions);
  Estimate e;
  e.exact = ns.exact;
  e.value = 0.0;
  for (const auto& row : widths) {
    double v = 0.0;
    Vec hi = Vec::Zero(space.dim()), lo = Vec::Zero(space.dim());
    for (std::size_t i = 0; i < row.size(); ++i) {
      v += weights[i] * (row[i].hi - row[i].lo);
      hi += weights[i] * row[i].argmax;
      lo += weights[i] * row[i].argmin;
      e.exact = e.exact && row[i].exact;
    }
    if (v > e.value) {
      e.value = v;
      e.witness = {hi, lo};
      for (const auto& w : row) {
        e.witness.push_back(w.argmax);
        e.witness.push_back(w.argmin);
      }
    }
  }
  return e;
}

Estimate rank1_operator_norm(const Space& space, const Functional& f, const Vec& y) {
  if (f.dim() != space.dim() || y.size() != space.dim()) throw DimensionMismatch("rank-one operator dimension");
  if (euclidean(space)) {
    const Mat m = Mat::Identity(space.dim(), space.dim()) + y * f.coords.transpose();
    Eigen::JacobiSVD<Mat> svd(m);
    return {svd.singularValues()[0], true, {}};
  }
  // ||Id + T|| = ||(Id + T)^*||, and the adjoint maps psi to psi + psi(y) f.
  const auto ns = norming_functionals(space);
  const DualNormEvaluator dn(space);
  Estimate e;
  e.exact = ns.exact;
  e.value = 0.0;
  for (const auto& psi : ns.functionals) {
    const double v = dn(psi + psi.dot(y) * f.coords);
    if (v > e.value) {
      e.value = v;
      e.witness = {psi};
    }
  }
  return e;
}

Estimate daugavet_defect_rank1(const Space& space, const Functional& f, const Vec& y) {
  auto e = rank1_operator_norm(space, f, y);
  e.value = 1.0 + dual_norm(space, f) * norm(space, y) - e.value;
  return e;
}

HullResult hull_membership(const Space& space, const Vec& z, std::span<const Vec> generators, double tol) {
  if (generators.empty()) throw std::invalid_argument("hull needs generators");
  const int d = space.dim();
  const int n = static_cast<int>(generators.size());
  lp::Problem prob;
  const int l0 = prob.add_variables(n, true);
  const int w0 = prob.add_variables(d);
  const int t = prob.add_variable(true);
  std::vector<lp::Term> sum;
  for (int k = 0; k < n; ++k) sum.push_back({l0 + k, 1.0});
  prob.add_row(std::move(sum), lp::Sense::Equal, 1.0);
  // w = z - sum l_k g_k
  for (int i = 0; i < d; ++i) {
    std::vector<lp::Term> row{{w0 + i, 1.0}};
    for (int k = 0; k < n; ++k) {
      const double g = generators[static_cast<std::size_t>(k)][i];
      if (g != 0.0) row.push_back({l0 + k, g});
    }
    prob.add_row(std::move(row), lp::Sense::Equal, z[i]);
  }
  std::vector<int> w(static_cast<std::size_t>(d));
  std::iota(w.begin(), w.end(), w0);
  HullResult r;
  r.exact = emit_ball(prob, space, w, Radius::variable(t));
  prob.set_objective(t, 1.0);
  const auto sol = prob.minimize();
  if (!sol.optimal()) throw NumericalFailure("hull LP did not reach optimality");
  r.distance = std::max(0.0, sol.value);
  r.member = r.distance <= tol;
  r.weights.resize(n);
  for (int k = 0; k < n; ++k) r.weights[k] = sol.x[static_cast<std::size_t>(l0 + k)];
  return r;
}

}  // namespace bgeom
