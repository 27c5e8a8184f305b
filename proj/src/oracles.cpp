#include "bgeom/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgeom/errors.hpp"
#include "bgeom/sampling.hpp"

namespace bgeom {

namespace {

// Halton draws from the bounding box of B_X. Each accepted interior draw
// also contributes its projection to the sphere. Draw order is kept so
// that prefixes are nested.
std::vector<Vec> ball_draws(const Space& space, std::size_t trials, double shrink = 1.0) {
  const int d = space.dim();
  Vec box(d);
  for (int i = 0; i < d; ++i) box[i] = dual_norm(space, Functional::coordinate(d, i));
  sampling::Halton h(d);
  std::vector<Vec> out;
  out.reserve(2 * trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const Vec x = ((2.0 * h.next()).array() - 1.0).matrix().cwiseProduct(box);
    const double n = norm(space, x);
    if (n <= 1.0) out.push_back(shrink * x);
    if (n > 0.0) out.push_back((shrink / n) * x);
  }
  return out;
}

std::vector<Vec> accepted(const std::vector<Vec>& draws, const RegionPredicate& in_region) {
  std::vector<Vec> out;
  for (const auto& x : draws) {
    if (in_region(x)) out.push_back(x);
  }
  return out;
}

std::vector<Vec> norming_sample(const Space& space) {
  auto ns = norming_functionals(space);
  return std::move(ns.functionals);
}

// Extreme samples along every norming functional, paired and measured in
// the true norm.
double diameter_of(const Space& space, std::span<const Vec> pts, const std::vector<Vec>& psis) {
  if (pts.empty()) return 0.0;
  double best = 0.0;
  for (const auto& psi : psis) {
    std::size_t hi = 0, lo = 0;
    double vhi = -std::numeric_limits<double>::infinity(), vlo = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double v = psi.dot(pts[k]);
      if (v > vhi) {
        vhi = v;
        hi = k;
      }
      if (v < vlo) {
        vlo = v;
        lo = k;
      }
    }
    best = std::max(best, norm(space, pts[hi] - pts[lo]));
  }
  return best;
}

// Error model C N^(-1/d), fitted against the prefixes N/2 .. N/16. The
// longest baselines keep a plateau at N/2 from reporting a zero band.
constexpr int kBandLevels = 4;

template <class DiameterAt>
double band(double full, std::size_t count, int dim, DiameterAt&& diameter_at) {
  double w = 0.0;
  for (int k = 1; k <= kBandLevels; ++k) {
    const std::size_t prefix = count >> k;
    if (prefix == 0) break;
    double shorter = 0.0;
    try {
      shorter = diameter_at(prefix);
    } catch (const RegionTooThin&) {
      break;
    }
    const double gap = std::max(0.0, full - shorter);
    w = std::max(w, gap / (std::pow(2.0, static_cast<double>(k) / dim) - 1.0));
  }
  return w;
}

std::vector<Vec> hull_points(const Space& space, std::size_t points) {
  std::vector<Vec> pts;
  try {
    for (const auto& v : ball_vertices(space)) {
      if (pts.size() >= points / 2) break;
      pts.push_back((1.0 - kRetreat) * v);
    }
  } catch (const NotPolytopal&) {
  } catch (const TooLarge&) {
  }
  for (const auto& x : ball_draws(space, points, 1.0 - kRetreat)) {
    if (pts.size() >= points) break;
    pts.push_back(x);
  }
  return pts;
}

OracleReport hull_report(const Space& space, const Vec& z, const std::vector<Vec>& gens) {
  if (gens.empty()) throw RegionTooThin("no admissible generator among the sampled points");
  const auto r = hull_membership(space, z, gens, 0.0);
  return {r.distance, 0.0, gens.size()};
}

}  // namespace

RegionPredicate slice_predicate(const SliceSpec& s) {
  return [f = s.f, a = s.alpha](const Vec& x) { return f(x) > 1.0 - a; };
}

RegionPredicate weak_open_predicate(const WeakOpenSpec& u) {
  std::vector<double> c;
  for (const auto& f : u.functionals) c.push_back(f(u.center));
  return [u, c](const Vec& x) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (std::abs(u.functionals[i](x) - c[i]) >= u.delta) return false;
    }
    return true;
  };
}

OracleReport sample_diameter(const Space& space, const RegionPredicate& in_region, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("sample_diameter needs at least two samples");
  const auto draws = ball_draws(space, samples, 1.0);
  const auto pts = accepted(draws, in_region);
  if (pts.empty()) throw RegionTooThin("no sample landed in the region");
  const auto psis = norming_sample(space);
  OracleReport r;
  r.estimate = diameter_of(space, pts, psis);
  r.half_width = band(r.estimate, draws.size(), space.dim(), [&](std::size_t count) {
    const std::span<const Vec> prefix(draws.data(), count);
    std::vector<Vec> in;
    for (const auto& x : prefix) {
      if (in_region(x)) in.push_back(x);
    }
    if (in.empty()) throw RegionTooThin("empty prefix");
    return diameter_of(space, in, psis);
  });
  r.samples = pts.size();
  return r;
}

OracleReport sample_cc_diameter(const Space& space, std::span<const SliceSpec> slices, std::span<const double> weights,
                                std::size_t samples) {
  if (slices.size() != weights.size() || slices.empty()) throw DimensionMismatch("one weight per slice required");
  const auto draws = ball_draws(space, samples, 1.0);
  const auto psis = norming_sample(space);
  const auto run = [&](std::size_t count, std::size_t& used) {
    const std::vector<Vec> prefix(draws.begin(), draws.begin() + static_cast<std::ptrdiff_t>(count));
    std::vector<std::vector<Vec>> sets;
    for (const auto& s : slices) {
      sets.push_back(accepted(prefix, slice_predicate(s)));
      if (sets.back().empty()) throw RegionTooThin("no sample landed in a slice");
      used += sets.back().size();
    }
    double best = 0.0;
    for (const auto& psi : psis) {
      Vec hi = Vec::Zero(space.dim()), lo = Vec::Zero(space.dim());
      for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto by_psi = [&](const Vec& a, const Vec& b) { return psi.dot(a) < psi.dot(b); };
        hi += weights[i] * *std::max_element(sets[i].begin(), sets[i].end(), by_psi);
        lo += weights[i] * *std::min_element(sets[i].begin(), sets[i].end(), by_psi);
      }
      best = std::max(best, norm(space, hi - lo));
    }
    return best;
  };
  OracleReport r;
  std::size_t ignored = 0;
  r.estimate = run(draws.size(), r.samples);
  r.half_width = band(r.estimate, draws.size(), space.dim(), [&](std::size_t count) { return run(count, ignored); });
  return r;
}

double rank1_norm_oracle(const Space& space, const Functional& f, const Vec& y, bool exact) {
  if (f.dim() != space.dim() || y.size() != space.dim()) throw DimensionMismatch("rank-one operator dimension");
  if (f.coords.isZero()) return 1.0;
  std::vector<Vec> pts;
  try {
    pts = ball_vertices(space);
  } catch (const NotPolytopal&) {
    if (exact) throw;
  } catch (const TooLarge&) {
    if (exact) throw;
  }
  if (pts.empty()) {
    for (const auto& v : sampling::directions(space.dim(), 20000)) pts.push_back(v / norm(space, v));
  }
  double best = 0.0;
  for (const auto& v : pts) best = std::max(best, norm(space, v + f(v) * y));
  return best;
}

OracleReport ldp_hull_oracle(const Space& space, const Vec& z, double delta, double eps, std::size_t points) {
  const auto pts = hull_points(space, points);
  std::vector<Vec> gens;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (norm(space, pts[a] - pts[b]) > delta - eps) gens.push_back((pts[a] + pts[b]) / 2.0);
    }
  }
  return hull_report(space, z, gens);
}

OracleReport dp_hull_oracle(const Space& space, const Vec& x, const Vec& z, double eps, std::size_t points) {
  const double r = norm(space, x);
  std::vector<Vec> gens;
  for (const auto& p : hull_points(space, points)) {
    const Vec y = r * p;
    if (norm(space, x - y) > 2.0 * r - eps) gens.push_back(y);
  }
  return hull_report(space, z, gens);
}

bool crossvalidate(double value, const OracleReport& oracle, double band) {
  return std::abs(value - oracle.estimate) <= band + oracle.half_width;
}

bool crossvalidate(const Estimate& e, const OracleReport& oracle, double band) { return crossvalidate(e.value, oracle, band); }

bool crossvalidate(const Verdict& v, const OracleReport& oracle, double band) { return crossvalidate(v.defect, oracle, band); }

std::vector<CrossvalRow> crossval_regions(const Space& space, std::size_t samples, double band) {
  std::vector<Functional> fs;
  if (space.kind() == Space::Kind::Facet && space.rows().size() >= 2) {
    for (std::size_t k = 0; k < 2; ++k) {
      const Functional f(space.rows()[k]);
      fs.emplace_back(f.coords / dual_norm(space, f));
    }
  } else {
    fs = functional_grid(space, 2);
    fs.resize(std::min<std::size_t>(fs.size(), 2));
    if (fs.size() == 1) fs.push_back(fs[0]);
  }
  const Vec vertex = space.polytopal() ? ball_vertices(space)[0] : unit_grid(space, 1)[0];
  const SliceSpec a{fs[0], 0.3}, b{fs[1], 0.3};
  const WeakOpenSpec u{0.5 * vertex, {a.f, b.f}, 0.3};
  const SliceSpec two[] = {a, b};
  const double w[] = {0.5, 0.5};

  std::vector<CrossvalRow> rows;
  const auto add = [&](std::string name, Estimate exact, auto sample) {
    CrossvalRow r{std::move(name), std::move(exact), {}, false};
    try {
      r.oracle = sample();
      r.agree = crossvalidate(r.exact, r.oracle, band);
    } catch (const RegionTooThin&) {
    }
    rows.push_back(std::move(r));
  };
  add("slice", slice_diameter(space, a), [&] { return sample_diameter(space, slice_predicate(a), samples); });
  add("weak-open", weak_open_diameter(space, u), [&] { return sample_diameter(space, weak_open_predicate(u), samples); });
  add("cc", cc_slice_diameter(space, two, w), [&] { return sample_cc_diameter(space, two, w, samples); });
  return rows;
}

}  // namespace bgeom
