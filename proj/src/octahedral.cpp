#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bgeom/errors.hpp"
#include "bgeom/geometry.hpp"
#include "bgeom/parallel.hpp"
#include "bgeom/sampling.hpp"

namespace bgeom {

namespace {

bool contains(const std::vector<Vec>& xs, const Vec& v) {
  return std::any_of(xs.begin(), xs.end(), [&](const Vec& x) { return (x - v).lpNorm<Eigen::Infinity>() < 1e-9; });
}

void push_unique(std::vector<Vec>& xs, Vec v) {
  if (!contains(xs, v)) xs.push_back(std::move(v));
}

// Integer coefficient vectors in {-level..level}^k, excluding zero.
std::vector<std::vector<int>> coefficient_grid(std::size_t k, int level) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, -level);
  while (true) {
    if (std::any_of(cur.begin(), cur.end(), [](int c) { return c != 0; })) out.push_back(cur);
    std::size_t pos = 0;
    while (pos < k && cur[pos] == level) cur[pos++] = -level;
    if (pos == k) break;
    ++cur[pos];
  }
  return out;
}

template <class Score>
Verdict min_max_over_y(const OctaGrid& grid, std::size_t tests, double threshold, Score score) {
  if (grid.y_candidates.empty()) throw std::invalid_argument("octahedral grids need y candidates");
  // worst[t] = min over y of the score of test t.
  std::vector<double> worst(tests, 0.0);
  std::vector<std::size_t> arg(tests, 0);
  parallel_for(tests, [&](std::size_t t) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < grid.y_candidates.size(); ++y) {
      const double s = score(t, grid.y_candidates[y]);
      if (s < best - 1e-15) {
        best = s;
        arg[t] = y;
      }
    }
    worst[t] = best;
  });
  Verdict v = Verdict::from_defect(0.0, threshold, true);
  std::size_t at = 0;
  for (std::size_t t = 0; t < tests; ++t) {
    if (worst[t] > worst[at]) at = t;
  }
  if (tests > 0) {
    v.defect = std::max(0.0, worst[at]);
    v.witness = {grid.y_candidates[arg[at]]};
  }
  v.pass = v.defect <= v.threshold;
  v.detail = "test=" + std::to_string(at);
  return v;
}

}  // namespace

std::vector<Vec> OctaGrid::loh_vectors() const {
  std::vector<Vec> out;
  for (const auto& fam : families) {
    for (const auto& x : fam) push_unique(out, x);
  }
  return out;
}

std::vector<double> OctaGrid::loh_scalars() const {
  std::vector<double> out{0.0};
  for (double t : t_grid) {
    out.push_back(1.0 / t);
    out.push_back(-1.0 / t);
  }
  return out;
}

OctaGrid aligned_octa_grid(const Space& space, const std::vector<std::vector<Vec>>& subspace_bases, int level,
                           std::size_t y_budget, std::vector<double> t_grid) {
  if (level < 1) throw std::invalid_argument("grid level must be positive");
  if (t_grid.empty() || std::any_of(t_grid.begin(), t_grid.end(), [](double t) { return !(t > 0.0); }))
    throw std::invalid_argument("t grid must be nonempty and positive");
  const int d = space.dim();
  OctaGrid g;
  g.t_grid = std::move(t_grid);
  for (const auto& basis : subspace_bases) {
    if (basis.empty()) throw std::invalid_argument("empty subspace basis");
    std::vector<Vec> fam;
    for (const auto& c : coefficient_grid(basis.size(), level)) {
      Vec v = Vec::Zero(d);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (basis[j].size() != d) throw DimensionMismatch("subspace basis dimension");
        v += (static_cast<double>(c[j]) / level) * basis[j];
      }
      const double n = norm(space, v);
      if (n < 1e-12) continue;
      push_unique(fam, v / n);
    }
    g.families.push_back(std::move(fam));
  }
  for (const auto& x : g.loh_vectors()) {
    Functional f = norming_functional(space, x);
    if (!std::any_of(g.f_grid.begin(), g.f_grid.end(),
                     [&](const Functional& h) { return (h.coords - f.coords).lpNorm<Eigen::Infinity>() < 1e-9; }))
      g.f_grid.push_back(std::move(f));
  }
  for (int i = 0; i < d && g.y_candidates.size() < y_budget; ++i) {
    for (double s : {1.0, -1.0}) {
      const Vec e = s * Vec::Unit(d, i);
      push_unique(g.y_candidates, e / norm(space, e));
    }
  }
  for (const auto& v : unit_grid(space, y_budget)) {
    if (g.y_candidates.size() >= y_budget) break;
    push_unique(g.y_candidates, v);
  }
  return g;
}

Verdict oh_check(const Space& space, double eps, const OctaGrid& grid) {
  if (!(eps > 0.0)) throw std::invalid_argument("oh_check needs eps > 0");
  return min_max_over_y(grid, grid.families.size(), eps / 2, [&](std::size_t t, const Vec& y) {
    double s = 0.0;
    for (const auto& x : grid.families[t]) s = std::max(s, 1.0 - norm(space, x + y) / 2.0);
    return s;
  });
}

Verdict woh_direct_check(const Space& space, double eps, const OctaGrid& grid) {
  if (!(eps > 0.0)) throw std::invalid_argument("woh_direct_check needs eps > 0");
  const std::size_t nf = grid.f_grid.size();
  if (nf == 0) throw std::invalid_argument("woh_direct_check needs functionals");
  return min_max_over_y(grid, grid.families.size() * nf, eps, [&](std::size_t t, const Vec& y) {
    const auto& fam = grid.families[t / nf];
    const Functional& f = grid.f_grid[t % nf];
    double s = 0.0;
    for (const auto& x : fam) {
      const double fx = std::abs(f(x));
      for (double tt : grid.t_grid) s = std::max(s, 1.0 - norm(space, x + tt * y) / (fx + tt));
    }
    return s;
  });
}

Verdict loh_check(const Space& space, double eps, const OctaGrid& grid) {
  if (!(eps > 0.0)) throw std::invalid_argument("loh_check needs eps > 0");
  const auto xs = grid.loh_vectors();
  const auto ss = grid.loh_scalars();
  return min_max_over_y(grid, xs.size(), eps, [&](std::size_t t, const Vec& y) {
    const Vec& x = xs[t];
    const double nx = norm(space, x);
    const double ny = norm(space, y);
    double s = 0.0;
    for (double a : ss) s = std::max(s, 1.0 - norm(space, a * x + y) / (std::abs(a) * nx + ny));
    return s;
  });
}

}  // namespace bgeom
