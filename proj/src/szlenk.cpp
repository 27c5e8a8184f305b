#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bgeom/errors.hpp"
#include "bgeom/geometry.hpp"
#include "bgeom/parallel.hpp"
#include "bgeom/sampling.hpp"

namespace bgeom {

namespace {

// Enumeration positions scanned for test vectors.
constexpr std::size_t kScan = 5000;

QVec direction(const QVec& u) { return (Rational(1) / u.support().front().second) * u; }

struct TestVector {
  QVec u;
  Vec x;      // realized in the code's space
  double mu;  // ||x||
};

std::vector<TestVector> test_vectors(const SeminormCode& code, int k) {
  const auto& en = canonical_enumeration();
  std::vector<TestVector> out;
  std::vector<QVec> seen;
  for (std::size_t pos = 1; pos <= kScan && static_cast<int>(out.size()) < k; ++pos) {
    const QVec& u = en.at(pos);
    if (u.is_zero()) continue;
    QVec dir = direction(u);
    if (std::find(seen.begin(), seen.end(), dir) != seen.end()) continue;
    seen.push_back(std::move(dir));
    Vec x = code.realize(u);
    const double mu = norm(code.space(), x);
    if (mu < 1e-12) continue;
    out.push_back({u, std::move(x), mu});
  }
  return out;
}

// Rows are the box coordinates <q, v_i> / scale_i of every cloud point.
std::vector<std::size_t> derivative(std::span<const Vec> cloud, double eps, double delta, const Mat& coords,
                                    const DualNormEvaluator& dn) {
  const std::size_t n = cloud.size();
  std::vector<char> keep(n, 0);
  parallel_for(n, [&](std::size_t p) {
    const auto in_box = [&](std::size_t q) {
      for (Eigen::Index i = 0; i < coords.cols(); ++i) {
        if (std::abs(coords(static_cast<Eigen::Index>(q), i) - coords(static_cast<Eigen::Index>(p), i)) >= delta) return false;
      }
      return true;
    };
    std::vector<std::size_t> nb;
    double far = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      if (!in_box(q)) continue;
      nb.push_back(q);
      far = std::max(far, dn(cloud[q] - cloud[p]));
      if (far >= eps) {
        keep[p] = 1;
        return;
      }
    }
    // The diameter is at most twice the radius around p.
    if (2.0 * far < eps) return;
    for (std::size_t a = 0; a < nb.size() && !keep[p]; ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (dn(cloud[nb[a]] - cloud[nb[b]]) >= eps) {
          keep[p] = 1;
          break;
        }
      }
    }
  });
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < n; ++p) {
    if (keep[p]) out.push_back(p);
  }
  return out;
}

Mat box_coords(std::span<const Vec> cloud, const std::vector<TestVector>& tests, bool normalize) {
  Mat c(static_cast<Eigen::Index>(cloud.size()), static_cast<Eigen::Index>(tests.size()));
  for (std::size_t p = 0; p < cloud.size(); ++p) {
    for (std::size_t i = 0; i < tests.size(); ++i) {
      const double v = cloud[p].dot(tests[i].x);
      c(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i)) = normalize ? v / tests[i].mu : v;
    }
  }
  return c;
}

std::vector<Vec> dual_cloud(const Space& space, std::size_t budget) {
  if (space.kind() == Space::Kind::Lp && space.p() == 1.0) return sampling::sign_vectors(space.dim(), budget);
  std::vector<Vec> out;
  try {
    const auto ns = norming_functionals(space);
    for (const auto& f : ns.functionals) {
      if (out.size() + 2 > budget) break;
      out.push_back(f);
      out.push_back(-f);
    }
    return out;
  } catch (const TooLarge&) {
  }
  for (const auto& v : sampling::directions(space.dim(), budget)) out.push_back(v / dual_norm(space, Functional(v)));
  return out;
}

}  // namespace

std::vector<std::size_t> szlenk_derivative(std::span<const Vec> cloud, double eps, SzlenkNbhd nbhd,
                                           const SeminormCode& code) {
  if (cloud.empty()) throw std::invalid_argument("szlenk_derivative needs a nonempty cloud");
  if (!(eps > 0.0) || !(nbhd.delta > 0.0) || nbhd.k < 1) throw std::invalid_argument("szlenk parameters must be positive");
  for (const auto& p : cloud) {
    if (p.size() != code.space().dim()) throw DimensionMismatch("cloud point dimension");
  }
  const auto tests = test_vectors(code, nbhd.k);
  return derivative(cloud, eps, nbhd.delta, box_coords(cloud, tests, false), DualNormEvaluator(code.space()));
}

Verdict woh_szlenk_check(const SeminormCode& code, SzlenkNbhd nbhd, std::size_t cloud_budget, double tol) {
  const Space& space = code.space();
  if (classify_code(code, space.dim()) != CodeClass::BLike)
    throw std::invalid_argument("woh_szlenk_check needs a code that is B-like at the space dimension");
  if (!(nbhd.delta > 0.0) || nbhd.k < 1) throw std::invalid_argument("szlenk parameters must be positive");
  const auto cloud = dual_cloud(space, cloud_budget);
  const auto tests = test_vectors(code, nbhd.k);
  const auto kept = derivative(cloud, 2.0 - tol, nbhd.delta, box_coords(cloud, tests, true), DualNormEvaluator(space));
  const double fraction = static_cast<double>(kept.size()) / static_cast<double>(cloud.size());
  Verdict v = Verdict::from_defect(1.0 - fraction, tol, space.polytopal());
  v.detail = "retained=" + std::to_string(kept.size()) + "/" + std::to_string(cloud.size());
  return v;
}

}  // namespace bgeom
