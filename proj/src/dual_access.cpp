#include "bgeom/dual_access.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bgeom/errors.hpp"
#include "bgeom/lp.hpp"

namespace bgeom {

namespace {

constexpr double kKernelTol = 1e-12;

bool euclidean(const Space& s) {
  if (s.kind() == Space::Kind::Lp) return s.p() == 2.0;
  if (s.kind() == Space::Kind::Quotient) return euclidean(s.parent());
  return false;
}

double to_double(const Rational& q) { return boost::rational_cast<double>(q); }

}  // namespace

DualAssignment::DualAssignment(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(std::abs(v) <= 1.0 + 1e-12)) throw std::invalid_argument("dual assignment value outside [-1, 1]");
  }
}

DualAssignment t_mu(const SeminormCode& code, const Functional& f, std::size_t prefix, const Enumeration& enumeration) {
  if (prefix < 1) throw BadIndex("prefix must be at least 1");
  const double fn = dual_norm(code.space(), f);
  if (fn > 1.0 + kTol) throw NotInDualBall("functional has dual norm " + std::to_string(fn));
  std::vector<double> g;
  g.reserve(prefix);
  for (std::size_t i = 1; i <= prefix; ++i) {
    const QVec& u = enumeration.at(i);
    const double mu = code(u);
    g.push_back(mu <= kKernelTol ? 0.0 : std::clamp(f(code.realize(u)) / mu, -1.0, 1.0));
  }
  return DualAssignment(std::move(g));
}

Verdict k_mu_membership(const SeminormCode& code, const DualAssignment& g, std::size_t level, double tol,
                        const Enumeration& enumeration) {
  if (g.size() < level) throw BadIndex("assignment shorter than the requested level");
  const Space& space = code.space();
  const int dim = space.dim();
  std::ostringstream detail;

  // (a) g(0) = 0 and (b) g vanishes on the kernel.
  double zero_defect = 0.0, kernel_defect = 0.0;
  std::string kernel_witness;
  std::vector<Vec> rows;
  std::vector<double> rhs;
  for (std::size_t i = 1; i <= level; ++i) {
    const QVec& u = enumeration.at(i);
    if (u.is_zero()) {
      zero_defect = std::max(zero_defect, std::abs(g[i]));
      continue;
    }
    const double mu = code(u);
    if (mu <= kKernelTol) {
      if (std::abs(g[i]) > kernel_defect) {
        kernel_defect = std::abs(g[i]);
        kernel_witness = u.str();
      }
      continue;
    }
    rows.push_back(code.realize(u));
    rhs.push_back(mu * g[i]);
  }

  // (c) min s subject to |f(x_u) - mu(u) g(u)| <= s and ||f||_* <= 1,
  // by row generation: solve on an active set, add the worst violated rows.
  std::vector<char> active(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size() && r < 2 * static_cast<std::size_t>(dim) + 2; ++r) active[r] = 1;
  lp::Solution sol;
  int f0 = 0;
  bool exact = true;
  for (;;) {
    lp::Problem prob;
    f0 = prob.add_variables(dim);
    std::vector<int> fv(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) fv[static_cast<std::size_t>(j)] = f0 + j;
    const int s = prob.add_variable(true);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!active[r]) continue;
      std::vector<lp::Term> terms;
      for (int j = 0; j < dim; ++j) {
        if (rows[r][j] != 0.0) terms.push_back({f0 + j, rows[r][j]});
      }
      auto lower = terms;
      terms.push_back({s, -1.0});
      lower.push_back({s, 1.0});
      prob.add_row(std::move(terms), lp::Sense::LessEq, rhs[r]);
      prob.add_row(std::move(lower), lp::Sense::GreaterEq, rhs[r]);
    }
    exact = emit_dual_ball(prob, space, fv, Radius::constant(1.0));
    prob.set_objective(s, 1.0);
    sol = prob.minimize();
    if (!sol.optimal()) throw NumericalFailure("membership LP did not reach optimality");
    const Vec f = Eigen::Map<const Vec>(sol.x.data() + f0, dim);
    std::vector<std::pair<double, std::size_t>> violated;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double excess = std::abs(rows[r].dot(f) - rhs[r]) - sol.value;
      if (!active[r] && excess > 1e-12) violated.emplace_back(-excess, r);
    }
    if (violated.empty()) break;
    const std::size_t add = std::min<std::size_t>(violated.size(), 8);
    std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(add), violated.end());
    for (std::size_t i = 0; i < add; ++i) active[violated[i].second] = 1;
  }
  double hb_defect = std::max(0.0, sol.value);
  Vec witness(dim);
  for (int j = 0; j < dim; ++j) witness[j] = sol.x[static_cast<std::size_t>(f0 + j)];

  if (!exact && euclidean(space) && !rows.empty()) {
    // The inscribed dual polytope only gives an upper bound; the minimum
    // norm solution settles the Euclidean case.
    Mat a(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    const Vec b = Eigen::Map<const Vec>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    const Vec f = a.completeOrthogonalDecomposition().solve(b);
    const double resid = (a * f - b).cwiseAbs().maxCoeff();
    const double excess = std::max(0.0, dual_norm(space, Functional(f)) - 1.0);
    const double d = std::max(resid, excess);
    if (d <= hb_defect) {
      hb_defect = d;
      witness = f;
      exact = true;
    }
  }

  Verdict v = Verdict::from_defect(std::max({zero_defect, kernel_defect, hb_defect}), tol, exact);
  if (zero_defect > tol) detail << "g(0)=" << zero_defect << "; ";
  if (kernel_defect > tol) detail << "kernel vector " << kernel_witness << " has |g|=" << kernel_defect << "; ";
  detail << "hahn-banach slack " << hb_defect;
  v.detail = detail.str();
  v.witness.push_back(witness);
  return v;
}

// ---- Knocerrado --------------------------------------------------------

Knocerrado::Knocerrado(std::optional<int> n) : n_(n) {
  if (n_ && *n_ < 1) throw BadIndex("n must be positive");
}

Rational Knocerrado::mu(const QVec& v) const {
  Rational tail = 0;
  for (const auto& [i, q] : v.support()) {
    if (i >= 3) tail += abs(q);
  }
  const Rational q1 = v.coeff(1), q2 = v.coeff(2);
  if (!n_) return abs(q2) + tail;
  return abs(q1 / Rational(*n_) + q2) + tail;
}

Rational Knocerrado::g(const QVec& v) const {
  if (v.is_zero()) return 0;
  if (n_) {
    const Rational m = mu(v);
    if (m.numerator() == 0) return 0;
    Rational num = v.coeff(1) / Rational(*n_);
    for (const auto& [i, q] : v.support()) {
      if (i >= 2) num += q;
    }
    return num / m;
  }
  Rational sum = 0, abs_sum = 0;
  for (const auto& [i, q] : v.support()) {
    if (i < 2) continue;
    sum += q;
    abs_sum += abs(q);
  }
  if (abs_sum.numerator() != 0) return sum / abs_sum;
  return v.coeff(1).numerator() > 0 ? Rational(1) : Rational(-1);
}

SeminormCode Knocerrado::code(int dim) const {
  if (dim < 1) throw BadIndex("dimension must be positive");
  std::vector<Vec> list;
  list.push_back(n_ ? Vec(Vec::Unit(dim, 0) / *n_) : Vec(Vec::Zero(dim)));
  for (int m = 2; m <= dim + 1; ++m) list.push_back(Vec::Unit(dim, m - 2));
  return encode_space(Space::l1(dim), DenseRule::custom_zero_tail(std::move(list)));
}

Functional Knocerrado::functional(int dim) const {
  if (!n_) throw NotInDualBall("the limit assignment has no representing functional");
  // The only extension: e_2 = n e_1 in the quotient forces F(e_2) = 1.
  return Functional(Vec::Ones(dim));
}

DualAssignment Knocerrado::assignment(std::size_t prefix, const Enumeration& enumeration) const {
  std::vector<double> g;
  g.reserve(prefix);
  for (std::size_t i = 1; i <= prefix; ++i) g.push_back(to_double(this->g(enumeration.at(i))));
  return DualAssignment(std::move(g));
}

double pair_distance(const Knocerrado& a, const Knocerrado& b, int depth, const Enumeration& enumeration) {
  if (depth < 1) throw BadIndex("depth must be at least 1");
  double total = 0.0, w = 0.5;
  for (int i = 1; i <= depth; ++i, w *= 0.5) {
    const QVec& v = enumeration.at(static_cast<std::size_t>(i));
    total += w * (std::min(1.0, std::abs(to_double(a.mu(v) - b.mu(v)))) +
                  std::min(1.0, std::abs(to_double(a.g(v) - b.g(v)))));
  }
  return total;
}

KReport verify_k_counterexample(int levels, int n_max, double tol, int depth) {
  if (levels < 1 || n_max < 1) throw BadIndex("levels and n_max must be positive");
  const auto& en = canonical_enumeration();
  int max_index = 1;
  for (const auto& v : en.prefix(static_cast<std::size_t>(levels))) max_index = std::max(max_index, v.max_index());
  const int dim = std::max(1, max_index - 1);
  const auto level = static_cast<std::size_t>(levels);

  KReport rep;
  const Knocerrado limit(std::nullopt);
  rep.clause_i = true;
  for (int n = 1; n <= n_max; ++n) {
    const Knocerrado k(n);
    rep.membership.push_back(k_mu_membership(k.code(dim), k.assignment(level), level, tol));
    rep.clause_i = rep.clause_i && rep.membership.back().pass;
    rep.distance.push_back(pair_distance(k, limit, depth));
  }
  rep.worst_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rep.distance.size(); ++i) {
    rep.worst_increase = std::max(rep.worst_increase, rep.distance[i] - rep.distance[i - 1]);
  }
  rep.clause_ii = rep.distance.size() < 2 || rep.worst_increase <= tol;

  rep.limit = k_mu_membership(limit.code(dim), limit.assignment(level), level, tol);
  const QVec e1 = QVec::unit(1);
  const bool kernel_witness = limit.mu(e1).numerator() == 0 && limit.g(e1) == Rational(1);
  rep.clause_iii = !rep.limit.pass && kernel_witness;
  std::ostringstream note;
  note << "limit: mu(e1)=" << limit.mu(e1) << " g(e1)=" << limit.g(e1) << "; " << rep.limit.detail;
  rep.note = note.str();
  return rep;
}

}  // namespace bgeom
