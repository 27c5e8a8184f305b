#include "bgeom/borel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bgeom/errors.hpp"
#include "bgeom/geometry.hpp"
#include "bgeom/parallel.hpp"

namespace bgeom {

namespace {

// Strict comparisons are decided with this slack on both sides.
constexpr double kStrict = 1e-9;
// Witness coordinates live on the grid Z / kDen, so sums of witnesses keep
// denominators dividing 2 kDen^2 and stay inside long long.
constexpr long long kDen = 1LL << 22;
constexpr double kMembershipTol = 1e-8;
const double kPull[] = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2};

// Rank of the realized vectors at enumeration positions 1..count, stopping
// as soon as they span.
int prefix_rank(const SeminormCode& code, std::size_t count, std::size_t* spanning_at = nullptr) {
  const int d = code.space().dim();
  std::vector<Vec> basis;
  for (std::size_t pos = 1; pos <= count && static_cast<int>(basis.size()) < d; ++pos) {
    Vec x = code.realize(canonical_enumeration().at(pos));
    for (const auto& b : basis) x -= b.dot(x) * b;
    if (x.norm() > 1e-9) {
      basis.push_back(x.normalized());
      if (spanning_at) *spanning_at = pos;
    }
  }
  return static_cast<int>(basis.size());
}

bool gt(double a, double b) { return a > b + kStrict; }
bool lt(double a, double b) { return a < b - kStrict; }

struct Point {
  std::size_t pos = 0;  // enumeration position, 0 for refined witnesses
  QVec q;
  Vec x;
  double mu = 0.0;
  std::vector<double> a;  // mu(v) g_i(v)
};

struct Outcome {
  bool pass = true;
  double shortfall = 0.0;
  bool exact = true;
};

struct Batch {
  int g = -1, m = 0, k = 0;
};

class Harness {
 public:
  Harness(const SeminormCode& code, FormulaId id, const LevelSpec& level, bool mirror)
      : code_(code), space_(code.space()), id_(id), level_(level), mirror_(mirror) {
    if (level.m_max < 1 || level.k_max < 1 || level.p_max < 1 || level.search_depth < 1)
      throw std::invalid_argument("level bounds must be at least 1");
    const int d = space_.dim();
    if (classify_code(code, d) != CodeClass::BLike)
      throw std::invalid_argument("code is not B-like at its dimension");
    if (uses_g(id) && level.g_tuple.empty()) throw UnsupportedFormula(to_string(id) + " needs a g tuple");
    tinv_ = code.truncation(d).inverse();
    recover_functionals();
    const auto& en = canonical_enumeration();
    universe_ = prefix_points(en, level.universe_size());
    search_ = prefix_points(en, level.search_depth);
  }

  Verdict run() {
    if (!vacuous_.empty() && uses_all_g()) return vacuous_pass(vacuous_);
    switch (id_) {
      case FormulaId::D2P_Pn:
        return sweep(batches(false, true), true, [this](const Batch& b, const Point& u) { return d2p(b, u); });
      case FormulaId::DD2P_Pn:
        return sweep(batches(false, true), true, [this](const Batch& b, const Point& u) { return dd2p(b, u); });
      case FormulaId::LD2P_P:
        return sweep(batches(true, true), false, [this](const Batch& b, const Point&) { return ld2p(b); });
      case FormulaId::DLD2P_P:
        return sweep(batches(true, true), true, [this](const Batch& b, const Point& u) { return far_in_slice(b, u, true); });
      case FormulaId::DP_P:
        return sweep(batches(true, true), true, [this](const Batch& b, const Point& u) { return far_in_slice(b, u, false); });
      case FormulaId::SD2P_Pn:
        return sweep(batches(false, true), false, [this](const Batch& b, const Point&) { return sd2p(b); });
      case FormulaId::LDdP_form:
        return sweep(batches(false, false), true, [this](const Batch& b, const Point& u) { return lddp(b, u); });
    }
    throw UnsupportedFormula("unknown formula id");
  }

 private:
  const SeminormCode& code_;
  const Space& space_;
  FormulaId id_;
  const LevelSpec& level_;
  bool mirror_;
  Mat tinv_;
  std::vector<Functional> f_;
  std::vector<bool> in_k_;
  std::string vacuous_;
  std::vector<Point> universe_, search_;

  bool uses_all_g() const {
    return id_ == FormulaId::D2P_Pn || id_ == FormulaId::SD2P_Pn || id_ == FormulaId::DD2P_Pn;
  }

  void recover_functionals() {
    for (std::size_t i = 0; i < level_.g_tuple.size(); ++i) {
      const auto& g = level_.g_tuple[i];
      // The functional behind g is only determined when g is known on a
      // spanning prefix.
      if (prefix_rank(code_, g.size()) < space_.dim())
        throw std::invalid_argument("g_" + std::to_string(i + 1) + " does not cover a spanning prefix");
      const auto v = k_mu_membership(code_, g, g.size(), kMembershipTol);
      in_k_.push_back(v.pass);
      f_.emplace_back(v.witness.front());
      if (!v.pass && vacuous_.empty()) vacuous_ = "g_" + std::to_string(i + 1) + " not in K_mu: " + v.detail;
    }
  }

  std::vector<double> values_at(const Vec& x, std::size_t pos) const {
    std::vector<double> a(f_.size());
    for (std::size_t i = 0; i < f_.size(); ++i) {
      const auto& g = level_.g_tuple[i];
      // The mirror reads the recovered functionals; the formula reads g
      // wherever the assignment is defined.
      a[i] = (!mirror_ && pos >= 1 && pos <= g.size()) ? code_(canonical_enumeration().at(pos)) * g[pos] : f_[i](x);
    }
    return a;
  }

  std::vector<Point> prefix_points(const Enumeration& en, std::size_t count) const {
    std::vector<Point> out;
    std::map<std::vector<double>, bool> seen;
    for (std::size_t pos = 1; pos <= count; ++pos) {
      const QVec& q = en.at(pos);
      Vec x = code_.realize(q);
      std::vector<double> key(x.data(), x.data() + x.size());
      if (!seen.emplace(std::move(key), true).second) continue;
      Point p{pos, q, x, code_(q), {}};
      p.a = values_at(p.x, pos);
      out.push_back(std::move(p));
    }
    return out;
  }

  Point rational_point(const Vec& x) const {
    const Vec a = tinv_ * x;
    std::vector<QVec::Entry> entries;
    for (Eigen::Index n = 0; n < a.size(); ++n) {
      const long long num = std::llround(a[n] * static_cast<double>(kDen));
      if (num != 0) entries.emplace_back(static_cast<int>(n) + 1, Rational(num, kDen));
    }
    Point p;
    p.q = QVec(std::move(entries));
    p.x = code_.realize(p.q);
    p.mu = code_(p.q);
    p.a = values_at(p.x, 0);
    return p;
  }

  std::vector<Batch> batches(bool per_g, bool with_k) const {
    std::vector<Batch> out;
    const int gs = per_g ? static_cast<int>(level_.g_tuple.size()) : 1;
    for (int g = 0; g < gs; ++g) {
      for (int m = 1; m <= level_.m_max; ++m) {
        for (int k = 1; k <= (with_k ? level_.k_max : 1); ++k) out.push_back({per_g ? g : -1, m, k});
      }
    }
    return out;
  }

  Verdict vacuous_pass(const std::string& why) const {
    Verdict v;
    v.pass = true;
    v.detail = "vacuous: " + why;
    return v;
  }

  Verdict sweep(const std::vector<Batch>& bs, bool per_u, const std::function<Outcome(const Batch&, const Point&)>& fn) {
    Verdict v;
    v.pass = true;
    std::size_t instances = 0;
    std::string skipped;
    const Point none;
    for (const auto& b : bs) {
      if (b.g >= 0 && !in_k_[static_cast<std::size_t>(b.g)]) {
        skipped = " (g_" + std::to_string(b.g + 1) + " outside K_mu)";
        continue;
      }
      const std::size_t n = per_u ? universe_.size() : 1;
      std::vector<Outcome> out(n);
      parallel_for(n, [&](std::size_t i) { out[i] = fn(b, per_u ? universe_[i] : none); });
      for (std::size_t i = 0; i < n; ++i) {
        ++instances;
        v.exact = v.exact && out[i].exact;
        if (out[i].pass) continue;
        v.pass = false;
        v.defect = std::max(0.0, out[i].shortfall);
        std::ostringstream d;
        if (b.g >= 0) d << "g=" << b.g + 1 << ' ';
        d << "m=" << b.m;
        if (id_ != FormulaId::LDdP_form) d << " k=" << b.k;
        if (per_u) {
          d << " u=#" << universe_[i].pos << ' ' << universe_[i].q.str();
          v.witness = {universe_[i].x};
        }
        v.detail = d.str();
        return v;
      }
    }
    v.detail = "instances=" + std::to_string(instances) + skipped;
    return v;
  }

  // ---- Shared pieces ------------------------------------------------

  double alpha(const Batch& b) const { return 1.0 - 1.0 / b.k; }

  std::vector<LinearConstraint> neighborhood(const Point& u, double delta) const {
    std::vector<LinearConstraint> cons;
    for (std::size_t i = 0; i < f_.size(); ++i) {
      cons.push_back({f_[i].coords, u.a[i] + delta});
      cons.push_back({-f_[i].coords, delta - u.a[i]});
    }
    return cons;
  }

  bool near(const Point& u, const Point& v, double delta) const {
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (!lt(std::abs(u.a[i] - v.a[i]), delta)) return false;
    }
    return true;
  }

  // (1 - t) p + t c rationalized, for the pulls t in kPull.
  template <class Accept>
  bool pull_and_check(const Vec& p, const Vec& c, Accept&& accept) const {
    for (double t : kPull) {
      if (accept(rational_point((1.0 - t) * p + t * c))) return true;
    }
    return false;
  }

  struct SliceTop {
    double value;
    Vec argmax;
  };
  SliceTop top_of(std::size_t i) const {
    const auto r = linmax(space_, f_[i]);
    return {r.value, r.argmax};
  }

  // A point strictly inside the open slice {F_i > alpha} and the open ball.
  Vec slice_core(const SliceTop& top, double a) const {
    const double t = std::min(1e-3, 0.5 * (1.0 - a / top.value));
    return (1.0 - t) * top.argmax;
  }

  // Formula side of "exists w with mu(w) <= 1 and mu(w) g_i(w) > alpha".
  bool slice_nonempty(std::size_t i, double a, const SliceTop& top) const {
    if (mirror_) return gt(top.value, a);
    for (const auto& w : search_) {
      if (!gt(w.mu, 1.0) && gt(w.a[i], a)) return true;
    }
    if (!(top.value > a)) return false;
    const Vec zero = Vec::Zero(space_.dim());
    return pull_and_check(top.argmax, zero, [&](const Point& w) { return !gt(w.mu, 1.0) && gt(w.a[i], a); });
  }

  Estimate slice_estimate(std::size_t i, double a) const {
    const double c = dual_norm(space_, f_[i]);
    return slice_diameter(space_, {Functional(Vec(f_[i].coords / c)), 1.0 - a / c});
  }

  // ---- Formulas -----------------------------------------------------

  Outcome d2p(const Batch& b, const Point& u) const {
    if (gt(u.mu, 1.0)) return {};
    const double target = 2.0 - 1.0 / b.m, delta = 1.0 / b.k;
    if (!mirror_) {
      std::vector<const Point*> cand;
      for (const auto& v : search_) {
        if (lt(v.mu, 1.0) && near(u, v, delta)) cand.push_back(&v);
      }
      if (pair_in_prefix(cand, target)) return {};
    }
    const auto e = mirror_ ? weak_open_diameter(space_, {u.x, f_, delta}) : region_diameter(space_, neighborhood(u, delta));
    Outcome o{gt(e.value, target), target - e.value, e.exact};
    if (mirror_ || !o.pass) return o;
    const Vec c = (1.0 - 1e-3 * delta) * u.x;
    Point v;
    const bool got_v = pull_and_check(e.witness[0], c, [&](const Point& p) {
      v = p;
      return lt(p.mu, 1.0) && near(u, p, delta);
    });
    bool ok = false;
    if (got_v) {
      ok = pull_and_check(e.witness[1], c, [&](const Point& w) {
        return lt(w.mu, 1.0) && near(u, w, delta) && gt(code_(v.q - w.q), target);
      });
    }
    o.pass = ok;
    o.shortfall = ok ? 0.0 : std::max(0.0, target - e.value);
    return o;
  }

  bool pair_in_prefix(const std::vector<const Point*>& cand, double target) const {
    if (cand.size() < 2) return false;
    for (const auto& psi : norming_functionals(space_).functionals) {
      const Point *hi = cand[0], *lo = cand[0];
      for (const Point* p : cand) {
        if (psi.dot(p->x) > psi.dot(hi->x)) hi = p;
        if (psi.dot(p->x) < psi.dot(lo->x)) lo = p;
      }
      if (gt(code_(hi->q - lo->q), target)) return true;
    }
    return false;
  }

  Outcome dd2p(const Batch& b, const Point& u) const {
    if (gt(u.mu, 1.0)) return {};
    const double target = 2.0 * u.mu - 1.0 / b.m, delta = 1.0 / b.k;
    if (!mirror_) {
      for (const auto& v : search_) {
        if (lt(v.mu, 1.0) && near(u, v, delta) && gt(code_(u.q - v.q), target)) return {};
      }
    }
    const auto cons = neighborhood(u, delta);
    const auto e = far_point_in_region(space_, u.x, cons);
    Outcome o{gt(e.value, target), target - e.value, e.exact};
    if (mirror_ || !o.pass) return o;
    const Vec c = (1.0 - 1e-3 * delta) * u.x;
    o.pass = pull_and_check(e.witness.front(), c, [&](const Point& v) {
      return lt(v.mu, 1.0) && near(u, v, delta) && gt(code_(u.q - v.q), target);
    });
    if (!o.pass) o.shortfall = std::max(0.0, target - e.value);
    return o;
  }

  Outcome ld2p(const Batch& b) const {
    const auto i = static_cast<std::size_t>(b.g);
    const double a = alpha(b), target = 2.0 - 1.0 / b.m;
    const auto top = top_of(i);
    if (!slice_nonempty(i, a, top)) return {};
    if (!mirror_) {
      std::vector<const Point*> cand;
      for (const auto& v : search_) {
        if (lt(v.mu, 1.0) && gt(v.a[i], a)) cand.push_back(&v);
      }
      if (pair_in_prefix(cand, target)) return {};
    }
    Estimate e;
    try {
      e = slice_estimate(i, a);
    } catch (const EmptySlice&) {
      return {};
    }
    Outcome o{gt(e.value, target), target - e.value, e.exact};
    if (mirror_ || !o.pass) return o;
    const Vec c = slice_core(top, a);
    Point v;
    const auto in_slice = [&](const Point& p) { return lt(p.mu, 1.0) && gt(p.a[i], a); };
    bool ok = pull_and_check(e.witness[0], c, [&](const Point& p) {
      v = p;
      return in_slice(p);
    });
    ok = ok && pull_and_check(e.witness[1], c, [&](const Point& w) { return in_slice(w) && gt(code_(v.q - w.q), target); });
    o.pass = ok;
    if (!ok) o.shortfall = std::max(0.0, target - e.value);
    return o;
  }

  Outcome far_in_slice(const Batch& b, const Point& u, bool u_in_slice) const {
    const auto i = static_cast<std::size_t>(b.g);
    const double a = alpha(b);
    if (gt(u.mu, 1.0)) return {};
    const auto top = top_of(i);
    if (u_in_slice) {
      if (!gt(u.a[i], a)) return {};
    } else if (!slice_nonempty(i, a, top)) {
      return {};
    }
    const double target = 2.0 * u.mu - 1.0 / b.m;
    const auto in_slice = [&](const Point& v) { return lt(v.mu, 1.0) && gt(v.a[i], a); };
    if (!mirror_) {
      for (const auto& v : search_) {
        if (in_slice(v) && gt(code_(u.q - v.q), target)) return {};
      }
    }
    if (!(top.value > a)) return {false, target, true};
    const std::vector<LinearConstraint> cons{{-f_[i].coords, -a}};
    const auto e = far_point_in_region(space_, u.x, cons);
    Outcome o{gt(e.value, target), target - e.value, e.exact};
    if (mirror_ || !o.pass) return o;
    o.pass = pull_and_check(e.witness.front(), slice_core(top, a),
                            [&](const Point& v) { return in_slice(v) && gt(code_(u.q - v.q), target); });
    if (!o.pass) o.shortfall = std::max(0.0, target - e.value);
    return o;
  }

  Outcome sd2p(const Batch& b) const {
    const double a = alpha(b), target = 2.0 - 1.0 / b.m;
    const std::size_t n = f_.size();
    std::vector<SliceTop> tops;
    for (std::size_t i = 0; i < n; ++i) {
      tops.push_back(top_of(i));
      if (!slice_nonempty(i, a, tops.back())) return {};
    }
    const Rational w(1, static_cast<long long>(n));
    if (!mirror_ && sd2p_prefix(a, target, w)) return {};
    std::vector<SliceSpec> slices;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = dual_norm(space_, f_[i]);
      slices.push_back({Functional(Vec(f_[i].coords / c)), 1.0 - a / c});
    }
    const std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    Estimate e;
    try {
      e = cc_slice_diameter(space_, slices, weights);
    } catch (const EmptySlice&) {
      return {};
    }
    Outcome o{gt(e.value, target), target - e.value, e.exact};
    if (mirror_ || !o.pass) return o;
    QVec sum;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const Vec c = slice_core(tops[i], a);
      const auto in_slice = [&](const Point& p) { return lt(p.mu, 1.0) && gt(p.a[i], a); };
      Point v, y;
      ok = pull_and_check(e.witness[2 + 2 * i], c, [&](const Point& p) { return in_slice(v = p); }) &&
           pull_and_check(e.witness[3 + 2 * i], c, [&](const Point& p) { return in_slice(y = p); });
      if (ok) sum = sum + w * (v.q - y.q);
    }
    o.pass = ok && gt(code_(sum), target);
    if (!o.pass) o.shortfall = std::max(0.0, target - e.value);
    return o;
  }

  bool sd2p_prefix(double a, double target, const Rational& w) const {
    const std::size_t n = f_.size();
    std::vector<std::vector<const Point*>> cand(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& v : search_) {
        if (lt(v.mu, 1.0) && gt(v.a[i], a)) cand[i].push_back(&v);
      }
      if (cand[i].empty()) return false;
    }
    for (const auto& psi : norming_functionals(space_).functionals) {
      QVec sum;
      for (const auto& c : cand) {
        const Point *hi = c[0], *lo = c[0];
        for (const Point* p : c) {
          if (psi.dot(p->x) > psi.dot(hi->x)) hi = p;
          if (psi.dot(p->x) < psi.dot(lo->x)) lo = p;
        }
        sum = sum + w * (hi->q - lo->q);
      }
      if (gt(code_(sum), target)) return true;
    }
    return false;
  }

  Outcome lddp(const Batch& b, const Point& u) const {
    if (!lt(u.mu, 1.0)) return {};
    const double close = 1.0 / level_.p_max, eps = 1.0 / b.m;
    if (mirror_) {
      const auto e = ldp_hull_distance(space_, u.x, level_.delta, eps);
      return {lt(e.value, close), e.value - close, e.exact};
    }
    // Pairs are generated with a little extra separation so that pulling
    // them inside the open ball keeps them admissible.
    double best = std::numeric_limits<double>::infinity();
    bool exact = true;
    for (double margin : {1e-3, 1e-4}) {
      const auto dec = ldp_decomposition(space_, u.x, level_.delta, eps - margin);
      exact = exact && dec.exact;
      best = std::min(best, dec.distance);
      if (dec.weights.empty() || !lt(dec.distance, close)) continue;
      if (lddp_witness(u, dec, level_.delta - eps, close, margin)) return {true, 0.0, exact};
    }
    const auto e = ldp_hull_distance(space_, u.x, level_.delta, eps);
    return {false, std::max(0.0, std::min(best, e.value) - close), exact && e.exact};
  }

  bool lddp_witness(const Point& u, const LdpDecomposition& dec, double sep, double close, double margin) const {
    const std::size_t n = dec.weights.size();
    std::vector<Rational> lambda;
    Rational rest(1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const long long num = std::llround(dec.weights[i] * static_cast<double>(kDen));
      if (num <= 0) return false;
      lambda.emplace_back(num, kDen);
      rest -= lambda.back();
    }
    if (rest <= 0) return false;
    lambda.push_back(rest);
    const Vec zero = Vec::Zero(space_.dim());
    for (double t : kPull) {
      if (4.0 * t > margin) break;
      QVec residual = u.q;
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const Point x = rational_point((1.0 - t) * dec.xs[i] + t * zero);
        const Point y = rational_point((1.0 - t) * dec.ys[i] + t * zero);
        ok = lt(x.mu, 1.0) && lt(y.mu, 1.0) && gt(code_(x.q - y.q), sep);
        residual = residual - (lambda[i] * Rational(1, 2)) * (x.q + y.q);
      }
      if (ok && lt(code_(residual), close)) return true;
    }
    return false;
  }
};

}  // namespace

std::string to_string(FormulaId id) {
  switch (id) {
    case FormulaId::D2P_Pn: return "D2P_Pn";
    case FormulaId::LD2P_P: return "LD2P_P";
    case FormulaId::DLD2P_P: return "DLD2P_P";
    case FormulaId::DP_P: return "DP_P";
    case FormulaId::SD2P_Pn: return "SD2P_Pn";
    case FormulaId::DD2P_Pn: return "DD2P_Pn";
    case FormulaId::LDdP_form: return "LDdP_form";
  }
  return "?";
}

const std::vector<FormulaId>& all_formulas() {
  static const std::vector<FormulaId> ids{FormulaId::D2P_Pn,  FormulaId::LD2P_P,  FormulaId::DLD2P_P,
                                          FormulaId::DP_P,    FormulaId::SD2P_Pn, FormulaId::DD2P_Pn,
                                          FormulaId::LDdP_form};
  return ids;
}

FormulaId formula_from_string(std::string_view name) {
  for (auto id : all_formulas()) {
    if (to_string(id) == name) return id;
  }
  throw UnsupportedFormula("unknown formula " + std::string(name));
}

bool uses_g(FormulaId id) { return id != FormulaId::LDdP_form; }

std::vector<DualAssignment> facet_g_tuple(const SeminormCode& code, std::size_t prefix) {
  const Space& s = code.space();
  auto ns = norming_functionals(s);
  if (!ns.exact) {
    ns.functionals.clear();
    for (int i = 0; i < s.dim(); ++i) ns.functionals.push_back(Vec::Unit(s.dim(), i));
  }
  std::size_t spanning = 0;
  if (prefix_rank(code, std::numeric_limits<std::size_t>::max(), &spanning) < s.dim())
    throw std::invalid_argument("the enumeration does not span the space");
  prefix = std::max(prefix, spanning);
  std::vector<DualAssignment> out;
  for (const auto& psi : ns.functionals) {
    out.push_back(t_mu(code, Functional(psi), prefix));
    out.push_back(t_mu(code, Functional(Vec(-psi)), prefix));
  }
  return out;
}

Verdict formula_eval(const SeminormCode& code, FormulaId id, const LevelSpec& level) {
  return Harness(code, id, level, false).run();
}

Verdict formula_mirror(const SeminormCode& code, FormulaId id, const LevelSpec& level) {
  return Harness(code, id, level, true).run();
}

LevelProfile level_profile(const SeminormCode& code, FormulaId id, const std::vector<LevelSpec>& schedule) {
  if (schedule.empty()) throw std::invalid_argument("empty schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    const auto& a = schedule[i - 1];
    const auto& b = schedule[i];
    if (b.m_max < a.m_max || b.k_max < a.k_max || b.p_max < a.p_max || b.search_depth < a.search_depth ||
        b.universe_size() < a.universe_size())
      throw std::invalid_argument("schedule must be monotone in every bound");
  }
  LevelProfile out;
  for (const auto& l : schedule) {
    out.rows.push_back({l.m_max, l.k_max, l.p_max, l.search_depth, formula_eval(code, id, l)});
    const std::size_t r = out.rows.size() - 1;
    if (!out.flip && r > 0 && out.rows[r].verdict.pass != out.rows[r - 1].verdict.pass) out.flip = r;
  }
  return out;
}

}  // namespace bgeom
