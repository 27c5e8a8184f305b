#include "bgeom/space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "bgeom/errors.hpp"
#include "bgeom/sampling.hpp"

namespace bgeom {

struct Space::Data {
  Kind kind;
  int dim = 0;
  std::vector<Vec> rows;
  double p = 2.0;
  std::vector<Space> parts;
  std::vector<Space> parent;  // zero or one element
  Mat kernel;
  Mat complement;
};

Functional Functional::coordinate(int dim, int index, double scale) {
  Vec c = Vec::Zero(dim);
  c[index] = scale;
  return Functional(std::move(c));
}

namespace {

int rank_of(const std::vector<Vec>& rows, int dim) {
  if (rows.empty()) return 0;
  Mat m(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  Eigen::FullPivLU<Mat> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

void require_dims(const std::vector<Vec>& rows, int dim, const char* what) {
  for (const auto& r : rows) {
    if (r.size() != dim) throw DimensionMismatch(std::string(what) + " rows must share one dimension");
  }
}

double dual_exponent(double p) {
  if (p == 1.0) return Space::kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(const Vec& x, double p) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  double s = 0.0;
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

// Points on the l_p unit sphere whose symmetric hull is inscribed in the
// l_p ball. One representative per +- pair.
std::vector<Vec> inscribed_points(int dim, double p) {
  std::vector<Vec> pts;
  if (dim == 1) {
    pts.push_back(Vec::Ones(1));
    return pts;
  }
  if (dim == 2) {
    constexpr int kHalf = 512;
    for (int k = 0; k < kHalf; ++k) {
      const double a = std::numbers::pi * k / kHalf;
      Vec v(2);
      v << std::cos(a), std::sin(a);
      pts.push_back(v / lp_norm(v, p));
    }
    return pts;
  }
  const std::size_t count = dim == 3 ? 1500 : 2500;
  for (auto& d : sampling::directions(dim, count)) pts.push_back(d / lp_norm(d, p));
  return pts;
}

// Norming functional of x for the l_p norm (dual norm one).
Vec lp_norming(const Vec& x, double p) {
  Vec g(x.size());
  if (std::isinf(p)) {
    Eigen::Index i;
    x.cwiseAbs().maxCoeff(&i);
    g.setZero();
    g[i] = x[i] >= 0 ? 1.0 : -1.0;
    return g;
  }
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = x[i] >= 0 ? 1.0 : -1.0;
    return g;
  }
  const double n = lp_norm(x, p);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    g[i] = (x[i] >= 0 ? 1.0 : -1.0) * std::pow(std::abs(x[i]) / n, p - 1.0);
  }
  return g;
}

std::vector<Vec> identity_rows(int dim) {
  std::vector<Vec> rows;
  for (int i = 0; i < dim; ++i) rows.push_back(Vec::Unit(dim, i));
  return rows;
}

bool positive_representative(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) return v[i] > 0;
  }
  return true;
}

std::vector<Vec> halve(const std::vector<Vec>& both) {
  std::vector<Vec> out;
  for (const auto& v : both) {
    if (positive_representative(v)) out.push_back(v);
  }
  return out;
}

std::vector<Vec> with_negatives(const std::vector<Vec>& half) {
  std::vector<Vec> out;
  out.reserve(2 * half.size());
  for (const auto& v : half) {
    out.push_back(v);
    out.push_back(-v);
  }
  return out;
}

class PointSet {
 public:
  bool insert(const Vec& v) {
    std::vector<long long> key(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) key[static_cast<std::size_t>(i)] = std::llround(v[i] * 1e7);
    return keys_.insert(std::move(key)).second;
  }

 private:
  std::set<std::vector<long long>> keys_;
};

std::vector<Vec> dedupe_pm(const std::vector<Vec>& in) {
  PointSet seen;
  std::vector<Vec> out;
  for (const auto& v : in) {
    const Vec rep = positive_representative(v) ? v : Vec(-v);
    if (seen.insert(rep)) out.push_back(rep);
  }
  return out;
}

// ---- LP emission ------------------------------------------------------

void add_radius_term(std::vector<lp::Term>& terms, const Radius& r, double& rhs) {
  if (r.var >= 0) {
    terms.push_back({r.var, -1.0});
    rhs = 0.0;
  } else {
    rhs = r.value;
  }
}

void emit_slab(lp::Problem& prob, const std::vector<Vec>& funcs, std::span<const int> x, Radius r) {
  for (const auto& phi : funcs) {
    for (double s : {1.0, -1.0}) {
      std::vector<lp::Term> terms;
      for (Eigen::Index i = 0; i < phi.size(); ++i) {
        if (phi[i] != 0.0) terms.push_back({x[static_cast<std::size_t>(i)], s * phi[i]});
      }
      double rhs;
      add_radius_term(terms, r, rhs);
      prob.add_row(std::move(terms), lp::Sense::LessEq, rhs);
    }
  }
}

void emit_hull(lp::Problem& prob, const std::vector<Vec>& gens, std::span<const int> x, Radius r) {
  const int n = static_cast<int>(gens.size());
  const int a0 = prob.add_variables(n, true);
  const int b0 = prob.add_variables(n, true);
  const int dim = static_cast<int>(x.size());
  for (int i = 0; i < dim; ++i) {
    std::vector<lp::Term> terms{{x[static_cast<std::size_t>(i)], 1.0}};
    for (int k = 0; k < n; ++k) {
      const double g = gens[static_cast<std::size_t>(k)][i];
      if (g == 0.0) continue;
      terms.push_back({a0 + k, -g});
      terms.push_back({b0 + k, g});
    }
    prob.add_row(std::move(terms), lp::Sense::Equal, 0.0);
  }
  std::vector<lp::Term> sum;
  for (int k = 0; k < n; ++k) {
    sum.push_back({a0 + k, 1.0});
    sum.push_back({b0 + k, 1.0});
  }
  double rhs;
  add_radius_term(sum, r, rhs);
  prob.add_row(std::move(sum), lp::Sense::LessEq, rhs);
}

bool emit_lp_ball(lp::Problem& prob, int dim, double p, std::span<const int> x, Radius r) {
  if (std::isinf(p)) {
    emit_slab(prob, identity_rows(dim), x, r);
    return true;
  }
  if (p == 1.0) {
    emit_hull(prob, identity_rows(dim), x, r);
    return true;
  }
  emit_hull(prob, inscribed_points(dim, p), x, r);
  return false;
}

bool emit(lp::Problem& prob, const Space& s, std::span<const int> x, Radius r, bool dual);

bool emit_blocks_max(lp::Problem& prob, const std::vector<Space>& parts, std::span<const int> x, Radius r,
                     bool dual) {
  bool exact = true;
  std::size_t off = 0;
  for (const auto& part : parts) {
    const auto n = static_cast<std::size_t>(part.dim());
    exact &= emit(prob, part, x.subspan(off, n), r, dual);
    off += n;
  }
  return exact;
}

bool emit_blocks_sum(lp::Problem& prob, const std::vector<Space>& parts, std::span<const int> x, Radius r,
                     bool dual) {
  bool exact = true;
  std::size_t off = 0;
  std::vector<lp::Term> total;
  for (const auto& part : parts) {
    const auto n = static_cast<std::size_t>(part.dim());
    const int t = prob.add_variable(true);
    total.push_back({t, 1.0});
    exact &= emit(prob, part, x.subspan(off, n), Radius::variable(t), dual);
    off += n;
  }
  double rhs;
  add_radius_term(total, r, rhs);
  prob.add_row(std::move(total), lp::Sense::LessEq, rhs);
  return exact;
}

bool emit(lp::Problem& prob, const Space& s, std::span<const int> x, Radius r, bool dual) {
  switch (s.kind()) {
    case Space::Kind::Facet:
      if (dual) emit_hull(prob, s.rows(), x, r);
      else emit_slab(prob, s.rows(), x, r);
      return true;
    case Space::Kind::Vertex:
      if (dual) emit_slab(prob, s.rows(), x, r);
      else emit_hull(prob, s.rows(), x, r);
      return true;
    case Space::Kind::Lp:
      return emit_lp_ball(prob, s.dim(), dual ? dual_exponent(s.p()) : s.p(), x, r);
    case Space::Kind::SumInf:
      return dual ? emit_blocks_sum(prob, s.parts(), x, r, true) : emit_blocks_max(prob, s.parts(), x, r, false);
    case Space::Kind::Sum1:
      return dual ? emit_blocks_max(prob, s.parts(), x, r, true) : emit_blocks_sum(prob, s.parts(), x, r, false);
    case Space::Kind::Quotient: {
      const Mat& b = s.complement();
      const int pdim = static_cast<int>(b.rows());
      const int y0 = prob.add_variables(pdim);
      std::vector<int> y(static_cast<std::size_t>(pdim));
      for (int i = 0; i < pdim; ++i) y[static_cast<std::size_t>(i)] = y0 + i;
      if (!dual) {
        // x = B^T y
        for (int i = 0; i < s.dim(); ++i) {
          std::vector<lp::Term> terms{{x[static_cast<std::size_t>(i)], 1.0}};
          for (int j = 0; j < pdim; ++j) {
            if (b(j, i) != 0.0) terms.push_back({y0 + j, -b(j, i)});
          }
          prob.add_row(std::move(terms), lp::Sense::Equal, 0.0);
        }
      } else {
        // y = B f
        for (int j = 0; j < pdim; ++j) {
          std::vector<lp::Term> terms{{y0 + j, 1.0}};
          for (int i = 0; i < s.dim(); ++i) {
            if (b(j, i) != 0.0) terms.push_back({x[static_cast<std::size_t>(i)], -b(j, i)});
          }
          prob.add_row(std::move(terms), lp::Sense::Equal, 0.0);
        }
      }
      return emit(prob, s.parent(), y, r, dual);
    }
  }
  return false;
}

std::vector<int> add_free_block(lp::Problem& prob, int n) {
  const int first = prob.add_variables(n);
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = first + i;
  return idx;
}

// min t subject to x fixed and ||x|| <= t (or the dual ball when `dual`).
double gauge_by_lp(const Space& s, const Vec& x, bool dual) {
  lp::Problem prob;
  auto xv = add_free_block(prob, s.dim());
  for (int i = 0; i < s.dim(); ++i) prob.add_row({{xv[static_cast<std::size_t>(i)], 1.0}}, lp::Sense::Equal, x[i]);
  const int t = prob.add_variable(true);
  emit(prob, s, xv, Radius::variable(t), dual);
  prob.set_objective(t, 1.0);
  const auto sol = prob.minimize();
  if (!sol.optimal()) throw NumericalFailure("gauge LP did not reach optimality");
  return std::max(0.0, sol.value);
}

std::vector<Vec> lift(const std::vector<Vec>& block, int offset, int dim) {
  std::vector<Vec> out;
  for (const auto& v : block) {
    Vec w = Vec::Zero(dim);
    w.segment(offset, v.size()) = v;
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Vec> product(const std::vector<std::vector<Vec>>& blocks, int dim, std::size_t max_count) {
  std::size_t count = 1;
  for (const auto& b : blocks) {
    if (b.empty()) return {};
    if (count > max_count / b.size() + 1) throw TooLarge("direct-sum vertex product exceeds the cap");
    count *= b.size();
  }
  if (count > max_count) throw TooLarge("direct-sum vertex product exceeds the cap");
  std::vector<Vec> out;
  std::vector<std::size_t> idx(blocks.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    Vec v(dim);
    int off = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const Vec& part = blocks[k][idx[k]];
      v.segment(off, part.size()) = part;
      off += static_cast<int>(part.size());
    }
    out.push_back(std::move(v));
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (++idx[k] < blocks[k].size()) break;
      idx[k] = 0;
    }
  }
  return out;
}

// Generators that are extreme points of conv{+-g}: drops interior points and
// points expressible through the other generators.
std::vector<Vec> extreme_generators(const std::vector<Vec>& gens_in, int dim) {
  const auto gens = dedupe_pm(gens_in);
  std::vector<Vec> out;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != k) others.push_back(gens[j]);
    }
    bool extreme = true;
    if (!others.empty()) {
      lp::Problem prob;
      auto xv = add_free_block(prob, dim);
      for (int i = 0; i < dim; ++i) prob.add_row({{xv[static_cast<std::size_t>(i)], 1.0}}, lp::Sense::Equal, gens[k][i]);
      const int t = prob.add_variable(true);
      emit_hull(prob, others, xv, Radius::variable(t));
      prob.set_objective(t, 1.0);
      const auto sol = prob.minimize();
      extreme = !sol.optimal() || sol.value > 1.0 + 1e-9;
    }
    if (extreme) out.push_back(gens[k]);
  }
  return with_negatives(out);
}

}  // namespace

// ---- Space -----------------------------------------------------------

Space Space::facet(std::vector<Vec> functionals) {
  if (functionals.empty()) throw DegeneratePresentation("facet presentation needs functionals");
  const int dim = static_cast<int>(functionals.front().size());
  require_dims(functionals, dim, "facet");
  if (dim < 1 || rank_of(functionals, dim) < dim) {
    throw DegeneratePresentation("facet functionals do not span the dual; the result is only a seminorm");
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::Facet;
  d->dim = dim;
  d->rows = std::move(functionals);
  return Space(d);
}

Space Space::vertex(std::vector<Vec> generators) {
  if (generators.empty()) throw DegeneratePresentation("vertex presentation needs generators");
  const int dim = static_cast<int>(generators.front().size());
  require_dims(generators, dim, "vertex");
  if (dim < 1 || rank_of(generators, dim) < dim) {
    throw DegeneratePresentation("vertex generators do not span the space; the gauge is not finite");
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::Vertex;
  d->dim = dim;
  d->rows = std::move(generators);
  return Space(d);
}

Space Space::lp(int dim, double p) {
  if (!(p >= 1.0)) throw BadExponent("p must be at least 1");
  if (dim < 1) throw DegeneratePresentation("dimension must be positive");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Lp;
  d->dim = dim;
  d->p = p;
  return Space(d);
}

Space Space::sum_inf(std::vector<Space> parts) {
  if (parts.empty()) throw DegeneratePresentation("direct sum needs parts");
  auto d = std::make_shared<Data>();
  d->kind = Kind::SumInf;
  for (const auto& s : parts) d->dim += s.dim();
  d->parts = std::move(parts);
  return Space(d);
}

Space Space::sum_1(std::vector<Space> parts) {
  if (parts.empty()) throw DegeneratePresentation("direct sum needs parts");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Sum1;
  for (const auto& s : parts) d->dim += s.dim();
  d->parts = std::move(parts);
  return Space(d);
}

Space Space::quotient(const Space& parent, std::vector<Vec> kernel) {
  const int n = parent.dim();
  require_dims(kernel, n, "kernel");
  const int k = static_cast<int>(kernel.size());
  if (rank_of(kernel, n) < k) throw DegeneratePresentation("kernel basis is linearly dependent");
  if (k >= n) throw DegeneratePresentation("quotient by the whole space");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Quotient;
  d->dim = n - k;
  d->parent.push_back(parent);
  d->kernel = Mat::Zero(n, k);
  for (int j = 0; j < k; ++j) d->kernel.col(j) = kernel[static_cast<std::size_t>(j)];
  if (k == 0) {
    d->complement = Mat::Identity(n, n);
  } else {
    Eigen::FullPivHouseholderQR<Mat> qr(d->kernel);
    const Mat q = qr.matrixQ();
    d->complement = q.rightCols(n - k);
  }
  return Space(d);
}

int Space::dim() const { return d_->dim; }
Space::Kind Space::kind() const { return d_->kind; }
const std::vector<Vec>& Space::rows() const { return d_->rows; }
double Space::p() const { return d_->p; }
const std::vector<Space>& Space::parts() const { return d_->parts; }
const Space& Space::parent() const { return d_->parent.at(0); }
const Mat& Space::kernel() const { return d_->kernel; }
const Mat& Space::complement() const { return d_->complement; }

bool Space::polytopal() const {
  switch (kind()) {
    case Kind::Facet:
    case Kind::Vertex:
      return true;
    case Kind::Lp:
      return p() == 1.0 || std::isinf(p());
    case Kind::SumInf:
    case Kind::Sum1:
      return std::all_of(parts().begin(), parts().end(), [](const Space& s) { return s.polytopal(); });
    case Kind::Quotient:
      return parent().polytopal();
  }
  return false;
}

std::string Space::describe() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Facet:
      os << "facet(dim=" << dim() << ",rows=" << rows().size() << ")";
      break;
    case Kind::Vertex:
      os << "vertex(dim=" << dim() << ",rows=" << rows().size() << ")";
      break;
    case Kind::Lp:
      if (std::isinf(p())) os << "linf:" << dim();
      else os << "l" << p() << ":" << dim();
      break;
    case Kind::SumInf:
    case Kind::Sum1: {
      os << (kind() == Kind::SumInf ? "sum_inf(" : "sum_1(");
      for (std::size_t i = 0; i < parts().size(); ++i) os << (i ? "," : "") << parts()[i].describe();
      os << ")";
      break;
    }
    case Kind::Quotient:
      os << "quotient(" << parent().describe() << ",kernel=" << kernel().cols() << ")";
      break;
  }
  return os.str();
}

Space construct_space(const SpaceSpec& spec) {
  const auto check_dim = [&](const Space& s) {
    if (spec.dim > 0 && s.dim() != spec.dim) throw DimensionMismatch("declared dim does not match presentation");
    return s;
  };
  if (spec.kind == "facet") return check_dim(Space::facet(spec.rows));
  if (spec.kind == "vertex") return check_dim(Space::vertex(spec.rows));
  if (spec.kind == "lp") return Space::lp(spec.dim, spec.p);
  if (spec.kind == "sum_inf" || spec.kind == "sum_1") {
    std::vector<Space> parts;
    for (const auto& p : spec.parts) parts.push_back(construct_space(p));
    return check_dim(spec.kind == "sum_inf" ? Space::sum_inf(std::move(parts)) : Space::sum_1(std::move(parts)));
  }
  if (spec.kind == "quotient") {
    if (!spec.parent) throw DegeneratePresentation("quotient needs a parent");
    return check_dim(Space::quotient(construct_space(*spec.parent), spec.kernel));
  }
  throw DegeneratePresentation("unknown presentation kind '" + spec.kind + "'");
}

// ---- Norms -------------------------------------------------------------

double norm(const Space& s, const Vec& x) {
  if (x.size() != s.dim()) throw DimensionMismatch("vector dimension differs from space dimension");
  switch (s.kind()) {
    case Space::Kind::Facet: {
      double m = 0.0;
      for (const auto& phi : s.rows()) m = std::max(m, std::abs(phi.dot(x)));
      return m;
    }
    case Space::Kind::Vertex:
      if (x.isZero(0.0)) return 0.0;
      return gauge_by_lp(s, x, false);
    case Space::Kind::Lp:
      return lp_norm(x, s.p());
    case Space::Kind::SumInf:
    case Space::Kind::Sum1: {
      double acc = 0.0;
      int off = 0;
      for (const auto& part : s.parts()) {
        const double v = norm(part, x.segment(off, part.dim()));
        acc = s.kind() == Space::Kind::SumInf ? std::max(acc, v) : acc + v;
        off += part.dim();
      }
      return acc;
    }
    case Space::Kind::Quotient:
      if (x.isZero(0.0)) return 0.0;
      if (s.parent().kind() == Space::Kind::Lp && s.parent().p() == 2.0) return x.norm();
      return gauge_by_lp(s, x, false);
  }
  return 0.0;
}

double dual_norm(const Space& s, const Functional& f) {
  if (f.dim() != s.dim()) throw DimensionMismatch("functional dimension differs from space dimension");
  const Vec& c = f.coords;
  switch (s.kind()) {
    case Space::Kind::Facet:
      if (c.isZero(0.0)) return 0.0;
      return gauge_by_lp(s, c, true);
    case Space::Kind::Vertex: {
      double m = 0.0;
      for (const auto& v : s.rows()) m = std::max(m, std::abs(v.dot(c)));
      return m;
    }
    case Space::Kind::Lp:
      return lp_norm(c, dual_exponent(s.p()));
    case Space::Kind::SumInf:
    case Space::Kind::Sum1: {
      double acc = 0.0;
      int off = 0;
      for (const auto& part : s.parts()) {
        const double v = dual_norm(part, Functional(c.segment(off, part.dim())));
        acc = s.kind() == Space::Kind::Sum1 ? std::max(acc, v) : acc + v;
        off += part.dim();
      }
      return acc;
    }
    case Space::Kind::Quotient:
      return dual_norm(s.parent(), Functional(s.complement() * c));
  }
  return 0.0;
}

// ---- Vertices ----------------------------------------------------------

std::vector<Vec> symmetric_polytope_vertices(std::span<const Vec> rows_in, int dim, std::size_t max_count) {
  std::vector<Vec> rows = dedupe_pm(std::vector<Vec>(rows_in.begin(), rows_in.end()));
  const int m = static_cast<int>(rows.size());
  if (m < dim) throw DegeneratePresentation("constraint rows do not bound the polytope");
  // Work estimate: C(m, dim) * 2^(dim-1) linear solves.
  double work = std::ldexp(1.0, dim - 1);
  for (int i = 0; i < dim; ++i) work *= static_cast<double>(m - i) / (i + 1);
  if (work > 4e6) throw TooLarge("vertex enumeration too large for basis enumeration");

  PointSet seen;
  std::vector<Vec> out;
  std::vector<int> pick(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) pick[static_cast<std::size_t>(i)] = i;
  const unsigned patterns = 1u << (dim - 1);
  while (true) {
    Mat a(dim, dim);
    for (int i = 0; i < dim; ++i) a.row(i) = rows[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].transpose();
    Eigen::FullPivLU<Mat> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() == dim) {
      for (unsigned mask = 0; mask < patterns; ++mask) {
        Vec rhs(dim);
        rhs[0] = 1.0;
        for (int i = 1; i < dim; ++i) rhs[i] = (mask >> (i - 1)) & 1u ? -1.0 : 1.0;
        Vec y = lu.solve(rhs);
        bool feasible = true;
        for (const auto& r : rows) {
          if (std::abs(r.dot(y)) > 1.0 + 1e-9) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        if (!positive_representative(y)) y = -y;
        if (seen.insert(y)) {
          out.push_back(y);
          out.push_back(-y);
          if (out.size() > max_count) throw TooLarge("polytope has too many vertices");
        }
      }
    }
    int i = dim - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - dim + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < dim; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::vector<Vec> ball_vertices(const Space& s, std::size_t max_count) {
  switch (s.kind()) {
    case Space::Kind::Facet:
      return symmetric_polytope_vertices(s.rows(), s.dim(), max_count);
    case Space::Kind::Vertex: {
      std::vector<Vec> boundary;
      for (const auto& g : s.rows()) {
        if (norm(s, g) > 1.0 - 1e-9) boundary.push_back(g);
      }
      return extreme_generators(boundary, s.dim());
    }
    case Space::Kind::Lp:
      if (std::isinf(s.p())) {
        if (s.dim() >= 30 || (std::size_t{1} << s.dim()) > max_count) throw TooLarge("cube has too many vertices");
        return sampling::sign_vectors(s.dim(), max_count);
      }
      if (s.p() == 1.0) return with_negatives(identity_rows(s.dim()));
      throw NotPolytopal("the l_p ball is smooth for 1 < p < inf");
    case Space::Kind::SumInf: {
      std::vector<std::vector<Vec>> blocks;
      for (const auto& part : s.parts()) blocks.push_back(ball_vertices(part, max_count));
      return product(blocks, s.dim(), max_count);
    }
    case Space::Kind::Sum1: {
      std::vector<Vec> out;
      int off = 0;
      for (const auto& part : s.parts()) {
        for (auto& v : lift(ball_vertices(part, max_count), off, s.dim())) out.push_back(std::move(v));
        off += part.dim();
      }
      return out;
    }
    case Space::Kind::Quotient: {
      std::vector<Vec> projected;
      for (const auto& v : ball_vertices(s.parent(), max_count)) projected.push_back(s.complement().transpose() * v);
      return extreme_generators(projected, s.dim());
    }
  }
  return {};
}

NormingSet norming_functionals(const Space& s, std::size_t max_count) {
  switch (s.kind()) {
    case Space::Kind::Facet:
      return {dedupe_pm(s.rows()), true};
    case Space::Kind::Vertex:
      return {halve(symmetric_polytope_vertices(s.rows(), s.dim(), 2 * max_count)), true};
    case Space::Kind::Lp: {
      const int d = s.dim();
      if (std::isinf(s.p())) return {identity_rows(d), true};
      if (s.p() == 1.0) {
        if (d > 30 || (std::size_t{1} << (d - 1)) > max_count) throw TooLarge("too many sign functionals");
        return {halve(sampling::sign_vectors(d, std::size_t{1} << d)), true};
      }
      const auto pts = inscribed_points(d, s.p());
      std::vector<Vec> psi;
      if (d == 2) {
        // Edge normals of the inscribed polygon: exact for the polygon.
        const auto ring = [&](std::size_t k) -> Vec {
          const std::size_t n = pts.size();
          return k < n ? pts[k] : Vec(-pts[k - n]);
        };
        for (std::size_t k = 0; k < pts.size(); ++k) {
          Mat a(2, 2);
          a.row(0) = ring(k).transpose();
          a.row(1) = ring(k + 1).transpose();
          psi.push_back(a.fullPivLu().solve(Vec::Ones(2)));
        }
      } else {
        for (const auto& x : pts) psi.push_back(lp_norming(x, s.p()));
      }
      return {dedupe_pm(psi), false};
    }
    case Space::Kind::SumInf: {
      NormingSet out;
      int off = 0;
      for (const auto& part : s.parts()) {
        auto block = norming_functionals(part, max_count);
        out.exact &= block.exact;
        for (auto& v : lift(block.functionals, off, s.dim())) out.functionals.push_back(std::move(v));
        off += part.dim();
      }
      return out;
    }
    case Space::Kind::Sum1: {
      std::vector<std::vector<Vec>> blocks;
      bool exact = true;
      for (std::size_t k = 0; k < s.parts().size(); ++k) {
        auto block = norming_functionals(s.parts()[k], max_count);
        exact &= block.exact;
        blocks.push_back(k == 0 ? block.functionals : with_negatives(block.functionals));
      }
      return {product(blocks, s.dim(), max_count), exact};
    }
    case Space::Kind::Quotient: {
      if (!s.parent().polytopal()) {
        // Dual of the quotient is the annihilator section of the parent dual.
        NormingSet parent = norming_functionals(s.parent(), max_count);
        std::vector<Vec> psi;
        for (const auto& f : parent.functionals) {
          Vec c = s.complement().transpose() * f;
          if (c.norm() > 1e-9) psi.push_back(c / dual_norm(s, Functional(c)));
        }
        return {dedupe_pm(psi), false};
      }
      const auto verts = ball_vertices(s, 2 * max_count);
      return {halve(symmetric_polytope_vertices(verts, s.dim(), 2 * max_count)), true};
    }
  }
  return {};
}

bool emit_ball(lp::Problem& prob, const Space& space, std::span<const int> x, Radius r) {
  if (static_cast<int>(x.size()) != space.dim()) throw DimensionMismatch("emit_ball variable count");
  return emit(prob, space, x, r, false);
}

bool emit_dual_ball(lp::Problem& prob, const Space& space, std::span<const int> f, Radius r) {
  if (static_cast<int>(f.size()) != space.dim()) throw DimensionMismatch("emit_dual_ball variable count");
  return emit(prob, space, f, r, true);
}

Functional norming_functional(const Space& s, const Vec& x) {
  if (x.size() != s.dim()) throw DimensionMismatch("vector dimension differs from space dimension");
  if (x.isZero(0.0)) return Functional(Vec::Zero(s.dim()));
  if (s.kind() == Space::Kind::Lp) return Functional(lp_norming(x, s.p()));
  lp::Problem prob;
  auto fv = add_free_block(prob, s.dim());
  emit(prob, s, fv, Radius::constant(1.0), true);
  for (int i = 0; i < s.dim(); ++i) prob.set_objective(fv[static_cast<std::size_t>(i)], x[i]);
  const auto sol = prob.maximize();
  if (!sol.optimal()) throw NumericalFailure("norming LP did not reach optimality");
  Vec f(s.dim());
  for (int i = 0; i < s.dim(); ++i) f[i] = sol.x[static_cast<std::size_t>(fv[static_cast<std::size_t>(i)])];
  return Functional(std::move(f));
}

DualNormEvaluator::DualNormEvaluator(const Space& space, std::size_t max_vertices) : space_(space) {
  if (!space.polytopal()) return;
  try {
    const auto verts = halve(ball_vertices(space, max_vertices));
    vertices_.resize(static_cast<Eigen::Index>(verts.size()), space.dim());
    for (std::size_t i = 0; i < verts.size(); ++i) vertices_.row(static_cast<Eigen::Index>(i)) = verts[i].transpose();
  } catch (const TooLarge&) {
    vertices_.resize(0, 0);
  }
}

double DualNormEvaluator::operator()(const Vec& f) const {
  if (vertices_.rows() > 0) return (vertices_ * f).cwiseAbs().maxCoeff();
  return dual_norm(space_, Functional(f));
}

LinmaxResult linmax(const Space& s, const Functional& objective, std::span<const LinearConstraint> constraints) {
  if (objective.dim() != s.dim()) throw DimensionMismatch("objective dimension");
  if (constraints.empty() && s.kind() == Space::Kind::Lp) {
    const double q = dual_exponent(s.p());
    const double v = lp_norm(objective.coords, q);
    Vec arg = Vec::Zero(s.dim());
    if (v > 0) arg = lp_norming(objective.coords, q);
    if (std::isinf(q) && v > 0) {
      // l_1 ball: the argmax is the vertex on the largest |f_i|.
      Eigen::Index i;
      objective.coords.cwiseAbs().maxCoeff(&i);
      arg.setZero();
      arg[i] = objective.coords[i] >= 0 ? 1.0 : -1.0;
    }
    return {v, arg, true};
  }
  lp::Problem prob;
  auto xv = add_free_block(prob, s.dim());
  const bool exact = emit(prob, s, xv, Radius::constant(1.0), false);
  for (const auto& c : constraints) {
    if (c.a.size() != s.dim()) throw DimensionMismatch("constraint dimension");
    std::vector<lp::Term> terms;
    for (int i = 0; i < s.dim(); ++i) {
      if (c.a[i] != 0.0) terms.push_back({xv[static_cast<std::size_t>(i)], c.a[i]});
    }
    prob.add_row(std::move(terms), lp::Sense::LessEq, c.b);
  }
  for (int i = 0; i < s.dim(); ++i) prob.set_objective(xv[static_cast<std::size_t>(i)], objective.coords[i]);
  const auto sol = prob.maximize();
  if (sol.status == lp::Status::Infeasible) throw Infeasible("region is empty");
  if (!sol.optimal()) throw NumericalFailure("linmax LP did not reach optimality");
  Vec arg(s.dim());
  for (int i = 0; i < s.dim(); ++i) arg[i] = sol.x[static_cast<std::size_t>(xv[static_cast<std::size_t>(i)])];
  return {sol.value, arg, exact};
}

}  // namespace bgeom
