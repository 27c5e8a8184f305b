#include "bgeom/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bgeom::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kHarrisTol = 1e-9;
constexpr double kPivotRel = 1e-7;
constexpr double kNoiseCost = 1e-7;
constexpr double kCostTol = 1e-10;
constexpr double kFeasTol = 1e-8;
constexpr int kDegenerateBeforeBland = 64;
// Reinversion costs O(m^3): refresh after max(kRefreshEvery, m) pivots.
constexpr int kRefreshEvery = 50;

class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), data_((rows) * (cols + 1), 0.0), basis_(rows, -1) {}

  double& at(int i, int j) { return data_[i * (n_ + 1) + j]; }
  double at(int i, int j) const { return data_[i * (n_ + 1) + j]; }
  double& rhs(int i) { return at(i, n_); }
  double rhs(int i) const { return at(i, n_); }

  // Keeps the initial tableau so that reinvert() can rebuild from it.
  void snapshot() { orig_ = data_; }

  // Recomputes every row as B^-1 times the initial rows for the current
  // basis B, discarding accumulated rounding error.
  int pivots_since_refresh() const { return pivots_; }

  void reinvert() {
    pivots_ = 0;
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMat> a0(orig_.data(), m_, n_ + 1);
    Eigen::MatrixXd b(m_, m_);
    for (int i = 0; i < m_; ++i) b.col(i) = a0.col(basis_[i]);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    if (!(std::abs(lu.determinant()) > 0.0)) return;
    Eigen::Map<RowMat> cur(data_.data(), m_, n_ + 1);
    cur = lu.solve(a0);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (std::abs(cur(i, j)) < 1e-14) cur(i, j) = 0.0;
      }
      cur(i, basis_[i]) = 1.0;
    }
  }

  int rows() const { return m_; }
  int cols() const { return n_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c, std::vector<double>& cost_row) {
    double* pr = &data_[r * (n_ + 1)];
    const double inv = 1.0 / pr[c];
    for (int j = 0; j <= n_; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* pi = &data_[i * (n_ + 1)];
      const double f = pi[c];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_; ++j) pi[j] -= f * pr[j];
      pi[c] = 0.0;
    }
    const double f = cost_row[c];
    if (f != 0.0) {
      for (int j = 0; j <= n_; ++j) cost_row[j] -= f * pr[j];
      cost_row[c] = 0.0;
    }
    basis_[r] = c;
    ++pivots_;
  }

 private:
  int m_, n_;
  std::vector<double> data_;
  std::vector<double> orig_;
  std::vector<int> basis_;
  int pivots_ = 0;
};

// Cost row holds z_j - c_j for a maximization of c; the last entry is the
// current objective value.
std::vector<double> make_cost_row(Tableau& t, const std::vector<double>& c) {
  std::vector<double> row(t.cols() + 1, 0.0);
  for (int j = 0; j < t.cols(); ++j) row[j] = -c[j];
  for (int i = 0; i < t.rows(); ++i) {
    const double cb = c[t.basis()[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j <= t.cols(); ++j) row[j] += cb * t.at(i, j);
  }
  return row;
}

Status run_simplex(Tableau& t, const std::vector<double>& c, const std::vector<bool>& allowed,
                   std::vector<double>& cost) {
  cost = make_cost_row(t, c);
  int degenerate = 0;
  // Columns whose tiny reduced cost met no blocking row: rounding noise on
  // a zero-cost ray. Skipped until the next pivot.
  std::vector<char> skip(static_cast<std::size_t>(t.cols()), 0);
  std::vector<int> skipped;
  const int max_iter = 200 * (t.rows() + t.cols()) + 1000;
  for (int iter = 0; iter < max_iter; ++iter) {
    const bool bland = degenerate >= kDegenerateBeforeBland;
    int enter = -1;
    double best = -kCostTol;
    for (int j = 0; j < t.cols(); ++j) {
      if (!allowed[j] || skip[j]) continue;
      if (cost[j] < best) {
        enter = j;
        if (bland) break;
        best = cost[j];
      }
    }
    if (enter < 0) return Status::Optimal;

    double colmax = 0.0;
    for (int i = 0; i < t.rows(); ++i) colmax = std::max(colmax, std::abs(t.at(i, enter)));
    const double piv_tol = std::max(kPivotTol, kPivotRel * colmax);
    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    if (bland) {
      for (int i = 0; i < t.rows(); ++i) {
        const double a = t.at(i, enter);
        if (a <= piv_tol) continue;
        const double r = std::max(0.0, t.rhs(i)) / a;
        if (r < ratio - 1e-12 || (r <= ratio + 1e-12 && leave >= 0 && t.basis()[i] < t.basis()[leave])) {
          ratio = r;
          leave = i;
        }
      }
    } else {
      // Harris: bound the step with a relaxed ratio, then take the largest
      // pivot among rows that block within that bound.
      double bound = std::numeric_limits<double>::infinity();
      for (int i = 0; i < t.rows(); ++i) {
        const double a = t.at(i, enter);
        if (a > piv_tol) bound = std::min(bound, (std::max(0.0, t.rhs(i)) + kHarrisTol) / a);
      }
      double biggest = 0.0;
      for (int i = 0; i < t.rows(); ++i) {
        const double a = t.at(i, enter);
        if (a <= piv_tol) continue;
        const double r = std::max(0.0, t.rhs(i)) / a;
        if (r <= bound && a > biggest) {
          biggest = a;
          ratio = r;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      if (cost[enter] > -kNoiseCost) {
        skip[enter] = 1;
        skipped.push_back(enter);
        continue;
      }
      return Status::Unbounded;
    }
    for (int j : skipped) skip[j] = 0;
    skipped.clear();
    // Bound shift: a slightly negative basic value is treated as zero.
    if (t.rhs(leave) < 0.0) t.rhs(leave) = 0.0;
    degenerate = (ratio <= 1e-12) ? degenerate + 1 : 0;
    t.pivot(leave, enter, cost);
    if (t.pivots_since_refresh() >= std::max(kRefreshEvery, t.rows())) {
      t.reinvert();
      cost = make_cost_row(t, c);
    }
  }
  return Status::IterationLimit;
}

}  // namespace

int Problem::add_variable(bool nonnegative) {
  nonneg_.push_back(nonnegative);
  objective_.push_back(0.0);
  return static_cast<int>(nonneg_.size()) - 1;
}

int Problem::add_variables(int count, bool nonnegative) {
  const int first = num_variables();
  for (int i = 0; i < count; ++i) add_variable(nonnegative);
  return first;
}

void Problem::add_row(std::vector<Term> terms, Sense sense, double rhs) {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) throw std::out_of_range("lp: bad variable index");
  }
  rows_.push_back(Row{std::move(terms), sense, rhs});
}

void Problem::set_objective(int var, double coeff) { objective_.at(var) = coeff; }

void Problem::clear_objective() { std::fill(objective_.begin(), objective_.end(), 0.0); }

Solution Problem::minimize() const {
  Problem negated = *this;
  for (auto& c : negated.objective_) c = -c;
  Solution s = negated.maximize();
  s.value = -s.value;
  return s;
}

Solution Problem::maximize() const {
  const int nvar = num_variables();
  // Column layout: structural columns (free variables split in two),
  // then one slack/surplus per inequality row, then artificials.
  std::vector<int> pos_col(nvar), neg_col(nvar, -1);
  int ncols = 0;
  for (int j = 0; j < nvar; ++j) {
    pos_col[j] = ncols++;
    if (!nonneg_[j]) neg_col[j] = ncols++;
  }
  const int m = num_rows();

  std::vector<int> slack_col(m, -1), art_col(m, -1);
  std::vector<double> sign(m, 1.0);
  for (int i = 0; i < m; ++i) {
    Sense s = rows_[i].sense;
    if (rows_[i].rhs < 0) {
      sign[i] = -1.0;
      if (s == Sense::LessEq) s = Sense::GreaterEq;
      else if (s == Sense::GreaterEq) s = Sense::LessEq;
    }
    if (s != Sense::Equal) slack_col[i] = ncols++;
    if (s != Sense::LessEq) art_col[i] = -2;  // placeholder
  }
  const int first_art = ncols;
  for (int i = 0; i < m; ++i) {
    if (art_col[i] == -2) art_col[i] = ncols++;
  }

  Tableau t(m, ncols);
  for (int i = 0; i < m; ++i) {
    Sense s = rows_[i].sense;
    if (sign[i] < 0) {
      if (s == Sense::LessEq) s = Sense::GreaterEq;
      else if (s == Sense::GreaterEq) s = Sense::LessEq;
    }
    for (const auto& term : rows_[i].terms) {
      t.at(i, pos_col[term.var]) += sign[i] * term.coeff;
      if (neg_col[term.var] >= 0) t.at(i, neg_col[term.var]) -= sign[i] * term.coeff;
    }
    t.rhs(i) = sign[i] * rows_[i].rhs;
    if (slack_col[i] >= 0) t.at(i, slack_col[i]) = (s == Sense::LessEq) ? 1.0 : -1.0;
    if (art_col[i] >= 0) {
      t.at(i, art_col[i]) = 1.0;
      t.basis()[i] = art_col[i];
    } else {
      t.basis()[i] = slack_col[i];
    }
  }

  t.snapshot();
  std::vector<bool> allowed(ncols, true);
  Solution sol;

  if (first_art < ncols) {
    std::vector<double> c1(ncols, 0.0);
    for (int j = first_art; j < ncols; ++j) c1[j] = -1.0;
    std::vector<double> cost;
    const Status st = run_simplex(t, c1, allowed, cost);
    if (st == Status::IterationLimit) {
      sol.status = st;
      return sol;
    }
    double scale = 1.0;
    for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(rows_[i].rhs));
    if (-cost[ncols] > kFeasTol * scale) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive remaining zero-level artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (t.basis()[i] < first_art) continue;
      int best = -1;
      double mag = 1e-9;
      for (int j = 0; j < first_art; ++j) {
        if (std::abs(t.at(i, j)) > mag) {
          mag = std::abs(t.at(i, j));
          best = j;
        }
      }
      if (best >= 0) t.pivot(i, best, cost);
      // Otherwise the row is redundant; its artificial stays basic at zero
      // and can never re-enter because the column is disallowed below.
    }
    for (int j = first_art; j < ncols; ++j) allowed[j] = false;
  }

  std::vector<double> c2(ncols, 0.0);
  for (int j = 0; j < nvar; ++j) {
    c2[pos_col[j]] = objective_[j];
    if (neg_col[j] >= 0) c2[neg_col[j]] = -objective_[j];
  }
  std::vector<double> cost;
  const Status st = run_simplex(t, c2, allowed, cost);
  if (st != Status::Optimal) {
    sol.status = st;
    return sol;
  }

  if (t.pivots_since_refresh() >= kRefreshEvery) t.reinvert();
  std::vector<double> col_value(ncols, 0.0);
  for (int i = 0; i < m; ++i) col_value[t.basis()[i]] = t.rhs(i);
  sol.x.assign(nvar, 0.0);
  for (int j = 0; j < nvar; ++j) {
    sol.x[j] = col_value[pos_col[j]] - (neg_col[j] >= 0 ? col_value[neg_col[j]] : 0.0);
  }
  double value = 0.0;
  for (int j = 0; j < nvar; ++j) value += objective_[j] * sol.x[j];
  sol.value = value;
  sol.status = Status::Optimal;
  return sol;
}

}  // namespace bgeom::lp
