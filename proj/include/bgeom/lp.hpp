#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace bgeom::lp {

enum class Sense { LessEq, GreaterEq, Equal };
enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Term {
  int var;
  double coeff;
};

struct Solution {
  Status status = Status::Infeasible;
  double value = 0.0;
  std::vector<double> x;

  bool optimal() const { return status == Status::Optimal; }
};

/// Dense two-phase primal simplex over a small linear program
///
///   maximize  c.x   subject to   rows (<=, >=, =),  x_j free or x_j >= 0.
///
/// Sized for the problems this library builds (a few hundred rows and
/// columns); the tableau is stored densely.
class Problem {
 public:
  int add_variable(bool nonnegative = false);
  /// Adds `count` variables and returns the index of the first one.
  int add_variables(int count, bool nonnegative = false);
  int num_variables() const { return static_cast<int>(nonneg_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  void add_row(std::vector<Term> terms, Sense sense, double rhs);
  void set_objective(int var, double coeff);
  void clear_objective();

  Solution maximize() const;
  Solution minimize() const;

 private:
  struct Row {
    std::vector<Term> terms;
    Sense sense;
    double rhs;
  };
  std::vector<bool> nonneg_;
  std::vector<double> objective_;
  std::vector<Row> rows_;
};

}  // namespace bgeom::lp
