#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bgeom/codification.hpp"
#include "bgeom/verdict.hpp"

namespace bgeom {

/// Values g(v_1), ..., g(v_L) on a prefix of the canonical enumeration.
class DualAssignment {
 public:
  DualAssignment() = default;
  /// Throws std::invalid_argument when a value leaves [-1, 1].
  explicit DualAssignment(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  /// 1-based enumeration position.
  double operator[](std::size_t position) const { return values_.at(position - 1); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// g(u) = f(sum a_n x_n) / mu(u), zero on the kernel.
DualAssignment t_mu(const SeminormCode& code, const Functional& f, std::size_t prefix,
                    const Enumeration& enumeration = canonical_enumeration());

/// Finite Hahn-Banach test: is there f in the dual ball with
/// f(x_u) = mu(u) g(u) for the first `level` enumerated u? The defect is the
/// smallest achievable max residual, combined with the g(0) and kernel
/// conditions.
Verdict k_mu_membership(const SeminormCode& code, const DualAssignment& g, std::size_t level, double tol = 1e-8,
                        const Enumeration& enumeration = canonical_enumeration());

/// The sequence (mu_n, g_n) and its limit, with exact evaluators.
///   mu_n(q) = |q_1/n + q_2| + sum_{m>=3} |q_m|
///   g_n = T_{mu_n}(F_n), F_n(e_1) = 1/n, F_n(e_m) = 1 (m >= 3)
///   limit: mu(q) = sum_{m>=2} |q_m|, g piecewise
class Knocerrado {
 public:
  /// nullopt is the limit.
  explicit Knocerrado(std::optional<int> n);

  bool is_limit() const { return !n_; }
  std::optional<int> n() const { return n_; }

  Rational mu(const QVec& v) const;
  Rational g(const QVec& v) const;

  /// Code over l_1^dim realizing mu: x_1 = e_1/n (0 for the limit),
  /// x_2 = e_1, x_m = e_{m-1}. Exact on QVecs with max index <= dim + 1.
  SeminormCode code(int dim) const;
  /// F_n in the coordinates of code(dim); throws for the limit.
  Functional functional(int dim) const;
  DualAssignment assignment(std::size_t prefix, const Enumeration& enumeration = canonical_enumeration()) const;

 private:
  std::optional<int> n_;
};

/// sum_{i<=depth} 2^-i (min(1,|mu_a - mu_b|) + min(1,|g_a - g_b|)) on v_i.
double pair_distance(const Knocerrado& a, const Knocerrado& b, int depth,
                     const Enumeration& enumeration = canonical_enumeration());

struct KReport {
  std::vector<Verdict> membership;  // (mu_n, g_n), n = 1..n_max
  std::vector<double> distance;     // to the limit, n = 1..n_max
  Verdict limit;
  bool clause_i = false;
  bool clause_ii = false;
  bool clause_iii = false;
  double worst_increase = 0.0;  // largest d_{n+1} - d_n
  std::string note;
  bool pass() const { return clause_i && clause_ii && clause_iii; }
};

/// (i) every (mu_n, g_n) is in K_mu at `levels`; (ii) the distance to the
/// limit is non-increasing within tol; (iii) the limit is not.
KReport verify_k_counterexample(int levels, int n_max, double tol, int depth = 30);

}  // namespace bgeom
