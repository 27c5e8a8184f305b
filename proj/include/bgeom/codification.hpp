#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "bgeom/space.hpp"

namespace bgeom {

using Rational = boost::rational<long long>;

/// max(|numerator|, denominator)
long long height(const Rational& q);

/// A finitely supported rational sequence. Indices are 1-based and strictly
/// increasing; zero coefficients are never stored.
class QVec {
 public:
  using Entry = std::pair<int, Rational>;

  QVec() = default;
  explicit QVec(std::vector<Entry> entries);
  static QVec unit(int index, Rational coeff = 1);

  const std::vector<Entry>& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }
  int max_index() const { return support_.empty() ? 0 : support_.back().first; }
  long long max_height() const;
  long long height_sum() const;
  Rational coeff(int index) const;

  QVec operator+(const QVec& o) const;
  QVec operator-(const QVec& o) const;
  QVec operator-() const;
  friend QVec operator*(const Rational& q, const QVec& v);
  bool operator==(const QVec& o) const = default;

  /// Dense real coefficients a_1..a_n, n = max(length, max_index()).
  std::vector<double> dense(int length = 0) const;
  std::string str() const;

 private:
  std::vector<Entry> support_;
};

/// Closest rational with denominator at most max_den (continued fractions).
Rational rationalize(double x, long long max_den);
QVec rationalize(std::span<const double> coeffs, long long max_den);

/// Canonical enumeration v_1, v_2, ... of V. Stage s holds the vectors with
/// indices and coefficient heights at most s that are not in stage s-1;
/// stage 0 is {0}. Inside a stage the order is by (sum of heights, support
/// size, indices, coefficients). So v_1 = 0, v_2 = e_1, v_3 = -e_1.
class Enumeration {
 public:
  Enumeration();

  /// 1-based.
  const QVec& at(std::size_t position) const;
  std::size_t position(const QVec& v) const;
  /// First `count` vectors.
  std::vector<QVec> prefix(std::size_t count) const;

  /// Stages past this are too large to materialize.
  static constexpr int kMaxStage = 4;

 private:
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// Shared process-wide enumeration.
const Enumeration& canonical_enumeration();

/// Rule n -> x_n fixing the dense sequence of a code.
struct DenseRule {
  enum class Kind { Basis, BallGrid, Custom };
  Kind kind = Kind::Basis;
  std::vector<Vec> vectors;          // custom prefix x_1..x_L
  Kind tail = Kind::Basis;           // rule for n > L (custom only)
  bool zero_tail = false;            // custom tail is identically zero

  static DenseRule basis() { return {}; }
  static DenseRule ball_grid() { return {Kind::BallGrid, {}, Kind::Basis, false}; }
  static DenseRule custom(std::vector<Vec> list, Kind tail = Kind::Basis) {
    return {Kind::Custom, std::move(list), tail, false};
  }
  static DenseRule custom_zero_tail(std::vector<Vec> list) { return {Kind::Custom, std::move(list), Kind::Basis, true}; }
};

/// The seminorm mu(v) = || sum a_n x_n || on V.
class SeminormCode {
 public:
  SeminormCode(Space space, DenseRule rule);

  const Space& space() const { return space_; }
  const DenseRule& rule() const { return rule_; }

  /// x_n, 1-based.
  Vec dense_vector(int n) const;
  /// sum a_n x_n for a real coefficient sequence (a_1, a_2, ...).
  Vec realize(std::span<const double> coeffs) const;
  Vec realize(const QVec& v) const;
  /// Matrix [x_1 ... x_level].
  Mat truncation(int level) const;

  double operator()(const QVec& v) const;
  /// Extension to real coefficient sequences.
  double eval_real(std::span<const double> coeffs) const;

 private:
  Space space_;
  DenseRule rule_;
};

SeminormCode encode_space(const Space& space, DenseRule rule);
double seminorm_eval(const SeminormCode& code, const QVec& v);
bool kernel_test(const SeminormCode& code, const QVec& v, double tol);

enum class CodeClass { BLike, PInfOnly, Degenerate };
std::string to_string(CodeClass c);

/// Level-indexed trichotomy read off the singular values of the truncation.
CodeClass classify_code(const SeminormCode& code, int level, double tol = 1e-9);

/// sum_{i<=depth} 2^-i min(1, |a(v_i) - b(v_i)|)
double code_distance(const SeminormCode& a, const SeminormCode& b, const Enumeration& enumeration, int depth);

}  // namespace bgeom
