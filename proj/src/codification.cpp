#include "bgeom/codification.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "bgeom/errors.hpp"
#include "bgeom/sampling.hpp"

namespace bgeom {

long long height(const Rational& q) { return std::max(std::abs(q.numerator()), q.denominator()); }

QVec::QVec(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& [i, q] : entries) {
    if (i < 1) throw BadIndex("QVec indices start at 1");
    if (!support_.empty() && support_.back().first == i) support_.back().second += q;
    else support_.emplace_back(i, q);
  }
  std::erase_if(support_, [](const Entry& e) { return e.second.numerator() == 0; });
}

QVec QVec::unit(int index, Rational coeff) { return QVec({{index, coeff}}); }

long long QVec::max_height() const {
  long long h = 0;
  for (const auto& e : support_) h = std::max(h, height(e.second));
  return h;
}

long long QVec::height_sum() const {
  long long h = 0;
  for (const auto& e : support_) h += height(e.second);
  return h;
}

Rational QVec::coeff(int index) const {
  for (const auto& e : support_) {
    if (e.first == index) return e.second;
  }
  return 0;
}

QVec QVec::operator+(const QVec& o) const {
  std::vector<Entry> all = support_;
  all.insert(all.end(), o.support_.begin(), o.support_.end());
  return QVec(std::move(all));
}

QVec QVec::operator-() const { return Rational(-1) * *this; }

QVec QVec::operator-(const QVec& o) const { return *this + (-o); }

QVec operator*(const Rational& q, const QVec& v) {
  std::vector<QVec::Entry> out;
  for (const auto& [i, c] : v.support_) out.emplace_back(i, q * c);
  return QVec(std::move(out));
}

std::vector<double> QVec::dense(int length) const {
  std::vector<double> a(static_cast<std::size_t>(std::max(length, max_index())), 0.0);
  for (const auto& [i, q] : support_) a[static_cast<std::size_t>(i - 1)] = boost::rational_cast<double>(q);
  return a;
}

std::string QVec::str() const {
  if (support_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, q] : support_) {
    if (!first) os << (q.numerator() < 0 ? " - " : " + ");
    else if (q.numerator() < 0) os << "-";
    first = false;
    const Rational a = abs(q);
    if (a != Rational(1)) os << a.numerator() << (a.denominator() != 1 ? "/" + std::to_string(a.denominator()) : "") << "*";
    os << "e" << i;
  }
  return os.str();
}

Rational rationalize(double x, long long max_den) {
  if (!std::isfinite(x)) throw NumericalFailure("cannot rationalize a non-finite value");
  if (std::abs(x) > 1e12) throw NumericalFailure("value too large to rationalize");
  const bool neg = x < 0;
  double r = std::abs(x);
  // Convergents h/k of the continued fraction, stopping at the denominator cap.
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int step = 0; step < 64; ++step) {
    const double a = std::floor(r);
    const auto ai = static_cast<long long>(a);
    const long long k2 = ai * k1 + k0;
    if (k2 > max_den) {
      // Best semiconvergent below the cap.
      const long long t = (max_den - k0) / std::max<long long>(k1, 1);
      const long long hs = t * h1 + h0, ks = t * k1 + k0;
      if (k1 > 0 && ks > 0 &&
          std::abs(static_cast<double>(hs) / static_cast<double>(ks) - std::abs(x)) <
              std::abs(static_cast<double>(h1) / static_cast<double>(k1) - std::abs(x))) {
        h1 = hs;
        k1 = ks;
      }
      break;
    }
    const long long h2 = ai * h1 + h0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = r - a;
    if (frac < 1e-12 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - std::abs(x)) < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return 0;
  const Rational q(h1, k1);
  return neg ? -q : q;
}

QVec rationalize(std::span<const double> coeffs, long long max_den) {
  std::vector<QVec::Entry> e;
  for (std::size_t i = 0; i < coeffs.size(); ++i) e.emplace_back(static_cast<int>(i) + 1, rationalize(coeffs[i], max_den));
  return QVec(std::move(e));
}

// ---- Enumeration -------------------------------------------------------

namespace {

// Coefficient order inside a stage: height, then sign (+ first), then size.
bool coeff_less(const Rational& a, const Rational& b) {
  const long long ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  const bool na = a.numerator() < 0, nb = b.numerator() < 0;
  if (na != nb) return nb;
  return abs(a) < abs(b);
}

bool key_less(const QVec& a, const QVec& b) {
  if (a.height_sum() != b.height_sum()) return a.height_sum() < b.height_sum();
  const auto& sa = a.support();
  const auto& sb = b.support();
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].first != sb[i].first) return sa[i].first < sb[i].first;
  }
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].second != sb[i].second) return coeff_less(sa[i].second, sb[i].second);
  }
  return false;
}

std::vector<Rational> coefficients_up_to(int s) {
  std::vector<Rational> out;
  for (long long b = 1; b <= s; ++b) {
    for (long long a = 1; a <= s; ++a) {
      if (std::gcd(a, b) != 1) continue;
      out.emplace_back(a, b);
      out.emplace_back(-a, b);
    }
  }
  return out;
}

std::vector<QVec> build_stage(int s) {
  if (s == 0) return {QVec()};
  const auto coeffs = coefficients_up_to(s);
  const std::size_t base = coeffs.size() + 1;  // digit 0 = index absent
  std::size_t total = 1;
  for (int i = 0; i < s; ++i) total *= base;
  std::vector<QVec> out;
  std::vector<std::size_t> digit(static_cast<std::size_t>(s), 0);
  for (std::size_t n = 1; n < total; ++n) {
    for (int i = 0; i < s; ++i) {
      if (++digit[static_cast<std::size_t>(i)] < base) break;
      digit[static_cast<std::size_t>(i)] = 0;
    }
    std::vector<QVec::Entry> e;
    bool new_here = digit[static_cast<std::size_t>(s - 1)] != 0;
    for (int i = 0; i < s; ++i) {
      const std::size_t d = digit[static_cast<std::size_t>(i)];
      if (d == 0) continue;
      const Rational& q = coeffs[d - 1];
      new_here = new_here || height(q) == s;
      e.emplace_back(i + 1, q);
    }
    if (new_here) out.emplace_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

}  // namespace

struct Enumeration::Cache {
  std::mutex mutex;
  std::vector<QVec> list;
  std::vector<std::size_t> stage_start;  // stage s occupies [start[s], start[s+1])

  void ensure_stage(int s) {
    while (static_cast<int>(stage_start.size()) <= s + 1) {
      const int next = static_cast<int>(stage_start.size()) - 1;
      if (next > kMaxStage) throw TooLarge("enumeration stage " + std::to_string(next) + " is too large to build");
      auto stage = build_stage(next);
      list.insert(list.end(), std::make_move_iterator(stage.begin()), std::make_move_iterator(stage.end()));
      stage_start.push_back(list.size());
    }
  }

  void ensure_size(std::size_t n) {
    int s = static_cast<int>(stage_start.size()) - 1;
    while (list.size() < n) ensure_stage(s++);
  }
};

Enumeration::Enumeration() : cache_(std::make_shared<Cache>()) { cache_->stage_start.push_back(0); }

const QVec& Enumeration::at(std::size_t position) const {
  if (position < 1) throw BadIndex("enumeration positions start at 1");
  std::lock_guard lock(cache_->mutex);
  cache_->ensure_size(position);
  return cache_->list[position - 1];
}

std::size_t Enumeration::position(const QVec& v) const {
  const int s = static_cast<int>(std::max<long long>(v.max_index(), v.max_height()));
  std::lock_guard lock(cache_->mutex);
  cache_->ensure_stage(s);
  const auto first = cache_->list.begin() + static_cast<std::ptrdiff_t>(cache_->stage_start[static_cast<std::size_t>(s)]);
  const auto last = cache_->list.begin() + static_cast<std::ptrdiff_t>(cache_->stage_start[static_cast<std::size_t>(s) + 1]);
  const auto it = std::lower_bound(first, last, v, key_less);
  if (it == last || !(*it == v)) throw NumericalFailure("enumeration lookup failed for " + v.str());
  return static_cast<std::size_t>(it - cache_->list.begin()) + 1;
}

std::vector<QVec> Enumeration::prefix(std::size_t count) const {
  if (count == 0) return {};
  at(count);
  std::lock_guard lock(cache_->mutex);
  return {cache_->list.begin(), cache_->list.begin() + static_cast<std::ptrdiff_t>(count)};
}

const Enumeration& canonical_enumeration() {
  static const Enumeration e;
  return e;
}

// ---- Codes -------------------------------------------------------------

SeminormCode::SeminormCode(Space space, DenseRule rule) : space_(std::move(space)), rule_(std::move(rule)) {
  for (const auto& v : rule_.vectors) {
    if (v.size() != space_.dim()) throw DimensionMismatch("dense rule vector dimension differs from the space");
  }
}

namespace {

Vec rule_vector(const Space& s, DenseRule::Kind kind, int n) {
  const int d = s.dim();
  if (kind == DenseRule::Kind::BallGrid && n > d) {
    // Halton point of the cube pushed radially onto the unit ball.
    Vec p = 2.0 * sampling::Halton(d).at(static_cast<std::uint64_t>(n - d)).array() - 1.0;
    const double nx = norm(s, p);
    return nx > 0 ? Vec(p * (p.cwiseAbs().maxCoeff() / nx)) : p;
  }
  return Vec::Unit(d, (n - 1) % d);
}

}  // namespace

Vec SeminormCode::dense_vector(int n) const {
  if (n < 1) throw BadIndex("dense sequence indices start at 1");
  if (rule_.kind != DenseRule::Kind::Custom) return rule_vector(space_, rule_.kind, n);
  const int len = static_cast<int>(rule_.vectors.size());
  if (n <= len) return rule_.vectors[static_cast<std::size_t>(n - 1)];
  if (rule_.zero_tail) return Vec::Zero(space_.dim());
  return rule_vector(space_, rule_.tail, n - len);
}

Vec SeminormCode::realize(std::span<const double> coeffs) const {
  Vec x = Vec::Zero(space_.dim());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0.0) x += coeffs[i] * dense_vector(static_cast<int>(i) + 1);
  }
  return x;
}

Vec SeminormCode::realize(const QVec& v) const {
  Vec x = Vec::Zero(space_.dim());
  for (const auto& [i, q] : v.support()) x += boost::rational_cast<double>(q) * dense_vector(i);
  return x;
}

Mat SeminormCode::truncation(int level) const {
  Mat m(space_.dim(), level);
  for (int n = 1; n <= level; ++n) m.col(n - 1) = dense_vector(n);
  return m;
}

double SeminormCode::operator()(const QVec& v) const {
  if (v.is_zero()) return 0.0;
  return norm(space_, realize(v));
}

double SeminormCode::eval_real(std::span<const double> coeffs) const { return norm(space_, realize(coeffs)); }

SeminormCode encode_space(const Space& space, DenseRule rule) { return SeminormCode(space, std::move(rule)); }

double seminorm_eval(const SeminormCode& code, const QVec& v) { return code(v); }

bool kernel_test(const SeminormCode& code, const QVec& v, double tol) { return code(v) <= tol; }

std::string to_string(CodeClass c) {
  switch (c) {
    case CodeClass::BLike: return "B-like";
    case CodeClass::PInfOnly: return "P_inf-only";
    case CodeClass::Degenerate: return "degenerate";
  }
  return "?";
}

CodeClass classify_code(const SeminormCode& code, int level, double tol) {
  if (level < 1) throw BadIndex("level must be at least 1");
  const Mat t = code.truncation(level);
  Eigen::JacobiSVD<Mat> svd(t);
  const Vec& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() ? sv[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv[i] > tol * scale ? 1 : 0;
  if (rank == level) return CodeClass::BLike;
  return rank >= 1 ? CodeClass::PInfOnly : CodeClass::Degenerate;
}

double code_distance(const SeminormCode& a, const SeminormCode& b, const Enumeration& enumeration, int depth) {
  if (depth < 1) throw BadIndex("depth must be at least 1");
  double total = 0.0;
  double w = 0.5;
  for (int i = 1; i <= depth; ++i, w *= 0.5) {
    const QVec& v = enumeration.at(static_cast<std::size_t>(i));
    total += w * std::min(1.0, std::abs(a(v) - b(v)));
  }
  return total;
}

}  // namespace bgeom
