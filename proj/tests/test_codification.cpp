#include "doctest.h"

#include <cmath>
#include <random>

#include "bgeom/codification.hpp"
#include "bgeom/errors.hpp"

using namespace bgeom;

namespace {

Vec unit(int d, int i, double s = 1.0) { return s * Vec::Unit(d, i); }

SeminormCode knocerrado_like(int n, int dim = 4) {
  std::vector<Vec> list{unit(dim, 0, 1.0 / n), unit(dim, 0)};
  for (int i = 1; i < dim; ++i) list.push_back(unit(dim, i));
  return encode_space(Space::l1(dim), DenseRule::custom(std::move(list)));
}

QVec random_qvec(std::mt19937_64& rng, int max_index) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), idx(1, max_index);
  std::vector<QVec::Entry> e;
  for (int k = 0; k < 3; ++k) e.emplace_back(idx(rng), Rational(num(rng), den(rng)));
  return QVec(std::move(e));
}

}  // namespace

TEST_CASE("QVec normal form") {
  const QVec v({{3, Rational(1, 2)}, {1, 2}, {3, Rational(-1, 2)}});
  CHECK(v.support().size() == 1);
  CHECK(v.max_index() == 1);
  CHECK(QVec().is_zero());
  CHECK((QVec::unit(2) - QVec::unit(2)).is_zero());
  CHECK_THROWS_AS(QVec::unit(0), BadIndex);
  CHECK(QVec({{1, 2}, {3, Rational(-1, 3)}}).str() == "2*e1 - 1/3*e3");
}

TEST_CASE("enumeration layout") {
  const auto& en = canonical_enumeration();
  CHECK(en.at(1).is_zero());
  CHECK(en.at(2) == QVec::unit(1));
  CHECK(en.at(3) == QVec::unit(1, -1));
  CHECK(en.at(4) == QVec::unit(2));
  CHECK(en.position(QVec::unit(2)) == 4);
  // Stage 2 adds 46 vectors: positions 4..49.
  CHECK(en.at(49).max_index() <= 2);
  CHECK(en.at(50).max_index() == 3);
  CHECK(en.at(50) == QVec::unit(3));
  // Repetition-free and position() inverts at().
  for (std::size_t i = 1; i <= 400; ++i) CHECK(en.position(en.at(i)) == i);
  const QVec w({{1, Rational(3, 2)}, {3, Rational(-2, 3)}});
  CHECK(en.at(en.position(w)) == w);
}

TEST_CASE("rationalize") {
  CHECK(rationalize(0.5, 100) == Rational(1, 2));
  CHECK(rationalize(-1.0 / 3.0, 100) == Rational(-1, 3));
  CHECK(rationalize(M_PI, 1000) == Rational(355, 113));
  CHECK(rationalize(0.0, 10) == Rational(0));
}

TEST_CASE("encode and evaluate") {
  const auto linf = encode_space(Space::linf(2), DenseRule::basis());
  CHECK(linf(QVec::unit(1)) == doctest::Approx(1));
  CHECK(linf(QVec::unit(2)) == doctest::Approx(1));
  const auto l2 = encode_space(Space::l2(2), DenseRule::basis());
  CHECK(l2(QVec({{1, 1}, {2, 1}})) == doctest::Approx(std::sqrt(2.0)));
  const auto l1 = encode_space(Space::l1(3), DenseRule::basis());
  CHECK(seminorm_eval(l1, QVec({{1, 2}, {3, -1}})) == doctest::Approx(3));
  CHECK(l1(QVec()) == 0.0);
  CHECK_THROWS_AS(encode_space(Space::l1(3), DenseRule::custom({Vec::Ones(2)})), DimensionMismatch);
}

TEST_CASE("knocerrado kernel vector") {
  for (int n : {1, 2, 5, 17}) {
    const auto mu = knocerrado_like(n);
    const QVec v({{1, 1}, {2, Rational(-1, n)}});
    CHECK(mu(v) == doctest::Approx(0).scale(1));
    CHECK(kernel_test(mu, v, 1e-12));
    CHECK(classify_code(mu, 2) == CodeClass::PInfOnly);
    CHECK(classify_code(mu, 5) == CodeClass::PInfOnly);
  }
  CHECK_FALSE(kernel_test(encode_space(Space::linf(2), DenseRule::basis()), QVec::unit(1), 1e-12));
  CHECK(kernel_test(knocerrado_like(3), QVec(), 1e-12));
}

TEST_CASE("classification") {
  const auto l2 = encode_space(Space::l2(4), DenseRule::basis());
  CHECK(classify_code(l2, 4) == CodeClass::BLike);
  CHECK(classify_code(l2, 5) == CodeClass::PInfOnly);
  const auto zero = encode_space(Space::l2(3), DenseRule::custom_zero_tail({}));
  for (int level : {1, 3, 6}) CHECK(classify_code(zero, level) == CodeClass::Degenerate);
  // B-like at L implies B-like below L.
  const auto grid = encode_space(Space::linf(3), DenseRule::ball_grid());
  for (int level = 1; level <= 8; ++level) {
    if (classify_code(grid, level) == CodeClass::BLike) {
      for (int l = 1; l < level; ++l) CHECK(classify_code(grid, l) == CodeClass::BLike);
    }
  }
}

TEST_CASE("ball-grid rule stays in the ball") {
  const auto code = encode_space(Space::l1(3), DenseRule::ball_grid());
  for (int n = 1; n <= 3; ++n) CHECK(code.dense_vector(n) == Vec::Unit(3, n - 1));
  for (int n = 4; n < 60; ++n) CHECK(norm(code.space(), code.dense_vector(n)) <= 1 + 1e-12);
}

TEST_CASE("seminorm axioms on random pairs") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  const std::vector<SeminormCode> codes{
      encode_space(Space::l2(3), DenseRule::basis()),
      encode_space(Space::linf(2), DenseRule::ball_grid()),
      knocerrado_like(3),
  };
  for (const auto& mu : codes) {
    for (int t = 0; t < 40; ++t) {
      const QVec v = random_qvec(rng, 6), w = random_qvec(rng, 6);
      const Rational q(num(rng), den(rng));
      CHECK(mu(v + w) <= mu(v) + mu(w) + 1e-9);
      CHECK(mu(q * v) == doctest::Approx(std::abs(boost::rational_cast<double>(q)) * mu(v)).epsilon(1e-9));
    }
  }
}

TEST_CASE("basis code reproduces l_p norms") {
  std::mt19937_64 rng(9);
  for (double p : {1.0, 2.0, 3.0, Space::kInf}) {
    const auto mu = encode_space(Space::lp(4, p), DenseRule::basis());
    for (int t = 0; t < 20; ++t) {
      const QVec v = random_qvec(rng, 4);
      const auto a = v.dense(4);
      CHECK(mu(v) == doctest::Approx(norm(Space::lp(4, p), Eigen::Map<const Vec>(a.data(), 4))).epsilon(1e-9));
    }
  }
}

TEST_CASE("code distance") {
  const auto& en = canonical_enumeration();
  const auto a = encode_space(Space::l1(2), DenseRule::basis());
  const auto b = encode_space(Space::linf(2), DenseRule::basis());
  CHECK(code_distance(a, a, en, 20) == 0.0);
  // Hand-summed series over the coordinates where the norms differ.
  double expected = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const auto x = en.at(static_cast<std::size_t>(i)).dense(2);
    const double d = std::abs(std::abs(x[0]) + std::abs(x[1]) - std::max(std::abs(x[0]), std::abs(x[1])));
    expected += std::ldexp(1.0, -i) * std::min(1.0, d);
  }
  CHECK(expected > 0);
  CHECK(code_distance(a, b, en, 20) == doctest::Approx(expected));
  CHECK(code_distance(a, b, en, 20) == doctest::Approx(code_distance(b, a, en, 20)));
  // Triangle inequality on a triple.
  const auto c = encode_space(Space::l2(2), DenseRule::basis());
  CHECK(code_distance(a, b, en, 30) <= code_distance(a, c, en, 30) + code_distance(c, b, en, 30) + 1e-12);
}
