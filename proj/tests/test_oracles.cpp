#include "doctest.h"

#include <cmath>

#include "bgeom/corpus.hpp"
#include "bgeom/errors.hpp"
#include "bgeom/oracles.hpp"

using namespace bgeom;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Functional e(int dim, int i) { return Functional::coordinate(dim, i); }

Functional normalized_row(const Space& s, std::size_t k) {
  const Functional f(s.rows()[k]);
  return Functional(s.rows()[k] / dual_norm(s, f));
}

}  // namespace

TEST_CASE("sampled diameters of full ball and slice") {
  const auto full = sample_diameter(Space::linf(2), [](const Vec&) { return true; }, 10000);
  CHECK(full.estimate >= 1.99);
  CHECK(full.estimate <= 2.0 + 1e-12);

  const auto cap = sample_diameter(Space::l2(2), slice_predicate({e(2, 0), 0.5}), 100000);
  CHECK(cap.estimate >= std::sqrt(3.0) - 0.02);
  CHECK(cap.estimate <= std::sqrt(3.0) + 1e-12);
  CHECK(cap.samples > 0);
}

TEST_CASE("empty region is too thin") {
  CHECK_THROWS_AS(sample_diameter(Space::l1(3), [](const Vec& x) { return x[0] > 2.0; }, 1000), RegionTooThin);
}

TEST_CASE("sampling is deterministic") {
  const auto pred = slice_predicate({e(3, 1), 0.3});
  const auto a = sample_diameter(Space::l1(3), pred, 5000);
  const auto b = sample_diameter(Space::l1(3), pred, 5000);
  CHECK(a.estimate == b.estimate);
  CHECK(a.half_width == b.half_width);
}

TEST_CASE("rank-one oracle") {
  CHECK(rank1_norm_oracle(Space::linf(2), e(2, 0), vec({0, 1})) == doctest::Approx(2.0));
  CHECK(rank1_norm_oracle(Space::l1(2), e(2, 0), vec({1, 0})) == doctest::Approx(2.0));
  for (const auto& s : {Space::l1(3), Space::l2(3), Space::linf(2)}) {
    CHECK(rank1_norm_oracle(s, Functional(Vec::Zero(s.dim())), Vec::Ones(s.dim())) == 1.0);
  }
  CHECK_THROWS_AS(rank1_norm_oracle(Space::l2(2), e(2, 0), vec({0, 1}), true), NotPolytopal);
  const auto& corpus = facet_corpus(6);
  for (const auto& s : corpus) {
    const Functional f = normalized_row(s, 0);
    const Vec y = ball_vertices(s).back();
    CHECK(std::abs(rank1_operator_norm(s, f, y).value - rank1_norm_oracle(s, f, y)) < 1e-7);
  }
}

TEST_CASE("crossvalidation accepts self and rejects corruption") {
  const SliceSpec s{e(2, 0), 0.25};
  const auto exact = slice_diameter(Space::l1(2), s);
  const auto oracle = sample_diameter(Space::l1(2), slice_predicate(s), 20000);
  CHECK(crossvalidate(exact, oracle, 0.02));
  CHECK_FALSE(crossvalidate(exact.value + 0.5, oracle, 0.02));
}

TEST_CASE("oracles never overshoot the exact diameters on the corpus") {
  const auto corpus = facet_corpus();
  REQUIRE(corpus.size() == 50);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    CAPTURE(k);
    const Space& s = corpus[k];
    const SliceSpec a{normalized_row(s, 0), 0.3}, b{normalized_row(s, 1), 0.3};
    CHECK(sample_diameter(s, slice_predicate(a), 4000).estimate <= slice_diameter(s, a).value + 1e-9);
    const WeakOpenSpec u{0.5 * ball_vertices(s)[0], {a.f, b.f}, 0.3};
    CHECK(sample_diameter(s, weak_open_predicate(u), 4000).estimate <= weak_open_diameter(s, u).value + 1e-9);
    const SliceSpec two[] = {a, b};
    const double w[] = {0.5, 0.5};
    CHECK(sample_cc_diameter(s, two, w, 4000).estimate <= cc_slice_diameter(s, two, w).value + 1e-9);
  }
}

TEST_CASE("hull oracles bound the exact distances from above") {
  const Vec z = vec({0.9, 0.9});
  const auto exact = ldp_hull_distance(Space::linf(2), z, 2.0, 0.5);
  const auto oracle = ldp_hull_oracle(Space::linf(2), z, 2.0, 0.5, 200);
  CHECK(oracle.estimate >= exact.value - 1e-7);
  CHECK(oracle.estimate > 0.2);

  const Vec x = vec({1, 1});
  const auto dp = dp_hull_distance(Space::linf(2), x, x, 0.5);
  CHECK(dp_hull_oracle(Space::linf(2), x, x, 0.5, 200).estimate >= dp.value - 1e-7);
}
