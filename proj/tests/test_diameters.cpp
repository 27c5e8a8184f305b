#include "doctest.h"

#include <cmath>

#include "bgeom/errors.hpp"
#include "bgeom/geometry.hpp"

using namespace bgeom;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Functional e(int dim, int i) { return Functional::coordinate(dim, i); }

}  // namespace

TEST_CASE("slice diameters on the classical planes") {
  CHECK(slice_diameter(Space::linf(2), {e(2, 0), 0.5}).value == doctest::Approx(2.0).epsilon(1e-12));
  const auto l2 = slice_diameter(Space::l2(2), {e(2, 0), 0.5});
  CHECK(std::abs(l2.value - std::sqrt(3.0)) < 1e-3);
  CHECK_FALSE(l2.exact);
  const auto l1 = slice_diameter(Space::l1(2), {e(2, 0), 0.25});
  CHECK(std::abs(l1.value - 0.5) < 1e-9);
  CHECK(l1.exact);
}

TEST_CASE("chord formula across alpha") {
  for (double a : {0.05, 0.2, 0.5, 0.8, 1.0}) {
    const double chord = 2.0 * std::sqrt(2.0 * a - a * a);
    CHECK(std::abs(slice_diameter(Space::l2(2), {e(2, 1), a}).value - chord) < 1e-3);
  }
}

TEST_CASE("slice preconditions") {
  CHECK_THROWS_AS(slice_diameter(Space::l1(2), {e(2, 0), 0.0}), EmptySlice);
  CHECK_THROWS_AS(slice_diameter(Space::l1(2), {Functional(vec({2, 0})), 0.5}), NotInDualBall);
  CHECK_THROWS_AS(slice_diameter(Space::l1(3), {e(2, 0), 0.5}), DimensionMismatch);
}

TEST_CASE("slice diameter is monotone in alpha and symmetric") {
  const Space hex = Space::facet({vec({1, 0}), vec({0, 1}), vec({1, 1})});
  const Functional f(vec({1, 0}));
  double last = 0.0;
  for (double a : {0.1, 0.3, 0.6, 1.0, 1.5}) {
    const double d = slice_diameter(hex, {f, a}).value;
    CHECK(d >= last - 1e-12);
    CHECK(d == doctest::Approx(slice_diameter(hex, {Functional(-f.coords), a}).value).epsilon(1e-9));
    last = d;
  }
}

TEST_CASE("weak open diameters") {
  WeakOpenSpec u{vec({0, 0, 0}), {e(3, 0)}, 0.5};
  CHECK(weak_open_diameter(Space::linf(3), u).value == doctest::Approx(2.0));
  WeakOpenSpec cap{vec({1, 0}), {e(2, 0), e(2, 1)}, 0.1};
  CHECK(weak_open_diameter(Space::l2(2), cap).value < 0.5);
  WeakOpenSpec far{vec({2, 0}), {e(2, 0)}, 0.5};
  CHECK_THROWS_AS(weak_open_diameter(Space::l2(2), far), EmptyRegion);
  // Touching the ball only at its boundary is still empty for an open U.
  WeakOpenSpec touch{vec({1.5, 0}), {e(2, 0)}, 0.5};
  CHECK_THROWS_AS(weak_open_diameter(Space::linf(2), touch), EmptyRegion);
}

TEST_CASE("convex combinations of slices") {
  const SliceSpec one{e(2, 0), 0.5};
  const double w1[] = {1.0};
  CHECK(cc_slice_diameter(Space::linf(2), {&one, 1}, w1).value ==
        doctest::Approx(slice_diameter(Space::linf(2), one).value).epsilon(1e-12));

  const SliceSpec two3[] = {{e(3, 0), 0.5}, {e(3, 1), 0.5}};
  const double half[] = {0.5, 0.5};
  CHECK(cc_slice_diameter(Space::linf(3), two3, half).value == doctest::Approx(2.0));

  const SliceSpec caps[] = {{e(2, 0), 0.1}, {e(2, 1), 0.1}};
  const double v = cc_slice_diameter(Space::l2(2), caps, half).value;
  CHECK(std::abs(v - 0.62) < 0.02);

  const double bad[] = {0.5, 0.6};
  CHECK_THROWS(cc_slice_diameter(Space::l2(2), caps, bad));
}

TEST_CASE("rank one Daugavet defects") {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(daugavet_defect_rank1(Space::l2(2), e(2, 0), vec({0, 1})).value - (2.0 - phi)) < 1e-6);
  CHECK(std::abs(daugavet_defect_rank1(Space::l2(2), e(2, 0), vec({1, 0})).value) < 1e-9);
  CHECK(std::abs(daugavet_defect_rank1(Space::linf(2), e(2, 0), vec({0, 1})).value) < 1e-9);
  const Space hex = Space::facet({vec({1, 0}), vec({0, 1}), vec({1, 1})});
  for (const auto& f : {vec({1, 0}), vec({0.3, -0.7}), vec({1, 1})}) {
    for (const auto& y : {vec({0, 1}), vec({-0.4, 0.9})}) {
      CHECK(daugavet_defect_rank1(hex, Functional(f), y).value >= -1e-9);
      CHECK(daugavet_defect_rank1(Space::l1(2), Functional(f), y).value >= -1e-9);
    }
  }
}

TEST_CASE("hull membership") {
  const std::vector<Vec> gens{vec({1, 0}), vec({0, 1}), vec({-1, -1})};
  auto r = hull_membership(Space::l2(2), gens[1], gens, 1e-9);
  CHECK(r.member);
  CHECK(r.distance < 1e-9);
  r = hull_membership(Space::l1(2), vec({0.5, 0.5}), gens, 1e-9);
  CHECK(r.member);
  // Far-apart pairs in the square all have a midpoint coordinate below 0.25.
  std::vector<Vec> mids;
  for (double a = -1; a <= 1.0001; a += 0.25)
    for (double b = -1; b <= 1.0001; b += 0.25)
      for (double c = -1; c <= 1.0001; c += 0.25)
        for (double d = -1; d <= 1.0001; d += 0.25)
          if (std::max(std::abs(a - c), std::abs(b - d)) > 1.5) mids.push_back(vec({(a + c) / 2, (b + d) / 2}));
  r = hull_membership(Space::linf(2), vec({0.9, 0.9}), mids, 1e-9);
  CHECK_FALSE(r.member);
  CHECK(r.distance > 0.2);
}
