#include "doctest.h"

#include <cmath>

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

TEST_CASE("sd2p identity decomposition for a single unit vector") {
  for (const auto& s : {Space::l2(2), Space::l1(3), Space::facet({vec({1, 0}), vec({0, 1}), vec({1, 1})})}) {
    const Vec x = vec({0.6, -0.8, 0.0}).head(s.dim());
    const Vec u = x / norm(s, x);
    const Vec xs[] = {u};
    const auto v = sd2p_check(s, xs, 1e-6);
    CHECK(v.pass);
    CHECK(v.defect < 1e-9);
  }
}

TEST_CASE("sd2p on the cube splits along a free coordinate") {
  const Vec xs[] = {vec({1, 0, 0}), vec({0, 1, 0})};
  const auto v = sd2p_check(Space::linf(3), xs, 0.2);
  CHECK(v.pass);
  CHECK(v.defect < 1e-9);
  CHECK(v.exact);
  CHECK(v.detail == "m=2");
  const SliceSpec slices[] = {{e(3, 0), 0.2}, {e(3, 1), 0.2}};
  const double half[] = {0.5, 0.5};
  CHECK(cc_slice_diameter(Space::linf(3), slices, half).value == doctest::Approx(2.0));
}

TEST_CASE("sd2p fails in the Euclidean plane") {
  const Vec xs[] = {vec({1, 0}), vec({0, 1})};
  const auto v = sd2p_check(Space::l2(2), xs, 0.1);
  CHECK_FALSE(v.pass);
  CHECK(v.defect > 0.1);
  CHECK_FALSE(v.exact);
}

TEST_CASE("sd2p defect never grows with m_max") {
  const Vec xs[] = {vec({1, 0}), vec({0.3, 0.7})};
  const Space hex = Space::facet({vec({1, 0}), vec({0, 1}), vec({1, 1})});
  double last = 10.0;
  for (int m = 1; m <= 3; ++m) {
    const double d = sd2p_check(hex, xs, 0.1, {m, 4000}).defect;
    CHECK(d <= last + 1e-9);
    last = d;
  }
}

TEST_CASE("dd2p examples") {
  const Dd2pInstance cube{{vec({0, 0, 0}), {e(3, 0)}, 0.5}, vec({0, 1, 1})};
  const auto v = dd2p_check(Space::linf(3), 0.1, {&cube, 1});
  CHECK(v.pass);
  CHECK(v.defect == doctest::Approx(0.0).epsilon(1e-9));
  REQUIRE(v.witness.size() == 2);
  CHECK(norm(Space::linf(3), v.witness[0] - v.witness[1]) == doctest::Approx(2.0));

  const Dd2pInstance cap{{vec({1, 0}), {e(2, 0), e(2, 1)}, 0.1}, vec({1, 0})};
  const auto w = dd2p_check(Space::l2(2), 0.5, {&cap, 1});
  CHECK_FALSE(w.pass);
  CHECK(w.defect > 1.5);
  CHECK(dd2p_check(Space::l2(2), 2.0, {&cap, 1}).pass);
}

TEST_CASE("dd2p default instances") {
  const auto insts = default_dd2p_instances(Space::linf(3), 6, 0.5, 2);
  CHECK(insts.size() == 6);
  CHECK(dd2p_check(Space::linf(3), 0.01, insts).pass);
  // Both l_1 extreme functionals pin U near the vertex.
  CHECK_FALSE(dd2p_check(Space::l1(2), 0.5, default_dd2p_instances(Space::l1(2), 4, 0.1, 2)).pass);
}
