#include "doctest.h"

#include <cmath>

#include "bgeom/geometry.hpp"

using namespace bgeom;

namespace {

Vec ones(int n, double s = 1.0) { return Vec::Constant(n, s); }

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("ldp on the square fails at the corner") {
  HullOptions opt;
  opt.grid = {ones(2, 0.9), vec({0, 0}), vec({0.5, -0.2})};
  const auto v = ldp_check(Space::linf(2), 2.0, 0.5, opt);
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness.size() == 1);
  CHECK((v.witness[0] - ones(2, 0.9)).norm() < 1e-12);
  // Far midpoints have a coordinate of magnitude <= 0.25, so the hull
  // stops at the segment from (0.25, 1) to (1, 0.25).
  CHECK(v.defect == doctest::Approx(0.275).epsilon(1e-6));
  CHECK(v.exact);
}

TEST_CASE("ldp averages out in high dimension") {
  for (int n : {8, 16}) {
    HullOptions opt;
    opt.grid = {ones(n, 0.9)};
    const auto v = ldp_check(Space::linf(n), 2.0, 0.5, opt);
    CHECK(v.pass);
    CHECK(v.defect <= 0.7 / n + 1e-6);
  }
}

TEST_CASE("ldp is vacuous once every pair qualifies") {
  HullOptions opt;
  opt.grid = {ones(2, 0.9)};
  CHECK(ldp_check(Space::linf(2), 0.1, 0.2, opt).pass);
  opt.grid = {ones(2, 0.7)};
  CHECK(ldp_check(Space::l2(2), 0.1, 0.1, opt).pass);
}

TEST_CASE("dp and dld2p on the square") {
  HullOptions opt;
  opt.grid = {ones(2)};
  opt.z_grid = {vec({0.2, 0.1})};
  const auto dp = dp_check(Space::linf(2), 0.5, opt);
  CHECK_FALSE(dp.pass);
  REQUIRE(dp.witness.size() == 2);
  CHECK((dp.witness[1] - ones(2)).norm() < 1e-12);
  const auto dld = dld2p_check(Space::linf(2), 0.5, opt);
  CHECK_FALSE(dld.pass);
  CHECK(dld.defect == doctest::Approx(dp.defect));

  CHECK(dp_check(Space::linf(2), 2.0, opt).pass);
  CHECK(dld2p_check(Space::linf(2), 2.0, opt).pass);
  CHECK(dld2p_check(Space::l2(2), 2.0).pass);
}

TEST_CASE("dp and dld2p average out in high dimension") {
  // Averaging one deficient coordinate per generator leaves 1.5/n.
  HullOptions opt;
  opt.grid = {ones(64)};
  opt.z_grid = {ones(64, 0.5), Vec::Unit(64, 0) * 0.9};
  const auto dp = dp_check(Space::linf(64), 0.5, opt);
  CHECK(dp.pass);
  CHECK(dp.exact);
  CHECK(dp.defect == doctest::Approx(1.5 / 64).epsilon(1e-6));
  opt.grid = {ones(32)};
  const auto dld = dld2p_check(Space::linf(32), 0.5, opt);
  CHECK(dld.pass);
  CHECK(dld.defect == doctest::Approx(1.5 / 32).epsilon(1e-6));
}

TEST_CASE("dp pass implies dld2p pass on default grids") {
  const std::vector<Space> spaces{Space::linf(2), Space::l1(3), Space::facet({vec({1, 0}), vec({0, 1}), vec({1, 1})}),
                                  Space::linf(4)};
  for (const auto& s : spaces) {
    for (double eps : {0.5, 1.0, 1.5}) {
      CAPTURE(s.describe());
      CAPTURE(eps);
      const auto dp = dp_check(s, eps);
      const auto dld = dld2p_check(s, eps);
      CHECK(dld.defect <= dp.defect + 1e-9);
      if (dp.pass) CHECK(dld.pass);
    }
  }
}

TEST_CASE("dual mode reports slice and Daugavet cross checks") {
  HullOptions opt;
  opt.dual_mode = true;
  opt.budget = 4;
  CHECK(ldp_check(Space::linf(2), 2.0, 0.5, opt).detail.find("min_slice_diameter=") == 0);
  CHECK(dp_check(Space::linf(2), 0.5, opt).detail.find("max_daugavet_defect=") == 0);
}
