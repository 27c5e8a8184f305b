#include "doctest.h"

#include <cmath>

#include "bgeom/geometry.hpp"

using namespace bgeom;

namespace {

std::vector<Vec> basis(int n, int k) {
  std::vector<Vec> out;
  for (int i = 0; i < k; ++i) out.push_back(Vec::Unit(n, i));
  return out;
}

}  // namespace

TEST_CASE("loh on the l1 plane") {
  const auto s = Space::l1(2);
  OctaGrid g = aligned_octa_grid(s, {basis(2, 1)});
  const auto v = loh_check(s, 0.01, g);
  CHECK(v.pass);
  CHECK(v.defect < 1e-12);
  REQUIRE(v.witness.size() == 1);
  CHECK(std::abs(v.witness[0][0]) < 1e-12);
}

TEST_CASE("oh on l1^4 against l2^4") {
  const auto grid_l1 = aligned_octa_grid(Space::l1(4), {basis(4, 3)});
  const auto v = oh_check(Space::l1(4), 0.01, grid_l1);
  CHECK(v.pass);
  CHECK(v.defect < 1e-12);
  REQUIRE(v.witness.size() == 1);
  CHECK(std::abs(std::abs(v.witness[0][3]) - 1.0) < 1e-12);

  const auto grid_l2 = aligned_octa_grid(Space::l2(4), {basis(4, 3)});
  const auto w = oh_check(Space::l2(4), 0.01, grid_l2);
  CHECK_FALSE(w.pass);
  CHECK(w.defect == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-9));
}

TEST_CASE("l1^n oh defect vanishes below full dimension") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      const auto s = Space::l1(n);
      CHECK(oh_check(s, 1e-6, aligned_octa_grid(s, {basis(n, k)}, 2)).defect < 1e-12);
    }
    const auto s = Space::l1(n);
    CHECK(oh_check(s, 0.5, aligned_octa_grid(s, {basis(n, n)})).defect > 0.25);
  }
}

TEST_CASE("woh direct") {
  const auto s = Space::l1(4);
  const auto g = aligned_octa_grid(s, {basis(4, 2)}, 2);
  const auto v = woh_direct_check(s, 0.01, g);
  CHECK(v.pass);
  CHECK(v.defect < 1e-12);

  const auto e = Space::l2(2);
  const auto ge = aligned_octa_grid(e, {basis(2, 1)}, 1, 64);
  CHECK_FALSE(woh_direct_check(e, 0.01, ge).pass);
  CHECK(woh_direct_check(e, 1.0, ge).pass);
}

TEST_CASE("aligned grids chain oh, woh and loh") {
  const std::vector<Space> spaces{Space::l1(3), Space::l2(3), Space::linf(3),
                                  Space::sum_1({Space::l2(2), Space::linf(1)}),
                                  Space::sum_inf({Space::l1(2), Space::l1(2)})};
  for (const auto& s : spaces) {
    CAPTURE(s.describe());
    const auto g = aligned_octa_grid(s, {basis(s.dim(), 1), basis(s.dim(), 2)}, 2);
    for (double eps : {0.05, 0.2, 0.5, 0.9}) {
      const auto oh = oh_check(s, eps, g);
      const auto woh = woh_direct_check(s, eps, g);
      const auto loh = loh_check(s, eps, g);
      if (oh.pass) CHECK(woh.pass);
      if (woh.pass) CHECK(loh.pass);
    }
  }
}

TEST_CASE("loh scalars mirror the t grid") {
  const auto g = aligned_octa_grid(Space::l1(2), {basis(2, 1)}, 1, 8, {0.5, 2.0});
  const auto ss = g.loh_scalars();
  CHECK(ss.size() == 5);
  CHECK(ss[0] == 0.0);
  CHECK(g.loh_vectors().size() == 2);
  CHECK(g.f_grid.size() == 2);
}
