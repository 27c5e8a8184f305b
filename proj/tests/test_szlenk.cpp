#include "doctest.h"

#include <algorithm>

#include "bgeom/geometry.hpp"

using namespace bgeom;

namespace {

Vec vec(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// Boundary of [-1,1]^2 with the given spacing.
std::vector<Vec> square_boundary(double h) {
  std::vector<Vec> out;
  const int n = static_cast<int>(std::lround(2.0 / h));
  for (int i = 0; i < n; ++i) {
    const double s = -1.0 + i * h;
    out.push_back(vec(s, -1));
    out.push_back(vec(1, s));
    out.push_back(vec(-s, 1));
    out.push_back(vec(-1, -s));
  }
  return out;
}

}  // namespace

TEST_CASE("isolated vertices have an empty derivative") {
  const auto code = encode_space(Space::l1(2), DenseRule::basis());
  const std::vector<Vec> cloud{vec(1, 1), vec(1, -1), vec(-1, 1), vec(-1, -1)};
  CHECK(szlenk_derivative(cloud, 1.0, {2, 0.1}, code).empty());
}

TEST_CASE("dense square keeps every point") {
  const auto code = encode_space(Space::l1(2), DenseRule::basis());
  const auto cloud = square_boundary(0.01);
  CHECK(szlenk_derivative(cloud, 0.05, {2, 0.1}, code).size() == cloud.size());
  // Boxes narrower than the spacing hold one point.
  CHECK(szlenk_derivative(cloud, 0.05, {2, 0.005}, code).empty());
}

TEST_CASE("derivative is a subset, monotone in delta and antitone in eps") {
  const auto code = encode_space(Space::l1(2), DenseRule::basis());
  const auto cloud = square_boundary(0.05);
  std::size_t last = 0;
  for (double delta : {0.02, 0.06, 0.11, 0.3}) {
    const auto d = szlenk_derivative(cloud, 0.2, {2, delta}, code);
    CHECK(d.size() >= last);
    CHECK(std::is_sorted(d.begin(), d.end()));
    CHECK((d.empty() || d.back() < cloud.size()));
    last = d.size();
  }
  last = cloud.size();
  for (double eps : {0.05, 0.2, 0.5, 1.0}) {
    const auto d = szlenk_derivative(cloud, eps, {2, 0.3}, code);
    CHECK(d.size() <= last);
    last = d.size();
  }
}

TEST_CASE("l1^n retained fraction grows with n") {
  double last = -1.0;
  for (int n = 2; n <= 16; ++n) {
    const auto v = woh_szlenk_check(encode_space(Space::l1(n), DenseRule::basis()), {2, 0.1});
    const double fraction = 1.0 - v.defect;
    CHECK(fraction >= last);
    last = fraction;
    if (n >= 3) CHECK(v.pass);
  }
  CHECK(last == doctest::Approx(1.0));
}

TEST_CASE("Euclidean clouds collapse") {
  const auto v = woh_szlenk_check(encode_space(Space::l2(4), DenseRule::basis()), {2, 0.05}, 2000);
  CHECK_FALSE(v.pass);
  CHECK(1.0 - v.defect < 0.05);
  CHECK_FALSE(v.exact);
  const auto w = woh_szlenk_check(encode_space(Space::l1(2), DenseRule::basis()), {2, 0.1});
  CHECK_FALSE(w.pass);
  CHECK(w.defect == doctest::Approx(1.0));
}
