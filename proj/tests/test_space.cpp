#include "doctest.h"

#include <random>

#include "bgeom/errors.hpp"
#include "bgeom/space.hpp"

using namespace bgeom;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Space hexagon() { return Space::facet({v2(1, 0), v2(0, 1), v2(1, 1)}); }

std::vector<Space> zoo() {
  return {
      Space::linf(3),
      Space::l1(3),
      Space::l2(3),
      Space::lp(2, 3.0),
      hexagon(),
      Space::vertex({v2(1, 0), v2(0, 1), v2(1, 1)}),
      Space::sum_inf({Space::l1(2), Space::l2(1)}),
      Space::sum_1({Space::linf(2), hexagon()}),
      Space::quotient(Space::linf(3), {v3(1, 1, 0)}),
      Space::quotient(Space::l1(3), {v3(1, 0, 1)}),
  };
}

Vec random_vec(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = u(rng);
  return v;
}

}  // namespace

TEST_CASE("construction") {
  CHECK(Space::linf(2).dim() == 2);
  CHECK(norm(hexagon(), v2(1, 1)) == doctest::Approx(2));
  CHECK_THROWS_AS(Space::facet({v2(1, 0)}), DegeneratePresentation);
  CHECK_THROWS_AS(Space::lp(2, 0.5), BadExponent);
  CHECK_THROWS_AS(Space::quotient(Space::l1(2), {v2(1, 0), v2(2, 0)}), DegeneratePresentation);
}

TEST_CASE("norm examples") {
  CHECK(norm(Space::linf(2), v2(1, -2)) == doctest::Approx(2));
  CHECK(norm(Space::l1(3), v3(0.5, -0.5, 1)) == doctest::Approx(2));
  CHECK_THROWS_AS(norm(Space::l1(3), v2(1, 1)), DimensionMismatch);
  // Vertex presentation of the hexagon's dual: gauge of conv{+-(1,0),(0,1),(1,1)}.
  const auto vtx = Space::vertex({v2(1, 0), v2(0, 1), v2(1, 1)});
  CHECK(norm(vtx, v2(1, 1)) == doctest::Approx(1));
  CHECK(norm(vtx, v2(1, -1)) == doctest::Approx(2));
  // l_inf^3 / span(1,1,0): class of (1,-1,0) has norm 1.
  const auto q = Space::quotient(Space::linf(3), {v3(1, 1, 0)});
  CHECK(q.dim() == 2);
  const Vec c = q.complement().transpose() * v3(1, -1, 0);
  CHECK(norm(q, c) == doctest::Approx(1));
  const Vec c2 = q.complement().transpose() * v3(0, 0, 3);
  CHECK(norm(q, c2) == doctest::Approx(3));
}

TEST_CASE("dual norm examples") {
  CHECK(dual_norm(Space::l1(2), Functional(v2(3, -1))) == doctest::Approx(3));
  CHECK(dual_norm(Space::linf(2), Functional(v2(1, 1))) == doctest::Approx(2));
  CHECK(dual_norm(hexagon(), Functional(v2(1, 1))) == doctest::Approx(1));
  CHECK(dual_norm(hexagon(), Functional(v2(1, -1))) == doctest::Approx(2));
}

TEST_CASE("ball vertices") {
  CHECK(ball_vertices(Space::linf(2)).size() == 4);
  CHECK(ball_vertices(Space::l1(2)).size() == 4);
  CHECK_THROWS_AS(ball_vertices(Space::l2(2)), NotPolytopal);
  CHECK(ball_vertices(hexagon()).size() == 6);
  for (const auto& s : zoo()) {
    if (!s.polytopal()) continue;
    for (const auto& v : ball_vertices(s)) CHECK(norm(s, v) == doctest::Approx(1).epsilon(1e-9));
  }
  // Interior generator is dropped.
  CHECK(ball_vertices(Space::vertex({v2(1, 0), v2(0, 1), v2(0.2, 0.2)})).size() == 4);
}

TEST_CASE("linmax examples") {
  const auto a = linmax(Space::linf(2), Functional(v2(1, 0)));
  CHECK(a.value == doctest::Approx(1));
  CHECK(a.argmax[0] == doctest::Approx(1));

  const LinearConstraint half{v2(-1, 0), -0.5};
  const auto b = linmax(Space::l1(2), Functional(v2(1, 1)), std::span(&half, 1));
  CHECK(b.value == doctest::Approx(1));
  CHECK(b.argmax[0] + b.argmax[1] == doctest::Approx(1));
  CHECK(b.argmax[0] >= 0.5 - 1e-9);

  const LinearConstraint far{v2(-1, 0), -2};
  CHECK_THROWS_AS(linmax(Space::linf(2), Functional(v2(1, 0)), std::span(&far, 1)), Infeasible);
}

TEST_CASE("norm axioms and duality on random data") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& s : zoo()) {
    CAPTURE(s.describe());
    CHECK(norm(s, Vec::Zero(s.dim())) == 0.0);
    for (int trial = 0; trial < 12; ++trial) {
      const Vec x = random_vec(rng, s.dim());
      const Vec y = random_vec(rng, s.dim());
      const Functional f(random_vec(rng, s.dim()));
      const double a = u(rng);
      const double nx = norm(s, x);
      CHECK(nx > 0);
      CHECK(norm(s, a * x) == doctest::Approx(std::abs(a) * nx).epsilon(1e-9));
      CHECK(norm(s, x + y) <= nx + norm(s, y) + 1e-9);
      const double fd = dual_norm(s, f);
      CHECK(std::abs(f(x)) <= fd * nx + 1e-9);
      const auto lm = linmax(s, f);
      // Smooth balls go through the inscribed polytope: allow its defect.
      const double slack = lm.exact ? 1e-9 : 1e-3 * fd;
      CHECK(std::abs(lm.value - fd) <= slack * std::max(fd, 1.0));
    }
  }
}

TEST_CASE("polytopal norm equals gauge of the vertex hull") {
  std::mt19937_64 rng(11);
  for (const auto& s : zoo()) {
    if (!s.polytopal()) continue;
    const auto hull = Space::vertex(ball_vertices(s));
    for (int trial = 0; trial < 6; ++trial) {
      const Vec x = random_vec(rng, s.dim());
      CHECK(norm(hull, x) == doctest::Approx(norm(s, x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("norming functionals reproduce the norm") {
  std::mt19937_64 rng(13);
  for (const auto& s : zoo()) {
    const auto ns = norming_functionals(s);
    CAPTURE(s.describe());
    for (int trial = 0; trial < 6; ++trial) {
      const Vec x = random_vec(rng, s.dim());
      double m = 0;
      for (const auto& psi : ns.functionals) m = std::max(m, std::abs(psi.dot(x)));
      const double tol = ns.exact ? 1e-9 : 2e-3;
      CHECK(m == doctest::Approx(norm(s, x)).epsilon(tol));
    }
  }
}
