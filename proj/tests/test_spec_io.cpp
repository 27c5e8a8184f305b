#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "bgeom/errors.hpp"
#include "bgeom/spec_io.hpp"

using namespace bgeom;

TEST_CASE("numbers") {
  CHECK(parse_number("1/3") == doctest::Approx(1.0 / 3.0));
  CHECK(parse_number("-2/4") == -0.5);
  CHECK(parse_number("7") == 7.0);
  CHECK(parse_number("0.25") == 0.25);
  CHECK(std::isinf(parse_number("inf")));
  CHECK_THROWS_AS(parse_number("1/0"), ParseError);
  CHECK_THROWS_AS(parse_number("x"), ParseError);
  CHECK_THROWS_AS(parse_number("1/2/3"), ParseError);
}

TEST_CASE("facet document") {
  const auto spec = parse_space_spec("kind: facet\ndim: 2\nrows: [[1, 0], [1/2, 1]]\n");
  const auto s = construct_space(spec);
  CHECK(s.dim() == 2);
  CHECK(norm(s, Vec::Unit(2, 1)) == 1.0);
  CHECK(norm(s, Vec::Unit(2, 0)) == 1.0);
  Vec x(2);
  x << 1.0, 1.0;
  CHECK(norm(s, x) == 1.5);
}

TEST_CASE("nested documents") {
  const char* text = R"(
kind: sum_1
parts:
  - {kind: lp, dim: 2, p: inf}
  - kind: quotient
    parent: {kind: lp, dim: 2, p: 2}
    kernel: [[1, 1]]
)";
  const auto s = construct_space(parse_space_spec(text));
  CHECK(s.dim() == 3);
  CHECK(s.kind() == Space::Kind::Sum1);
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_space_spec("kind: facet\nrows: [[1, a]]\n"), ParseError);
  CHECK_THROWS_AS(parse_space_spec("kind: blob\n"), ParseError);
  CHECK_THROWS_AS(parse_space_spec("kind: lp\np: 2\n"), ParseError);
  CHECK_THROWS_AS(parse_space_spec("[1, 2"), ParseError);
  CHECK_THROWS_AS(parse_space_spec("- 1\n"), ParseError);
  CHECK_THROWS_AS(resolve_space("missing.txt"), ParseError);
  CHECK_THROWS_AS(resolve_space("linf:0"), ParseError);
  CHECK_THROWS_AS(construct_space(parse_space_spec("kind: facet\ndim: 3\nrows: [[1, 0], [0, 1]]\n")),
                  DimensionMismatch);
}

TEST_CASE("builtin targets") {
  CHECK(resolve_space("linf:3").dim() == 3);
  CHECK(resolve_space("lp:3:2").p() == 3.0);
  CHECK(norm(resolve_space("l1:2"), Vec::Ones(2)) == 2.0);

  const std::string path = "spec_io_facets.txt";
  {
    std::ofstream out(path);
    out << "# the hexagon\n1 0\n0 1\n1/2 -1/2\n";
  }
  const auto hex = resolve_space("facet:" + path);
  CHECK(hex.rows().size() == 3);
  std::remove(path.c_str());
}

TEST_CASE("code documents") {
  const auto code = parse_code_spec("space: l2:2\ndense_rule: custom\nvectors: [[1, 0], [0, 0]]\ntail: zero\n");
  CHECK(code(QVec::unit(1)) == 1.0);
  CHECK(code(QVec::unit(2)) == 0.0);
  CHECK(code(QVec::unit(5)) == 0.0);

  const auto nested = parse_code_spec("space: {kind: lp, dim: 2, p: 1}\ndense_rule: basis\n");
  CHECK(nested(QVec::unit(1) + QVec::unit(2)) == 2.0);

  CHECK_THROWS_AS(parse_code_spec("dense_rule: basis\n"), ParseError);
  CHECK_THROWS_AS(parse_code_spec("space: l2:2\ndense_rule: fancy\n"), ParseError);
  CHECK(resolve_code("linf:2")(QVec::unit(1) - QVec::unit(2)) == 1.0);
}
