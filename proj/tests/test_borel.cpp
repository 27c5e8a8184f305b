#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "bgeom/borel.hpp"
#include "bgeom/corpus.hpp"
#include "bgeom/errors.hpp"
#include "bgeom/geometry.hpp"

using namespace bgeom;

namespace {

LevelSpec facet_level(const SeminormCode& code, int mk = 4, std::size_t depth = 500) {
  LevelSpec l;
  l.m_max = l.k_max = mk;
  l.search_depth = depth;
  l.g_tuple = facet_g_tuple(code, depth);
  return l;
}

SeminormCode basis_code(const Space& s) { return encode_space(s, DenseRule::basis()); }

}  // namespace

TEST_CASE("formula names round-trip") {
  for (auto id : all_formulas()) CHECK(formula_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(formula_from_string("D3P"), UnsupportedFormula);
  CHECK_FALSE(uses_g(FormulaId::LDdP_form));
}

TEST_CASE("cube neighborhoods cut by every facet functional are small") {
  // U((1,1,1); +-e_i^*; 1) is the box (0,1]^3 of diameter exactly 1, which
  // misses the strict bound 2 - 1/1.
  const auto code = basis_code(Space::linf(3));
  const auto level = facet_level(code);
  REQUIRE(level.g_tuple.size() == 6);
  const auto v = formula_eval(code, FormulaId::D2P_Pn, level);
  CHECK_FALSE(v.pass);
  CHECK(v.detail == "m=1 k=1 u=#120 e1 + e2 + e3");
  CHECK(v.defect == doctest::Approx(0.0).epsilon(1e-9));

  Vec one = Vec::Ones(3);
  std::vector<Functional> fs;
  for (int i = 0; i < 3; ++i) fs.push_back(Functional::coordinate(3, i));
  CHECK(weak_open_diameter(Space::linf(3), {one, fs, 1.0}).value == doctest::Approx(1.0));
}

TEST_CASE("Euclidean plane fails the neighborhood formula") {
  const auto code = basis_code(Space::l2(2));
  auto level = facet_level(code);
  level.universe = 20;
  const auto v = formula_eval(code, FormulaId::D2P_Pn, level);
  CHECK_FALSE(v.pass);
  CHECK(v.witness.size() == 1);
  CHECK(v.defect > 0.0);
}

TEST_CASE("coordinate slices of the cube have diameter two") {
  const auto code = basis_code(Space::linf(3));
  const auto level = facet_level(code);
  CHECK(formula_eval(code, FormulaId::LD2P_P, level).pass);
  CHECK(formula_mirror(code, FormulaId::LD2P_P, level).pass);
  // Far points fail at the vertex e1 of the slice {x_1 > 0}.
  const auto dl = formula_eval(code, FormulaId::DLD2P_P, level);
  CHECK_FALSE(dl.pass);
  CHECK(dl.detail == "g=1 m=1 k=1 u=#2 e1");
}

TEST_CASE("a g outside K_mu makes every formula pass") {
  const auto code = basis_code(Space::l1(2));
  auto values = t_mu(code, Functional::coordinate(2, 0), 500).values();
  values[1] = 0.3;  // g(e1) should be 1
  LevelSpec level;
  level.g_tuple = {DualAssignment(values)};
  for (auto id : all_formulas()) {
    if (!uses_g(id)) continue;
    CAPTURE(to_string(id));
    const auto v = formula_eval(code, id, level);
    CHECK(v.pass);
    CHECK(formula_mirror(code, id, level).pass);
  }
  CHECK(formula_eval(code, FormulaId::D2P_Pn, level).detail.rfind("vacuous", 0) == 0);
}

TEST_CASE("formulas over g need a g tuple") {
  const auto code = basis_code(Space::l1(2));
  CHECK_THROWS_AS(formula_eval(code, FormulaId::D2P_Pn, LevelSpec{}), UnsupportedFormula);
  CHECK_NOTHROW(formula_eval(code, FormulaId::LDdP_form, LevelSpec{}));
  const auto degenerate = encode_space(Space::l1(2), DenseRule::custom_zero_tail({Vec::Unit(2, 0), Vec::Unit(2, 0)}));
  CHECK_THROWS_AS(formula_eval(degenerate, FormulaId::LDdP_form, LevelSpec{}), std::invalid_argument);
}

TEST_CASE("formula and geometry agree on a corpus sample") {
  const auto corpus = facet_corpus(9);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto code = basis_code(corpus[k]);
    const auto level = facet_level(code, 3, 200);
    for (auto id : all_formulas()) {
      CAPTURE(k);
      CAPTURE(to_string(id));
      const auto a = formula_eval(code, id, level);
      const auto b = formula_mirror(code, id, level);
      CHECK(a.pass == b.pass);
      CHECK(a.detail == b.detail);
    }
  }
}

TEST_CASE("smaller bounds never turn a pass into a fail") {
  const auto corpus = facet_corpus(6);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto code = basis_code(corpus[k]);
    const auto big = facet_level(code, 4, 200);
    auto small = big;
    small.m_max = small.k_max = 2;
    for (auto id : all_formulas()) {
      CAPTURE(k);
      CAPTURE(to_string(id));
      if (formula_eval(code, id, big).pass) CHECK(formula_eval(code, id, small).pass);
    }
  }
}

TEST_CASE("deeper witness search never loses a pass") {
  const auto corpus = facet_corpus(6);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto code = basis_code(corpus[k]);
    auto shallow = facet_level(code, 3, 500);
    shallow.universe = 60;
    shallow.search_depth = 60;
    auto deep = shallow;
    deep.search_depth = 500;
    for (auto id : all_formulas()) {
      CAPTURE(k);
      CAPTURE(to_string(id));
      if (formula_eval(code, id, shallow).pass) CHECK(formula_eval(code, id, deep).pass);
    }
  }
}

TEST_CASE("permuting the g tuple keeps the verdict") {
  const auto corpus = facet_corpus(4);
  for (const auto& s : corpus) {
    const auto code = basis_code(s);
    const auto level = facet_level(code, 3, 200);
    auto shuffled = level;
    std::reverse(shuffled.g_tuple.begin(), shuffled.g_tuple.end());
    std::rotate(shuffled.g_tuple.begin(), shuffled.g_tuple.begin() + 1, shuffled.g_tuple.end());
    for (auto id : {FormulaId::D2P_Pn, FormulaId::SD2P_Pn, FormulaId::DD2P_Pn}) {
      CAPTURE(to_string(id));
      CHECK(formula_eval(code, id, level).pass == formula_eval(code, id, shuffled).pass);
    }
  }
}

TEST_CASE("level profiles") {
  const auto code = basis_code(Space::linf(4));
  const auto base = facet_level(code, 1);
  const auto one = level_profile(code, FormulaId::D2P_Pn, {base});
  CHECK(one.rows.size() == 1);
  CHECK_FALSE(one.flip);

  std::vector<LevelSpec> schedule;
  for (int mk = 1; mk <= 4; ++mk) {
    auto l = base;
    l.m_max = l.k_max = mk;
    schedule.push_back(l);
  }
  const auto prof = level_profile(code, FormulaId::D2P_Pn, schedule);
  REQUIRE(prof.rows.size() == 4);
  CHECK(prof.rows[0].verdict.pass);
  CHECK_FALSE(prof.rows[1].verdict.pass);
  CHECK(prof.flip == 1u);

  CHECK_THROWS_AS(level_profile(code, FormulaId::D2P_Pn, {}), std::invalid_argument);
  std::vector<LevelSpec> backwards{schedule[2], schedule[1]};
  CHECK_THROWS_AS(level_profile(code, FormulaId::D2P_Pn, backwards), std::invalid_argument);

}

TEST_CASE("Euclidean plane fails every formula once slices are thin") {
  // At k <= 2 the slices {x_1 > 1/2} still have diameter sqrt(3) > 3/2, so
  // the profile starts at level 3.
  const auto l2 = basis_code(Space::l2(2));
  auto level = facet_level(l2, 3);
  level.universe = 40;
  level.p_max = 10;
  for (auto id : all_formulas()) {
    CAPTURE(to_string(id));
    for (const auto& row : level_profile(l2, id, {level}).rows) CHECK_FALSE(row.verdict.pass);
  }
}
