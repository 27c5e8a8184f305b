#pragma once

#include <string>
#include <string_view>

#include "bgeom/codification.hpp"

namespace bgeom {

/// "a/b", an integer, or a decimal literal. Throws ParseError.
double parse_number(std::string_view text);

/// Space documents:
///
///   kind: facet            # facet | vertex | lp | sum_inf | sum_1 | quotient
///   dim: 2
///   rows: [[1, 0], [1/2, 1]]
///
/// `p` (a number or `inf`) for lp, `parts` for sums, `parent` and `kernel`
/// for quotients. Throws ParseError on malformed text.
SpaceSpec parse_space_spec(const std::string& text);
SpaceSpec load_space_spec(const std::string& path);

/// linf:n, l1:n, l2:n, lp:p:n, facet:<file> (one functional per line,
/// whitespace separated), or the path of a space document.
Space resolve_space(const std::string& target);

/// Code documents:
///
///   space: l2:2            # a target string or a nested space document
///   dense_rule: custom     # basis | ball-grid | custom
///   vectors: [[1, 0], [0, 1]]
///   tail: zero             # basis | ball-grid | zero
SeminormCode parse_code_spec(const std::string& text);
/// A code document path, or a space target encoded with the basis rule.
SeminormCode resolve_code(const std::string& target);

}  // namespace bgeom
