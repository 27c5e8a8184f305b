#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bgeom/dual_access.hpp"
#include "bgeom/verdict.hpp"

namespace bgeom {

enum class FormulaId { D2P_Pn, LD2P_P, DLD2P_P, DP_P, SD2P_Pn, DD2P_Pn, LDdP_form };

std::string to_string(FormulaId id);
/// Throws UnsupportedFormula on an unknown name.
FormulaId formula_from_string(std::string_view name);
const std::vector<FormulaId>& all_formulas();
/// Whether the formula quantifies over dual assignments g.
bool uses_g(FormulaId id);

/// Bounds of one evaluation level.
///   eps = 1/m, m <= m_max
///   delta = 1/k (neighborhood formulas) or slice level alpha = 1 - 1/k
///   closeness 1/p, p <= p_max (LDdP only)
/// Universal u range over the first `universe` enumerated vectors (0 means
/// search_depth); existential witnesses are looked up in the first
/// `search_depth` vectors, then refined by LP and rationalized.
struct LevelSpec {
  int m_max = 4;
  int k_max = 4;
  int p_max = 4;
  std::size_t search_depth = 500;
  std::size_t universe = 0;
  /// The diameter in LDdP.
  double delta = 2.0;
  std::vector<DualAssignment> g_tuple;

  std::size_t universe_size() const { return universe ? universe : search_depth; }
};

/// t_mu images of the dual-ball extreme points (both signs) over the first
/// `prefix` enumerated vectors, lengthened until the prefix spans the
/// space; +-e_i^* for smooth balls.
std::vector<DualAssignment> facet_g_tuple(const SeminormCode& code, std::size_t prefix);

/// Evaluates the formula literally: every universal instance in order,
/// with witnesses checked through mu and g on rational vectors. Passes
/// vacuously when some g leaves K_mu. On failure the detail names the
/// first failing instance and the defect is its shortfall.
/// Throws UnsupportedFormula when g_tuple is needed but empty, and
/// std::invalid_argument when the code is not B-like at its dimension or
/// some g is known only on a prefix that does not span the space.
Verdict formula_eval(const SeminormCode& code, FormulaId id, const LevelSpec& level);

/// The same instances decided by the geometry checkers (weak open and
/// slice diameters, far points, cc diameters, hull distances) on the
/// functionals recovered from g.
Verdict formula_mirror(const SeminormCode& code, FormulaId id, const LevelSpec& level);

struct ProfileRow {
  int m_max, k_max, p_max;
  std::size_t search_depth;
  Verdict verdict;
};
struct LevelProfile {
  std::vector<ProfileRow> rows;
  /// First row whose verdict differs from the previous one.
  std::optional<std::size_t> flip;
};

/// Throws std::invalid_argument on an empty or non-monotone schedule.
LevelProfile level_profile(const SeminormCode& code, FormulaId id, const std::vector<LevelSpec>& schedule);

}  // namespace bgeom
