#pragma once

// Verdicts on a p-group from its character table: central type, GVZ, nested
// GVZ, VZ, Camina pairs, plus the character-free flatness test and the
// closed-form counts of GVZ groups of order p^5 and p^6.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pgclass/char_table.hpp"

namespace pgclass {

/// |Z(chi)|, from the classes where |chi(g)| = chi(1).
std::uint64_t character_center_order(const CharacterTable& T, std::size_t row);

/// chi vanishes off Z(chi). Cross-checked against chi(1)^2 = |G : Z(chi)|;
/// throws InconsistencyError if the two disagree.
bool is_central_type(const CharacterTable& T, std::size_t row);
bool is_gvz(const CharacterTable& T);

/// Every class size equals the order of <[g, x] : x in G>. Uses the normal
/// closure of the commutators with the generators, which is that subgroup.
bool is_flat(const PcGroup& G);
/// Same predicate computed from all commutators [g, x]; for testing.
bool is_flat_exhaustive(const PcGroup& G);

/// Distinct Z(chi) orders ascending, and whether the distinct Z(chi) form a chain.
struct CenterChain {
  std::vector<std::uint64_t> orders;
  bool is_chain = true;
};
CenterChain center_chain(const CharacterTable& T);

/// GVZ and the Z(chi) form a chain under inclusion.
bool is_nested(const CharacterTable& T);

/// Number of pairs of distinct (degree, Z(chi)) combinations with
/// chi(1) <= psi(1) but Z(psi) not contained in Z(chi).
std::size_t monotonicity_violations(const CharacterTable& T);

/// Every nonlinear character vanishes off Z(G). False for abelian groups,
/// with `note` explaining why when given.
bool is_vz(const CharacterTable& T, std::string* note = nullptr);

/// chi(g) = 0 for all g outside N.
bool fully_ramified(const CharacterTable& T, std::size_t row, const Subgroup& N);

/// For g outside N the coset gN lies in the class of g. Cross-checked against
/// the vanishing of every chi with N not in ker(chi) off N. Throws InputError
/// unless N is normal with 1 < N < G.
bool is_camina_pair(const CharacterTable& T, const Subgroup& N);
/// Every nonlinear character vanishes off N. Throws InputError if N is not normal.
bool is_gen_camina_pair(const CharacterTable& T, const Subgroup& N);

/// Rows with chi(1)^2 |Z(G)| = |G| that are not of central type or have Z(chi) != Z(G).
std::vector<std::size_t> check_special_degree(const CharacterTable& T);

/// Rows of the table of G/N whose central type verdict differs from that of
/// the inflated character of G. Throws InputError if N is not normal and
/// InconsistencyError if an inflated row is missing from T.
std::vector<std::size_t> check_lift_equivalence(const CharacterTable& T, const Subgroup& N,
                                                const TableOptions& opt = {});

enum class BoundStatus { holds, fails, inapplicable };
const char* to_string(BoundStatus s);
/// For GVZ groups the nilpotency class is at most |cd(G)|; inapplicable otherwise.
BoundStatus check_nil_le_cd(const CharacterTable& T);

/// p^(twice_exponent / 2).
struct HalfPower {
  int prime = 0;
  int twice_exponent = 0;
  bool integral() const { return twice_exponent % 2 == 0; }
};
/// |G/Z(G)|^(1/2) |Z(G)|. Throws InputError unless G is GVZ with cyclic center.
HalfPower gvz_min_perm_degree(const CharacterTable& T);

struct CountingResult {
  int p = 0;
  int order_exponent = 0;
  mpq_class gvz_count;
  mpq_class nested_count;
};
/// Numbers of GVZ and nested GVZ groups of order p^5 (odd p) or p^6 (p >= 5).
/// Throws InputError otherwise.
CountingResult counting_formulas(int p, int order_exponent);

struct CharacterSummary {
  std::uint64_t degree = 0;
  std::uint64_t center_order = 0;
  bool central_type = false;
};

struct ClassificationReport {
  std::string label;
  int prime = 0;
  std::uint64_t order = 0;
  int nilpotency_class = 0;
  std::map<std::uint64_t, std::size_t> cd;
  bool is_gvz = false;
  bool is_flat = false;
  bool is_nested = false;
  bool is_vz = false;
  std::string vz_note;
  bool camina_pair_with_center = false;
  bool gen_camina_pair_with_center = false;
  CenterChain center_chain;
  std::vector<CharacterSummary> per_character;
};

/// Throws InconsistencyError when the flat and GVZ verdicts differ or the
/// implications VZ => nested => GVZ fail.
ClassificationReport classification_report(const CharacterTable& T);
ClassificationReport classification_report(const PcPresentation& P, const TableOptions& opt = {});

}  // namespace pgclass
