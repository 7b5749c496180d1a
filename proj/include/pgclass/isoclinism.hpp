#pragma once

// Isoclinism invariants and an exhaustive isoclinism test for small groups.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "pgclass/char_table.hpp"

namespace pgclass {

struct IsoclinismFingerprint {
  std::uint64_t order = 0;
  int nilpotency_class = 0;
  std::uint64_t center_order = 0;  // reported only, not an isoclinism invariant
  std::uint64_t derived_order = 0;
  std::uint64_t central_quotient_order = 0;
  std::vector<std::uint64_t> abelianization;
  std::vector<std::uint64_t> derived_invariants;           // empty unless G' is abelian
  std::vector<std::uint64_t> central_quotient_invariants;  // empty unless G/Z is abelian
  std::map<std::uint64_t, std::size_t> cd;
  std::map<std::uint64_t, std::size_t> class_sizes;

  std::set<std::uint64_t> degree_set() const;
  friend bool operator==(const IsoclinismFingerprint&, const IsoclinismFingerprint&) = default;
};

IsoclinismFingerprint fingerprint(const CharacterTable& T);
IsoclinismFingerprint fingerprint(const PcPresentation& P, const TableOptions& opt = {});

/// Compares the fields preserved by isoclinism: class, |G'|, |G/Z|, the
/// structure of G' and G/Z when abelian, and the set of character degrees.
bool same_isoclinism_core(const IsoclinismFingerprint& a, const IsoclinismFingerprint& b);

enum class Tristate { no, yes, unknown };
const char* to_string(Tristate t);

/// Searches for isomorphisms theta: G1/Z1 -> G2/Z2 and phi: G1' -> G2' with
/// phi([x, y]) = [theta x, theta y]. Generator images are assigned by
/// backtracking; every node costs one unit of budget, and unknown is
/// returned once the budget runs out.
Tristate isoclinic_brute(const PcGroup& G1, const PcGroup& G2, std::uint64_t budget = 10'000'000);
Tristate isoclinic_brute(const PcPresentation& P1, const PcPresentation& P2, std::uint64_t budget = 10'000'000);

}  // namespace pgclass
