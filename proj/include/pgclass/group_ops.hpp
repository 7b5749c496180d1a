#pragma once

// Enumerated finite p-groups: elements are indices into the lexicographic
// list of normal forms, so products are table lookups.

#include <cstdint>
#include <memory>
#include <vector>

#include "pgclass/collector.hpp"
#include "pgclass/presentation.hpp"

namespace pgclass {

using Elt = std::uint32_t;

class Subgroup;

class PcGroup {
 public:
  /// Largest supported group order.
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 23;

  /// Throws InputError for an inconsistent or too large presentation.
  explicit PcGroup(PcPresentation P, bool check = true);

  const PcPresentation& presentation() const noexcept { return P_; }
  const Collector& collector() const noexcept { return C_; }
  int prime() const noexcept { return p_; }
  int rank() const noexcept { return n_; }
  std::uint32_t order() const noexcept { return size_; }

  Elt index(const Element& e) const;
  Element element(Elt x) const;
  int digit(Elt x, int i) const { return static_cast<int>((x / place_[i]) % p_); }
  Elt place(int i) const { return place_[i]; }
  Elt generator(int i) const { return place_[i]; }

  Elt mul_gen(Elt x, int k) const { return right_[k][x]; }
  Elt mul_gen_inv(Elt x, int k) const { return right_inv_[k][x]; }
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const { return inverse_[a]; }
  /// g^-1 x g
  Elt conj(Elt x, Elt g) const { return mul(mul(inverse_[g], x), g); }
  Elt conj_gen(Elt x, int k) const { return mul_gen(mul(inverse_gen_[k], x), k); }
  Elt comm(Elt a, Elt b) const { return mul(mul(inverse_[a], inverse_[b]), mul(a, b)); }
  Elt pow(Elt a, long long k) const;
  /// Order of a (a power of p).
  std::uint32_t element_order(Elt a) const;

  /// First nonzero exponent position, rank() for the identity.
  int depth(Elt x) const;
  int leading_exponent(Elt x) const { return x == 0 ? 0 : digit(x, depth(x)); }

 private:
  PcPresentation P_;
  Collector C_;
  int p_;
  int n_;
  std::uint32_t size_;
  std::vector<Elt> place_;
  std::vector<std::vector<Elt>> right_;
  std::vector<std::vector<Elt>> right_inv_;
  std::vector<Elt> inverse_;
  std::vector<Elt> inverse_gen_;
};

/// A subgroup stored as its sorted element list plus a membership bitmap.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::uint32_t ambient_order, std::vector<Elt> elements, std::vector<Elt> generators);

  std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(elements_.size()); }
  const std::vector<Elt>& elements() const noexcept { return elements_; }
  const std::vector<Elt>& generators() const noexcept { return generators_; }
  bool contains(Elt x) const { return member_[x]; }
  bool is_subset_of(const Subgroup& other) const;
  bool is_trivial() const { return elements_.size() == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<Elt> elements_;
  std::vector<Elt> generators_;
  std::vector<bool> member_;
};

struct ConjugacyClassSet {
  std::vector<Elt> reps;             // smallest element of each class, ascending
  std::vector<std::uint32_t> sizes;
  std::vector<std::uint32_t> class_of;  // element -> class index
  std::vector<std::uint32_t> offsets;   // members of class c: members[offsets[c]..offsets[c+1])
  std::vector<Elt> members;

  std::size_t count() const { return reps.size(); }
  std::uint32_t size(std::size_t c) const { return sizes[c]; }
  const Elt* begin(std::size_t c) const { return members.data() + offsets[c]; }
  const Elt* end(std::size_t c) const { return members.data() + offsets[c + 1]; }
};

struct QuotientGroup {
  PcPresentation presentation;
  std::vector<Elt> projection;  // ambient element -> quotient element
};

Subgroup subgroup_generated(const PcGroup& G, const std::vector<Elt>& gens);
/// Throws InconsistencyError when the elements do not form a subgroup.
Subgroup subgroup_from_elements(const PcGroup& G, const std::vector<Elt>& elements);
Subgroup trivial_subgroup(const PcGroup& G);
Subgroup whole_group(const PcGroup& G);
/// Smallest normal subgroup containing gens.
Subgroup normal_closure(const PcGroup& G, const std::vector<Elt>& gens);
/// Order of the normal closure, or 0 once it exceeds limit.
std::uint32_t normal_closure_order(const PcGroup& G, const std::vector<Elt>& gens, std::size_t limit);
bool is_normal(const PcGroup& G, const Subgroup& H);
bool is_subgroup(const PcGroup& G, const std::vector<Elt>& sorted_elements);
/// Product HK of two normal subgroups.
Subgroup product(const PcGroup& G, const Subgroup& H, const Subgroup& K);
Subgroup intersection(const PcGroup& G, const Subgroup& H, const Subgroup& K);

Subgroup center(const PcGroup& G);
Subgroup derived_subgroup(const PcGroup& G);
Subgroup centralizer(const PcGroup& G, Elt g);
/// [N, G] for a normal subgroup N.
Subgroup commutator_with_group(const PcGroup& G, const Subgroup& N);
/// G = gamma_1 > gamma_2 > ... > trivial.
std::vector<Subgroup> lower_central_series(const PcGroup& G);
int nilpotency_class(const PcGroup& G);
ConjugacyClassSet conjugacy_classes(const PcGroup& G);
bool is_abelian(const PcGroup& G);
bool is_abelian(const PcGroup& G, const Subgroup& H);
/// Invariant factors as prime powers, ascending. Throws InputError if H is not abelian.
std::vector<std::uint64_t> abelian_invariants(const PcGroup& G, const Subgroup& H);
std::uint64_t exponent(const PcGroup& G);

/// One element per depth, leading exponent 1; every element of H is uniquely
/// a product of powers of these in ascending depth order.
struct InducedPcgs {
  std::vector<int> depths;
  std::vector<Elt> elements;
};
InducedPcgs induced_pcgs(const PcGroup& G, const Subgroup& H);

/// Throws InputError when N is not a normal subgroup.
QuotientGroup quotient(const PcGroup& G, const Subgroup& N);

}  // namespace pgclass
