#pragma once

// Exact irreducible character tables of finite p-groups.
//
// Characters are found block by block over the center: each block collects
// the characters lying over one linear character of Z(G). The block with
// trivial central character is the table of G/Z(G), computed recursively;
// the others come from simultaneous eigenvectors of the class sums acting on
// the block, computed over an auxiliary prime field F_q and lifted to
// Q(zeta_e), e = exp(G).

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "pgclass/cyclotomic.hpp"
#include "pgclass/group_ops.hpp"

namespace pgclass {

struct TableOptions {
  int threads = 1;
};

class CharacterTable {
 public:
  /// Tables larger than this many classes are refused.
  static constexpr std::size_t kMaxClasses = 10000;

  const PcGroup& group() const noexcept { return *G_; }
  const std::shared_ptr<const PcGroup>& group_ptr() const noexcept { return G_; }
  const ConjugacyClassSet& classes() const noexcept { return C_; }
  /// Number of rows, equal to the number of classes.
  std::size_t size() const noexcept { return degrees_.size(); }
  std::uint64_t exponent() const noexcept { return e_; }
  std::uint64_t field_prime() const noexcept { return q_; }

  std::uint64_t degree(std::size_t row) const { return degrees_[row]; }
  const std::vector<std::uint64_t>& degrees() const noexcept { return degrees_; }
  const Cyclotomic& value(std::size_t row, std::size_t cls) const { return values_[id(row, cls)]; }
  std::vector<Cyclotomic> row(std::size_t r) const;

  /// Values are interned; equal ids mean equal values.
  std::int32_t id(std::size_t row, std::size_t cls) const { return entries_[row * size() + cls]; }
  std::size_t distinct_values() const noexcept { return values_.size(); }
  const Cyclotomic& value_of_id(std::int32_t id) const { return values_[id]; }

  bool is_zero(std::size_t row, std::size_t cls) const { return id(row, cls) == 0; }
  /// chi(g) = chi(1)
  bool equals_degree(std::size_t row, std::size_t cls) const;
  /// |chi(g)| = chi(1), decided from the value having the form chi(1) * root of unity.
  bool attains_degree(std::size_t row, std::size_t cls) const;

  /// Degree -> number of rows of that degree.
  std::map<std::uint64_t, std::size_t> degree_multiset() const;

 private:
  friend CharacterTable compute_table(std::shared_ptr<const PcGroup> G, const TableOptions& opt);
  friend struct CharacterTableTestAccess;

  std::shared_ptr<const PcGroup> G_;
  ConjugacyClassSet C_;
  std::uint64_t e_ = 1, q_ = 0;
  std::vector<std::uint64_t> degrees_;
  std::vector<std::int32_t> entries_;
  std::vector<Cyclotomic> values_;
  std::vector<std::int64_t> root_coeff_;  // value = c * zeta^a with c here, 0 if not of that form
};

/// Rows sorted by degree, then by values in class order. Throws InputError
/// when the group has more than kMaxClasses classes and InconsistencyError if
/// any verification fails.
CharacterTable compute_table(std::shared_ptr<const PcGroup> G, const TableOptions& opt = {});
CharacterTable compute_table(const PcPresentation& P, const TableOptions& opt = {});

/// a[(i * k + j) * k + l] = #{(x, y) in K_i x K_j : x y = rep_l}. Throws
/// InputError for more than 256 classes.
std::vector<std::uint32_t> class_constants(const PcGroup& G, const ConjugacyClassSet& C);

/// Union of the classes where chi(g) = chi(1).
Subgroup character_kernel(const CharacterTable& T, std::size_t row);
/// Union of the classes where |chi(g)| = chi(1).
Subgroup character_center(const CharacterTable& T, std::size_t row);

/// Independent exact verification of a computed table.
struct TableCheck {
  bool square = false;           // as many rows as classes
  bool integral = false;         // values are algebraic integers
  bool galois_closed = false;    // rows permuted by Gal(Q(zeta_e)/Q)
  bool sum_of_squares = false;   // sum chi(1)^2 = |G|
  bool degrees_divide = false;   // chi(1)^2 divides |G : Z(G)|
  bool central = false;          // chi(zg) = lambda(z) chi(g) for z in Z(G)
  bool linear = false;           // |G : G'| linear rows, each a homomorphism
  bool rows_orthogonal = false;
  bool columns_orthogonal = false;
  std::string failure;  // first failed condition, empty when ok()

  bool ok() const { return failure.empty(); }
};

/// Evaluates all sums in F_Q for one prime Q = 1 mod e above twice the
/// largest possible absolute value, which is exact once the rows are known to
/// be Galois closed. Row sums between different central characters vanish by
/// the central condition, and sums among linear rows by the homomorphism
/// condition; every other inner product is summed over the sparser support.
TableCheck check_table(const CharacterTable& T);

}  // namespace pgclass
