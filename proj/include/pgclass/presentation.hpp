#pragma once

// Polycyclic presentations of finite p-groups.
//
// Generators are numbered 0..n-1 in declaration order. Every relative order
// is p. A power relation reads g_i^p = w with w a word in g_{i+1},...; a
// commutator relation reads [g_j, g_i] = w for j > i with w a word in
// g_{j+1},... . Relations that are not stated are trivial.

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pgclass {

struct Letter {
  int gen = 0;
  int exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in the generators. Exponents are arbitrary integers.
using Word = std::vector<Letter>;

Word inverse_word(const Word& w);

/// Normal form g_0^{e_0} ... g_{n-1}^{e_{n-1}} with every e_i in [0, p).
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<int> exps) : exps_(std::move(exps)) {}
  static Element identity(int n) { return Element(std::vector<int>(n, 0)); }

  int size() const noexcept { return static_cast<int>(exps_.size()); }
  int operator[](int i) const { return exps_[i]; }
  int& operator[](int i) { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  bool is_identity() const;

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::vector<int> exps_;
};

std::string to_string(const Element& e);

class PcPresentation {
 public:
  using CommKey = std::pair<int, int>;  // (j, i) with j > i

  PcPresentation() = default;
  /// Throws InputError for a non-prime p or duplicate generator names.
  PcPresentation(std::string name, int p, std::vector<std::string> generator_names);

  const std::string& name() const noexcept { return name_; }
  int prime() const noexcept { return p_; }
  int rank() const noexcept { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generator_names() const noexcept { return names_; }
  int generator_index(std::string_view name) const;  // -1 if unknown

  /// Right side of g_i^p. Empty word means trivial.
  const Word& power(int i) const { return powers_.at(i); }
  /// Right side of [g_j, g_i], j > i. Empty word means trivial.
  const Word& commutator(int j, int i) const;
  const std::map<CommKey, Word>& commutators() const noexcept { return comms_; }

  bool has_power(int i) const { return power_set_.at(i); }
  bool has_commutator(int j, int i) const { return comms_.contains({j, i}); }

  /// Relation setters validate the index-increasing shape. Throws InputError.
  void set_power(int i, Word w);
  void set_commutator(int j, int i, Word w);
  void set_name(std::string name) { name_ = std::move(name); }

  /// Number of nontrivial commutator relations.
  int nontrivial_commutator_count() const;
  int nontrivial_power_count() const;

  /// Equal names, prime, generators and nontrivial relations.
  friend bool operator==(const PcPresentation& a, const PcPresentation& b);

 private:
  static Word simplify(Word w);

  std::string name_;
  int p_ = 2;
  std::vector<std::string> names_;
  std::vector<Word> powers_;
  std::vector<bool> power_set_;
  std::map<CommKey, Word> comms_;
};

/// Parses the line-oriented presentation format. Throws ParseError.
///
///   group <name> prime <p>
///   gens <id_1> ... <id_n>
///   pow <id>^p = <word>
///   comm [<id_j>,<id_i>] = <word>
///
/// '#' starts a comment, ';' separates statements like a newline, a word is a
/// juxtaposition of "<id>" or "<id>^<int>" terms and "1" is the empty word.
PcPresentation parse_presentation(std::string_view text);

/// Reads and parses a file. Throws InputError when unreadable.
PcPresentation load_presentation(const std::string& path);

/// Writes P in the format accepted by parse_presentation.
std::string format_presentation(const PcPresentation& P);

std::string format_word(const PcPresentation& P, const Word& w);

}  // namespace pgclass
