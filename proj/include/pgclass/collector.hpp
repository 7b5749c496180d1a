#pragma once

// Collection from the left for polycyclic presentations with relative orders p.

#include <string>
#include <vector>

#include "pgclass/presentation.hpp"

namespace pgclass {

struct ConsistencyFailure {
  std::string test;  // e.g. "g2 (g1 g0)" vs "(g2 g1) g0"
  Element left;
  Element right;
};

struct ConsistencyReport {
  bool consistent = true;
  std::vector<ConsistencyFailure> failures;
};

class Collector {
 public:
  explicit Collector(const PcPresentation& P);

  int rank() const noexcept { return n_; }
  int prime() const noexcept { return p_; }

  Element identity() const { return Element::identity(n_); }
  Element generator(int i) const;

  Element collect(const Word& w) const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  /// a^-1 b^-1 a b
  Element commutator(const Element& a, const Element& b) const;
  Element power(const Element& a, long long k) const;

  /// Normal form of g_k^p, of g_j^{g_k} (j > k) and of g_k^-1.
  const std::vector<int>& power_form(int k) const { return power_nf_[k]; }
  const std::vector<int>& conjugate_form(int j, int k) const { return conj_nf_[j][k]; }
  const std::vector<int>& inverse_form(int k) const { return inv_nf_[k]; }

  // In-place operations on raw exponent vectors.
  void mul_gen(std::vector<int>& x, int k) const;
  void mul_elem(std::vector<int>& x, const std::vector<int>& y) const;

 private:
  int n_;
  int p_;
  std::vector<std::vector<int>> power_nf_;
  std::vector<std::vector<std::vector<int>>> conj_nf_;
  std::vector<std::vector<int>> inv_nf_;
};

/// Runs the standard overlap tests. Never throws for a well-formed presentation.
ConsistencyReport check_consistency(const PcPresentation& P);

// Convenience wrappers. Each builds a Collector; reuse one for repeated work.
Element multiply(const Element& a, const Element& b, const PcPresentation& P);
Element inverse(const Element& a, const PcPresentation& P);
Element commutator(const Element& a, const Element& b, const PcPresentation& P);

}  // namespace pgclass
