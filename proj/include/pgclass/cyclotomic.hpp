#pragma once

// Exact elements of Q(zeta_e) in a canonical basis.
//
// Exponents k in [0, e) are reduced prime by prime: for q^s || e, an exponent
// whose residue mod q^s has leading base-q digit q-1 is rewritten through
// sum_{j<q} zeta^{k + j e/q} = 0. The surviving exponents form a basis, so
// two values are equal iff their coefficient lists agree. For a prime power
// e = p^s this is the power basis {1, zeta, ..., zeta^{phi(e)-1}}.

#include <complex>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace pgclass {

/// Rewrites a sparse exponent -> coefficient map in place into canonical form.
/// Coefficients that cancel are removed.
template <class T>
void reduce_to_basis(std::int64_t e, std::map<std::int64_t, T>& coeffs);

/// Distinct primes dividing e with their multiplicities.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t e);

class Cyclotomic {
 public:
  using Term = std::pair<std::int64_t, mpq_class>;

  Cyclotomic() = default;  // zero in Q(zeta_1)
  Cyclotomic(long v) : Cyclotomic(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  explicit Cyclotomic(const mpq_class& r);
  /// zeta_e^k
  static Cyclotomic root_of_unity(std::int64_t e, std::int64_t k);
  /// sum of c * zeta_e^k over the given pairs, any exponents.
  static Cyclotomic from_terms(std::int64_t e, const std::vector<std::pair<std::int64_t, mpq_class>>& terms);

  std::int64_t order() const noexcept { return e_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Same number viewed in Q(zeta_f); f must be a multiple of order().
  Cyclotomic embed(std::int64_t f) const;

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  std::optional<mpq_class> as_rational() const;
  bool equals_rational(const mpq_class& r) const;

  /// Image under zeta -> zeta^k, gcd(k, e) = 1.
  Cyclotomic galois(std::int64_t k) const;
  /// Complex conjugate, zeta -> zeta^{-1}.
  Cyclotomic conjugate() const { return galois(-1); }
  Cyclotomic abs_squared() const { return *this * conjugate(); }

  std::complex<double> approx() const;
  /// "c_0 + c_1*E(e)^1 + ..." with exponents ascending; "0" for zero.
  std::string to_string() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

 private:
  Cyclotomic(std::int64_t e, std::map<std::int64_t, mpq_class>&& coeffs);

  std::int64_t e_ = 1;
  std::vector<Term> terms_;
};

enum class CycOp { add, sub, mul };
Cyclotomic arith(const Cyclotomic& x, const Cyclotomic& y, CycOp op);
inline Cyclotomic conjugate(const Cyclotomic& x) { return x.conjugate(); }
inline Cyclotomic abs_squared(const Cyclotomic& x) { return x.abs_squared(); }
inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline bool equals_rational(const Cyclotomic& x, const mpq_class& q) { return x.equals_rational(q); }

// ------------------------------------------------------------------ inline

template <class T>
void reduce_to_basis(std::int64_t e, std::map<std::int64_t, T>& coeffs) {
  for (auto [q, s] : factor(e)) {
    std::int64_t Q = 1;
    for (int i = 0; i < s; ++i) Q *= q;
    const std::int64_t top = Q / q, step = e / q;
    std::vector<std::int64_t> bad;
    for (const auto& [k, c] : coeffs)
      if ((k % Q) / top == q - 1) bad.push_back(k);
    for (std::int64_t k : bad) {
      auto it = coeffs.find(k);
      T c = it->second;
      coeffs.erase(it);
      for (std::int64_t j = 1; j < q; ++j) coeffs[(k + j * step) % e] -= c;
    }
  }
  for (auto it = coeffs.begin(); it != coeffs.end();)
    it = it->second == 0 ? coeffs.erase(it) : std::next(it);
}

}  // namespace pgclass
