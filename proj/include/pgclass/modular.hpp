#pragma once

// Arithmetic and small dense linear algebra over a prime field F_q, q < 2^32.

#include <cstdint>
#include <vector>

namespace pgclass::modq {

using u64 = std::uint64_t;

inline u64 add(u64 a, u64 b, u64 q) { return (a + b) % q; }
inline u64 sub(u64 a, u64 b, u64 q) { return (a + q - b) % q; }
inline u64 mul(u64 a, u64 b, u64 q) { return a * b % q; }
u64 pow(u64 a, u64 k, u64 q);
/// a must be nonzero mod q.
u64 inv(u64 a, u64 q);
u64 primitive_root(u64 q);

/// Smallest prime q > lower_bound with q = 1 mod e.
u64 prime_congruent_one(u64 e, u64 lower_bound);

/// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<u64> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  u64& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  u64 operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Coefficients, constant term first; the result is monic of degree rows.
std::vector<u64> charpoly(Matrix A, u64 q);

/// Distinct roots in F_q, ascending. Only roots of multiplicity one or more
/// that lie in F_q are returned.
std::vector<u64> roots(const std::vector<u64>& f, u64 q);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(Matrix& A, u64 q);

/// Basis of {x : A x = 0} as the rows of the result.
Matrix nullspace(Matrix A, u64 q);

}  // namespace pgclass::modq
