#include "pgclass/modular.hpp"

#include <algorithm>
#include <random>

#include "pgclass/error.hpp"
#include "pgclass/numtheory.hpp"

namespace pgclass::modq {

u64 pow(u64 a, u64 k, u64 q) {
  u64 r = 1 % q;
  a %= q;
  while (k) {
    if (k & 1) r = r * a % q;
    a = a * a % q;
    k >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 q) {
  if (a % q == 0) throw InconsistencyError("inverse of zero mod q");
  return pow(a, q - 2, q);
}

u64 primitive_root(u64 q) {
  const auto divs = prime_divisors(q - 1);
  for (u64 g = 2; g < q; ++g) {
    bool ok = true;
    for (u64 r : divs)
      if (pow(g, (q - 1) / r, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;  // q = 2
}

u64 prime_congruent_one(u64 e, u64 lower_bound) {
  u64 q = lower_bound + 1;
  q += (e - (q - 1) % e) % e;
  for (;; q += e) {
    if (q >= (u64{1} << 32)) throw InputError("no auxiliary prime below 2^32");
    if (is_prime(q)) return q;
  }
}

namespace {

using Poly = std::vector<u64>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g, g nonzero.
Poly rem(Poly f, const Poly& g, u64 q) {
  trim(f);
  const u64 lead_inv = inv(g.back(), q);
  while (f.size() >= g.size()) {
    const u64 c = mul(f.back(), lead_inv, q);
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = sub(f[shift + i], mul(c, g[i], q), q);
    trim(f);
  }
  return f;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 q) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % q;
  return rem(std::move(r), m, q);
}

Poly powmod(Poly base, u64 k, const Poly& m, u64 q) {
  Poly r{1};
  r = rem(r, m, q);
  base = rem(base, m, q);
  while (k) {
    if (k & 1) r = mulmod(r, base, m, q);
    base = mulmod(base, base, m, q);
    k >>= 1;
  }
  return r;
}

Poly gcd(Poly a, Poly b, u64 q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 c = inv(a.back(), q);
    for (auto& x : a) x = mul(x, c, q);
  }
  return a;
}

Poly monic_quotient(Poly f, const Poly& g, u64 q) {
  // exact division f / g, g monic
  trim(f);
  Poly out(f.size() - g.size() + 1, 0);
  while (f.size() >= g.size()) {
    const u64 c = f.back();
    const std::size_t shift = f.size() - g.size();
    out[shift] = c;
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = sub(f[shift + i], mul(c, g[i], q), q);
    trim(f);
  }
  return out;
}

// f squarefree, monic, product of distinct linear factors.
void split_linear(const Poly& f, u64 q, std::mt19937_64& rng, std::vector<u64>& out) {
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(sub(0, f[0], q));
    return;
  }
  if (q == 2) {
    for (u64 r = 0; r < 2; ++r) {
      u64 v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = add(mul(v, r, q), f[i], q);
      if (v == 0) out.push_back(r);
    }
    return;
  }
  std::uniform_int_distribution<u64> dist(0, q - 1);
  for (;;) {
    Poly h = powmod(Poly{dist(rng), 1}, (q - 1) / 2, f, q);
    if (h.empty()) h = {0};
    h[0] = sub(h[0], 1, q);
    Poly g = gcd(f, h, q);
    if (g.size() > 1 && g.size() < f.size()) {
      split_linear(g, q, rng, out);
      split_linear(monic_quotient(f, g, q), q, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<u64> charpoly(Matrix A, u64 q) {
  const std::size_t n = A.rows;
  // Similarity transform to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && A(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(A(piv, c), A(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(A(r, piv), A(r, j + 1));
    }
    const u64 pinv = inv(A(j + 1, j), q);
    for (std::size_t r = j + 2; r < n; ++r) {
      const u64 u = mul(A(r, j), pinv, q);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) A(r, c) = sub(A(r, c), mul(u, A(j + 1, c), q), q);
      for (std::size_t c = 0; c < n; ++c) A(c, j + 1) = add(A(c, j + 1), mul(u, A(c, r), q), q);
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} (prod h_{j,j-1}) p_{m-i-1}
  std::vector<Poly> P(n + 1);
  P[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Poly cur(m + 1, 0);
    for (std::size_t i = 0; i < P[m - 1].size(); ++i) {
      cur[i + 1] = add(cur[i + 1], P[m - 1][i], q);
      cur[i] = sub(cur[i], mul(A(m - 1, m - 1), P[m - 1][i], q), q);
    }
    u64 t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = mul(t, A(m - i, m - i - 1), q);
      const u64 c = mul(t, A(m - i - 1, m - 1), q);
      if (c == 0) continue;
      for (std::size_t k = 0; k < P[m - i - 1].size(); ++k) cur[k] = sub(cur[k], mul(c, P[m - i - 1][k], q), q);
    }
    P[m] = std::move(cur);
  }
  return P[n];
}

std::vector<u64> roots(const std::vector<u64>& f_in, u64 q) {
  Poly f = f_in;
  trim(f);
  std::vector<u64> out;
  if (f.size() <= 1) return out;
  {
    const u64 c = inv(f.back(), q);
    for (auto& x : f) x = mul(x, c, q);
  }
  // Product of the distinct linear factors: gcd(f, x^q - x).
  Poly xq = powmod(Poly{0, 1}, q, f, q);
  xq.resize(std::max<std::size_t>(xq.size(), 2), 0);
  xq[1] = sub(xq[1], 1, q);
  Poly g = gcd(f, xq, q);
  std::mt19937_64 rng(0x5eed);
  split_linear(g, q, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> rref(Matrix& A, u64 q) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
    std::size_t piv = r;
    while (piv < A.rows && A(piv, c) == 0) ++piv;
    if (piv == A.rows) continue;
    if (piv != r)
      for (std::size_t k = 0; k < A.cols; ++k) std::swap(A(piv, k), A(r, k));
    const u64 s = inv(A(r, c), q);
    for (std::size_t k = 0; k < A.cols; ++k) A(r, k) = mul(A(r, k), s, q);
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == r || A(i, c) == 0) continue;
      const u64 u = A(i, c);
      for (std::size_t k = c; k < A.cols; ++k) A(i, k) = sub(A(i, k), mul(u, A(r, k), q), q);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Matrix nullspace(Matrix A, u64 q) {
  const auto piv = rref(A, q);
  std::vector<bool> is_piv(A.cols, false);
  for (auto c : piv) is_piv[c] = true;
  Matrix N(A.cols - piv.size(), A.cols);
  std::size_t row = 0;
  for (std::size_t f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    N(row, f) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) N(row, piv[i]) = sub(0, A(i, f), q);
    ++row;
  }
  return N;
}

}  // namespace pgclass::modq
