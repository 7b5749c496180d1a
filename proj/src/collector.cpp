#include "pgclass/collector.hpp"

#include "pgclass/error.hpp"

namespace pgclass {

Collector::Collector(const PcPresentation& P)
    : n_(P.rank()),
      p_(P.prime()),
      power_nf_(n_, std::vector<int>(n_, 0)),
      conj_nf_(n_, std::vector<std::vector<int>>(n_)),
      inv_nf_(n_, std::vector<int>(n_, 0)) {
  // Everything collected for index k only involves generators above k, so
  // filling the tables from the bottom up keeps each step well defined.
  for (int k = n_ - 1; k >= 0; --k) {
    power_nf_[k] = collect(P.power(k)).exponents();
    for (int j = k + 1; j < n_; ++j) {
      Word w{{j, 1}};
      const Word& c = P.commutator(j, k);
      w.insert(w.end(), c.begin(), c.end());
      conj_nf_[j][k] = collect(w).exponents();
    }
    // g_k^-1 = g_k^{p-1} (g_k^p)^-1, and g_k^p lives strictly above k.
    std::vector<int> x(n_, 0);
    for (int e = 0; e < p_ - 1; ++e) mul_gen(x, k);
    std::vector<int> pinv = inverse(Element(power_nf_[k])).exponents();
    mul_elem(x, pinv);
    inv_nf_[k] = std::move(x);
  }
}

Element Collector::generator(int i) const {
  Element e = identity();
  e[i] = 1;
  return e;
}

void Collector::mul_gen(std::vector<int>& x, int k) const {
  // x = head * tail with tail supported above k; x g_k = head g_k tail^{g_k}.
  bool tail_nonzero = false;
  for (int j = k + 1; j < n_; ++j)
    if (x[j]) {
      tail_nonzero = true;
      break;
    }
  if (!tail_nonzero) {
    if (++x[k] == p_) {
      x[k] = 0;
      for (int j = k + 1; j < n_; ++j) x[j] = power_nf_[k][j];
    }
    return;
  }
  std::vector<int> tail(x.begin() + k + 1, x.end());
  std::fill(x.begin() + k + 1, x.end(), 0);
  if (++x[k] == p_) {
    x[k] = 0;
    for (int j = k + 1; j < n_; ++j) x[j] = power_nf_[k][j];
  }
  for (int j = k + 1; j < n_; ++j)
    for (int t = tail[j - k - 1]; t > 0; --t) mul_elem(x, conj_nf_[j][k]);
}

void Collector::mul_elem(std::vector<int>& x, const std::vector<int>& y) const {
  for (int m = 0; m < n_; ++m)
    for (int t = y[m]; t > 0; --t) mul_gen(x, m);
}

Element Collector::collect(const Word& w) const {
  std::vector<int> x(n_, 0);
  for (const auto& l : w) {
    if (l.gen < 0 || l.gen >= n_) throw InputError("word letter out of range");
    if (l.exp >= 0) {
      for (int t = 0; t < l.exp; ++t) mul_gen(x, l.gen);
    } else {
      for (int t = 0; t < -l.exp; ++t) mul_elem(x, inv_nf_[l.gen]);
    }
  }
  return Element(std::move(x));
}

Element Collector::multiply(const Element& a, const Element& b) const {
  std::vector<int> x = a.exponents();
  mul_elem(x, b.exponents());
  return Element(std::move(x));
}

Element Collector::inverse(const Element& a) const {
  // (g_0^{a_0} ... g_{n-1}^{a_{n-1}})^-1 = g_{n-1}^{-a_{n-1}} ... g_0^{-a_0}
  std::vector<int> x(n_, 0);
  for (int m = n_ - 1; m >= 0; --m)
    for (int t = a[m]; t > 0; --t) mul_elem(x, inv_nf_[m]);
  return Element(std::move(x));
}

Element Collector::commutator(const Element& a, const Element& b) const {
  std::vector<int> x = inverse(a).exponents();
  mul_elem(x, inverse(b).exponents());
  mul_elem(x, a.exponents());
  mul_elem(x, b.exponents());
  return Element(std::move(x));
}

Element Collector::power(const Element& a, long long k) const {
  Element base = k < 0 ? inverse(a) : a;
  if (k < 0) k = -k;
  Element r = identity();
  while (k) {
    if (k & 1) r = multiply(r, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return r;
}

ConsistencyReport check_consistency(const PcPresentation& P) {
  Collector C(P);
  const int n = P.rank();
  const int p = P.prime();
  ConsistencyReport rep;
  auto name = [&](int i) { return P.generator_names()[i]; };
  auto check = [&](const Element& l, const Element& r, std::string test) {
    if (l != r) rep.failures.push_back({std::move(test), l, r});
  };
  auto gen = [&](int i) { return C.generator(i); };
  auto pw = [&](int i, int e) { return C.power(gen(i), e); };

  for (int k = 0; k < n; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i)
        check(C.multiply(C.multiply(gen(k), gen(j)), gen(i)), C.multiply(gen(k), C.multiply(gen(j), gen(i))),
              "(" + name(k) + " " + name(j) + ") " + name(i) + " vs " + name(k) + " (" + name(j) + " " + name(i) + ")");
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      check(C.multiply(pw(j, p), gen(i)), C.multiply(pw(j, p - 1), C.multiply(gen(j), gen(i))),
            "(" + name(j) + "^p) " + name(i) + " vs " + name(j) + "^(p-1) (" + name(j) + " " + name(i) + ")");
      check(C.multiply(gen(j), pw(i, p)), C.multiply(C.multiply(gen(j), gen(i)), pw(i, p - 1)),
            name(j) + " (" + name(i) + "^p) vs (" + name(j) + " " + name(i) + ") " + name(i) + "^(p-1)");
    }
  for (int i = 0; i < n; ++i)
    check(C.multiply(gen(i), pw(i, p)), C.multiply(pw(i, p), gen(i)),
          name(i) + " (" + name(i) + "^p) vs (" + name(i) + "^p) " + name(i));
  rep.consistent = rep.failures.empty();
  return rep;
}

Element multiply(const Element& a, const Element& b, const PcPresentation& P) {
  return Collector(P).multiply(a, b);
}

Element inverse(const Element& a, const PcPresentation& P) { return Collector(P).inverse(a); }

Element commutator(const Element& a, const Element& b, const PcPresentation& P) {
  return Collector(P).commutator(a, b);
}

}  // namespace pgclass
