#include "pgclass/cyclotomic.hpp"

#include <cmath>
#include <numeric>

#include "pgclass/error.hpp"

namespace pgclass {

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t e) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= e; ++d) {
    if (e % d) continue;
    int s = 0;
    while (e % d == 0) {
      e /= d;
      ++s;
    }
    out.emplace_back(d, s);
  }
  if (e > 1) out.emplace_back(e, 1);
  return out;
}

namespace {

std::int64_t mod(std::int64_t k, std::int64_t e) {
  k %= e;
  return k < 0 ? k + e : k;
}

}  // namespace

Cyclotomic::Cyclotomic(std::int64_t e, std::map<std::int64_t, mpq_class>&& coeffs) : e_(e) {
  reduce_to_basis(e_, coeffs);
  terms_.assign(coeffs.begin(), coeffs.end());
}

Cyclotomic::Cyclotomic(const mpq_class& r) {
  if (r != 0) terms_.emplace_back(0, r);
  if (!terms_.empty()) terms_[0].second.canonicalize();
}

Cyclotomic Cyclotomic::root_of_unity(std::int64_t e, std::int64_t k) {
  if (e <= 0) throw InputError("root of unity order must be positive");
  std::map<std::int64_t, mpq_class> m;
  m[mod(k, e)] = 1;
  return Cyclotomic(e, std::move(m));
}

Cyclotomic Cyclotomic::from_terms(std::int64_t e, const std::vector<std::pair<std::int64_t, mpq_class>>& terms) {
  if (e <= 0) throw InputError("cyclotomic order must be positive");
  std::map<std::int64_t, mpq_class> m;
  for (const auto& [k, c] : terms) {
    mpq_class v = c;
    v.canonicalize();
    m[mod(k, e)] += v;
  }
  return Cyclotomic(e, std::move(m));
}

Cyclotomic Cyclotomic::embed(std::int64_t f) const {
  if (f == e_) return *this;
  if (f % e_) throw InputError("cannot embed Q(zeta_" + std::to_string(e_) + ") into Q(zeta_" + std::to_string(f) + ")");
  std::map<std::int64_t, mpq_class> m;
  const std::int64_t r = f / e_;
  for (const auto& [k, c] : terms_) m[k * r] = c;
  return Cyclotomic(f, std::move(m));
}

std::optional<mpq_class> Cyclotomic::as_rational() const {
  if (terms_.empty()) return mpq_class(0);
  if (terms_.size() == 1 && terms_[0].first == 0) return terms_[0].second;
  return std::nullopt;
}

bool Cyclotomic::equals_rational(const mpq_class& r) const {
  auto v = as_rational();
  return v && *v == r;
}

Cyclotomic Cyclotomic::galois(std::int64_t k) const {
  if (std::gcd(mod(k, e_), e_) != 1 && e_ > 1) throw InputError("Galois exponent not coprime to the order");
  std::map<std::int64_t, mpq_class> m;
  for (const auto& [j, c] : terms_) m[mod(j * k, e_)] += c;
  return Cyclotomic(e_, std::move(m));
}

std::complex<double> Cyclotomic::approx() const {
  std::complex<double> z = 0;
  const double two_pi = 2 * std::acos(-1.0);
  for (const auto& [k, c] : terms_) z += c.get_d() * std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(e_));
  return z;
}

std::string Cyclotomic::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    mpq_class a = abs(c);
    bool neg = c < 0;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (k == 0) {
      s += a.get_str();
    } else {
      if (a != 1) s += a.get_str() + "*";
      s += "E(" + std::to_string(e_) + ")^" + std::to_string(k);
    }
  }
  return s;
}

namespace {

std::int64_t common_order(const Cyclotomic& a, const Cyclotomic& b) {
  // Rationals fit in any field.
  if (a.is_rational()) return b.order();
  if (b.is_rational()) return a.order();
  return std::lcm(a.order(), b.order());
}

}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  const std::int64_t f = common_order(a, b);
  std::map<std::int64_t, mpq_class> m;
  for (const auto& [k, c] : a.terms_) m[k * (f / a.e_) % f] += c;
  for (const auto& [k, c] : b.terms_) m[k * (f / b.e_) % f] += c;
  return Cyclotomic(f, std::move(m));
}

Cyclotomic operator-(const Cyclotomic& a) {
  Cyclotomic r = a;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  const std::int64_t f = common_order(a, b);
  std::map<std::int64_t, mpq_class> m;
  const std::int64_t ra = f / a.e_, rb = f / b.e_;
  for (const auto& [i, c] : a.terms_)
    for (const auto& [j, d] : b.terms_) m[(i * ra + j * rb) % f] += c * d;
  return Cyclotomic(f, std::move(m));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.e_ == b.e_ || a.is_rational() || b.is_rational()) return a.terms_ == b.terms_;
  const std::int64_t f = std::lcm(a.e_, b.e_);
  return a.embed(f).terms_ == b.embed(f).terms_;
}

Cyclotomic arith(const Cyclotomic& x, const Cyclotomic& y, CycOp op) {
  switch (op) {
    case CycOp::add: return x + y;
    case CycOp::sub: return x - y;
    case CycOp::mul: return x * y;
  }
  return {};
}

}  // namespace pgclass
