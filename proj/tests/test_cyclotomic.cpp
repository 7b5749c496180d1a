#include <random>

#include "doctest.h"
#include "pgclass/cyclotomic.hpp"

using namespace pgclass;

namespace {

Cyclotomic z(std::int64_t e, std::int64_t k) { return Cyclotomic::root_of_unity(e, k); }

// Random element of Q(zeta_e) with small integer and half-integer coefficients.
Cyclotomic random_cyc(std::mt19937& rng, std::int64_t e) {
  std::uniform_int_distribution<int> nterms(0, 4), coef(-3, 3), exp(0, static_cast<int>(e) - 1), half(0, 1);
  std::vector<std::pair<std::int64_t, mpq_class>> t;
  for (int i = nterms(rng); i > 0; --i) t.emplace_back(exp(rng), mpq_class(coef(rng), half(rng) ? 2 : 1));
  return Cyclotomic::from_terms(e, t);
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

}  // namespace

TEST_CASE("basic identities") {
  CHECK((z(3, 1) + z(3, 2)).equals_rational(-1));
  CHECK((z(3, 1) + z(3, 2) + Cyclotomic(1)).is_zero());
  CHECK((z(7, 3) * Cyclotomic(0)).is_zero());
  CHECK((z(5, 1) * z(5, 4)).equals_rational(1));
  CHECK_FALSE(z(5, 1).equals_rational(1));
  CHECK(arith(z(3, 1), z(3, 2), CycOp::add) == Cyclotomic(-1));
  CHECK(arith(z(3, 1), z(3, 1), CycOp::sub).is_zero());
  CHECK(arith(z(4, 1), z(4, 1), CycOp::mul) == Cyclotomic(-1));
}

TEST_CASE("conjugation") {
  CHECK(conjugate(Cyclotomic(mpq_class(3, 7))) == Cyclotomic(mpq_class(3, 7)));
  CHECK(conjugate(z(7, 1)) == z(7, 6));
  CHECK(conjugate(Cyclotomic(1) + z(3, 1)) == Cyclotomic(1) + z(3, 2));
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto x = random_cyc(rng, 45);
    CHECK(conjugate(conjugate(x)) == x);
  }
}

TEST_CASE("absolute value squared") {
  for (std::int64_t e : {1, 3, 9, 12, 49, 343})
    for (std::int64_t k = 0; k < e; k += 5) CHECK(abs_squared(z(e, k)).equals_rational(1));
  CHECK(abs_squared(Cyclotomic(0)).is_zero());
  CHECK(abs_squared(Cyclotomic(1) + z(4, 1)).equals_rational(2));
  CHECK(abs_squared(z(9, 4)).equals_rational(1));
}

TEST_CASE("canonical form for prime powers is the power basis") {
  for (std::int64_t e : {7, 49, 2401}) {
    const std::int64_t phi = e - e / 7;
    for (std::int64_t k = 0; k < e; k += 13) {
      auto x = z(e, k);
      for (const auto& [j, c] : x.terms()) CHECK(j < phi);
    }
  }
  // zeta_7^6 = -(1 + zeta + ... + zeta^5)
  auto t = z(7, 6).terms();
  REQUIRE(t.size() == 6);
  for (std::int64_t j = 0; j < 6; ++j) CHECK(t[j] == Cyclotomic::Term{j, -1});
}

TEST_CASE("normalization is idempotent and rationals have support {0}") {
  std::mt19937 rng(11);
  for (std::int64_t e : {1, 2, 6, 15, 27, 60}) {
    for (int i = 0; i < 100; ++i) {
      auto x = random_cyc(rng, e);
      std::vector<std::pair<std::int64_t, mpq_class>> raw(x.terms().begin(), x.terms().end());
      CHECK(Cyclotomic::from_terms(e, raw).terms() == x.terms());
      if (x.is_rational()) CHECK((x.terms().empty() || x.terms()[0].first == 0));
    }
    CHECK(Cyclotomic::from_terms(e, {{0, 5}}).terms() == std::vector<Cyclotomic::Term>{{0, 5}});
  }
  // The sum of all primitive 15th roots of unity is mu(15) = 1.
  Cyclotomic s;
  for (int k = 1; k < 15; ++k)
    if (std::gcd(k, 15) == 1) s += z(15, k);
  CHECK(s.equals_rational(1));
}

TEST_CASE("ring axioms and multiplicativity on random elements") {
  std::mt19937 rng(2024);
  for (std::int64_t e : {9, 12, 25, 35}) {
    for (int i = 0; i < 60; ++i) {
      auto a = random_cyc(rng, e), b = random_cyc(rng, e), c = random_cyc(rng, e);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == Cyclotomic(0));
      CHECK(abs_squared(a) == abs_squared(conjugate(a)));
      CHECK(abs_squared(a * b) == abs_squared(a) * abs_squared(b));
      CHECK(conjugate(abs_squared(a)) == abs_squared(a));
    }
  }
}

TEST_CASE("numeric evaluation agrees with exact arithmetic") {
  std::mt19937 rng(99);
  for (std::int64_t e : {8, 21, 49}) {
    for (int i = 0; i < 50; ++i) {
      auto a = random_cyc(rng, e), b = random_cyc(rng, e);
      CHECK(close((a * b).approx(), a.approx() * b.approx()));
      CHECK(close((a + b).approx(), a.approx() + b.approx()));
      CHECK(close(conjugate(a).approx(), std::conj(a.approx())));
    }
  }
}

TEST_CASE("mixed orders embed into the lcm") {
  auto x = z(3, 1) + z(4, 1);
  CHECK(x.order() == 12);
  CHECK(close(x.approx(), z(3, 1).approx() + z(4, 1).approx()));
  CHECK(z(3, 1) == z(9, 3));
  CHECK(z(3, 1).embed(9) == z(9, 3));
  CHECK(Cyclotomic(2) == Cyclotomic(2).embed(5));
}

TEST_CASE("string rendering") {
  CHECK(Cyclotomic(0).to_string() == "0");
  CHECK(Cyclotomic(mpq_class(-3, 2)).to_string() == "-3/2");
  CHECK((Cyclotomic(2) + z(7, 2) * Cyclotomic(3)).to_string() == "2 + 3*E(7)^2");
  CHECK(z(7, 6).to_string() == "-1 - E(7)^1 - E(7)^2 - E(7)^3 - E(7)^4 - E(7)^5");
}
