#include <Eigen/Dense>
#include <complex>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "pgclass/char_table.hpp"
#include "pgclass/corpus.hpp"
#include "pgclass/error.hpp"
#include "pgclass/numtheory.hpp"

using namespace pgclass;

namespace pgclass {

struct CharacterTableTestAccess {
  static void set_id(CharacterTable& T, std::size_t r, std::size_t c, std::int32_t id) {
    T.entries_[r * T.size() + c] = id;
  }
  static void swap_rows(CharacterTable& T, std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < T.size(); ++c) std::swap(T.entries_[a * T.size() + c], T.entries_[b * T.size() + c]);
  }
  static void set_degree(CharacterTable& T, std::size_t r, std::uint64_t d) { T.degrees_[r] = d; }
};

}  // namespace pgclass

namespace {

const CharacterTable& table(const std::string& label, int p) {
  static std::map<std::pair<std::string, int>, CharacterTable> cache;
  auto it = cache.find({label, p});
  if (it == cache.end()) it = cache.emplace(std::make_pair(label, p), compute_table(build(label, p))).first;
  return it->second;
}

// Numeric Burnside algorithm: central characters are the common eigenvectors
// of the class multiplication matrices. Independent of the modular method.
std::vector<std::vector<std::complex<double>>> numeric_table(const PcGroup& G, const ConjugacyClassSet& C) {
  const std::size_t k = C.count();
  const auto a = class_constants(G, C);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> coef(-1, 1);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const double c = coef(rng);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        M(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) += c * a[(i * k + j) * k + l];
  }
  // M_i acts by (M_i)_{jl} = a_ijl and omega is an eigenvector: sum_l a_ijl omega_l = omega_i omega_j.
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  std::vector<std::vector<std::complex<double>>> rows;
  for (Eigen::Index x = 0; x < static_cast<Eigen::Index>(k); ++x) {
    Eigen::VectorXcd w = es.eigenvectors().col(x);
    w /= w(0);
    double s = 0;
    for (std::size_t j = 0; j < k; ++j) s += std::norm(w(static_cast<Eigen::Index>(j))) / C.size(j);
    const double d = std::sqrt(G.order() / s);
    std::vector<std::complex<double>> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = d * w(static_cast<Eigen::Index>(j)) / static_cast<double>(C.size(j));
    rows.push_back(row);
  }
  return rows;
}

void check_against_numeric(const CharacterTable& T) {
  const auto num = numeric_table(T.group(), T.classes());
  const std::size_t k = T.size();
  std::vector<bool> used(k, false);
  for (const auto& row : num) {
    int match = -1;
    for (std::size_t r = 0; r < k && match < 0; ++r) {
      if (used[r]) continue;
      bool ok = true;
      for (std::size_t c = 0; c < k && ok; ++c) ok = std::abs(T.value(r, c).approx() - row[c]) < 1e-6;
      if (ok) match = static_cast<int>(r);
    }
    REQUIRE(match >= 0);
    used[match] = true;
  }
}

// Exact row orthogonality and the second orthogonality relation, O(k^3).
void check_orthogonality_brute(const CharacterTable& T) {
  const std::size_t k = T.size();
  const auto& C = T.classes();
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x; y < k; ++y) {
      Cyclotomic s;
      for (std::size_t c = 0; c < k; ++c) s += Cyclotomic(static_cast<long>(C.size(c))) * T.value(x, c) * conjugate(T.value(y, c));
      CHECK(s.equals_rational(x == y ? mpq_class(static_cast<unsigned long>(T.group().order())) : mpq_class(0)));
    }
  for (std::size_t c = 0; c < k; ++c) {
    Cyclotomic s;
    for (std::size_t r = 0; r < k; ++r) s += abs_squared(T.value(r, c));
    CHECK(s.equals_rational(mpq_class(static_cast<unsigned long>(centralizer(T.group(), C.reps[c]).order()))));
  }
}

const std::vector<std::pair<std::string, int>> kSmall = {
    {"cyclic_p", 3},        {"cyclic_p2", 3},         {"elementary_p2", 5},  {"heisenberg_p3", 3},
    {"heisenberg_p3", 5},   {"extraspecial_p3_exp_p2", 3}, {"extraspecial_p3_exp_p2", 5}, {"heisenberg_x_cp", 3},
    {"maximal_class_p4", 3}, {"maximal_class_p4", 5}, {"extraspecial_p5", 3}};

}  // namespace

TEST_CASE("cyclic group of order 3") {
  const auto& T = table("cyclic_p", 3);
  REQUIRE(T.size() == 3);
  std::set<std::vector<std::string>> rows, expected;
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(T.degree(r) == 1);
    std::vector<std::string> row;
    for (std::size_t c = 0; c < 3; ++c) row.push_back(T.value(r, c).to_string());
    rows.insert(row);
  }
  // class c is the element a^c
  for (int j = 0; j < 3; ++j) {
    std::vector<std::string> row;
    for (int c = 0; c < 3; ++c) row.push_back(Cyclotomic::root_of_unity(3, j * c).to_string());
    expected.insert(row);
  }
  CHECK(rows == expected);
  CHECK(T.row(0) == std::vector<Cyclotomic>(3, Cyclotomic(1)));
}

TEST_CASE("Heisenberg group of order 27") {
  const auto& T = table("heisenberg_p3", 3);
  CHECK(T.degree_multiset() == std::map<std::uint64_t, std::size_t>{{1, 9}, {3, 2}});
  const Subgroup Z = center(T.group());
  for (std::size_t r = 9; r < 11; ++r) {
    CHECK(character_kernel(T, r).is_trivial());
    CHECK(character_center(T, r) == Z);
  }
  CHECK(character_kernel(T, 0) == whole_group(T.group()));
  for (std::size_t r = 0; r < 9; ++r) CHECK(character_center(T, r) == whole_group(T.group()));
  CHECK(T.field_prime() == 13);
}

TEST_CASE("character degrees of the order p^6 groups at p = 5") {
  using M = std::map<std::uint64_t, std::size_t>;
  CHECK(table("G_(18,1)", 5).degree_multiset() == M{{1, 125}, {5, 120}, {25, 20}});
  CHECK(table("G_(12,1)", 5).degree_multiset() == M{{1, 625}, {5, 200}, {25, 16}});
  CHECK(table("G_(14,3)", 5).degree_multiset() == M{{1, 625}, {5, 100}, {25, 20}});
  CHECK(table("G_(17,1)/K", 5).degree_multiset() == M{{1, 125}, {5, 120}});
}

TEST_CASE("class constants") {
  for (auto [label, p] : kSmall) {
    const PcGroup G(build(label, p));
    const auto C = conjugacy_classes(G);
    const std::size_t k = C.count();
    const auto a = class_constants(G, C);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        std::uint64_t s = 0;
        for (std::size_t l = 0; l < k; ++l) s += std::uint64_t{a[(i * k + j) * k + l]} * C.size(l);
        CHECK(s == std::uint64_t{C.size(i)} * C.size(j));
        for (std::size_t l = 0; l < k; ++l) {
          CHECK(a[(0 * k + j) * k + l] == (j == l ? 1u : 0u));
          if (is_abelian(G)) CHECK(a[(i * k + j) * k + l] == (C.class_of[G.mul(C.reps[i], C.reps[j])] == l ? 1u : 0u));
        }
      }
  }
  const PcGroup big(build("G_(18,1)", 5));
  CHECK_THROWS_AS(class_constants(big, conjugacy_classes(big)), InputError);
}

TEST_CASE("exact orthogonality by brute force") {
  for (auto [label, p] : kSmall) {
    CAPTURE(label);
    CAPTURE(p);
    check_orthogonality_brute(table(label, p));
  }
}

TEST_CASE("agreement with a floating point Burnside computation") {
  for (auto [label, p] : kSmall) {
    CAPTURE(label);
    CAPTURE(p);
    check_against_numeric(table(label, p));
  }
}

TEST_CASE("rows are permuted by Galois conjugation") {
  for (auto [label, p] : kSmall) {
    const auto& T = table(label, p);
    std::set<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < T.size(); ++r) {
      std::vector<std::string> row;
      for (const auto& v : T.row(r)) row.push_back(v.to_string());
      rows.insert(row);
    }
    const auto e = static_cast<std::int64_t>(T.exponent());
    for (std::int64_t g = 2; g < e; ++g) {
      if (g % p == 0) continue;
      for (std::size_t r = 0; r < T.size(); ++r) {
        std::vector<std::string> row;
        for (const auto& v : T.row(r)) row.push_back(v.galois(g).to_string());
        CHECK(rows.count(row) == 1);
      }
    }
  }
}

TEST_CASE("structural properties on the order p^5 and p^6 corpus") {
  for (const auto& entry : corpus_entries()) {
    if (entry.order_exponent < 5) continue;
    const auto& T = table(entry.label, 5);
    CAPTURE(entry.label);
    const PcGroup& G = T.group();
    const auto& C = T.classes();
    const std::uint64_t zorder = center(G).order();
    const std::uint64_t k = T.size();
    std::uint64_t sumsq = 0, linear = 0;
    for (std::size_t r = 0; r < k; ++r) {
      const std::uint64_t d = T.degree(r);
      sumsq += d * d;
      linear += d == 1;
      CHECK(log_p(d, 5) >= 0);
      CHECK((G.order() / zorder) % (d * d) == 0);
    }
    CHECK(sumsq == G.order());
    CHECK(linear == G.order() / derived_subgroup(G).order());
    CHECK(T.degree(0) == 1);
    for (std::size_t c = 0; c < k; ++c) CHECK(T.value(0, c) == Cyclotomic(1));
    for (std::size_t r = 1; r < k; ++r) CHECK(T.degree(r - 1) <= T.degree(r));

    // |chi(g)| = chi(1) from the value form agrees with the exact absolute value.
    std::set<std::pair<std::int32_t, std::uint64_t>> seen;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) {
        if (!seen.insert({T.id(r, c), T.degree(r)}).second) continue;
        const auto d = static_cast<long>(T.degree(r));
        CHECK(T.attains_degree(r, c) == abs_squared(T.value(r, c)).equals_rational(d * d));
      }

    // <chi_H, chi_H> = chi(1)^2 <= |G:H| for H = Z(chi), with equality iff chi vanishes off H.
    for (std::size_t r = 0; r < k; r += 7) {
      const Subgroup H = character_center(T, r);
      const Subgroup K = character_kernel(T, r);
      CHECK(K.is_subset_of(H));
      CHECK(center(G).is_subset_of(H));
      const std::uint64_t d = T.degree(r);
      CHECK(d * d <= G.order() / H.order());
      bool vanishes = true;
      for (std::size_t c = 0; c < k; ++c)
        if (!H.contains(C.reps[c]) && !T.is_zero(r, c)) vanishes = false;
      CHECK((d * d == G.order() / H.order()) == vanishes);
    }
  }
}

TEST_CASE("thread count does not change the table") {
  const auto P = build("G_(17,1)", 5);
  const auto A = compute_table(P, {1});
  const auto B = compute_table(P, {3});
  REQUIRE(A.size() == B.size());
  CHECK(A.degrees() == B.degrees());
  for (std::size_t r = 0; r < A.size(); ++r)
    for (std::size_t c = 0; c < A.size(); ++c) REQUIRE(A.value(r, c) == B.value(r, c));
}

TEST_CASE("too many classes is an input error") {
  std::string text = "group big prime 3\ngens";
  for (int i = 0; i < 9; ++i) text += " a" + std::to_string(i);
  CHECK_THROWS_AS(compute_table(parse_presentation(text + "\n")), InputError);
}

TEST_CASE("independent exact check of every corpus table") {
  for (const auto& e : corpus_entries()) {
    for (int p : {3, 5}) {
      if (p < e.min_prime) continue;
      CAPTURE(e.label);
      CAPTURE(p);
      const TableCheck r = check_table(table(e.label, p));
      CHECK(r.ok());
      CHECK(r.failure == "");
      CHECK(r.rows_orthogonal);
      CHECK(r.columns_orthogonal);
      CHECK(r.galois_closed);
    }
  }
}

TEST_CASE("the exact check rejects damaged tables") {
  using Access = CharacterTableTestAccess;
  const CharacterTable& H = table("heisenberg_p3", 3);
  const std::size_t last = H.size() - 1;

  CharacterTable t = H;
  Access::set_degree(t, last, 9);
  CHECK_FALSE(check_table(t).sum_of_squares);

  // Swapping two different values of a linear row.
  t = H;
  std::size_t c2 = 2;
  while (t.id(1, c2) == t.id(1, 1)) ++c2;
  const std::int32_t a = t.id(1, 1), b = t.id(1, c2);
  Access::set_id(t, 1, 1, b);
  Access::set_id(t, 1, c2, a);
  CHECK_FALSE(check_table(t).ok());

  // Replacing a nonlinear row by a Galois conjugate of another row keeps the
  // Galois closure but duplicates a row.
  t = H;
  for (std::size_t c = 0; c < t.size(); ++c) Access::set_id(t, last, c, t.id(last - 1, c));
  CHECK_FALSE(check_table(t).rows_orthogonal);

  // Zeroing a value of the trivial character.
  t = H;
  Access::set_id(t, 0, 1, 0);
  CHECK_FALSE(check_table(t).ok());

  // Row order does not matter.
  t = H;
  Access::swap_rows(t, 0, last);
  Access::set_degree(t, 0, H.degree(last));
  Access::set_degree(t, last, H.degree(0));
  CHECK(check_table(t).ok());
}
