#include <map>
#include <memory>

#include "doctest.h"
#include "pgclass/classify.hpp"
#include "pgclass/corpus.hpp"
#include "pgclass/error.hpp"

using namespace pgclass;

namespace {

const CharacterTable& table(const std::string& label, int p) {
  static std::map<std::pair<std::string, int>, CharacterTable> cache;
  auto it = cache.find({label, p});
  if (it == cache.end()) it = cache.emplace(std::make_pair(label, p), compute_table(build(label, p))).first;
  return it->second;
}

std::size_t first_nonlinear(const CharacterTable& T) {
  for (std::size_t r = 0; r < T.size(); ++r)
    if (T.degree(r) > 1) return r;
  return T.size();
}

}  // namespace

TEST_CASE("central type") {
  const auto& H = table("heisenberg_p3", 3);
  for (std::size_t r = 0; r < H.size(); ++r) CHECK(is_central_type(H, r));
  const auto& Q = table("G_(17,1)/K", 5);
  bool some_false = false;
  for (std::size_t r = 0; r < Q.size(); ++r) {
    if (Q.degree(r) == 1) CHECK(is_central_type(Q, r));
    some_false = some_false || !is_central_type(Q, r);
  }
  CHECK(some_false);
}

TEST_CASE("expected verdicts for the corpus at p = 5") {
  for (const auto& e : corpus_entries()) {
    CAPTURE(e.label);
    const auto& T = table(e.label, 5);
    CHECK(is_gvz(T) == e.expected.gvz);
    CHECK(is_nested(T) == e.expected.nested);
    CHECK(is_vz(T) == e.expected.vz);
    CHECK(is_flat(T.group()) == e.expected.gvz);
  }
}

TEST_CASE("small groups at p = 3 and the exhaustive flatness check") {
  for (const auto& e : corpus_entries()) {
    if (e.min_prime > 3) continue;
    CAPTURE(e.label);
    const auto& T = table(e.label, 3);
    CHECK(is_gvz(T) == e.expected.gvz);
    CHECK(is_nested(T) == e.expected.nested);
    CHECK(is_vz(T) == e.expected.vz);
    CHECK(is_flat(T.group()) == is_flat_exhaustive(T.group()));
    CHECK(is_flat(T.group()) == e.expected.gvz);
  }
  for (const char* label : {"G_(17,1)/K", "G_(18,1)/K", "G_(20,1)/K"}) {
    const PcGroup G(build(label, 5));
    CHECK(is_flat(G) == is_flat_exhaustive(G));
  }
}

TEST_CASE("VZ on abelian groups is false with a note") {
  std::string note;
  CHECK_FALSE(is_vz(table("elementary_p2", 3), &note));
  CHECK(note.find("abelian") != std::string::npos);
  CHECK(is_vz(table("heisenberg_p3", 3), &note));
  CHECK(note.empty());
}

TEST_CASE("Camina pairs") {
  const auto& H = table("heisenberg_p3", 3);
  const Subgroup Z = center(H.group());
  CHECK(is_camina_pair(H, Z));
  CHECK(is_camina_pair(H, derived_subgroup(H.group())));
  CHECK(is_gen_camina_pair(H, Z));
  CHECK(is_gen_camina_pair(H, whole_group(H.group())));
  CHECK_THROWS_AS(is_camina_pair(H, whole_group(H.group())), InputError);
  CHECK_THROWS_AS(is_camina_pair(H, trivial_subgroup(H.group())), InputError);
  const Subgroup not_normal = subgroup_generated(H.group(), {H.group().generator(0)});
  CHECK_THROWS_AS(is_gen_camina_pair(H, not_normal), InputError);

  const auto& G12 = table("G_(12,1)", 5);
  CHECK_FALSE(is_camina_pair(G12, center(G12.group())));
  const auto& G18 = table("G_(18,1)", 5);
  CHECK_FALSE(is_gen_camina_pair(G18, center(G18.group())));
}

TEST_CASE("fully ramified") {
  const auto& H = table("heisenberg_p3", 3);
  const PcGroup& G = H.group();
  CHECK(fully_ramified(H, 0, whole_group(G)));
  const std::size_t r = first_nonlinear(H);
  CHECK(fully_ramified(H, r, center(G)));
  CHECK_FALSE(fully_ramified(H, r, trivial_subgroup(G)));
}

TEST_CASE("characters of degree |G:Z|^(1/2)") {
  const auto& H = table("heisenberg_p3", 3);
  CHECK(check_special_degree(H).empty());
  CHECK(check_special_degree(table("elementary_p3", 3)).empty());
  const auto& G18 = table("G_(18,1)", 5);
  CHECK(check_special_degree(G18).empty());
  CHECK(G18.degree_multiset().at(25) == 20);
}

TEST_CASE("central type is preserved under inflation") {
  const auto& H = table("heisenberg_p3", 3);
  CHECK(check_lift_equivalence(H, trivial_subgroup(H.group())).empty());
  CHECK(check_lift_equivalence(H, center(H.group())).empty());
  CHECK(check_lift_equivalence(H, whole_group(H.group())).empty());

  const auto& G18 = table("G_(18,1)", 5);
  const PcGroup& G = G18.group();
  const Subgroup K = subgroup_generated(G, {G.generator(G.presentation().generator_index("a1"))});
  CHECK(check_lift_equivalence(G18, K).empty());
  // The quotient has p^3 - p nonlinear characters, as many as the degree p characters of G.
  const auto& Q = table("G_(18,1)/K", 5);
  CHECK(Q.size() - Q.degree_multiset().at(1) == 120);
  CHECK(G18.degree_multiset().at(5) == 120);
  for (std::size_t r = 0; r < Q.size(); ++r) CHECK(is_central_type(Q, r));

  const auto& G17 = table("G_(17,1)", 5);
  const PcGroup& G2 = G17.group();
  CHECK(check_lift_equivalence(G17, subgroup_generated(G2, {G2.generator(G2.presentation().generator_index("a2"))}))
            .empty());
}

TEST_CASE("nilpotency class against the number of degrees") {
  CHECK(check_nil_le_cd(table("heisenberg_p3", 3)) == BoundStatus::holds);
  CHECK(check_nil_le_cd(table("G_(14,3)", 5)) == BoundStatus::holds);
  CHECK(check_nil_le_cd(table("G_(18,1)", 5)) == BoundStatus::holds);
  CHECK(nilpotency_class(table("G_(18,1)", 5).group()) == 3);
  CHECK(check_nil_le_cd(table("G_(17,1)", 5)) == BoundStatus::inapplicable);
  CHECK(std::string(to_string(BoundStatus::inapplicable)) == "inapplicable");
}

TEST_CASE("minimal permutation degree of GVZ groups with cyclic center") {
  const HalfPower h = gvz_min_perm_degree(table("heisenberg_p3", 3));
  CHECK(h.twice_exponent == 4);
  CHECK(h.integral());
  CHECK(gvz_min_perm_degree(table("extraspecial_p5", 3)).twice_exponent == 6);
  CHECK(gvz_min_perm_degree(table("cyclic_p2", 3)).twice_exponent == 4);
  CHECK_THROWS_AS(gvz_min_perm_degree(table("heisenberg_x_cp", 3)), InputError);
  CHECK_THROWS_AS(gvz_min_perm_degree(table("maximal_class_p4", 3)), InputError);
  const HalfPower odd{5, 7};
  CHECK_FALSE(odd.integral());
}

TEST_CASE("counting formulas") {
  auto c = counting_formulas(5, 6);
  CHECK(c.gvz_count == 270);
  CHECK(c.nested_count == 156);
  c = counting_formulas(7, 6);
  CHECK(c.gvz_count == 334);
  CHECK(c.nested_count == 202);
  c = counting_formulas(3, 5);
  CHECK(c.gvz_count == 34);
  CHECK(c.nested_count == 23);
  CHECK(counting_formulas(11, 5).gvz_count == 42);
  CHECK_THROWS_AS(counting_formulas(3, 6), InputError);
  CHECK_THROWS_AS(counting_formulas(5, 4), InputError);
  CHECK_THROWS_AS(counting_formulas(4, 5), InputError);
  CHECK_THROWS_AS(counting_formulas(2, 5), InputError);
  for (int p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97, 101}) {
    const auto r = counting_formulas(p, 6);
    CHECK(r.gvz_count.get_den() == 1);
    CHECK(r.gvz_count > r.nested_count);
    CHECK(r.nested_count > 0);
  }
}

TEST_CASE("classification report") {
  const auto R = classification_report(table("heisenberg_p3", 3));
  CHECK(R.label == "heisenberg_p3");
  CHECK(R.order == 27);
  CHECK(R.nilpotency_class == 2);
  CHECK(R.is_gvz);
  CHECK(R.is_flat);
  CHECK(R.is_nested);
  CHECK(R.is_vz);
  CHECK(R.camina_pair_with_center);
  CHECK(R.gen_camina_pair_with_center);
  CHECK(R.cd == std::map<std::uint64_t, std::size_t>{{1, 9}, {3, 2}});
  CHECK(R.center_chain.orders == std::vector<std::uint64_t>{3, 27});
  CHECK(R.center_chain.is_chain);
  REQUIRE(R.per_character.size() == 11);
  CHECK(R.per_character.back().center_order == 3);

  const auto R20 = classification_report(table("G_(20,1)", 5));
  CHECK_FALSE(R20.is_gvz);
  CHECK_FALSE(R20.is_flat);
  const auto R12 = classification_report(table("G_(12,1)", 5));
  CHECK(R12.is_gvz);
  CHECK_FALSE(R12.is_nested);
  CHECK_FALSE(R12.center_chain.is_chain);

  const auto A = classification_report(table("elementary_p2", 5));
  CHECK(A.is_gvz);
  CHECK(A.is_nested);
  CHECK_FALSE(A.is_vz);
  CHECK_FALSE(A.camina_pair_with_center);
}

TEST_CASE("degree and center monotonicity in nested GVZ groups") {
  for (auto [label, p] : std::vector<std::pair<std::string, int>>{
           {"heisenberg_p3", 3}, {"G_(14,3)", 5}, {"cyclic_p2", 3}, {"heisenberg_x_cp", 5}, {"extraspecial_p5", 3}}) {
    const auto& T = table(label, p);
    REQUIRE(is_nested(T));
    std::vector<std::pair<std::uint64_t, Subgroup>> rows;
    std::map<std::uint64_t, Subgroup> by_degree;
    for (std::size_t r = 0; r < T.size(); ++r) {
      if (by_degree.count(T.degree(r))) {
        CHECK(by_degree.at(T.degree(r)) == character_center(T, r));
        continue;
      }
      by_degree.emplace(T.degree(r), character_center(T, r));
    }
    for (const auto& [d1, Z1] : by_degree)
      for (const auto& [d2, Z2] : by_degree) {
        if (d1 <= d2) CHECK(Z2.is_subset_of(Z1));
        CHECK((Z2.order() < Z1.order()) == (d1 < d2));
      }
  }
}

TEST_CASE("characters over a Camina pair with the center") {
  for (auto [label, p] : std::vector<std::pair<std::string, int>>{
           {"heisenberg_p3", 3}, {"heisenberg_p3", 5}, {"extraspecial_p5", 3}, {"extraspecial_p3_exp_p2", 5}}) {
    const auto& T = table(label, p);
    const PcGroup& G = T.group();
    const Subgroup Z = center(G);
    REQUIRE(is_camina_pair(T, Z));
    const std::uint64_t index = G.order() / Z.order();
    std::size_t count = 0;
    for (std::size_t r = 0; r < T.size(); ++r) {
      if (character_kernel(T, r).order() >= Z.order() && Z.is_subset_of(character_kernel(T, r))) continue;
      ++count;
      CHECK(T.degree(r) * T.degree(r) == index);
      for (std::size_t c = 0; c < T.size(); ++c) {
        if (Z.contains(T.classes().reps[c]))
          CHECK(T.attains_degree(r, c));
        else
          CHECK(T.is_zero(r, c));
      }
    }
    CHECK(count == Z.order() - 1);
  }
}

TEST_CASE("direct products") {
  const auto& HH = table("heisenberg_x_heisenberg", 3);
  const auto& H = table("heisenberg_p3", 3);
  CHECK(is_gvz(HH) == (is_gvz(H) && is_gvz(H)));
  CHECK_FALSE(is_nested(HH));
  const auto P = direct_product(build("heisenberg_p3", 3), build("cyclic_p2", 3), "H x C9");
  const auto T = compute_table(P);
  CHECK(is_gvz(T));
  CHECK(is_nested(T));
  const auto M = direct_product(build("maximal_class_p4", 3), build("cyclic_p", 3), "M x C3");
  CHECK_FALSE(is_gvz(compute_table(M)));
}

TEST_CASE("monotonicity violations") {
  CHECK(monotonicity_violations(table("heisenberg_p3", 3)) == 0);
  CHECK(monotonicity_violations(table("G_(14,3)", 5)) == 0);
  CHECK(monotonicity_violations(table("heisenberg_x_heisenberg", 3)) > 0);
  CHECK(monotonicity_violations(table("G_(12,1)", 5)) > 0);
}
