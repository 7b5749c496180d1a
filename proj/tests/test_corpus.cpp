#include <set>

#include "doctest.h"
#include "pgclass/corpus.hpp"
#include "pgclass/error.hpp"
#include "pgclass/group_ops.hpp"
#include "pgclass/isoclinism.hpp"
#include "pgclass/numtheory.hpp"

using namespace pgclass;

TEST_CASE("every entry builds a consistent presentation of the stated order") {
  std::set<std::string> labels;
  for (const auto& e : corpus_entries()) {
    CAPTURE(e.label);
    CHECK(labels.insert(e.label).second);
    CHECK_FALSE(e.citation.empty());
    CHECK_FALSE(e.description.empty());
    CHECK(&corpus_entry(e.label) == &e);
    if (e.expected.nested) CHECK(e.expected.gvz);
    if (e.expected.vz) CHECK(e.expected.nested);
    for (int p : {3, 5, 7}) {
      if (p < e.min_prime) {
        CHECK_THROWS_AS(build(e.label, p), InputError);
        continue;
      }
      const PcPresentation P = build(e.label, p);
      CHECK(check_consistency(P).consistent);
      CHECK(P.prime() == p);
      CHECK(P.rank() == e.order_exponent);
      CHECK(parse_presentation(format_presentation(P)) == P);
    }
  }
}

TEST_CASE("build errors") {
  CHECK_THROWS_AS(build("no_such_group", 3), InputError);
  CHECK_THROWS_AS(corpus_entry("no_such_group"), InputError);
  CHECK_THROWS_AS(build("heisenberg_p3", 2), InputError);
  CHECK_THROWS_AS(build("heisenberg_p3", 9), InputError);
  CHECK_THROWS_AS(build("G_(18,1)", 3), InputError);
}

TEST_CASE("Heisenberg group") {
  const PcGroup G(build("heisenberg_p3", 3));
  CHECK(G.order() == 27);
  CHECK(nilpotency_class(G) == 2);
}

TEST_CASE("G_(12,1) at p = 7 looks like a product of two extraspecial groups of exponent 7") {
  const auto f = fingerprint(build("G_(12,1)", 7));
  const auto g = fingerprint(build("heisenberg_x_heisenberg", 7));
  CHECK(f == g);
  CHECK(f.order == ipow(7, 6));
  CHECK(exponent(PcGroup(build("G_(12,1)", 7))) == 7);
}

TEST_CASE("G_(14,3) at p = 7 is two-generated of exponent 7^4") {
  const PcGroup G(build("G_(14,3)", 7));
  CHECK(G.order() == ipow(7, 6));
  CHECK(exponent(G) == ipow(7, 4));
  const Elt a4 = G.generator(G.presentation().generator_index("a4"));
  const Elt a6 = G.generator(G.presentation().generator_index("a6"));
  CHECK(subgroup_generated(G, {a4, a6}).order() == G.order());
}

TEST_CASE("direct products rename clashing generators so that the text parses back") {
  const PcPresentation P = direct_product(build("cyclic_p2", 3), build("cyclic_p", 3), "c9xc3");
  CHECK(P.rank() == 3);
  CHECK(P.generator_index("a_2") == 2);
  CHECK(parse_presentation(format_presentation(P)) == P);
  const PcPresentation Q = direct_product(P, build("cyclic_p", 3), "c9xc3xc3");
  CHECK(Q.generator_index("a_2_2") == 3);
  CHECK(parse_presentation(format_presentation(Q)) == Q);
  CHECK(PcGroup(Q).order() == 81);
}
