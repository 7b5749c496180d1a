#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "pgclass/corpus.hpp"
#include "pgclass/error.hpp"
#include "pgclass/group_ops.hpp"

using namespace pgclass;

namespace {

// Brute-force reference computations that only use the collector.
struct Brute {
  Collector C;
  std::vector<Element> all;

  explicit Brute(const PcPresentation& P) : C(P) {
    const int n = P.rank(), p = P.prime();
    std::vector<int> v(n, 0);
    while (true) {
      all.emplace_back(v);
      int i = n - 1;
      while (i >= 0 && ++v[i] == p) v[i--] = 0;
      if (i < 0) break;
    }
  }

  std::set<Element> center() const {
    std::set<Element> z;
    for (const auto& x : all) {
      bool ok = true;
      for (const auto& y : all)
        if (C.multiply(x, y) != C.multiply(y, x)) {
          ok = false;
          break;
        }
      if (ok) z.insert(x);
    }
    return z;
  }

  std::set<Element> conj_class(const Element& x) const {
    std::set<Element> c;
    for (const auto& g : all) c.insert(C.multiply(C.multiply(C.inverse(g), x), g));
    return c;
  }

  std::set<Element> closure(std::set<Element> s) const {
    s.insert(C.identity());
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Element> cur(s.begin(), s.end());
      for (const auto& a : cur)
        for (const auto& b : cur)
          if (s.insert(C.multiply(a, b)).second) grew = true;
    }
    return s;
  }

  std::set<Element> derived() const {
    std::set<Element> c;
    for (const auto& a : all)
      for (const auto& b : all) c.insert(C.commutator(a, b));
    return closure(c);
  }
};

std::set<Element> as_set(const PcGroup& G, const Subgroup& H) {
  std::set<Element> s;
  for (Elt x : H.elements()) s.insert(G.element(x));
  return s;
}

}  // namespace

TEST_CASE("table multiplication matches the collector") {
  for (const char* label : {"heisenberg_p3", "maximal_class_p4", "extraspecial_p3_exp_p2", "heisenberg_x_cp"}) {
    auto P = build(label, 3);
    PcGroup G(P);
    Collector C(P);
    for (Elt a = 0; a < G.order(); ++a) {
      REQUIRE(G.index(G.element(a)) == a);
      REQUIRE(G.element(G.inv(a)) == C.inverse(G.element(a)));
      for (Elt b = 0; b < G.order(); ++b) REQUIRE(G.element(G.mul(a, b)) == C.multiply(G.element(a), G.element(b)));
    }
  }
}

TEST_CASE("indices follow lexicographic order of exponent vectors") {
  PcGroup G(build("G_(18,1)", 5));
  for (Elt x = 1; x < G.order(); x += 97) CHECK(G.element(x - 1) < G.element(x));
}

TEST_CASE("sampled products on an order 7^6 group match the collector") {
  auto P = build("G_(20,1)", 7);
  PcGroup G(P);
  Collector C(P);
  std::uint64_t s = 12345;
  auto next = [&] { return static_cast<Elt>((s = s * 6364136223846793005ULL + 1442695040888963407ULL) >> 40) % G.order(); };
  for (int t = 0; t < 2000; ++t) {
    Elt a = next(), b = next();
    REQUIRE(G.element(G.mul(a, b)) == C.multiply(G.element(a), G.element(b)));
  }
}

TEST_CASE("subgroup_generated") {
  PcGroup H(build("heisenberg_p3", 3));
  CHECK(subgroup_generated(H, {}).order() == 1);
  CHECK(subgroup_generated(H, {H.generator(2)}).order() == 3);
  CHECK(subgroup_generated(H, {H.generator(0), H.generator(1)}).order() == 27);

  PcGroup G(build("G_(18,1)", 7));
  auto Z = subgroup_generated(G, {G.generator(5), G.generator(4)});
  CHECK(Z.order() == 49);
  CHECK(Z == center(G));
}

TEST_CASE("center, derived subgroup and class count against brute force") {
  for (const char* label : {"heisenberg_p3", "maximal_class_p4", "extraspecial_p3_exp_p2", "heisenberg_x_cp",
                            "extraspecial_p5", "elementary_p3"}) {
    CAPTURE(label);
    auto P = build(label, 3);
    PcGroup G(P);
    Brute B(P);
    CHECK(as_set(G, center(G)) == B.center());
    CHECK(as_set(G, derived_subgroup(G)) == B.derived());
    if (G.order() <= 81) {
      auto cs = conjugacy_classes(G);
      std::set<std::set<Element>> ours, theirs;
      for (std::size_t c = 0; c < cs.count(); ++c) {
        std::set<Element> s;
        for (auto it = cs.begin(c); it != cs.end(c); ++it) s.insert(G.element(*it));
        ours.insert(s);
      }
      for (const auto& x : B.all) theirs.insert(B.conj_class(x));
      CHECK(ours == theirs);
    }
  }
}

TEST_CASE("center and derived subgroup of the six generator groups") {
  PcGroup G17(build("G_(17,1)", 7));
  auto Z = center(G17);
  CHECK(Z.order() == 49);
  CHECK(Z == subgroup_generated(G17, {G17.generator(5), G17.generator(4)}));
  PcGroup G18(build("G_(18,1)", 7));
  auto D = derived_subgroup(G18);
  CHECK(D.order() == 343);
  CHECK(D == subgroup_generated(G18, {G18.generator(3), G18.generator(4), G18.generator(5)}));
  CHECK(derived_subgroup(PcGroup(build("elementary_p3", 5))).order() == 1);
  PcGroup H(build("heisenberg_p3", 5));
  CHECK(derived_subgroup(H) == subgroup_generated(H, {H.generator(2)}));
}

TEST_CASE("centralizers") {
  PcGroup H(build("heisenberg_p3", 3));
  auto Ca = centralizer(H, H.generator(0));
  CHECK(Ca.order() == 9);
  CHECK(Ca == subgroup_generated(H, {H.generator(0), H.generator(2)}));
  CHECK(centralizer(H, 0).order() == 27);
  CHECK(centralizer(H, H.generator(2)).order() == 27);
}

TEST_CASE("conjugacy classes") {
  PcGroup C9(build("cyclic_p2", 3));
  auto c9 = conjugacy_classes(C9);
  CHECK(c9.count() == 9);
  PcGroup H(build("heisenberg_p3", 3));
  auto cs = conjugacy_classes(H);
  REQUIRE(cs.count() == 11);
  std::map<std::uint32_t, int> sizes;
  for (std::size_t c = 0; c < cs.count(); ++c) ++sizes[cs.size(c)];
  CHECK(sizes == std::map<std::uint32_t, int>{{1, 3}, {3, 8}});
  CHECK(cs.reps.front() == 0);
  CHECK(std::is_sorted(cs.reps.begin(), cs.reps.end()));
  for (std::size_t c = 0; c < cs.count(); ++c) CHECK(*cs.begin(c) == cs.reps[c]);
}

TEST_CASE("orbit-stabilizer exhaustively for order <= 3^5") {
  for (const char* label : {"heisenberg_x_cp", "maximal_class_p4", "extraspecial_p5"}) {
    PcGroup G(build(label, 3));
    auto cs = conjugacy_classes(G);
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < cs.count(); ++c) total += cs.size(c);
    CHECK(total == G.order());
    for (Elt x = 0; x < G.order(); ++x) {
      auto cl = cs.size(cs.class_of[x]);
      REQUIRE(G.order() % cl == 0);
      REQUIRE(static_cast<std::uint64_t>(centralizer(G, x).order()) * cl == G.order());
    }
  }
}

TEST_CASE("center equals the intersection of generator centralizers") {
  for (const char* label : {"G_(17,1)", "G_(14,3)", "G_(19,1)"}) {
    PcGroup G(build(label, 5));
    Subgroup I = whole_group(G);
    for (int k = 0; k < G.rank(); ++k) I = intersection(G, I, centralizer(G, G.generator(k)));
    CHECK(I == center(G));
  }
}

TEST_CASE("quotients") {
  PcGroup H(build("heisenberg_p3", 5));
  auto Q0 = quotient(H, trivial_subgroup(H));
  CHECK(Q0.presentation.rank() == 3);
  std::vector<Elt> img = Q0.projection;
  std::sort(img.begin(), img.end());
  CHECK(std::unique(img.begin(), img.end()) == img.end());

  auto Q1 = quotient(H, center(H));
  PcGroup HZ(Q1.presentation);
  CHECK(HZ.order() == 25);
  CHECK(is_abelian(HZ));

  PcGroup G(build("G_(18,1)", 7));
  auto K = subgroup_generated(G, {G.generator(5)});
  auto Q = quotient(G, K);
  CHECK(check_consistency(Q.presentation).consistent);
  PcGroup GK(Q.presentation);
  CHECK(GK.order() == 16807);
  CHECK(center(GK).order() == 49);
  CHECK(derived_subgroup(GK).order() == 49);
  CHECK(derived_subgroup(GK) == center(GK));

  // Homomorphism property on a sample and kernel = K.
  for (Elt a = 0; a < G.order(); a += 331)
    for (Elt b = 7; b < G.order(); b += 4111)
      REQUIRE(Q.projection[G.mul(a, b)] == GK.mul(Q.projection[a], Q.projection[b]));
  std::vector<Elt> kernel;
  for (Elt x = 0; x < G.order(); ++x)
    if (Q.projection[x] == 0) kernel.push_back(x);
  CHECK(kernel == K.elements());
}

TEST_CASE("quotient rejects non-normal subgroups") {
  PcGroup H(build("heisenberg_p3", 3));
  CHECK_THROWS_AS(quotient(H, subgroup_generated(H, {H.generator(0)})), InputError);
}

TEST_CASE("derived subgroup commutes with projection") {
  for (const char* label : {"G_(17,1)", "G_(20,1)", "G_(14,3)"}) {
    PcGroup G(build(label, 5));
    auto Z = center(G);
    std::vector<Subgroup> normals{Z, derived_subgroup(G), subgroup_generated(G, {Z.generators().front()})};
    for (const auto& N : normals) {
      auto Q = quotient(G, N);
      PcGroup GQ(Q.presentation);
      std::vector<Elt> image;
      Subgroup D = derived_subgroup(G);
      for (Elt x : D.elements()) image.push_back(Q.projection[x]);
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      CHECK(image == derived_subgroup(GQ).elements());
    }
  }
}

TEST_CASE("nilpotency class and lower central series") {
  CHECK(nilpotency_class(PcGroup(build("elementary_p3", 3))) == 1);
  CHECK(nilpotency_class(PcGroup(build("heisenberg_p3", 3))) == 2);
  CHECK(nilpotency_class(PcGroup(build("maximal_class_p4", 5))) == 3);
  CHECK(nilpotency_class(PcGroup(build("G_(17,1)", 7))) == 3);
  for (const char* label : {"G_(18,1)", "G_(19,1)", "maximal_class_p4"}) {
    PcGroup G(build(label, 5));
    auto series = lower_central_series(G);
    for (std::size_t i = 1; i < series.size(); ++i) {
      CHECK(is_normal(G, series[i]));
      CHECK(series[i].order() < series[i - 1].order());
      CHECK(series[i].is_subset_of(series[i - 1]));
    }
  }
}

TEST_CASE("abelian invariants and exponent") {
  PcGroup H(build("heisenberg_p3", 7));
  CHECK(abelian_invariants(H, trivial_subgroup(H)).empty());
  CHECK(abelian_invariants(H, center(H)) == std::vector<std::uint64_t>{7});
  CHECK_THROWS_AS(abelian_invariants(H, whole_group(H)), InputError);
  PcGroup G(build("G_(18,1)", 7));
  CHECK(abelian_invariants(G, center(G)) == std::vector<std::uint64_t>{7, 7});
  PcGroup G14(build("G_(14,3)", 7));
  CHECK(abelian_invariants(G14, center(G14)) == std::vector<std::uint64_t>{49});
  CHECK(exponent(G14) == 2401);
  CHECK(exponent(PcGroup(build("elementary_p2", 5))) == 5);
  CHECK(exponent(H) == 7);
  PcGroup C(build("cyclic_p2", 3));
  CHECK(abelian_invariants(C, whole_group(C)) == std::vector<std::uint64_t>{9});
  PcGroup X(parse_presentation("group x prime 3\ngens a b c d\npow a^p = b\npow b^p = c\n"));
  CHECK(abelian_invariants(X, whole_group(X)) == std::vector<std::uint64_t>{3, 27});
}

TEST_CASE("induced pcgs") {
  PcGroup G(build("G_(18,1)", 5));
  auto D = derived_subgroup(G);
  auto pc = induced_pcgs(G, D);
  CHECK(pc.depths == std::vector<int>{3, 4, 5});
}
