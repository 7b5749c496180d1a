#include "pgclass/corpus.hpp"

#include <algorithm>

#include "pgclass/error.hpp"
#include "pgclass/group_ops.hpp"
#include "pgclass/numtheory.hpp"

namespace pgclass {

namespace {

PcPresentation from_text(const std::string& name, int p, const std::string& body) {
  auto P = parse_presentation("group " + name + " prime " + std::to_string(p) + "\n" + body);
  return P;
}

std::function<PcPresentation(int)> text_builder(std::string name, std::string body) {
  return [name = std::move(name), body = std::move(body)](int p) { return from_text(name, p, body); };
}

// Quotient of a corpus group by the subgroup generated by one generator.
std::function<PcPresentation(int)> quotient_builder(std::string parent, std::string generator, std::string name) {
  return [=](int p) {
    PcGroup G(build(parent, p));
    int g = G.presentation().generator_index(generator);
    if (g < 0) throw InputError("no generator " + generator + " in " + parent);
    QuotientGroup Q = quotient(G, subgroup_generated(G, {G.generator(g)}));
    Q.presentation.set_name(name);
    return Q.presentation;
  };
}

const std::string kHeis = "gens a b c\ncomm [b,a] = c\n";

std::vector<CorpusEntry> make_entries() {
  std::vector<CorpusEntry> e;
  const std::string abelian = "every abelian group is a nested GVZ-group";
  const std::string extraspecial = "extraspecial p-groups are VZ-groups";
  auto add = [&](std::string label, std::string desc, int n, int min_p, ExpectedVerdicts v, std::string cite,
                 std::function<PcPresentation(int)> b) {
    e.push_back({std::move(label), std::move(desc), n, min_p, v, std::move(cite), std::move(b)});
  };

  add("cyclic_p", "cyclic group of order p", 1, 3, {true, true, false}, abelian, text_builder("cyclic_p", "gens a\n"));
  add("cyclic_p2", "cyclic group of order p^2", 2, 3, {true, true, false}, abelian,
      text_builder("cyclic_p2", "gens a b\npow a^p = b\n"));
  add("elementary_p2", "elementary abelian group of order p^2", 2, 3, {true, true, false}, abelian,
      text_builder("elementary_p2", "gens a b\n"));
  add("elementary_p3", "elementary abelian group of order p^3", 3, 3, {true, true, false}, abelian,
      text_builder("elementary_p3", "gens a b c\n"));
  add("heisenberg_p3", "extraspecial group of order p^3 and exponent p", 3, 3, {true, true, true}, extraspecial,
      text_builder("heisenberg_p3", kHeis));
  add("extraspecial_p3_exp_p2", "extraspecial group of order p^3 and exponent p^2", 3, 3, {true, true, true},
      extraspecial, text_builder("extraspecial_p3_exp_p2", "gens a b c\npow a^p = c\ncomm [b,a] = c\n"));
  add("extraspecial_p5", "extraspecial group of order p^5 and exponent p", 5, 3, {true, true, true}, extraspecial,
      text_builder("extraspecial_p5", "gens a1 b1 a2 b2 c\ncomm [b1,a1] = c\ncomm [b2,a2] = c\n"));
  add("heisenberg_x_cp", "extraspecial group of order p^3 times a cyclic group of order p", 4, 3, {true, true, true},
      "an abelian direct factor preserves the VZ property",
      text_builder("heisenberg_x_cp", "gens a b c d\ncomm [b,a] = c\n"));
  add("heisenberg_x_heisenberg", "direct product of two extraspecial groups of order p^3", 6, 3,
      {true, false, false}, "direct product G x H: GVZ iff both are; nested iff also one factor is abelian",
      [](int p) { return direct_product(build("heisenberg_p3", p), build("heisenberg_p3", p), "heisenberg_x_heisenberg"); });
  add("maximal_class_p4", "group of order p^4 and maximal class", 4, 3, {false, false, false},
      "faithful degree-p characters have Z(chi) = Z(G) of index p^3",
      text_builder("maximal_class_p4", "gens a b c d\ncomm [b,a] = c\ncomm [c,a] = d\n"));

  // Six generator groups listed as a6 ... a1 so that relation words only
  // involve later generators.
  const std::string g6 = "gens a6 a5 a4 a3 a2 a1\n";
  add("G_(12,1)", "product of two extraspecial groups of order p^6, presented as one pc group", 6, 5,
      {true, false, false}, "direct product G x H: GVZ iff both are; nested iff also one factor is abelian",
      text_builder("G_(12,1)", g6 + "comm [a3,a4] = a1\ncomm [a5,a6] = a2\n"));
  add("G_(14,3)", "two-generator group of class 2, order p^6 and exponent p^4", 6, 5, {true, true, false},
      "two-generator p-groups of class 2 are nested GVZ-groups",
      text_builder("G_(14,3)", g6 +
                                   "comm [a4,a6] = a2\ncomm [a3,a6] = a1\ncomm [a4,a5] = a1\n"
                                   "pow a2^p = a1\npow a3^p = a2\npow a4^p = a3\npow a6^p = a5\n"));
  const std::string lift = "central type is preserved by lifting from G/K; G/K has class 3 and is not GVZ";
  add("G_(17,1)", "class 3 group of order p^6 with G/<a2> of class 3", 6, 5, {false, false, false}, lift,
      text_builder("G_(17,1)", g6 + "comm [a5,a6] = a3\ncomm [a4,a5] = a2\ncomm [a3,a6] = a1\n"));
  add("G_(18,1)", "class 3 group of order p^6 with character degrees 1, p, p^2", 6, 5, {true, false, false},
      "G/K is GVZ but not nested; degree p^2 characters are fully ramified over Z(G)",
      text_builder("G_(18,1)",
                   g6 + "comm [a5,a6] = a3\ncomm [a4,a6] = a2\ncomm [a3,a6] = a1\ncomm [a4,a5] = a1\n"));
  add("G_(19,1)", "class 3 group of order p^6 generated by a, a1, a2", 6, 5, {false, false, false}, lift,
      text_builder("G_(19,1)", "gens a a1 a2 b b1 b2\n"
                               "comm [a1,a] = b1^-1\ncomm [a2,a1] = b^-1\ncomm [b,a1] = b1\ncomm [b,a2] = b2\n"));
  add("G_(20,1)", "class 3 group of order p^6 with |Z| = p^2", 6, 5, {false, false, false}, lift,
      text_builder("G_(20,1)",
                   g6 + "comm [a5,a6] = a3\ncomm [a4,a6] = a1^-1\ncomm [a3,a6] = a2\ncomm [a3,a5] = a1\n"));

  const std::string quotient_nongvz = "class 3 groups of order p^5 with cd = {1, p} here are not GVZ";
  add("G_(17,1)/K", "quotient of G_(17,1) by K = <a2>", 5, 5, {false, false, false}, quotient_nongvz,
      quotient_builder("G_(17,1)", "a2", "G_(17,1)/K"));
  add("G_(18,1)/K", "quotient of G_(18,1) by K = <a1>", 5, 5, {true, false, false},
      "class 2 group of order p^5 with (G/K)' = Z(G/K) of order p^2: GVZ, not nested",
      quotient_builder("G_(18,1)", "a1", "G_(18,1)/K"));
  add("G_(19,1)/K", "quotient of G_(19,1) by K = <b1>", 5, 5, {false, false, false}, quotient_nongvz,
      quotient_builder("G_(19,1)", "b1", "G_(19,1)/K"));
  add("G_(20,1)/K", "quotient of G_(20,1) by K = <a1>", 5, 5, {false, false, false}, quotient_nongvz,
      quotient_builder("G_(20,1)", "a1", "G_(20,1)/K"));
  return e;
}

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = make_entries();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& label) {
  for (const auto& e : corpus_entries())
    if (e.label == label) return e;
  throw InputError("unknown corpus label '" + label + "'");
}

PcPresentation build(const std::string& label, int p) {
  const CorpusEntry& e = corpus_entry(label);
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
    throw InputError(label + ": p must be an odd prime, got " + std::to_string(p));
  if (p < e.min_prime)
    throw InputError(label + ": presentation is only available for p >= " + std::to_string(e.min_prime));
  if (ipow(p, e.order_exponent) > PcGroup::kMaxOrder)
    throw InputError(label + ": order " + std::to_string(p) + "^" + std::to_string(e.order_exponent) +
                     " exceeds the supported limit");
  return e.builder(p);
}

PcPresentation direct_product(const PcPresentation& A, const PcPresentation& B, const std::string& name) {
  if (A.prime() != B.prime()) throw InputError("direct product of groups for different primes");
  std::vector<std::string> names = A.generator_names();
  for (std::string n : B.generator_names()) {
    while (A.generator_index(n) >= 0 || std::find(names.begin(), names.end(), n) != names.end()) n += "_2";
    names.push_back(n);
  }
  PcPresentation P(name, A.prime(), names);
  const int off = A.rank();
  auto shift = [](Word w, int by) {
    for (auto& l : w) l.gen += by;
    return w;
  };
  for (int i = 0; i < A.rank(); ++i)
    if (!A.power(i).empty()) P.set_power(i, A.power(i));
  for (int i = 0; i < B.rank(); ++i)
    if (!B.power(i).empty()) P.set_power(off + i, shift(B.power(i), off));
  for (const auto& [k, w] : A.commutators())
    if (!w.empty()) P.set_commutator(k.first, k.second, w);
  for (const auto& [k, w] : B.commutators())
    if (!w.empty()) P.set_commutator(off + k.first, off + k.second, shift(w, off));
  return P;
}

}  // namespace pgclass
