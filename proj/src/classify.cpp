#include "pgclass/classify.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "pgclass/error.hpp"
#include "pgclass/numtheory.hpp"

namespace pgclass {

namespace {

void require_normal(const CharacterTable& T, const Subgroup& N) {
  const PcGroup& G = T.group();
  if (!is_subgroup(G, N.elements()) || !is_normal(G, N)) throw InputError("N must be a normal subgroup of G");
}

bool vanishes_off(const CharacterTable& T, std::size_t row, const Subgroup& N) {
  const auto& C = T.classes();
  for (std::size_t c = 0; c < C.count(); ++c)
    if (!N.contains(C.reps[c]) && !T.is_zero(row, c)) return false;
  return true;
}

}  // namespace

std::uint64_t character_center_order(const CharacterTable& T, std::size_t row) {
  std::uint64_t n = 0;
  for (std::size_t c = 0; c < T.size(); ++c)
    if (T.attains_degree(row, c)) n += T.classes().size(c);
  return n;
}

bool is_central_type(const CharacterTable& T, std::size_t row) {
  bool vanishes = true;
  for (std::size_t c = 0; c < T.size() && vanishes; ++c)
    if (!T.attains_degree(row, c) && !T.is_zero(row, c)) vanishes = false;
  const std::uint64_t d = T.degree(row);
  const bool index = d * d * character_center_order(T, row) == T.group().order();
  if (vanishes != index)
    throw InconsistencyError("central type criteria disagree for row " + std::to_string(row) +
                             ": vanishing off Z(chi) is " + (vanishes ? "true" : "false") +
                             ", chi(1)^2 = |G : Z(chi)| is " + (index ? "true" : "false"));
  return vanishes;
}

bool is_gvz(const CharacterTable& T) {
  for (std::size_t r = 0; r < T.size(); ++r)
    if (!is_central_type(T, r)) return false;
  return true;
}

bool is_flat(const PcGroup& G) {
  const ConjugacyClassSet C = conjugacy_classes(G);
  std::vector<Elt> gens;
  for (std::size_t c = 0; c < C.count(); ++c) {
    const Elt g = C.reps[c];
    gens.clear();
    for (int i = 0; i < G.rank(); ++i)
      if (Elt x = G.comm(g, G.generator(i)); x != 0) gens.push_back(x);
    // [g, xy] = [g, y] [g, x]^y, so these commutators normally generate <[g, x] : x in G>.
    if (normal_closure_order(G, gens, C.size(c)) != C.size(c)) return false;
  }
  return true;
}

bool is_flat_exhaustive(const PcGroup& G) {
  const ConjugacyClassSet C = conjugacy_classes(G);
  for (std::size_t c = 0; c < C.count(); ++c) {
    std::set<Elt> comms;
    for (Elt x = 0; x < G.order(); ++x) comms.insert(G.comm(C.reps[c], x));
    if (subgroup_generated(G, std::vector<Elt>(comms.begin(), comms.end())).order() != C.size(c)) return false;
  }
  return true;
}

CenterChain center_chain(const CharacterTable& T) {
  const std::size_t k = T.size();
  std::set<std::vector<bool>> distinct;
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<bool> in(k);
    for (std::size_t c = 0; c < k; ++c) in[c] = T.attains_degree(r, c);
    distinct.insert(std::move(in));
  }
  std::vector<std::pair<std::uint64_t, const std::vector<bool>*>> subs;
  for (const auto& s : distinct) {
    std::uint64_t n = 0;
    for (std::size_t c = 0; c < k; ++c)
      if (s[c]) n += T.classes().size(c);
    subs.emplace_back(n, &s);
  }
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  CenterChain out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    out.orders.push_back(subs[i].first);
    if (i == 0) continue;
    const auto& small = *subs[i - 1].second;
    const auto& big = *subs[i].second;
    for (std::size_t c = 0; c < k; ++c)
      if (small[c] && !big[c]) out.is_chain = false;
  }
  return out;
}

bool is_nested(const CharacterTable& T) { return is_gvz(T) && center_chain(T).is_chain; }

std::size_t monotonicity_violations(const CharacterTable& T) {
  const std::size_t k = T.size();
  std::set<std::pair<std::uint64_t, std::vector<bool>>> combos;
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<bool> in(k);
    for (std::size_t c = 0; c < k; ++c) in[c] = T.attains_degree(r, c);
    combos.emplace(T.degree(r), std::move(in));
  }
  std::size_t bad = 0;
  for (const auto& [d1, z1] : combos)
    for (const auto& [d2, z2] : combos) {
      if (d1 > d2) continue;
      for (std::size_t c = 0; c < k; ++c)
        if (z2[c] && !z1[c]) {
          ++bad;
          break;
        }
    }
  return bad;
}

bool is_vz(const CharacterTable& T, std::string* note) {
  if (T.size() == T.group().order()) {
    if (note) *note = "abelian groups are not VZ-groups by definition";
    return false;
  }
  if (note) note->clear();
  const auto& C = T.classes();
  for (std::size_t r = 0; r < T.size(); ++r) {
    if (T.degree(r) == 1) continue;
    for (std::size_t c = 0; c < C.count(); ++c)
      if (C.size(c) > 1 && !T.is_zero(r, c)) return false;
  }
  return true;
}

bool fully_ramified(const CharacterTable& T, std::size_t row, const Subgroup& N) { return vanishes_off(T, row, N); }

bool is_camina_pair(const CharacterTable& T, const Subgroup& N) {
  require_normal(T, N);
  const PcGroup& G = T.group();
  if (N.order() == 1 || N.order() == G.order()) throw InputError("a Camina pair needs 1 < N < G");
  const auto& C = T.classes();

  bool cosets = true;
  for (std::size_t c = 0; c < C.count() && cosets; ++c) {
    const Elt g = C.reps[c];
    if (N.contains(g)) continue;
    for (Elt n : N.elements())
      if (C.class_of[G.mul(g, n)] != c) {
        cosets = false;
        break;
      }
  }

  std::vector<std::size_t> n_classes;
  for (std::size_t c = 0; c < C.count(); ++c)
    if (N.contains(C.reps[c])) n_classes.push_back(c);
  bool characters = true;
  for (std::size_t r = 0; r < T.size() && characters; ++r) {
    const bool n_in_kernel =
        std::all_of(n_classes.begin(), n_classes.end(), [&](std::size_t c) { return T.equals_degree(r, c); });
    if (!n_in_kernel && !vanishes_off(T, r, N)) characters = false;
  }
  if (cosets != characters)
    throw InconsistencyError(std::string("Camina pair criteria disagree: cosets give ") + (cosets ? "true" : "false") +
                             ", characters give " + (characters ? "true" : "false"));
  return cosets;
}

bool is_gen_camina_pair(const CharacterTable& T, const Subgroup& N) {
  require_normal(T, N);
  for (std::size_t r = 0; r < T.size(); ++r)
    if (T.degree(r) > 1 && !vanishes_off(T, r, N)) return false;
  return true;
}

std::vector<std::size_t> check_special_degree(const CharacterTable& T) {
  const std::uint64_t order = T.group().order();
  const std::uint64_t z = center(T.group()).order();
  std::vector<std::size_t> bad;
  for (std::size_t r = 0; r < T.size(); ++r) {
    const std::uint64_t d = T.degree(r);
    if (d * d * z != order) continue;
    if (!is_central_type(T, r) || character_center_order(T, r) != z) bad.push_back(r);
  }
  return bad;
}

std::vector<std::size_t> check_lift_equivalence(const CharacterTable& T, const Subgroup& N, const TableOptions& opt) {
  require_normal(T, N);
  const PcGroup& G = T.group();
  QuotientGroup Q = quotient(G, N);
  const CharacterTable TQ = compute_table(std::make_shared<const PcGroup>(std::move(Q.presentation), false), opt);
  const auto& C = T.classes();
  const std::size_t k = T.size();

  std::unordered_map<std::string, std::int32_t> by_value;
  for (std::size_t i = 0; i < T.distinct_values(); ++i)
    by_value.emplace(T.value_of_id(static_cast<std::int32_t>(i)).to_string(), static_cast<std::int32_t>(i));
  std::vector<std::int32_t> idmap(TQ.distinct_values(), -1);
  for (std::size_t i = 0; i < TQ.distinct_values(); ++i) {
    auto it = by_value.find(TQ.value_of_id(static_cast<std::int32_t>(i)).embed(static_cast<std::int64_t>(T.exponent())).to_string());
    if (it != by_value.end()) idmap[i] = it->second;
  }
  std::map<std::vector<std::int32_t>, std::size_t> rows;
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<std::int32_t> ids(k);
    for (std::size_t c = 0; c < k; ++c) ids[c] = T.id(r, c);
    rows.emplace(std::move(ids), r);
  }
  std::vector<std::size_t> qcls(k);
  for (std::size_t c = 0; c < k; ++c) qcls[c] = TQ.classes().class_of[Q.projection[C.reps[c]]];

  std::vector<std::size_t> mismatches;
  for (std::size_t r = 0; r < TQ.size(); ++r) {
    std::vector<std::int32_t> ids(k);
    for (std::size_t c = 0; c < k; ++c) ids[c] = idmap[TQ.id(r, qcls[c])];
    auto it = rows.find(ids);
    if (it == rows.end()) throw InconsistencyError("inflated character of G/N is missing from the table of G");
    if (is_central_type(TQ, r) != is_central_type(T, it->second)) mismatches.push_back(r);
  }
  return mismatches;
}

const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::holds: return "holds";
    case BoundStatus::fails: return "fails";
    case BoundStatus::inapplicable: return "inapplicable";
  }
  return "?";
}

BoundStatus check_nil_le_cd(const CharacterTable& T) {
  if (!is_gvz(T)) return BoundStatus::inapplicable;
  const auto cd = T.degree_multiset();
  return static_cast<std::size_t>(nilpotency_class(T.group())) <= cd.size() ? BoundStatus::holds
                                                                             : BoundStatus::fails;
}

HalfPower gvz_min_perm_degree(const CharacterTable& T) {
  const PcGroup& G = T.group();
  if (!is_gvz(T)) throw InputError("the permutation degree formula needs a GVZ-group");
  const Subgroup Z = center(G);
  if (abelian_invariants(G, Z).size() > 1) throw InputError("the permutation degree formula needs a cyclic center");
  const auto p = static_cast<std::uint64_t>(G.prime());
  return {G.prime(), log_p(G.order(), p) + log_p(Z.order(), p)};
}

CountingResult counting_formulas(int p, int order_exponent) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError("p must be an odd prime");
  CountingResult r;
  r.p = p;
  r.order_exponent = order_exponent;
  const mpq_class P(p);
  if (order_exponent == 5) {
    r.gvz_count = P + 31;
    r.nested_count = 23;
  } else if (order_exponent == 6) {
    if (p < 5) throw InputError("the order p^6 counts are only known for p >= 5");
    const int g3 = std::gcd(p - 1, 3), g4 = std::gcd(p - 1, 4);
    r.gvz_count = (3 * P * P + 28 * P + 315 + 2 * g3 + 2 * g4) / 2;
    r.nested_count = (3 * P * P + 10 * P + 187) / 2;
  } else {
    throw InputError("order exponent must be 5 or 6");
  }
  r.gvz_count.canonicalize();
  r.nested_count.canonicalize();
  if (r.gvz_count.get_den() != 1 || r.nested_count.get_den() != 1)
    throw InconsistencyError("counting formula is not an integer");
  return r;
}

ClassificationReport classification_report(const CharacterTable& T) {
  const PcGroup& G = T.group();
  ClassificationReport R;
  R.label = G.presentation().name();
  R.prime = G.prime();
  R.order = G.order();
  R.nilpotency_class = nilpotency_class(G);
  R.cd = T.degree_multiset();
  R.per_character.reserve(T.size());
  R.is_gvz = true;
  for (std::size_t r = 0; r < T.size(); ++r) {
    CharacterSummary s{T.degree(r), character_center_order(T, r), is_central_type(T, r)};
    R.is_gvz = R.is_gvz && s.central_type;
    R.per_character.push_back(s);
  }
  R.is_flat = is_flat(G);
  if (R.is_flat != R.is_gvz)
    throw InconsistencyError(R.label + ": flat verdict " + (R.is_flat ? "true" : "false") +
                             " differs from GVZ verdict " + (R.is_gvz ? "true" : "false"));
  R.center_chain = center_chain(T);
  R.is_nested = R.is_gvz && R.center_chain.is_chain;
  R.is_vz = is_vz(T, &R.vz_note);
  const bool abelian = T.size() == G.order();
  if (!abelian) {
    const Subgroup Z = center(G);
    R.camina_pair_with_center = is_camina_pair(T, Z);
    R.gen_camina_pair_with_center = is_gen_camina_pair(T, Z);
  }
  if ((R.is_vz && !R.is_nested) || (R.is_nested && !R.is_gvz))
    throw InconsistencyError(R.label + ": verdicts violate VZ => nested => GVZ");
  return R;
}

ClassificationReport classification_report(const PcPresentation& P, const TableOptions& opt) {
  return classification_report(compute_table(P, opt));
}

}  // namespace pgclass
