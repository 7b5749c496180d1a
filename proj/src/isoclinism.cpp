#include "pgclass/isoclinism.hpp"

#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "pgclass/group_ops.hpp"

namespace pgclass {

std::set<std::uint64_t> IsoclinismFingerprint::degree_set() const {
  std::set<std::uint64_t> out;
  for (const auto& [d, n] : cd) out.insert(d);
  return out;
}

namespace {

std::vector<std::uint64_t> invariants_of_quotient(const PcGroup& G, const Subgroup& N, bool require_abelian) {
  const PcGroup Q(quotient(G, N).presentation, false);
  if (require_abelian && !is_abelian(Q)) return {};
  return abelian_invariants(Q, whole_group(Q));
}

}  // namespace

IsoclinismFingerprint fingerprint(const CharacterTable& T) {
  const PcGroup& G = T.group();
  IsoclinismFingerprint f;
  const Subgroup Z = center(G);
  const Subgroup D = derived_subgroup(G);
  f.order = G.order();
  f.nilpotency_class = nilpotency_class(G);
  f.center_order = Z.order();
  f.derived_order = D.order();
  f.central_quotient_order = G.order() / Z.order();
  f.abelianization = invariants_of_quotient(G, D, false);
  if (is_abelian(G, D)) f.derived_invariants = abelian_invariants(G, D);
  f.central_quotient_invariants = invariants_of_quotient(G, Z, true);
  f.cd = T.degree_multiset();
  for (std::size_t c = 0; c < T.classes().count(); ++c) ++f.class_sizes[T.classes().size(c)];
  return f;
}

IsoclinismFingerprint fingerprint(const PcPresentation& P, const TableOptions& opt) {
  return fingerprint(compute_table(P, opt));
}

bool same_isoclinism_core(const IsoclinismFingerprint& a, const IsoclinismFingerprint& b) {
  return a.nilpotency_class == b.nilpotency_class && a.derived_order == b.derived_order &&
         a.central_quotient_order == b.central_quotient_order && a.derived_invariants == b.derived_invariants &&
         a.central_quotient_invariants == b.central_quotient_invariants && a.degree_set() == b.degree_set();
}

const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::no: return "false";
    case Tristate::yes: return "true";
    case Tristate::unknown: return "unknown";
  }
  return "?";
}

namespace {

// An injective homomorphism from a subgroup of A into B, grown one generator
// image at a time. The domain is closed under right multiplication by the
// generators; agreement on every such edge makes the map a homomorphism.
template <class MulA, class MulB>
class PartialHom {
 public:
  PartialHom(MulA mul_a, MulB mul_b) : mul_a_(mul_a), mul_b_(mul_b) {
    map_.emplace(0, 0);
    image_.insert(0);
  }

  bool defined(Elt x) const { return map_.count(x) > 0; }
  Elt at(Elt x) const { return map_.at(x); }
  std::size_t size() const { return map_.size(); }

  /// False when x -> y is incompatible with the map so far.
  bool add(Elt x, Elt y) {
    if (auto it = map_.find(x); it != map_.end()) return it->second == y;
    gens_.emplace_back(x, y);
    std::vector<Elt> queue;
    queue.reserve(map_.size());
    for (const auto& [s, t] : map_) queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Elt s = queue[head];
      const Elt fs = map_.at(s);
      for (const auto& [g, h] : gens_) {
        const Elt t = mul_a_(s, g), v = mul_b_(fs, h);
        auto it = map_.find(t);
        if (it != map_.end()) {
          if (it->second != v) return false;
          continue;
        }
        if (!image_.insert(v).second) return false;
        map_.emplace(t, v);
        queue.push_back(t);
      }
    }
    return true;
  }

 private:
  MulA mul_a_;
  MulB mul_b_;
  std::unordered_map<Elt, Elt> map_;
  std::unordered_set<Elt> image_;
  std::vector<std::pair<Elt, Elt>> gens_;
};

struct Side {
  explicit Side(const PcGroup& group) : G(group), Z(center(group)), D(derived_subgroup(group)) {
    QuotientGroup qg = quotient(G, Z);
    Q = std::make_unique<PcGroup>(std::move(qg.presentation), false);
    lift.assign(Q->order(), 0);
    std::vector<bool> seen(Q->order(), false);
    for (Elt x = 0; x < G.order(); ++x)
      if (!seen[qg.projection[x]]) {
        seen[qg.projection[x]] = true;
        lift[qg.projection[x]] = x;
      }
    std::vector<Elt> gens = derived_subgroup(*Q).generators();
    for (int k = 0; k < Q->rank(); ++k) gens.push_back(Q->pow(Q->generator(k), Q->prime()));
    frattini = subgroup_generated(*Q, gens);
  }

  // [x, y] in G for x, y in G/Z; independent of the chosen lifts.
  Elt comm(Elt x, Elt y) const { return G.comm(lift[x], lift[y]); }

  const PcGroup& G;
  Subgroup Z, D, frattini;
  std::unique_ptr<PcGroup> Q;
  std::vector<Elt> lift;
};

class Search {
 public:
  Search(const Side& a, const Side& b, std::uint64_t budget) : a_(a), b_(b), budget_(budget) {
    // Generators of G1/Z1 independent modulo its Frattini subgroup.
    std::vector<Elt> span = a.frattini.generators();
    Subgroup cur = a.frattini;
    for (int k = 0; k < a.Q->rank(); ++k) {
      const Elt g = a.Q->generator(k);
      if (cur.contains(g)) continue;
      gens_.push_back(g);
      span.push_back(g);
      cur = subgroup_generated(*a.Q, span);
    }
  }

  Tristate run() {
    auto mq1 = [this](Elt x, Elt y) { return a_.Q->mul(x, y); };
    auto mq2 = [this](Elt x, Elt y) { return b_.Q->mul(x, y); };
    auto md1 = [this](Elt x, Elt y) { return a_.G.mul(x, y); };
    auto md2 = [this](Elt x, Elt y) { return b_.G.mul(x, y); };
    PartialHom theta(mq1, mq2);
    PartialHom phi(md1, md2);
    std::vector<Elt> images;
    const bool found = descend(theta, phi, images, b_.frattini.generators());
    if (exhausted_) return Tristate::unknown;
    return found ? Tristate::yes : Tristate::no;
  }

 private:
  template <class Theta, class Phi>
  bool descend(const Theta& theta, const Phi& phi, std::vector<Elt>& images, const std::vector<Elt>& span) {
    const std::size_t i = images.size();
    if (i == gens_.size()) return leaf(theta, phi);
    const Subgroup taken = subgroup_generated(*b_.Q, span);
    const std::uint32_t order = a_.Q->element_order(gens_[i]);
    for (Elt y = 0; y < b_.Q->order(); ++y) {
      if (taken.contains(y) || b_.Q->element_order(y) != order) continue;
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      Theta t = theta;
      if (!t.add(gens_[i], y)) continue;
      Phi f = phi;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = f.add(a_.comm(gens_[j], gens_[i]), b_.comm(images[j], y));
      if (!ok) continue;
      images.push_back(y);
      std::vector<Elt> next = span;
      next.push_back(y);
      if (descend(t, f, images, next)) return true;
      images.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  template <class Theta, class Phi>
  bool leaf(const Theta& theta, Phi phi) const {
    if (theta.size() != b_.Q->order()) return false;
    for (Elt x = 0; x < a_.Q->order(); ++x)
      for (Elt y = 0; y < a_.Q->order(); ++y)
        if (!phi.add(a_.comm(x, y), b_.comm(theta.at(x), theta.at(y)))) return false;
    return phi.size() == b_.D.order();
  }

  const Side& a_;
  const Side& b_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<Elt> gens_;
};

}  // namespace

Tristate isoclinic_brute(const PcGroup& G1, const PcGroup& G2, std::uint64_t budget) {
  const Side a(G1), b(G2);
  if (a.Q->order() != b.Q->order() || a.D.order() != b.D.order()) return Tristate::no;
  if (nilpotency_class(G1) != nilpotency_class(G2)) return Tristate::no;
  const bool abelian_d = is_abelian(G1, a.D);
  if (abelian_d != is_abelian(G2, b.D)) return Tristate::no;
  if (abelian_d && abelian_invariants(G1, a.D) != abelian_invariants(G2, b.D)) return Tristate::no;
  return Search(a, b, budget).run();
}

Tristate isoclinic_brute(const PcPresentation& P1, const PcPresentation& P2, std::uint64_t budget) {
  return isoclinic_brute(PcGroup(P1), PcGroup(P2), budget);
}

}  // namespace pgclass
