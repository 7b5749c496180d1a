#include "pgclass/group_ops.hpp"

#include <algorithm>
#include <deque>

#include "pgclass/error.hpp"
#include "pgclass/numtheory.hpp"

namespace pgclass {

PcGroup::PcGroup(PcPresentation P, bool check) : P_(std::move(P)), C_(P_), p_(P_.prime()), n_(P_.rank()) {
  std::uint64_t size = 1;
  for (int i = 0; i < n_; ++i) {
    size *= static_cast<std::uint64_t>(p_);
    if (size > kMaxOrder) throw InputError("group order exceeds the supported limit of " + std::to_string(kMaxOrder));
  }
  if (check) {
    auto rep = check_consistency(P_);
    if (!rep.consistent)
      throw InputError("inconsistent presentation: " + rep.failures.front().test + " collect to " +
                       to_string(rep.failures.front().left) + " and " + to_string(rep.failures.front().right));
  }
  size_ = static_cast<std::uint32_t>(size);
  place_.assign(n_, 1);
  for (int i = n_ - 2; i >= 0; --i) place_[i] = place_[i + 1] * static_cast<Elt>(p_);
  right_.assign(n_, {});
  right_inv_.assign(n_, {});

  const Elt p = static_cast<Elt>(p_);
  for (int k = n_ - 1; k >= 0; --k) {
    // Conjugation by g_k on the tail subgroup <g_{k+1},...>, whose elements
    // are exactly the indices below place_[k].
    const Elt tail_size = place_[k];
    std::vector<Elt> conj_tail(tail_size, 0);
    if (k + 1 < n_) {
      // step[m][a] = (g_m^{g_k})^a
      std::vector<std::vector<Elt>> step(n_);
      for (int m = k + 1; m < n_; ++m) {
        Elt cg = index(Element(C_.conjugate_form(m, k)));
        step[m].assign(p_, 0);
        for (int a = 1; a < p_; ++a) step[m][a] = mul(step[m][a - 1], cg);
      }
      int m = n_ - 1;
      for (Elt t = 1; t < tail_size; ++t) {
        while (t >= place_[m] * p) --m;
        Elt a = t / place_[m];
        conj_tail[t] = mul(step[m][a], conj_tail[t - a * place_[m]]);
      }
    }
    const Elt pw = index(Element(C_.power_form(k)));
    std::vector<Elt>& T = right_[k];
    T.resize(size_);
    for (Elt x = 0; x < size_; ++x) {
      Elt tail = x % tail_size;
      Elt head = x - tail;
      Elt d = (x / tail_size) % p;
      Elt y = d + 1 < p ? head + tail_size : head - (p - 1) * tail_size + pw;
      T[x] = tail == 0 ? y : mul(y, conj_tail[tail]);
    }
    std::vector<Elt>& TI = right_inv_[k];
    TI.resize(size_);
    for (Elt x = 0; x < size_; ++x) TI[T[x]] = x;
  }

  inverse_.resize(size_);
  for (Elt x = 0; x < size_; ++x) {
    Elt y = 0;
    for (int m = n_ - 1; m >= 0; --m)
      for (int t = digit(x, m); t > 0; --t) y = right_inv_[m][y];
    inverse_[x] = y;
  }
  inverse_gen_.resize(n_);
  for (int k = 0; k < n_; ++k) inverse_gen_[k] = inverse_[place_[k]];
}

Elt PcGroup::index(const Element& e) const {
  Elt x = 0;
  for (int i = 0; i < n_; ++i) x = x * static_cast<Elt>(p_) + static_cast<Elt>(e[i]);
  return x;
}

Element PcGroup::element(Elt x) const {
  std::vector<int> v(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    v[i] = static_cast<int>(x % p_);
    x /= p_;
  }
  return Element(std::move(v));
}

Elt PcGroup::mul(Elt a, Elt b) const {
  // Apply the letters of b's normal form; a missing table (during
  // construction) is never reached because b has no digits there.
  for (int m = 0; m < n_ && b; ++m) {
    Elt d = b / place_[m];
    b -= d * place_[m];
    for (; d > 0; --d) a = right_[m][a];
  }
  return a;
}

Elt PcGroup::pow(Elt a, long long k) const {
  if (k < 0) {
    a = inverse_[a];
    k = -k;
  }
  Elt r = 0;
  while (k) {
    if (k & 1) r = mul(r, a);
    k >>= 1;
    if (k) a = mul(a, a);
  }
  return r;
}

std::uint32_t PcGroup::element_order(Elt a) const {
  std::uint32_t o = 1;
  while (a != 0) {
    a = pow(a, p_);
    o *= static_cast<std::uint32_t>(p_);
  }
  return o;
}

int PcGroup::depth(Elt x) const {
  for (int i = 0; i < n_; ++i)
    if (x >= place_[i]) return i;
  return n_;
}

// ---------------------------------------------------------------- subgroups

Subgroup::Subgroup(std::uint32_t ambient_order, std::vector<Elt> elements, std::vector<Elt> generators)
    : elements_(std::move(elements)), generators_(std::move(generators)), member_(ambient_order, false) {
  std::sort(elements_.begin(), elements_.end());
  for (Elt x : elements_) member_[x] = true;
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  if (order() > other.order()) return false;
  for (Elt x : elements_)
    if (!other.contains(x)) return false;
  return true;
}

namespace {

// Incrementally maintained closure <gens> under right multiplication.
class Closure {
 public:
  explicit Closure(const PcGroup& G) : G_(G), in_(G.order(), false) {
    in_[0] = true;
    elems_.push_back(0);
  }

  bool contains(Elt x) const { return in_[x]; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<Elt>& generators() const { return gens_; }

  // Returns false if growth exceeded limit (the closure is then incomplete).
  bool add(Elt g, std::size_t limit = SIZE_MAX) {
    if (in_[g]) return true;
    gens_.push_back(g);
    std::deque<Elt> queue;
    const std::size_t old = elems_.size();
    for (std::size_t i = 0; i < old; ++i) {
      Elt y = G_.mul(elems_[i], g);
      if (!in_[y]) {
        in_[y] = true;
        elems_.push_back(y);
        queue.push_back(y);
      }
    }
    while (!queue.empty()) {
      if (elems_.size() > limit) return false;
      Elt e = queue.front();
      queue.pop_front();
      for (Elt h : gens_) {
        Elt y = G_.mul(e, h);
        if (!in_[y]) {
          in_[y] = true;
          elems_.push_back(y);
          queue.push_back(y);
        }
      }
    }
    return elems_.size() <= limit;
  }

  Subgroup finish() { return Subgroup(G_.order(), std::move(elems_), std::move(gens_)); }

 private:
  const PcGroup& G_;
  std::vector<bool> in_;
  std::vector<Elt> elems_;
  std::vector<Elt> gens_;
};

// The given elements form a subgroup; pick a small generating list greedily.
Subgroup from_elements(const PcGroup& G, const std::vector<Elt>& elements) {
  Closure c(G);
  for (Elt x : elements) c.add(x);
  if (c.size() != elements.size()) throw InconsistencyError("element set is not a subgroup");
  return c.finish();
}

}  // namespace

Subgroup subgroup_generated(const PcGroup& G, const std::vector<Elt>& gens) {
  Closure c(G);
  for (Elt g : gens) c.add(g);
  return c.finish();
}

Subgroup subgroup_from_elements(const PcGroup& G, const std::vector<Elt>& elements) {
  return from_elements(G, elements);
}

Subgroup trivial_subgroup(const PcGroup& G) { return Subgroup(G.order(), {0}, {}); }

Subgroup whole_group(const PcGroup& G) {
  std::vector<Elt> all(G.order());
  for (Elt x = 0; x < G.order(); ++x) all[x] = x;
  std::vector<Elt> gens;
  for (int i = 0; i < G.rank(); ++i) gens.push_back(G.generator(i));
  return Subgroup(G.order(), std::move(all), std::move(gens));
}

Subgroup normal_closure(const PcGroup& G, const std::vector<Elt>& gens) {
  Closure c(G);
  for (Elt g : gens) c.add(g);
  for (std::size_t i = 0; i < c.generators().size(); ++i)
    for (int k = 0; k < G.rank(); ++k) c.add(G.conj_gen(c.generators()[i], k));
  return c.finish();
}

std::uint32_t normal_closure_order(const PcGroup& G, const std::vector<Elt>& gens, std::size_t limit) {
  Closure c(G);
  for (Elt g : gens)
    if (!c.add(g, limit)) return 0;
  for (std::size_t i = 0; i < c.generators().size(); ++i)
    for (int k = 0; k < G.rank(); ++k)
      if (!c.add(G.conj_gen(c.generators()[i], k), limit)) return 0;
  return static_cast<std::uint32_t>(c.size());
}

bool is_normal(const PcGroup& G, const Subgroup& H) {
  for (Elt h : H.generators())
    for (int k = 0; k < G.rank(); ++k)
      if (!H.contains(G.conj_gen(h, k))) return false;
  return true;
}

bool is_subgroup(const PcGroup& G, const std::vector<Elt>& sorted_elements) {
  if (sorted_elements.empty() || sorted_elements.front() != 0) return false;
  if (G.order() % sorted_elements.size() != 0) return false;
  std::vector<bool> in(G.order(), false);
  for (Elt x : sorted_elements) in[x] = true;
  Closure c(G);
  for (Elt x : sorted_elements) {
    if (c.contains(x)) continue;
    if (!c.add(x, sorted_elements.size())) return false;
  }
  if (c.size() != sorted_elements.size()) return false;
  Subgroup H = c.finish();
  for (Elt x : H.elements())
    if (!in[x]) return false;
  return true;
}

Subgroup product(const PcGroup& G, const Subgroup& H, const Subgroup& K) {
  std::vector<Elt> gens = H.generators();
  gens.insert(gens.end(), K.generators().begin(), K.generators().end());
  return subgroup_generated(G, gens);
}

Subgroup intersection(const PcGroup& G, const Subgroup& H, const Subgroup& K) {
  std::vector<Elt> common;
  for (Elt x : H.elements())
    if (K.contains(x)) common.push_back(x);
  return from_elements(G, common);
}

Subgroup center(const PcGroup& G) {
  std::vector<Elt> z;
  for (Elt x = 0; x < G.order(); ++x) {
    bool central = true;
    for (int k = 0; k < G.rank() && central; ++k)
      central = G.mul_gen(x, k) == G.mul(G.generator(k), x);
    if (central) z.push_back(x);
  }
  return from_elements(G, z);
}

Subgroup centralizer(const PcGroup& G, Elt g) {
  std::vector<Elt> c;
  for (Elt x = 0; x < G.order(); ++x)
    if (G.mul(x, g) == G.mul(g, x)) c.push_back(x);
  return from_elements(G, c);
}

Subgroup derived_subgroup(const PcGroup& G) {
  std::vector<Elt> gens;
  for (int j = 0; j < G.rank(); ++j)
    for (int i = 0; i < j; ++i) {
      Elt c = G.comm(G.generator(j), G.generator(i));
      if (c) gens.push_back(c);
    }
  return normal_closure(G, gens);
}

Subgroup commutator_with_group(const PcGroup& G, const Subgroup& N) {
  std::vector<Elt> gens;
  for (Elt h : N.generators())
    for (int k = 0; k < G.rank(); ++k) {
      Elt c = G.comm(h, G.generator(k));
      if (c) gens.push_back(c);
    }
  return normal_closure(G, gens);
}

std::vector<Subgroup> lower_central_series(const PcGroup& G) {
  std::vector<Subgroup> series{whole_group(G)};
  while (!series.back().is_trivial()) {
    Subgroup next = commutator_with_group(G, series.back());
    if (next.order() == series.back().order())
      throw InconsistencyError("lower central series stalled; group is not nilpotent");
    series.push_back(std::move(next));
  }
  return series;
}

int nilpotency_class(const PcGroup& G) {
  return static_cast<int>(lower_central_series(G).size()) - 1;
}

bool is_abelian(const PcGroup& G) {
  for (int j = 0; j < G.rank(); ++j)
    for (int i = 0; i < j; ++i)
      if (G.comm(G.generator(j), G.generator(i)) != 0) return false;
  return true;
}

bool is_abelian(const PcGroup& G, const Subgroup& H) {
  const auto& g = H.generators();
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (G.mul(g[i], g[j]) != G.mul(g[j], g[i])) return false;
  return true;
}

ConjugacyClassSet conjugacy_classes(const PcGroup& G) {
  constexpr std::uint32_t kUnset = UINT32_MAX;
  ConjugacyClassSet cs;
  cs.class_of.assign(G.order(), kUnset);
  std::vector<Elt> queue;
  for (Elt x = 0; x < G.order(); ++x) {
    if (cs.class_of[x] != kUnset) continue;
    const auto c = static_cast<std::uint32_t>(cs.reps.size());
    cs.reps.push_back(x);
    cs.class_of[x] = c;
    queue.assign(1, x);
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int k = 0; k < G.rank(); ++k) {
        Elt y = G.conj_gen(queue[i], k);
        if (cs.class_of[y] == kUnset) {
          cs.class_of[y] = c;
          queue.push_back(y);
        }
      }
    cs.sizes.push_back(static_cast<std::uint32_t>(queue.size()));
  }
  cs.offsets.assign(cs.reps.size() + 1, 0);
  for (std::size_t c = 0; c < cs.reps.size(); ++c) cs.offsets[c + 1] = cs.offsets[c] + cs.sizes[c];
  cs.members.resize(G.order());
  std::vector<std::uint32_t> fill(cs.offsets.begin(), cs.offsets.end() - 1);
  for (Elt x = 0; x < G.order(); ++x) cs.members[fill[cs.class_of[x]]++] = x;
  return cs;
}

std::vector<std::uint64_t> abelian_invariants(const PcGroup& G, const Subgroup& H) {
  if (!is_abelian(G, H)) throw InputError("abelian invariants requested for a non-abelian subgroup");
  // omega[k] = #{h : h^{p^k} = 1}
  std::vector<std::uint64_t> omega{1};
  std::vector<std::uint32_t> orders;
  for (Elt h : H.elements()) orders.push_back(G.element_order(h));
  for (std::uint64_t q = G.prime();; q *= G.prime()) {
    std::uint64_t cnt = 0;
    for (auto o : orders)
      if (q % o == 0) ++cnt;
    omega.push_back(cnt);
    if (cnt == H.order()) break;
  }
  // rank_ge[k] = number of cyclic factors of order >= p^k
  const std::size_t K = omega.size() - 1;
  std::vector<int> rank_ge(K + 2, 0);
  for (std::size_t k = 1; k <= K; ++k)
    rank_ge[k] = log_p(omega[k], G.prime()) - log_p(omega[k - 1], G.prime());
  std::vector<std::uint64_t> out;
  for (std::size_t k = 1; k <= K; ++k)
    for (int c = rank_ge[k] - rank_ge[k + 1]; c > 0; --c) out.push_back(ipow(G.prime(), static_cast<unsigned>(k)));
  return out;
}

std::uint64_t exponent(const PcGroup& G) {
  std::uint64_t e = 1;
  for (Elt x = 0; x < G.order(); ++x) e = std::max<std::uint64_t>(e, G.element_order(x));
  return e;
}

InducedPcgs induced_pcgs(const PcGroup& G, const Subgroup& H) {
  std::vector<Elt> best(G.rank(), 0);
  std::vector<bool> found(G.rank(), false);
  for (Elt x : H.elements()) {
    if (x == 0) continue;
    int d = G.depth(x);
    if (!found[d] && G.digit(x, d) == 1) {
      found[d] = true;
      best[d] = x;
    }
  }
  InducedPcgs out;
  for (int d = 0; d < G.rank(); ++d)
    if (found[d]) {
      out.depths.push_back(d);
      out.elements.push_back(best[d]);
    }
  if (ipow(G.prime(), static_cast<unsigned>(out.depths.size())) != H.order())
    throw InconsistencyError("induced generating sequence does not match subgroup order");
  return out;
}

QuotientGroup quotient(const PcGroup& G, const Subgroup& N) {
  if (!is_subgroup(G, N.elements())) throw InputError("quotient: N is not a subgroup");
  if (!is_normal(G, N)) throw InputError("quotient: N is not normal");
  const InducedPcgs pc = induced_pcgs(G, N);
  const int p = G.prime();

  std::vector<bool> in_n(G.rank(), false);
  for (int d : pc.depths) in_n[d] = true;
  std::vector<int> kept, new_index(G.rank(), -1);
  for (int i = 0; i < G.rank(); ++i)
    if (!in_n[i]) {
      new_index[i] = static_cast<int>(kept.size());
      kept.push_back(i);
    }

  // inv_pow[i][a] = n_i^{-a}
  std::vector<std::vector<Elt>> inv_pow(pc.elements.size(), std::vector<Elt>(p, 0));
  for (std::size_t i = 0; i < pc.elements.size(); ++i)
    for (int a = 1; a < p; ++a) inv_pow[i][a] = G.mul(inv_pow[i][a - 1], G.inv(pc.elements[i]));

  auto sift = [&](Elt y) {
    for (std::size_t i = 0; i < pc.depths.size(); ++i) {
      int a = G.digit(y, pc.depths[i]);
      if (a) y = G.mul(y, inv_pow[i][a]);
    }
    return y;
  };
  auto to_word = [&](Elt y) {
    Word w;
    for (int q : kept)
      if (int d = G.digit(y, q)) w.push_back({new_index[q], d});
    return w;
  };

  std::vector<std::string> names;
  for (int q : kept) names.push_back(G.presentation().generator_names()[q]);
  QuotientGroup Q{PcPresentation(G.presentation().name() + "/N", p, names), {}};
  for (std::size_t i = 0; i < kept.size(); ++i) {
    Elt gi = G.generator(kept[i]);
    Q.presentation.set_power(static_cast<int>(i), to_word(sift(G.pow(gi, p))));
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      Word w = to_word(sift(G.comm(G.generator(kept[j]), gi)));
      if (!w.empty()) Q.presentation.set_commutator(static_cast<int>(j), static_cast<int>(i), std::move(w));
    }
  }

  Q.projection.resize(G.order());
  for (Elt x = 0; x < G.order(); ++x) {
    Elt y = sift(x), q = 0;
    for (int k : kept) q = q * static_cast<Elt>(p) + static_cast<Elt>(G.digit(y, k));
    Q.projection[x] = q;
  }
  return Q;
}

}  // namespace pgclass
