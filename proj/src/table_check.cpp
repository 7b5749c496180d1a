#include <unordered_map>

#include "pgclass/char_table.hpp"
#include "pgclass/numtheory.hpp"

namespace pgclass {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 q) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % q); }

u64 powmod(u64 a, u64 k, u64 q) {
  u64 r = 1 % q;
  for (; k; k >>= 1, a = mulmod(a, a, q))
    if (k & 1) r = mulmod(r, a, q);
  return r;
}

u64 prime_above(u64 e, u64 bound) {
  u64 q = bound + 1;
  q += (e - (q - 1) % e) % e;
  while (!is_prime(q)) q += e;
  return q;
}

// Element of order e in F_q^*, e a power of p dividing q - 1.
u64 root_of_order(u64 e, u64 p, u64 q) {
  for (u64 a = 2;; ++a) {
    const u64 w = powmod(a, (q - 1) / e, q);
    if (e == 1 || powmod(w, e / p, q) != 1) return w;
  }
}

struct IdVectorHash {
  std::size_t operator()(const std::vector<std::int32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h = h * 1000003u ^ static_cast<std::size_t>(x);
    return h;
  }
};

class Checker {
 public:
  explicit Checker(const CharacterTable& T)
      : T_(T), G_(T.group()), C_(T.classes()), k_(T.size()), e_(T.exponent()) {}

  TableCheck run() {
    TableCheck r;
    auto step = [&](bool& flag, bool ok, const char* what) {
      flag = ok;
      if (!ok && r.failure.empty()) r.failure = what;
      return ok;
    };
    if (!step(r.square, T_.degrees().size() == C_.count(), "table is not square")) return r;
    setup_field();
    if (!step(r.integral, images(), "a value is not an algebraic integer")) return r;
    if (!step(r.galois_closed, galois_closed(), "rows are not closed under the Galois action")) return r;
    u64 sum = 0;
    for (auto d : T_.degrees()) sum += d * d;
    step(r.sum_of_squares, sum == G_.order(), "sum of squared degrees differs from |G|");
    const Subgroup Z = center(G_);
    bool divide = true;
    for (auto d : T_.degrees()) divide = divide && (G_.order() / Z.order()) % (d * d) == 0;
    step(r.degrees_divide, divide, "a squared degree does not divide |G : Z(G)|");
    step(r.central, central(Z), "a row is not equivariant under Z(G)");
    step(r.linear, linear(), "linear rows are not the characters of G/G'");
    if (r.central && r.linear) {
      step(r.rows_orthogonal, rows(), "row orthogonality fails");
      step(r.columns_orthogonal, columns(), "column orthogonality fails");
    }
    return r;
  }

 private:
  void setup_field() {
    u64 dmax = 1;
    for (auto d : T_.degrees()) dmax = std::max(dmax, d);
    // |sum_c |c| chi(c) psi(c)^*| <= |G| chi(1) psi(1), and every other checked
    // quantity is smaller.
    q_ = prime_above(e_, 2 * (u64{G_.order()} * dmax * dmax + G_.order()));
    const u64 w = root_of_order(e_, static_cast<u64>(G_.prime()), q_);
    pow_.resize(e_);
    pow_[0] = 1;
    for (u64 i = 1; i < e_; ++i) pow_[i] = mulmod(pow_[i - 1], w, q_);
  }

  bool images() {
    const std::size_t n = T_.distinct_values();
    const mpz_class modulus(static_cast<unsigned long>(q_));
    img_.resize(n);
    img_conj_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Cyclotomic& v = T_.value_of_id(static_cast<std::int32_t>(i));
      const u64 scale = e_ / static_cast<u64>(v.order());
      u64 a = 0, b = 0;
      for (const auto& [k, c] : v.terms()) {
        if (c.get_den() != 1) return false;
        mpz_class m = c.get_num() % modulus;
        if (m < 0) m += modulus;
        const u64 cm = m.get_ui();
        const u64 j = static_cast<u64>(k) * scale % e_;
        a = (a + mulmod(cm, pow_[j], q_)) % q_;
        b = (b + mulmod(cm, pow_[(e_ - j) % e_], q_)) % q_;
      }
      img_[i] = a;
      img_conj_[i] = b;
    }
    return true;
  }

  bool galois_closed() const {
    if (e_ <= 2) return true;
    // The unit group mod a power of an odd prime is cyclic.
    const u64 p = static_cast<u64>(G_.prime());
    u64 g = 2;
    while (powmod(g, p - 1, p * p) == 1 || !is_generator_mod_p(g, p)) ++g;
    std::unordered_map<std::string, std::int32_t> ids;
    for (std::size_t i = 0; i < T_.distinct_values(); ++i)
      ids.emplace(T_.value_of_id(static_cast<std::int32_t>(i)).to_string(), static_cast<std::int32_t>(i));
    std::vector<std::int32_t> image(T_.distinct_values());
    for (std::size_t i = 0; i < image.size(); ++i) {
      auto it = ids.find(T_.value_of_id(static_cast<std::int32_t>(i)).embed(static_cast<std::int64_t>(e_)).galois(static_cast<std::int64_t>(g)).to_string());
      if (it == ids.end()) return false;
      image[i] = it->second;
    }
    std::unordered_map<std::vector<std::int32_t>, std::size_t, IdVectorHash> rows;
    for (std::size_t r = 0; r < k_; ++r) rows.emplace(row_ids(r), r);
    for (std::size_t r = 0; r < k_; ++r) {
      std::vector<std::int32_t> v = row_ids(r);
      for (auto& x : v) x = image[x];
      if (!rows.count(v)) return false;
    }
    return true;
  }

  static bool is_generator_mod_p(u64 g, u64 p) {
    for (u64 f : prime_divisors(p - 1))
      if (powmod(g, (p - 1) / f, p) == 1) return false;
    return true;
  }

  std::vector<std::int32_t> row_ids(std::size_t r) const {
    std::vector<std::int32_t> v(k_);
    for (std::size_t c = 0; c < k_; ++c) v[c] = T_.id(r, c);
    return v;
  }

  u64 at(std::size_t r, std::size_t c) const { return img_[T_.id(r, c)]; }
  u64 at_conj(std::size_t r, std::size_t c) const { return img_conj_[T_.id(r, c)]; }

  bool central(const Subgroup& Z) {
    lambda_.assign(k_, {});
    for (std::size_t r = 0; r < k_; ++r) {
      const u64 dinv = powmod(T_.degree(r) % q_, q_ - 2, q_);
      for (Elt z : Z.generators()) {
        const u64 l = mulmod(at(r, C_.class_of[z]), dinv, q_);
        lambda_[r].push_back(l);
        for (std::size_t c = 0; c < k_; ++c)
          if (at(r, C_.class_of[G_.mul(z, C_.reps[c])]) != mulmod(l, at(r, c), q_)) return false;
      }
    }
    return true;
  }

  // chi is linear: chi(g) = prod chi(x_i)^{a_i} for g = prod x_i^{a_i}, and
  // these generator values satisfy every relation of the presentation.
  bool linear() {
    const int n = G_.rank();
    const u64 p = static_cast<u64>(G_.prime());
    const Subgroup D = derived_subgroup(G_);
    std::size_t count = 0;
    std::unordered_map<std::vector<std::int32_t>, int, IdVectorHash> seen;
    for (std::size_t r = 0; r < k_; ++r) {
      if (T_.degree(r) != 1) continue;
      ++count;
      if (!seen.emplace(row_ids(r), 0).second) return false;
      std::vector<u64> gen(n);
      for (int i = 0; i < n; ++i) gen[i] = at(r, C_.class_of[G_.generator(i)]);
      auto f = [&](Elt x) {
        u64 v = 1;
        for (int i = 0; i < n; ++i) v = mulmod(v, powmod(gen[i], static_cast<u64>(G_.digit(x, i)), q_), q_);
        return v;
      };
      for (int i = 0; i < n; ++i) {
        if (powmod(gen[i], p, q_) != f(G_.pow(G_.generator(i), G_.prime()))) return false;
        for (int j = 0; j < i; ++j)
          if (f(G_.comm(G_.generator(i), G_.generator(j))) != 1) return false;
      }
      for (std::size_t c = 0; c < k_; ++c)
        if (at(r, c) != f(C_.reps[c])) return false;
    }
    n_linear_ = count;
    if (count * D.order() != G_.order()) return false;
    const QuotientGroup Q = quotient(G_, D);
    coset_.resize(k_);
    for (std::size_t c = 0; c < k_; ++c) coset_[c] = Q.projection[C_.reps[c]];
    return true;
  }

  std::vector<std::size_t> support(std::size_t r) const {
    std::vector<std::size_t> s;
    for (std::size_t c = 0; c < k_; ++c)
      if (!T_.is_zero(r, c)) s.push_back(c);
    return s;
  }

  bool rows() {
    supports_.resize(k_);
    for (std::size_t r = 0; r < k_; ++r) supports_[r] = support(r);
    std::map<std::vector<u64>, std::vector<std::size_t>> blocks;
    for (std::size_t r = 0; r < k_; ++r) blocks[lambda_[r]].push_back(r);
    const u64 order = G_.order() % q_;
    for (const auto& [lam, rs] : blocks)
      for (std::size_t a = 0; a < rs.size(); ++a)
        for (std::size_t b = a; b < rs.size(); ++b) {
          const std::size_t x = rs[a], y = rs[b];
          if (x != y && T_.degree(x) == 1 && T_.degree(y) == 1) continue;
          const auto& s = supports_[x].size() <= supports_[y].size() ? supports_[x] : supports_[y];
          u64 sum = 0;
          for (std::size_t c : s) sum = (sum + mulmod(C_.size(c), mulmod(at(x, c), at_conj(y, c), q_), q_)) % q_;
          if (sum != (x == y ? order : 0)) return false;
        }
    return true;
  }

  bool columns() const {
    std::vector<std::vector<std::size_t>> rows_at(k_);
    for (std::size_t r = 0; r < k_; ++r)
      if (T_.degree(r) > 1)
        for (std::size_t c : supports_[r]) rows_at[c].push_back(r);
    std::vector<u64> acc(k_);
    const u64 linear = n_linear_ % q_;
    for (std::size_t g = 0; g < k_; ++g) {
      for (std::size_t h = 0; h < k_; ++h) acc[h] = coset_[g] == coset_[h] ? linear : 0;
      for (std::size_t r : rows_at[g]) {
        const u64 v = at(r, g);
        for (std::size_t h : supports_[r]) acc[h] = (acc[h] + mulmod(v, at_conj(r, h), q_)) % q_;
      }
      for (std::size_t h = 0; h < k_; ++h)
        if (acc[h] != (g == h ? (G_.order() / C_.size(g)) % q_ : 0)) return false;
    }
    return true;
  }

  const CharacterTable& T_;
  const PcGroup& G_;
  const ConjugacyClassSet& C_;
  const std::size_t k_;
  const u64 e_;
  u64 q_ = 0;
  std::vector<u64> pow_, img_, img_conj_;
  std::vector<std::vector<u64>> lambda_;
  std::vector<std::vector<std::size_t>> supports_;
  std::vector<Elt> coset_;
  std::size_t n_linear_ = 0;
};

}  // namespace

TableCheck check_table(const CharacterTable& T) { return Checker(T).run(); }

}  // namespace pgclass
