#include "pgclass/char_table.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "pgclass/error.hpp"
#include "pgclass/modular.hpp"
#include "pgclass/numtheory.hpp"

namespace pgclass {

namespace {

using u64 = std::uint64_t;
using Key = std::vector<std::pair<std::int64_t, std::int64_t>>;      // canonical terms
using Mults = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // root exponent, multiplicity

// The auxiliary prime failed to separate characters or degrees.
struct SplitFailure {};

struct Field {
  u64 e, q;
  std::vector<u64> zpow;  // zpow[a] = zeta^a, zeta of order e in F_q
  std::unordered_map<u64, std::uint32_t> dlog;

  Field(u64 e_, u64 q_) : e(e_), q(q_), zpow(e_) {
    const u64 zeta = modq::pow(modq::primitive_root(q), (q - 1) / e, q);
    u64 x = 1;
    dlog.reserve(e);
    for (u64 a = 0; a < e; ++a) {
      zpow[a] = x;
      dlog[x] = static_cast<std::uint32_t>(a);
      x = x * zeta % q;
    }
  }
};

Key key_of(u64 e, const Mults& m) {
  std::map<std::int64_t, std::int64_t> c;
  for (auto [a, n] : m) c[a] += n;
  reduce_to_basis(static_cast<std::int64_t>(e), c);
  return Key(c.begin(), c.end());
}

// Interned character values. Id 0 is zero. Thread-safe.
class Pool {
 public:
  explicit Pool(u64 e) : e_(e) { intern({}, {}); }

  std::int32_t root(u64 c, u64 a) {
    std::lock_guard lock(mu_);
    const u64 k = (c << 32) | a;
    auto it = root_cache_.find(k);
    if (it != root_cache_.end()) return it->second;
    Mults m{{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(c)}};
    Key key = key_of(e_, m);
    const std::int32_t id = intern(std::move(key), std::move(m));
    root_cache_.emplace(k, id);
    return id;
  }

  std::int32_t from_mults(Mults m) {
    std::sort(m.begin(), m.end());
    Key k = key_of(e_, m);
    std::lock_guard lock(mu_);
    return intern(std::move(k), std::move(m));
  }

  /// id of zeta^b times the value.
  std::int32_t shift(std::int32_t id, u64 b) {
    if (id == 0 || b == 0) return id;
    Mults m;
    {
      std::lock_guard lock(mu_);
      auto it = shift_cache_.find((static_cast<u64>(id) << 32) | b);
      if (it != shift_cache_.end()) return it->second;
      m = mults_[id];
    }
    for (auto& [a, n] : m) a = static_cast<std::uint32_t>((a + b) % e_);
    const std::int32_t r = from_mults(std::move(m));
    std::lock_guard lock(mu_);
    shift_cache_.emplace((static_cast<u64>(id) << 32) | b, r);
    return r;
  }

  Mults mults(std::int32_t id) {
    std::lock_guard lock(mu_);
    return mults_[id];
  }

  // Single-threaded accessors for finalization.
  const std::vector<Key>& keys() const { return keys_; }

 private:
  std::int32_t intern(Key k, Mults m) {
    auto [it, fresh] = index_.emplace(std::move(k), static_cast<std::int32_t>(keys_.size()));
    if (fresh) {
      keys_.push_back(it->first);
      mults_.push_back(std::move(m));
    }
    return it->second;
  }

  std::mutex mu_;
  u64 e_;
  std::map<Key, std::int32_t> index_;
  std::vector<Key> keys_;
  std::vector<Mults> mults_;
  std::unordered_map<u64, std::int32_t> root_cache_;
  std::unordered_map<u64, std::int32_t> shift_cache_;
};

struct Context {
  int p;
  Field F;
  Pool pool;
  int threads;
};

struct Level {
  std::vector<u64> degrees;
  std::vector<std::int32_t> entries;  // row-major, one column per class
  // lam[r][t]: row r restricted to Z(G) is degree * lambda, lambda(z_t) = zeta^lam[r][t]
  std::vector<std::vector<std::uint32_t>> lam;
};

// Linear characters of an abelian subgroup H through its induced pcgs.
struct Dual {
  InducedPcgs pc;
  std::vector<std::vector<Elt>> inv_pow;             // inv_pow[t][a] = z_t^-a
  std::vector<std::vector<std::uint32_t>> chars;     // chars[c][t]: exponent of lambda_c(z_t); chars[0] trivial
};

std::vector<std::uint32_t> sift(const PcGroup& G, const Dual& D, Elt x) {
  std::vector<std::uint32_t> out(D.pc.depths.size(), 0);
  for (std::size_t t = 0; t < out.size(); ++t) {
    const int a = G.digit(x, D.pc.depths[t]);
    out[t] = static_cast<std::uint32_t>(a);
    if (a) x = G.mul(D.inv_pow[t][a], x);
  }
  if (x != 0) throw InconsistencyError("element outside the abelian subgroup being sifted");
  return out;
}

Dual dual_of(const PcGroup& G, const Subgroup& H, u64 e) {
  Dual D;
  D.pc = induced_pcgs(G, H);
  const int p = G.prime();
  const std::size_t r = D.pc.elements.size();
  D.inv_pow.assign(r, std::vector<Elt>(p, 0));
  for (std::size_t t = 0; t < r; ++t)
    for (int a = 1; a < p; ++a) D.inv_pow[t][a] = G.mul(D.inv_pow[t][a - 1], G.inv(D.pc.elements[t]));
  std::vector<std::vector<std::uint32_t>> rel(r);
  for (std::size_t t = 0; t < r; ++t) rel[t] = sift(G, D, G.pow(D.pc.elements[t], p));

  // p * w_t = sum_{s > t} rel[t][s] w_s (mod e), solved from the bottom.
  std::vector<std::vector<std::uint32_t>> partial{std::vector<std::uint32_t>(r, 0)};
  for (std::size_t t = r; t-- > 0;) {
    std::vector<std::vector<std::uint32_t>> next;
    next.reserve(partial.size() * p);
    for (const auto& w : partial) {
      u64 rhs = 0;
      for (std::size_t s = t + 1; s < r; ++s) rhs = (rhs + u64{rel[t][s]} * w[s]) % e;
      if (rhs % p) throw InconsistencyError("power relation has no solution in the dual group");
      for (int j = 0; j < p; ++j) {
        auto w2 = w;
        w2[t] = static_cast<std::uint32_t>((rhs / p + j * (e / p)) % e);
        next.push_back(std::move(w2));
      }
    }
    partial = std::move(next);
  }
  D.chars = std::move(partial);
  return D;
}

u64 lambda_at(const std::vector<std::uint32_t>& w, const std::vector<std::uint32_t>& exps, u64 e) {
  u64 a = 0;
  for (std::size_t t = 0; t < w.size(); ++t) a += u64{w[t]} * exps[t];
  return a % e;
}

// Runs f(i) for i in [0, n) on up to `threads` workers and rethrows the first exception.
template <class F>
void parallel_for(std::size_t n, int threads, F f) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err) err = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Data shared by all blocks of one level.
struct LevelData {
  const PcGroup& G;
  const ConjugacyClassSet& C;
  std::size_t zsize;
  std::vector<std::uint32_t> orbit_of, shift_of;  // class -> orbit, and z index with K_c = z K_rep
  std::vector<std::uint32_t> orbit_rep;           // orbit -> class
  std::vector<std::vector<std::uint32_t>> stab;   // orbit -> z indices fixing the rep class
  std::vector<std::uint32_t> inv_class;
  std::vector<u64> hinv;                          // 1/|K_c| mod q
  std::vector<std::vector<std::uint32_t>> powcls;  // orbit -> class of rep^j, j < order
};

struct Lifted {
  enum Kind { zero, root, general } kind = zero;
  u64 a = 0;
  Mults mults;
  std::int32_t id = 0;
};

struct BlockResult {
  std::vector<u64> degrees;
  std::vector<std::int32_t> entries;
};

BlockResult run_block(const LevelData& L, const std::vector<std::uint32_t>& lam, Context& ctx) {
  const Field& F = ctx.F;
  const u64 q = F.q, e = F.e;
  const int p = ctx.p;
  const auto& C = L.C;
  const std::size_t k = C.count();
  const std::size_t norbits = L.orbit_rep.size();

  std::vector<std::uint32_t> compat;
  std::vector<int> cidx(norbits, -1);
  for (std::size_t o = 0; o < norbits; ++o) {
    bool ok = true;
    for (auto z : L.stab[o])
      if (lam[z] != 0) {
        ok = false;
        break;
      }
    if (ok) {
      cidx[o] = static_cast<int>(compat.size());
      compat.push_back(static_cast<std::uint32_t>(o));
    }
  }
  const std::size_t m = compat.size();
  if (m == 0 || compat[0] != 0) throw InconsistencyError("identity orbit is not compatible with a central character");

  auto mrow = [&](std::size_t j, std::uint32_t ci) {
    std::vector<u64> row(m, 0);
    const Elt gi = C.reps[ci];
    const u64 hi = C.size(ci) % q;
    const std::uint32_t c0 = L.orbit_rep[compat[j]];
    for (const Elt* y = C.begin(c0); y != C.end(c0); ++y) {
      const std::uint32_t c = C.class_of[L.G.mul(gi, *y)];
      const int t = cidx[L.orbit_of[c]];
      if (t < 0) continue;
      row[t] = (row[t] + hi * L.hinv[c] % q * F.zpow[lam[L.shift_of[c]]]) % q;
    }
    return row;
  };

  // Split F_q^m into common eigenspaces of the class sums, smallest classes first.
  std::vector<std::size_t> order(m > 0 ? m - 1 : 0);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return C.size(L.orbit_rep[compat[a]]) < C.size(L.orbit_rep[compat[b]]);
  });
  std::vector<modq::Matrix> subs;
  {
    modq::Matrix I(m, m);
    for (std::size_t i = 0; i < m; ++i) I(i, i) = 1;
    subs.push_back(std::move(I));
  }
  for (std::size_t j : order) {
    if (std::all_of(subs.begin(), subs.end(), [](const modq::Matrix& S) { return S.rows == 1; })) break;
    const std::uint32_t ci = L.orbit_rep[compat[j]];
    std::map<std::size_t, std::vector<u64>> rows;
    std::vector<modq::Matrix> next;
    for (auto& S : subs) {
      if (S.rows == 1) {
        next.push_back(std::move(S));
        continue;
      }
      const std::size_t t = S.rows;
      std::vector<std::size_t> piv(t);
      for (std::size_t u = 0; u < t; ++u) {
        std::size_t c = 0;
        while (S(u, c) == 0) ++c;
        piv[u] = c;
      }
      modq::Matrix A(t, t);
      for (std::size_t u = 0; u < t; ++u) {
        auto it = rows.find(piv[u]);
        if (it == rows.end()) it = rows.emplace(piv[u], mrow(piv[u], ci)).first;
        const auto& r = it->second;
        for (std::size_t s = 0; s < t; ++s) {
          u64 acc = 0;
          for (std::size_t o = 0; o < m; ++o)
            if (r[o] && S(s, o)) acc = (acc + r[o] * S(s, o)) % q;
          A(u, s) = acc;
        }
      }
      const auto rts = modq::roots(modq::charpoly(A, q), q);
      if (rts.size() == 1) {
        next.push_back(std::move(S));
        continue;
      }
      std::size_t total = 0;
      for (u64 r : rts) {
        modq::Matrix B = A;
        for (std::size_t i = 0; i < t; ++i) B(i, i) = modq::sub(B(i, i), r, q);
        const modq::Matrix N = modq::nullspace(std::move(B), q);
        modq::Matrix S2(N.rows, m);
        for (std::size_t x = 0; x < N.rows; ++x)
          for (std::size_t s = 0; s < t; ++s) {
            const u64 c = N(x, s);
            if (!c) continue;
            for (std::size_t o = 0; o < m; ++o) S2(x, o) = (S2(x, o) + c * S(s, o)) % q;
          }
        modq::rref(S2, q);
        total += S2.rows;
        next.push_back(std::move(S2));
      }
      if (total != t) throw SplitFailure{};
    }
    subs = std::move(next);
  }
  for (const auto& S : subs)
    if (S.rows != 1) throw SplitFailure{};

  const u64 order_g = L.G.order();
  const u64 quot = order_g / L.zsize;
  BlockResult out;
  out.entries.assign(m * k, 0);
  std::vector<std::vector<Lifted>> lifted(m);

  for (std::size_t x = 0; x < m; ++x) {
    std::vector<u64> v(m);
    if (subs[x](0, 0) == 0) throw SplitFailure{};
    const u64 s0 = modq::inv(subs[x](0, 0), q);
    for (std::size_t o = 0; o < m; ++o) v[o] = subs[x](0, o) * s0 % q;

    // Degree from sum over g of |chi(g)|^2 = |G|.
    u64 S = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint32_t c = L.orbit_rep[compat[j]];
      const std::uint32_t cs = L.inv_class[c];
      const int js = cidx[L.orbit_of[cs]];
      if (js < 0) throw InconsistencyError("inverse class lies in an incompatible orbit");
      const u64 w_inv = F.zpow[lam[L.shift_of[cs]]] * v[js] % q;
      const u64 weight = (L.zsize / L.stab[compat[j]].size()) % q;
      S = (S + weight * v[j] % q * w_inv % q * L.hinv[c]) % q;
    }
    if (S == 0) throw SplitFailure{};
    const u64 d2 = order_g % q * modq::inv(S, q) % q;
    u64 d = 0;
    int matches = 0;
    for (u64 c = 1; c * c <= quot; c *= static_cast<u64>(p))
      if (c * c % q == d2) {
        d = c;
        ++matches;
      }
    if (matches != 1) throw SplitFailure{};
    out.degrees.push_back(d);

    std::vector<u64> u(m);
    for (std::size_t j = 0; j < m; ++j) u[j] = d * v[j] % q * L.hinv[L.orbit_rep[compat[j]]] % q;
    auto value_q = [&](std::uint32_t c) -> u64 {
      const int j = cidx[L.orbit_of[c]];
      return j < 0 ? 0 : F.zpow[lam[L.shift_of[c]]] * u[j] % q;
    };
    const u64 dinv = modq::inv(d, q);

    auto& lift = lifted[x];
    lift.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& pw = L.powcls[compat[j]];
      const u64 o = pw.size();
      const u64 val = value_q(L.orbit_rep[compat[j]]);
      auto all_coprime = [&](auto pred) {
        for (u64 t = 1; t < o; ++t)
          if (t % p && !pred(t, value_q(pw[t]))) return false;
        return true;
      };
      Lifted& Lj = lift[j];
      // A value that vanishes at every prime over q has norm divisible by
      // q^phi(o) but absolute values below q/2, so it is zero; the same bound
      // applies to chi(g) - d zeta^a.
      if (val == 0 && all_coprime([](u64, u64 y) { return y == 0; })) {
        Lj.kind = Lifted::zero;
        continue;
      }
      auto it = F.dlog.find(val * dinv % q);
      if (it != F.dlog.end()) {
        const u64 a = it->second;
        if (all_coprime([&](u64 t, u64 y) { return y == d * F.zpow[a * t % e] % q; })) {
          Lj.kind = Lifted::root;
          Lj.a = a;
          Lj.mults = {{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(d)}};
          continue;
        }
      }
      // Eigenvalue multiplicities of the representation at g.
      const u64 step = e / o;
      std::vector<u64> y(o);
      for (u64 t = 0; t < o; ++t) y[t] = value_q(pw[t]);
      const u64 oinv = modq::inv(o % q, q);
      Mults mu;
      u64 total = 0;
      for (u64 b = 0; b < o; ++b) {
        u64 acc = 0;
        for (u64 t = 0; t < o; ++t) acc = (acc + y[t] * F.zpow[(e - (b * t % o) * step) % e]) % q;
        acc = acc * oinv % q;
        if (acc > d) throw InconsistencyError("eigenvalue multiplicity out of range while lifting a character value");
        if (acc) mu.emplace_back(static_cast<std::uint32_t>(b * step), static_cast<std::uint32_t>(acc));
        total += acc;
      }
      if (total != d) throw InconsistencyError("eigenvalue multiplicities do not sum to the degree");
      Lj.kind = Lifted::general;
      Lj.mults = mu;
      Lj.id = ctx.pool.from_mults(std::move(mu));
    }

    std::unordered_map<u64, std::int32_t> root_ids, general_ids;
    std::int32_t* row = out.entries.data() + x * k;
    for (std::size_t c = 0; c < k; ++c) {
      const int j = cidx[L.orbit_of[c]];
      if (j < 0) continue;
      const Lifted& Lj = lift[j];
      if (Lj.kind == Lifted::zero) continue;
      const u64 b = lam[L.shift_of[c]];
      std::int32_t id;
      if (Lj.kind == Lifted::root) {
        const u64 a = (Lj.a + b) % e;
        auto f = root_ids.find(a);
        id = f != root_ids.end() ? f->second : root_ids.emplace(a, ctx.pool.root(d, a)).first->second;
      } else {
        const u64 key = static_cast<u64>(j) * e + b;
        auto f = general_ids.find(key);
        id = f != general_ids.end() ? f->second : general_ids.emplace(key, ctx.pool.shift(Lj.id, b)).first->second;
      }
      row[c] = id;
    }
  }

  // Orthogonality inside the block, summed orbit by orbit: the product
  // chi * conj(psi) is constant on each orbit when both lie over lambda.
  u64 sumsq = 0;
  for (u64 d : out.degrees) sumsq += d * d;
  if (sumsq != quot) throw InconsistencyError("degrees in a central block do not sum to |G/Z|");
  std::vector<std::int64_t> acc(e, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = x; y < m; ++y) {
      touched.clear();
      for (std::size_t j = 0; j < m; ++j) {
        const auto& A = lifted[x][j].mults;
        const auto& B = lifted[y][j].mults;
        if (A.empty() || B.empty()) continue;
        const std::int64_t w =
            static_cast<std::int64_t>(L.zsize / L.stab[compat[j]].size()) * C.size(L.orbit_rep[compat[j]]);
        for (auto [a, ma] : A)
          for (auto [b, mb] : B) {
            const std::uint32_t s = static_cast<std::uint32_t>((a + e - b) % e);
            if (acc[s] == 0) touched.push_back(s);
            acc[s] += w * ma * mb;
          }
      }
      std::map<std::int64_t, std::int64_t> sum;
      for (auto s : touched) {
        if (acc[s]) sum[s] += acc[s];
        acc[s] = 0;
      }
      reduce_to_basis(static_cast<std::int64_t>(e), sum);
      const bool ok = x == y ? (sum.size() == 1 && sum.begin()->first == 0 &&
                                sum.begin()->second == static_cast<std::int64_t>(order_g))
                             : sum.empty();
      if (!ok) throw InconsistencyError("orthogonality relation fails inside a central block");
    }
  return out;
}

Level compute_level(const PcGroup& G, const ConjugacyClassSet& C, Context& ctx);

Level abelian_level(const PcGroup& G, const ConjugacyClassSet& C, Context& ctx) {
  const u64 e = ctx.F.e;
  const Dual D = dual_of(G, whole_group(G), e);
  const std::size_t k = C.count();
  Level L;
  L.degrees.assign(D.chars.size(), 1);
  L.entries.assign(D.chars.size() * k, 0);
  std::vector<std::vector<std::uint32_t>> exps(k);
  for (std::size_t c = 0; c < k; ++c) exps[c] = sift(G, D, C.reps[c]);
  std::vector<std::int32_t> root_id(e, -1);
  for (std::size_t r = 0; r < D.chars.size(); ++r)
    for (std::size_t c = 0; c < k; ++c) {
      const u64 a = lambda_at(D.chars[r], exps[c], e);
      if (root_id[a] < 0) root_id[a] = ctx.pool.root(1, a);
      L.entries[r * k + c] = root_id[a];
    }
  if (L.degrees.size() != k) throw InconsistencyError("abelian group has the wrong number of linear characters");
  auto sorted = D.chars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InconsistencyError("repeated linear character");
  L.lam = D.chars;
  return L;
}

Level compute_level(const PcGroup& G, const ConjugacyClassSet& C, Context& ctx) {
  if (is_abelian(G)) return abelian_level(G, C, ctx);
  const u64 q = ctx.F.q, e = ctx.F.e;
  const std::size_t k = C.count();

  const Subgroup Z = center(G);
  const Dual D = dual_of(G, Z, e);
  const std::size_t nz = Z.order();

  // Trivial central character: characters of G/Z.
  Level out;
  {
    QuotientGroup Q = quotient(G, Z);
    const PcGroup GQ(std::move(Q.presentation), false);
    const ConjugacyClassSet CQ = conjugacy_classes(GQ);
    const Level sub = compute_level(GQ, CQ, ctx);
    const std::size_t kq = CQ.count();
    std::vector<std::uint32_t> qcls(k);
    for (std::size_t c = 0; c < k; ++c) qcls[c] = CQ.class_of[Q.projection[C.reps[c]]];
    out.degrees = sub.degrees;
    out.entries.resize(sub.degrees.size() * k);
    for (std::size_t r = 0; r < sub.degrees.size(); ++r)
      for (std::size_t c = 0; c < k; ++c) out.entries[r * k + c] = sub.entries[r * kq + qcls[c]];
    out.lam.assign(sub.degrees.size(), std::vector<std::uint32_t>(D.pc.elements.size(), 0));
  }

  LevelData L{G, C, nz, {}, {}, {}, {}, {}, {}, {}};
  std::vector<std::vector<std::uint32_t>> zexp(nz);
  for (std::size_t i = 0; i < nz; ++i) zexp[i] = sift(G, D, Z.elements()[i]);

  constexpr std::uint32_t unset = UINT32_MAX;
  L.orbit_of.assign(k, unset);
  L.shift_of.assign(k, 0);
  for (std::uint32_t c = 0; c < k; ++c) {
    if (L.orbit_of[c] != unset) continue;
    const auto o = static_cast<std::uint32_t>(L.orbit_rep.size());
    L.orbit_rep.push_back(c);
    L.stab.emplace_back();
    for (std::uint32_t zi = 0; zi < nz; ++zi) {
      const std::uint32_t c2 = C.class_of[G.mul(Z.elements()[zi], C.reps[c])];
      if (c2 == c) L.stab[o].push_back(zi);
      if (L.orbit_of[c2] == unset) {
        L.orbit_of[c2] = o;
        L.shift_of[c2] = zi;
      }
    }
  }
  L.inv_class.resize(k);
  L.hinv.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    L.inv_class[c] = C.class_of[G.inv(C.reps[c])];
    L.hinv[c] = modq::inv(C.size(c) % q, q);
  }
  L.powcls.resize(L.orbit_rep.size());
  for (std::size_t o = 0; o < L.orbit_rep.size(); ++o) {
    const Elt g = C.reps[L.orbit_rep[o]];
    const std::uint32_t ord = G.element_order(g);
    auto& pc = L.powcls[o];
    pc.resize(ord);
    Elt x = 0;
    for (std::uint32_t j = 0; j < ord; ++j) {
      pc[j] = C.class_of[x];
      x = G.mul(x, g);
    }
  }

  const std::size_t nblocks = D.chars.size() - 1;
  std::vector<BlockResult> results(nblocks);
  std::vector<std::vector<std::uint32_t>> lams(nblocks, std::vector<std::uint32_t>(nz));
  for (std::size_t b = 0; b < nblocks; ++b)
    for (std::size_t i = 0; i < nz; ++i) lams[b][i] = static_cast<std::uint32_t>(lambda_at(D.chars[b + 1], zexp[i], e));
  parallel_for(nblocks, ctx.threads, [&](std::size_t b) { results[b] = run_block(L, lams[b], ctx); });

  for (std::size_t b = 0; b < nblocks; ++b) {
    out.degrees.insert(out.degrees.end(), results[b].degrees.begin(), results[b].degrees.end());
    out.entries.insert(out.entries.end(), results[b].entries.begin(), results[b].entries.end());
    out.lam.insert(out.lam.end(), results[b].degrees.size(), D.chars[b + 1]);
  }

  // Whole-level checks: row count, degree sum, and chi(z g) = lambda(z) chi(g)
  // for the generators of Z, which makes rows over different central
  // characters orthogonal.
  if (out.degrees.size() != k) throw InconsistencyError("number of characters differs from number of classes");
  u64 sumsq = 0;
  for (u64 d : out.degrees) sumsq += d * d;
  if (sumsq != G.order()) throw InconsistencyError("sum of squared degrees differs from |G|");
  for (std::size_t r = 0; r < k; ++r) {
    const u64 d = out.degrees[r];
    std::int32_t* row = out.entries.data() + r * k;
    if (row[0] != ctx.pool.root(d, 0)) throw InconsistencyError("identity value differs from the degree");
    for (std::size_t t = 0; t < D.pc.elements.size(); ++t) {
      const Elt z = D.pc.elements[t];
      const u64 a = out.lam[r][t];
      if (row[C.class_of[z]] != ctx.pool.root(d, a)) throw InconsistencyError("central value differs from d * lambda");
      std::unordered_map<std::int32_t, std::int32_t> shifted;
      for (std::size_t c = 0; c < k; ++c) {
        auto it = shifted.find(row[c]);
        if (it == shifted.end()) it = shifted.emplace(row[c], ctx.pool.shift(row[c], a)).first;
        if (row[C.class_of[G.mul(z, C.reps[c])]] != it->second)
          throw InconsistencyError("character is not equivariant under the center");
      }
    }
  }
  return out;
}

bool key_less(const Key& a, const Key& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    if (a[i].second != b[i].second) return a[i].second > b[i].second;
  }
  return a.size() < b.size();
}

// c when the value is c * zeta^a, else 0.
std::vector<std::int64_t> root_coefficients(const std::vector<Key>& keys, u64 e) {
  std::map<Key, u64> roots;
  for (u64 a = 0; a < e; ++a) roots.emplace(key_of(e, {{static_cast<std::uint32_t>(a), 1}}), a);
  std::vector<std::int64_t> out(keys.size(), 0);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].empty()) continue;
    const std::int64_t c = std::abs(keys[i][0].second);
    Key n = keys[i];
    bool divisible = true;
    for (auto& [x, v] : n) {
      if (v % c) divisible = false;
      v /= c;
    }
    if (!divisible) continue;
    if (roots.count(n)) {
      out[i] = c;
      continue;
    }
    for (auto& [x, v] : n) v = -v;
    if (roots.count(n)) out[i] = -c;
  }
  return out;
}

}  // namespace

std::vector<Cyclotomic> CharacterTable::row(std::size_t r) const {
  std::vector<Cyclotomic> out;
  out.reserve(size());
  for (std::size_t c = 0; c < size(); ++c) out.push_back(value(r, c));
  return out;
}

bool CharacterTable::equals_degree(std::size_t row, std::size_t cls) const {
  return value(row, cls).equals_rational(mpq_class(static_cast<unsigned long>(degrees_[row])));
}

bool CharacterTable::attains_degree(std::size_t row, std::size_t cls) const {
  const std::int64_t c = root_coeff_[id(row, cls)];
  return static_cast<std::uint64_t>(c < 0 ? -c : c) == degrees_[row];
}

std::map<std::uint64_t, std::size_t> CharacterTable::degree_multiset() const {
  std::map<std::uint64_t, std::size_t> m;
  for (auto d : degrees_) ++m[d];
  return m;
}

CharacterTable compute_table(std::shared_ptr<const PcGroup> G, const TableOptions& opt) {
  CharacterTable T;
  T.G_ = std::move(G);
  const PcGroup& g = *T.G_;
  T.C_ = conjugacy_classes(g);
  const std::size_t k = T.C_.count();
  if (k > CharacterTable::kMaxClasses)
    throw InputError("group has " + std::to_string(k) + " conjugacy classes; at most " +
                     std::to_string(CharacterTable::kMaxClasses) + " are supported");
  T.e_ = exponent(g);
  u64 bound = static_cast<u64>(std::sqrt(4.0 * static_cast<double>(g.order())));
  while (bound * bound > 4 * u64{g.order()}) --bound;
  while ((bound + 1) * (bound + 1) <= 4 * u64{g.order()}) ++bound;

  for (int attempt = 0; attempt < 4; ++attempt) {
    const u64 q = modq::prime_congruent_one(T.e_, bound);
    Context ctx{g.prime(), Field(T.e_, q), Pool(T.e_), opt.threads};
    Level L;
    try {
      L = compute_level(g, T.C_, ctx);
    } catch (const SplitFailure&) {
      bound = q;
      continue;
    }
    T.q_ = q;
    const auto& keys = ctx.pool.keys();
    std::vector<std::int32_t> by_value(keys.size());
    std::iota(by_value.begin(), by_value.end(), 0);
    std::sort(by_value.begin(), by_value.end(), [&](auto a, auto b) { return key_less(keys[a], keys[b]); });
    std::vector<std::int32_t> rank(keys.size());
    for (std::size_t i = 0; i < by_value.size(); ++i) rank[by_value[i]] = static_cast<std::int32_t>(i);

    std::vector<std::size_t> rows(k);
    std::iota(rows.begin(), rows.end(), 0);
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      if (L.degrees[a] != L.degrees[b]) return L.degrees[a] < L.degrees[b];
      for (std::size_t c = 0; c < k; ++c) {
        const auto ra = rank[L.entries[a * k + c]], rb = rank[L.entries[b * k + c]];
        if (ra != rb) return ra < rb;
      }
      return false;
    });
    T.degrees_.resize(k);
    T.entries_.resize(k * k);
    for (std::size_t r = 0; r < k; ++r) {
      T.degrees_[r] = L.degrees[rows[r]];
      std::copy_n(L.entries.begin() + static_cast<std::ptrdiff_t>(rows[r] * k), k,
                  T.entries_.begin() + static_cast<std::ptrdiff_t>(r * k));
    }
    T.values_.reserve(keys.size());
    for (const Key& key : keys) {
      std::vector<std::pair<std::int64_t, mpq_class>> terms;
      for (auto [a, c] : key) terms.emplace_back(a, mpq_class(static_cast<long>(c)));
      T.values_.push_back(Cyclotomic::from_terms(static_cast<std::int64_t>(T.e_), terms));
    }
    T.root_coeff_ = root_coefficients(keys, T.e_);
    for (std::size_t r = 0; r < k; ++r) {
      const u64 d = T.degrees_[r];
      if (log_p(d, static_cast<u64>(g.prime())) < 0) throw InconsistencyError("degree is not a power of p");
    }
    return T;
  }
  throw InconsistencyError("eigenspaces did not split for several auxiliary primes");
}

CharacterTable compute_table(const PcPresentation& P, const TableOptions& opt) {
  return compute_table(std::make_shared<const PcGroup>(P), opt);
}

std::vector<std::uint32_t> class_constants(const PcGroup& G, const ConjugacyClassSet& C) {
  const std::size_t k = C.count();
  if (k > 256) throw InputError("class constants are limited to 256 classes");
  std::vector<std::uint32_t> a(k * k * k, 0);
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t i = 0; i < k; ++i)
      for (const Elt* x = C.begin(i); x != C.end(i); ++x) {
        const std::size_t j = C.class_of[G.mul(G.inv(*x), C.reps[l])];
        ++a[(i * k + j) * k + l];
      }
  return a;
}

namespace {

Subgroup union_of_classes(const CharacterTable& T, std::size_t row, bool (CharacterTable::*pred)(std::size_t, std::size_t) const) {
  const auto& C = T.classes();
  std::vector<Elt> elts;
  for (std::size_t c = 0; c < C.count(); ++c)
    if ((T.*pred)(row, c)) elts.insert(elts.end(), C.begin(c), C.end(c));
  Subgroup H = subgroup_from_elements(T.group(), elts);
  if (!is_normal(T.group(), H)) throw InconsistencyError("union of classes is not a normal subgroup");
  return H;
}

}  // namespace

Subgroup character_kernel(const CharacterTable& T, std::size_t row) {
  return union_of_classes(T, row, &CharacterTable::equals_degree);
}

Subgroup character_center(const CharacterTable& T, std::size_t row) {
  return union_of_classes(T, row, &CharacterTable::attains_degree);
}

}  // namespace pgclass
