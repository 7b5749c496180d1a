#include "pgclass/verify_suite.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "pgclass/classify.hpp"
#include "pgclass/corpus.hpp"
#include "pgclass/error.hpp"
#include "pgclass/isoclinism.hpp"
#include "pgclass/numtheory.hpp"

namespace pgclass {

SuiteSummary SuiteResult::summary() const {
  SuiteSummary s;
  for (const auto& r : records) {
    if (r.status == "pass") ++s.pass;
    else if (r.status == "fail") ++s.fail;
    else ++s.skip;
  }
  return s;
}

nlohmann::ordered_json to_json(const SuiteResult& r) {
  nlohmann::ordered_json out;
  out["suite"] = r.suite;
  out["records"] = nlohmann::ordered_json::array();
  for (const auto& x : r.records)
    out["records"].push_back({{"check", x.check},
                              {"group", x.group},
                              {"p", x.p},
                              {"status", x.status},
                              {"citation", x.citation},
                              {"detail", x.detail}});
  const SuiteSummary s = r.summary();
  out["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"skip", s.skip}, {"total", r.records.size()}};
  return out;
}

namespace {

using Records = std::vector<SuiteRecord>;

// Runs tasks on up to `threads` workers and concatenates their records in task order.
Records run_tasks(const std::vector<std::pair<std::string, std::function<Records()>>>& tasks,
                  const SuiteOptions& opt) {
  std::vector<Records> out(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      out[i] = tasks[i].second();
      if (opt.progress) {
        std::lock_guard lock(progress_mutex);
        opt.progress(tasks[i].first);
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(opt.threads, 1)), 1, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  Records all;
  for (auto& r : out) all.insert(all.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return all;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string cd_string(const std::map<std::uint64_t, std::size_t>& cd) {
  std::string s;
  for (const auto& [d, n] : cd) s += (s.empty() ? "" : ", ") + std::to_string(d) + "x" + std::to_string(n);
  return "{" + s + "}";
}

class GroupRecords {
 public:
  GroupRecords(std::string group, int p) : group_(std::move(group)), p_(p) {}

  void add(std::string check, bool ok, std::string citation, std::string detail = "") {
    out_.push_back({std::move(check), group_, p_, ok ? "pass" : "fail", std::move(citation), std::move(detail)});
  }
  void skip(std::string check, std::string citation, std::string reason) {
    out_.push_back({std::move(check), group_, p_, "skip", std::move(citation), std::move(reason)});
  }
  Records take() { return std::move(out_); }

 private:
  std::string group_;
  int p_;
  Records out_;
};

const std::string kExact = "orthogonality relations, sum of squared degrees and chi(1)^2 | |G : Z(G)|";
const std::string kFlat = "a p-group is a GVZ-group exactly when it is flat";
const std::string kSpecial = "a character with chi(1)^2 = |G : Z(G)| vanishes off Z(G) and has Z(chi) = Z(G)";
const std::string kMonotone = "in a nested GVZ-group, chi(1) <= psi(1) implies Z(psi) <= Z(chi)";
const std::string kNil = "the nilpotency class of a GVZ-group is at most |cd(G)|";
const std::string kVzCamina = "G is a VZ-group exactly when (G, Z(G)) is a generalized Camina pair";
const std::string kCamina = "characters outside Irr(G/N) vanish off N and have degree |G : N|^(1/2) for a Camina pair (G, N)";
const std::string kLift = "a character of G/N has central type exactly when its inflation to G does";
const std::string kProduct = "direct product G x H: GVZ iff both are; nested iff both are and one factor is abelian";

// Generator whose normal closure is the subgroup K of the order p^5 quotients.
const std::map<std::string, std::string> kQuotientGenerator = {
    {"G_(17,1)", "a2"}, {"G_(18,1)", "a1"}, {"G_(19,1)", "b1"}, {"G_(20,1)", "a1"}};

struct Verdicts {
  bool gvz, nested, abelian;
};

Verdicts verdicts_of(const std::string& label, int p) {
  const CharacterTable T = compute_table(build(label, p));
  return {is_gvz(T), is_nested(T), T.size() == T.group().order()};
}

void group_checks(const CorpusEntry& e, int p, GroupRecords& out) {
  const CharacterTable T = compute_table(build(e.label, p));
  const PcGroup& G = T.group();
  const std::uint64_t pp = static_cast<std::uint64_t>(p);

  const TableCheck tc = check_table(T);
  out.add("table.exact", tc.ok(), kExact,
          "k = " + std::to_string(T.size()) + ", cd = " + cd_string(T.degree_multiset()) +
              (tc.ok() ? "" : ", " + tc.failure));

  const bool gvz = is_gvz(T), flat = is_flat(G), nested = is_nested(T);
  std::string vz_note;
  const bool vz = is_vz(T, &vz_note);
  out.add("flat_equals_gvz", flat == gvz, kFlat, std::string("flat ") + yes_no(flat) + ", gvz " + yes_no(gvz));
  auto verdict = [&](const char* name, bool expected, bool computed, const std::string& note = "") {
    out.add(std::string("verdict.") + name, expected == computed, e.citation,
            std::string("expected ") + yes_no(expected) + ", computed " + yes_no(computed) +
                (note.empty() ? "" : " (" + note + ")"));
  };
  verdict("gvz", e.expected.gvz, gvz);
  verdict("nested", e.expected.nested, nested);
  verdict("vz", e.expected.vz, vz, vz_note);

  const std::size_t special = [&] {
    const std::uint64_t z = center(G).order();
    std::size_t n = 0;
    for (auto d : T.degrees()) n += d * d * z == G.order();
    return n;
  }();
  const auto bad_special = check_special_degree(T);
  out.add("special_degree", bad_special.empty(), kSpecial,
          std::to_string(special) + " characters of that degree, " + std::to_string(bad_special.size()) +
              " violations");

  if (nested) {
    const std::size_t v = monotonicity_violations(T);
    out.add("nested_monotonicity", v == 0, kMonotone, std::to_string(v) + " violations");
  } else {
    out.skip("nested_monotonicity", kMonotone, "group is not nested");
  }

  const BoundStatus nil = check_nil_le_cd(T);
  const std::string nil_detail = "class " + std::to_string(nilpotency_class(G)) + ", |cd(G)| = " +
                                 std::to_string(T.degree_multiset().size());
  if (nil == BoundStatus::inapplicable)
    out.skip("nil_le_cd", kNil, "group is not GVZ; " + nil_detail);
  else
    out.add("nil_le_cd", nil == BoundStatus::holds, kNil, nil_detail);

  const bool abelian = T.size() == G.order();
  if (abelian) {
    out.skip("vz_gen_camina", kVzCamina, "abelian group");
    out.skip("camina_center", kCamina, "abelian group");
  } else {
    const Subgroup Z = center(G);
    const bool gen = is_gen_camina_pair(T, Z);
    out.add("vz_gen_camina", gen == vz, kVzCamina, std::string("gen. Camina ") + yes_no(gen) + ", vz " + yes_no(vz));
    if (is_camina_pair(T, Z)) {
      std::size_t over = 0, bad = 0;
      for (std::size_t r = 0; r < T.size(); ++r) {
        if (Z.is_subset_of(character_kernel(T, r))) continue;
        ++over;
        bad += T.degree(r) * T.degree(r) * Z.order() != G.order() || !fully_ramified(T, r, Z);
      }
      out.add("camina_center", bad == 0 && over + 1 == Z.order(), kCamina,
              std::to_string(over) + " characters over Z(G), " + std::to_string(bad) + " violations");
    } else {
      out.skip("camina_center", kCamina, "(G, Z(G)) is not a Camina pair");
    }
  }

  if (e.label.rfind("extraspecial", 0) == 0 || e.label == "heisenberg_p3") {
    const HalfPower mu = gvz_min_perm_degree(T);
    const int n = log_p(G.order(), pp);  // 2m + 1
    out.add("min_perm_degree", mu.twice_exponent == n + 1,
            "an extraspecial group of order p^(2m+1) has minimal faithful permutation degree p^(m+1)",
            "p^(" + std::to_string(mu.twice_exponent) + "/2)");
  }

  if (e.label == "heisenberg_x_heisenberg" || e.label == "heisenberg_x_cp" || e.label == "G_(12,1)") {
    const Verdicts h = verdicts_of("heisenberg_p3", p);
    const Verdicts other = e.label == "heisenberg_x_cp" ? verdicts_of("cyclic_p", p) : h;
    const bool want_gvz = h.gvz && other.gvz;
    const bool want_nested = h.nested && other.nested && (h.abelian || other.abelian);
    out.add("direct_product", gvz == want_gvz && nested == want_nested, kProduct,
            std::string("predicted gvz ") + yes_no(want_gvz) + ", nested " + yes_no(want_nested));
  }

  if (e.label == "G_(12,1)") {
    const IsoclinismFingerprint f = fingerprint(T);
    const IsoclinismFingerprint g = fingerprint(build("heisenberg_x_heisenberg", p));
    out.add("fingerprint.product", f == g,
            "G_(12,1) is the direct product of two extraspecial groups of order p^3 and exponent p",
            "class " + std::to_string(f.nilpotency_class) + ", |Z| = " + std::to_string(f.center_order) +
                ", |G'| = " + std::to_string(f.derived_order) + ", cd = " + cd_string(f.cd));
  }
  if (e.label == "G_(14,3)") {
    const IsoclinismFingerprint f = fingerprint(T);
    const bool ok = f.abelianization.size() == 2 && f.nilpotency_class == 2 && exponent(G) == ipow(pp, 4);
    out.add("structure", ok, "G_(14,3) is two-generated of class 2 and exponent p^4",
            std::to_string(f.abelianization.size()) + " generators, class " + std::to_string(f.nilpotency_class) +
                ", exponent " + std::to_string(exponent(G)));
  }
  if (e.label == "G_(18,1)") {
    const IsoclinismFingerprint f = fingerprint(T);
    const bool ok = f.nilpotency_class == 3 && f.center_order == pp * pp && f.derived_order == pp * pp * pp &&
                    f.degree_set() == std::set<std::uint64_t>{1, pp, pp * pp};
    out.add("fingerprint", ok, "G_(18,1) has class 3, |Z(G)| = p^2, |G'| = p^3 and cd(G) = {1, p, p^2}",
            "class " + std::to_string(f.nilpotency_class) + ", |Z| = " + std::to_string(f.center_order) +
                ", |G'| = " + std::to_string(f.derived_order) + ", cd = " + cd_string(f.cd));
  }
  if (auto it = kQuotientGenerator.find(e.label); it != kQuotientGenerator.end()) {
    const Subgroup K = subgroup_generated(G, {G.generator(G.presentation().generator_index(it->second))});
    const auto mismatches = check_lift_equivalence(T, K);
    out.add("lift_equivalence", mismatches.empty(), kLift,
            "K = <" + it->second + ">, " + std::to_string(mismatches.size()) + " mismatches");
    if (e.label == "G_(18,1)") {
      const CharacterTable TQ = compute_table(build("G_(18,1)/K", p));
      std::size_t nonlinear = 0, central = 0;
      for (std::size_t r = 0; r < TQ.size(); ++r)
        if (TQ.degree(r) > 1) {
          ++nonlinear;
          central += is_central_type(TQ, r);
        }
      out.add("quotient_nonlinear", nonlinear == pp * pp * pp - pp && central == nonlinear,
              "G_(18,1)/K has p^3 - p nonlinear characters, all of central type",
              std::to_string(nonlinear) + " nonlinear, " + std::to_string(central) + " of central type");
    }
  }
}

Records group_task(const CorpusEntry& e, int p) {
  GroupRecords out(e.label, p);
  if (p < e.min_prime) {
    out.skip("corpus.build", e.citation, "presentation requires p >= " + std::to_string(e.min_prime));
    return out.take();
  }
  try {
    group_checks(e, p, out);
  } catch (const std::exception& ex) {
    out.add("group.error", false, e.citation, ex.what());
  }
  return out.take();
}

// Values worked out by hand from the closed formulas.
const std::map<int, std::pair<int, int>> kHandCountsP6 = {{5, {270, 156}}, {7, {334, 202}}, {11, {496, 330}},
                                                         {13, {600, 412}}};

Records counting_task(int p) {
  GroupRecords out("-", p);
  const std::string cite6 = "number of GVZ-groups and nested GVZ-groups of order p^6 for p >= 5";
  const std::string cite5 = "order p^5: p + 31 GVZ-groups and 23 nested GVZ-groups, abelian groups included";
  try {
    const auto c5 = counting_formulas(p, 5);
    out.add("counting.p5", c5.gvz_count == p + 31 && c5.nested_count == 23, cite5,
            "gvz " + c5.gvz_count.get_str() + ", nested " + c5.nested_count.get_str());
  } catch (const std::exception& ex) {
    out.add("counting.p5", false, cite5, ex.what());
  }
  if (p < 5) {
    try {
      counting_formulas(p, 6);
      out.add("counting.p6", false, cite6, "accepted p < 5");
    } catch (const InputError& ex) {
      out.add("counting.p6", true, cite6, std::string("rejected: ") + ex.what());
    }
    return out.take();
  }
  const auto c6 = counting_formulas(p, 6);
  const std::string detail = "gvz " + c6.gvz_count.get_str() + ", nested " + c6.nested_count.get_str();
  if (auto it = kHandCountsP6.find(p); it != kHandCountsP6.end())
    out.add("counting.p6", c6.gvz_count == it->second.first && c6.nested_count == it->second.second, cite6, detail);
  else
    out.add("counting.p6", c6.gvz_count.get_den() == 1 && c6.nested_count.get_den() == 1, cite6,
            detail + " (integrality only)");
  return out.take();
}

Records isoclinism_task(int p) {
  const std::string cite = "isoclinic groups are simultaneously GVZ and simultaneously nested";
  struct Item {
    std::string label;
    std::unique_ptr<PcGroup> G;
    IsoclinismFingerprint f;
    bool gvz, nested;
  };
  // |G/Z| <= p^4 at p = 3 and <= p^3 otherwise keeps each search within seconds.
  const std::uint64_t limit = ipow(static_cast<std::uint64_t>(p), p == 3 ? 4 : 3);
  std::vector<Item> items;
  for (const auto& e : corpus_entries()) {
    if (p < e.min_prime) continue;
    auto G = std::make_unique<PcGroup>(build(e.label, p));
    if (G->order() / center(*G).order() > limit) continue;
    const CharacterTable T = compute_table(build(e.label, p));
    items.push_back({e.label, std::move(G), fingerprint(T), is_gvz(T), is_nested(T)});
  }
  Records out;
  std::size_t gated = 0;
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      const auto& a = items[i];
      const auto& b = items[j];
      if (a.f.central_quotient_order != b.f.central_quotient_order || a.f.derived_order != b.f.derived_order) {
        ++gated;
        continue;
      }
      GroupRecords rec(a.label + " ~ " + b.label, p);
      const Tristate t = isoclinic_brute(*a.G, *b.G);
      if (t == Tristate::unknown) {
        rec.skip("isoclinism", cite, "search budget exhausted");
      } else if (t == Tristate::no) {
        rec.add("isoclinism", true, cite, "not isoclinic");
      } else {
        const bool ok = a.gvz == b.gvz && a.nested == b.nested && same_isoclinism_core(a.f, b.f);
        rec.add("isoclinism", ok, cite,
                std::string("isoclinic; gvz ") + yes_no(a.gvz) + "/" + yes_no(b.gvz) + ", nested " +
                    yes_no(a.nested) + "/" + yes_no(b.nested));
      }
      for (auto& r : rec.take()) out.push_back(std::move(r));
    }
  GroupRecords summary("-", p);
  summary.add("isoclinism.pairs", true, cite,
              std::to_string(items.size()) + " groups with |G/Z| <= " + std::to_string(limit) + ", " +
                  std::to_string(gated) + " pairs separated by |G/Z| or |G'|");
  for (auto& r : summary.take()) out.push_back(std::move(r));
  return out;
}

}  // namespace

SuiteResult run_classification_suite(const std::vector<int>& primes_in, const SuiteOptions& opt) {
  std::vector<int> primes = primes_in;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (int p : primes)
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError("suite primes must be odd primes");

  std::vector<std::pair<std::string, std::function<Records()>>> tasks;
  for (int p : primes) {
    for (const auto& e : corpus_entries())
      tasks.emplace_back(e.label + " p=" + std::to_string(p), [&e, p] { return group_task(e, p); });
    tasks.emplace_back("counting p=" + std::to_string(p), [p] { return counting_task(p); });
    tasks.emplace_back("isoclinism p=" + std::to_string(p), [p] {
      try {
        return isoclinism_task(p);
      } catch (const std::exception& ex) {
        return Records{{"isoclinism.error", "-", p, "fail", "", ex.what()}};
      }
    });
  }
  return {"classification", run_tasks(tasks, opt)};
}

SuiteResult run_ingested_census(const std::filesystem::path& dir, const CensusExpectations& expect,
                                const SuiteOptions& opt) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& f : fs::directory_iterator(dir))
    if (f.is_regular_file()) files.push_back(f.path());
  std::sort(files.begin(), files.end());

  struct Outcome {
    bool ok = false, abelian = false, gvz = false, nested = false;
    std::uint64_t order = 0;
    int p = 0;
  };
  std::vector<Outcome> outcomes(files.size());
  std::vector<std::pair<std::string, std::function<Records()>>> tasks;
  const std::string cite = "classification of an ingested presentation";
  for (std::size_t i = 0; i < files.size(); ++i)
    tasks.emplace_back(files[i].filename().string(), [&, i] {
      GroupRecords rec(files[i].filename().string(), 0);
      Outcome& o = outcomes[i];
      try {
        const PcPresentation P = load_presentation(files[i].string());
        const ClassificationReport R = classification_report(P, TableOptions{});
        o = {true, R.cd.size() == 1, R.is_gvz, R.is_nested, R.order, R.prime};
        Records r = rec.take();
        r.push_back({"census.classify", files[i].filename().string(), R.prime, "pass", cite,
                     "order " + std::to_string(R.order) + ", gvz " + yes_no(R.is_gvz) + ", nested " +
                         yes_no(R.is_nested) + ", vz " + yes_no(R.is_vz)});
        return r;
      } catch (const std::exception& ex) {
        rec.add("census.classify", false, cite, ex.what());
        return rec.take();
      }
    });
  SuiteResult result{"census", run_tasks(tasks, opt)};

  int p = 0;
  std::set<std::uint64_t> orders;
  std::size_t nested_nonabelian = 0, nested_all = 0, abelian = 0;
  for (const auto& o : outcomes) {
    if (!o.ok) continue;
    p = o.p;
    orders.insert(o.order);
    abelian += o.abelian;
    nested_all += o.nested;
    nested_nonabelian += o.nested && !o.abelian;
  }
  auto compare = [&](const std::string& check, const std::string& citation, std::size_t computed,
                     const std::optional<std::size_t>& expected, const std::string& extra) {
    const std::string detail = "computed " + std::to_string(computed) + extra;
    if (expected)
      result.records.push_back({check, "-", p, computed == *expected ? "pass" : "fail", citation,
                                detail + ", expected " + std::to_string(*expected)});
    else
      result.records.push_back({check, "-", p, "skip", citation, detail + "; no expectation supplied"});
  };
  result.records.push_back({"census.fixed_order", "-", p, orders.size() <= 1 ? "pass" : "fail",
                            "a census covers groups of one order",
                            std::to_string(orders.size()) + " distinct orders"});
  compare("census.total", "number of groups of the given order", files.size(), expect.total, "");
  compare("census.nested_nonabelian", "non-abelian nested GVZ-groups, abelian groups excluded", nested_nonabelian,
          expect.nested_nonabelian, "");
  compare("census.nested_with_abelian", "nested GVZ-groups, every abelian group counted as nested", nested_all,
          expect.nested_with_abelian, " (" + std::to_string(abelian) + " abelian)");
  return result;
}

}  // namespace pgclass
