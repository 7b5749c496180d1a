#include "pgclass/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pgclass/corpus.hpp"
#include "pgclass/error.hpp"
#include "pgclass/numtheory.hpp"
#include "pgclass/verify_suite.hpp"

namespace pgclass {

using Json = nlohmann::ordered_json;

Json to_json(const ClassificationReport& R) {
  Json cd = Json::object();
  for (const auto& [d, n] : R.cd) cd[std::to_string(d)] = n;
  Json chars = Json::array();
  for (const auto& c : R.per_character)
    chars.push_back({{"degree", c.degree}, {"center_order", c.center_order}, {"central_type", c.central_type}});
  Json out;
  out["label"] = R.label;
  out["prime"] = R.prime;
  out["order"] = R.order;
  out["nilpotency_class"] = R.nilpotency_class;
  out["cd"] = cd;
  out["is_gvz"] = R.is_gvz;
  out["is_flat"] = R.is_flat;
  out["is_nested"] = R.is_nested;
  out["is_vz"] = R.is_vz;
  out["vz_note"] = R.vz_note;
  out["camina_pair_with_center"] = R.camina_pair_with_center;
  out["gen_camina_pair_with_center"] = R.gen_camina_pair_with_center;
  out["center_chain"] = {{"orders", R.center_chain.orders}, {"is_chain", R.center_chain.is_chain}};
  out["characters"] = chars;
  return out;
}

Json to_json(const CharacterTable& T) {
  const PcGroup& G = T.group();
  const auto& C = T.classes();
  Json classes = Json::array();
  for (std::size_t c = 0; c < C.count(); ++c)
    classes.push_back({{"representative", G.element(C.reps[c]).exponents()}, {"size", C.size(c)}});
  Json rows = Json::array();
  for (std::size_t r = 0; r < T.size(); ++r) {
    Json values = Json::array();
    for (std::size_t c = 0; c < T.size(); ++c) values.push_back(T.value(r, c).to_string());
    rows.push_back({{"degree", T.degree(r)}, {"values", std::move(values)}});
  }
  Json out;
  out["group"] = G.presentation().name();
  out["prime"] = G.prime();
  out["order"] = G.order();
  out["generators"] = G.presentation().generator_names();
  out["exponent"] = T.exponent();
  out["classes"] = std::move(classes);
  out["rows"] = std::move(rows);
  return out;
}

namespace {

struct Config {
  std::vector<std::string> inputs;
  std::string corpus_label;
  int corpus_prime = 0;
  std::vector<int> primes{5, 7};
  std::string suite = "classification";
  bool json = false;
  std::string output;  // file for the main output, stdout when empty
  int threads = 0;
  bool verbose = false;
  int count_prime = 0;
  std::string count_order;
  std::optional<std::size_t> expect_total, expect_nested_nonabelian, expect_nested;
};

struct Context {
  Config cfg;
  std::ostream& out;
  std::ostream& err;
  std::string current_file;  // prefixed to parse diagnostics
};

int default_threads() {
  if (const char* env = std::getenv("PGCLASS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("PGCLASS_THREADS must be a positive integer, got '") + env + "'");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void emit(Context& ctx, const std::string& text) {
  if (ctx.cfg.output.empty()) {
    ctx.out << text;
    return;
  }
  std::ofstream f(ctx.cfg.output);
  if (!f) throw InputError("cannot write " + ctx.cfg.output);
  f << text;
}

void emit_json(Context& ctx, const Json& j) { emit(ctx, j.dump(2) + "\n"); }

const char* tf(bool b) { return b ? "true" : "false"; }

std::string cd_text(const std::map<std::uint64_t, std::size_t>& cd) {
  std::string s;
  for (const auto& [d, n] : cd) s += (s.empty() ? "" : ", ") + std::to_string(d) + "x" + std::to_string(n);
  return s;
}

TableOptions table_options(const Context& ctx) { return TableOptions{ctx.cfg.threads}; }

// Either the positional files or one corpus group.
std::vector<std::pair<std::string, PcPresentation>> inputs(Context& ctx) {
  std::vector<std::pair<std::string, PcPresentation>> out;
  if (!ctx.cfg.corpus_label.empty()) {
    if (ctx.cfg.corpus_prime == 0) throw InputError("--corpus needs --p");
    out.emplace_back(ctx.cfg.corpus_label, build(ctx.cfg.corpus_label, ctx.cfg.corpus_prime));
  }
  for (const auto& f : ctx.cfg.inputs) {
    ctx.current_file = f;
    out.emplace_back(f, load_presentation(f));
  }
  ctx.current_file.clear();
  if (out.empty()) throw InputError("no input: give a presentation file or --corpus LABEL --p P");
  return out;
}

int cmd_classify(Context& ctx) {
  Json all = Json::array();
  std::ostringstream text;
  for (const auto& [name, P] : inputs(ctx)) {
    const CharacterTable T = compute_table(P, table_options(ctx));
    const ClassificationReport R = classification_report(T);
    std::string perm = "n/a";
    if (R.is_gvz) {
      try {
        const HalfPower h = gvz_min_perm_degree(T);
        perm = std::to_string(h.prime) + "^" +
               (h.integral() ? std::to_string(h.twice_exponent / 2) : "(" + std::to_string(h.twice_exponent) + "/2)");
      } catch (const InputError&) {
        // center not cyclic
      }
    }
    const BoundStatus nil = check_nil_le_cd(T);
    const std::size_t special = check_special_degree(T).size();
    if (ctx.cfg.json) {
      Json j = to_json(R);
      j["source"] = name;
      j["checks"] = {{"nil_le_cd", to_string(nil)},
                     {"special_degree_violations", special},
                     {"min_perm_degree", perm == "n/a" ? Json(nullptr) : Json(perm)}};
      all.push_back(std::move(j));
      continue;
    }
    text << "group " << R.label << " (" << name << ")\n"
         << "  order " << R.prime << "^" << log_p(R.order, static_cast<std::uint64_t>(R.prime)) << " = " << R.order << ", class " << R.nilpotency_class << ", " << R.per_character.size() << " classes\n"
         << "  cd: " << cd_text(R.cd) << "\n"
         << "  gvz=" << tf(R.is_gvz) << " flat=" << tf(R.is_flat) << " nested=" << tf(R.is_nested)
         << " vz=" << tf(R.is_vz) << (R.vz_note.empty() ? "" : " (" + R.vz_note + ")") << "\n"
         << "  camina_pair(G,Z)=" << tf(R.camina_pair_with_center)
         << " gen_camina_pair(G,Z)=" << tf(R.gen_camina_pair_with_center) << "\n"
         << "  character centers:";
    for (auto o : R.center_chain.orders) text << " " << o;
    text << (R.center_chain.is_chain ? " (chain)" : " (not a chain)") << "\n"
         << "  nil <= |cd|: " << to_string(nil) << ", min perm degree (GVZ, cyclic center): " << perm << "\n";
    if (ctx.cfg.verbose) {
      text << "  " << std::setw(8) << "degree" << std::setw(12) << "|Z(chi)|" << "  central type\n";
      for (const auto& c : R.per_character)
        text << "  " << std::setw(8) << c.degree << std::setw(12) << c.center_order << "  " << tf(c.central_type)
             << "\n";
    }
  }
  if (ctx.cfg.json)
    emit_json(ctx, all.size() == 1 ? all[0] : all);
  else
    emit(ctx, text.str());
  return kExitOk;
}

int cmd_chartable(Context& ctx) {
  Json all = Json::array();
  std::ostringstream text;
  for (const auto& [name, P] : inputs(ctx)) {
    const CharacterTable T = compute_table(P, table_options(ctx));
    if (ctx.cfg.json) {
      all.push_back(to_json(T));
      continue;
    }
    const PcGroup& G = T.group();
    const auto& C = T.classes();
    text << "character table of " << G.presentation().name() << ", order " << G.order() << ", " << T.size()
         << " classes, values in Q(E(" << T.exponent() << "))\n";
    text << "cd: " << cd_text(T.degree_multiset()) << "\n";
    text << "classes:\n";
    for (std::size_t c = 0; c < C.count(); ++c)
      text << "  " << c + 1 << ": " << to_string(G.element(C.reps[c])) << ", size " << C.size(c) << "\n";
    text << "rows:\n";
    for (std::size_t r = 0; r < T.size(); ++r) {
      text << "  chi_" << r + 1 << " (degree " << T.degree(r) << "):";
      for (std::size_t c = 0; c < T.size(); ++c) text << (c ? ", " : " ") << T.value(r, c).to_string();
      text << "\n";
    }
  }
  if (ctx.cfg.json)
    emit_json(ctx, all.size() == 1 ? all[0] : all);
  else
    emit(ctx, text.str());
  return kExitOk;
}

int finish_suite(Context& ctx, const SuiteResult& r) {
  if (ctx.cfg.json) {
    emit_json(ctx, to_json(r));
  } else {
    std::ostringstream text;
    for (const auto& x : r.records) {
      if (x.status == "pass" && !ctx.cfg.verbose) continue;
      std::string status = x.status;
      std::transform(status.begin(), status.end(), status.begin(), ::toupper);
      text << status << " " << x.check << " " << x.group << " p=" << x.p << ": " << x.detail << " [" << x.citation
           << "]\n";
    }
    const SuiteSummary s = r.summary();
    text << r.suite << ": " << s.pass << " passed, " << s.fail << " failed, " << s.skip << " skipped\n";
    emit(ctx, text.str());
  }
  return r.passed() ? kExitOk : kExitSuiteFailure;
}

SuiteOptions suite_options(Context& ctx) {
  SuiteOptions o;
  o.threads = ctx.cfg.threads;
  if (ctx.cfg.verbose) o.progress = [&ctx](const std::string& s) { ctx.err << "done: " << s << "\n"; };
  return o;
}

int cmd_verify(Context& ctx) {
  if (ctx.cfg.suite != "classification" && ctx.cfg.suite != "paper")
    throw InputError("unknown suite '" + ctx.cfg.suite + "'");
  return finish_suite(ctx, run_classification_suite(ctx.cfg.primes, suite_options(ctx)));
}

int cmd_census(Context& ctx) {
  if (ctx.cfg.inputs.size() != 1) throw InputError("census needs exactly one directory");
  CensusExpectations e{ctx.cfg.expect_total, ctx.cfg.expect_nested_nonabelian, ctx.cfg.expect_nested};
  return finish_suite(ctx, run_ingested_census(ctx.cfg.inputs[0], e, suite_options(ctx)));
}

int cmd_count(Context& ctx) {
  std::string o = ctx.cfg.count_order;
  if (o.rfind("p", 0) == 0) o = o.substr(1);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(o, &used);
    if (used != o.size()) throw std::invalid_argument(o);
  } catch (const std::exception&) {
    throw InputError("--order must be p5, p6, 5 or 6");
  }
  const CountingResult c = counting_formulas(ctx.cfg.count_prime, n);
  if (ctx.cfg.json)
    emit_json(ctx, {{"p", c.p},
                    {"order", "p" + std::to_string(n)},
                    {"gvz", c.gvz_count.get_num().get_ui()},
                    {"nested", c.nested_count.get_num().get_ui()}});
  else
    emit(ctx, "groups of order " + std::to_string(c.p) + "^" + std::to_string(n) + ": gvz " + c.gvz_count.get_str() +
                  ", nested " + c.nested_count.get_str() + "\n");
  return kExitOk;
}

int cmd_corpus_list(Context& ctx) {
  if (ctx.cfg.json) {
    Json all = Json::array();
    for (const auto& e : corpus_entries())
      all.push_back({{"label", e.label},
                     {"description", e.description},
                     {"order", "p^" + std::to_string(e.order_exponent)},
                     {"min_prime", e.min_prime},
                     {"expected", {{"gvz", e.expected.gvz}, {"nested", e.expected.nested}, {"vz", e.expected.vz}}},
                     {"citation", e.citation}});
    emit_json(ctx, all);
    return kExitOk;
  }
  std::ostringstream text;
  text << std::left << std::setw(26) << "label" << std::setw(7) << "order" << std::setw(8) << "primes"
       << std::setw(20) << "gvz/nested/vz" << "citation\n";
  for (const auto& e : corpus_entries()) {
    const std::string v = std::string(tf(e.expected.gvz)) + "/" + tf(e.expected.nested) + "/" + tf(e.expected.vz);
    text << std::setw(26) << e.label << std::setw(7) << "p^" + std::to_string(e.order_exponent) << std::setw(8)
         << ">= " + std::to_string(e.min_prime) << std::setw(20) << v << e.citation << "\n";
  }
  emit(ctx, text.str());
  return kExitOk;
}

int cmd_corpus_show(Context& ctx) {
  if (ctx.cfg.corpus_prime == 0) throw InputError("corpus show needs --p");
  const PcPresentation P = build(ctx.cfg.corpus_label, ctx.cfg.corpus_prime);
  if (ctx.cfg.json)
    emit_json(ctx, {{"label", ctx.cfg.corpus_label}, {"p", ctx.cfg.corpus_prime}, {"presentation", format_presentation(P)}});
  else
    emit(ctx, format_presentation(P));
  return kExitOk;
}

void report_error(Context& ctx, const std::string& kind, const std::string& message, int code) {
  if (ctx.cfg.json) {
    ctx.out << Json{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}}.dump(2) << "\n";
  }
  ctx.err << "pgclass: " << kind << " error: " << message << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{{}, out, err, {}};
  Config& cfg = ctx.cfg;
  CLI::App app{"Exact character-theoretic classification of finite p-groups", "pgclass"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pgclass 1.0");

  auto common = [&](CLI::App* sub, bool json_file) {
    if (json_file)
      sub->add_option("--json", cfg.output, "Emit JSON, optionally into the given file")->expected(0, 1);
    else
      sub->add_flag("--json", cfg.json, "Emit JSON");
    sub->add_option("-o,--output", cfg.output, "Write the output to a file");
    sub->add_option("--threads", cfg.threads, "Worker threads (default: PGCLASS_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("-v,--verbose", cfg.verbose, "More detail and progress on stderr");
  };

  auto* classify = app.add_subcommand("classify", "Classify groups given as presentation files");
  classify->add_option("files", cfg.inputs, "Presentation files")->check(CLI::ExistingFile);
  classify->add_option("--corpus", cfg.corpus_label, "Use a corpus group instead of a file");
  classify->add_option("--p", cfg.corpus_prime, "Prime for --corpus");
  common(classify, false);

  auto* chartable = app.add_subcommand("chartable", "Print exact character tables");
  chartable->add_option("files", cfg.inputs, "Presentation files")->check(CLI::ExistingFile);
  chartable->add_option("--corpus", cfg.corpus_label, "Use a corpus group instead of a file");
  chartable->add_option("--p", cfg.corpus_prime, "Prime for --corpus");
  common(chartable, false);

  auto* verify = app.add_subcommand("verify", "Run the corpus verification suite");
  verify->add_option("--suite", cfg.suite, "Suite name (classification)");
  verify->add_option("--primes", cfg.primes, "Comma separated odd primes")->delimiter(',');
  common(verify, true);

  auto* census = app.add_subcommand("census", "Classify every presentation file in a directory");
  census->add_option("dir", cfg.inputs, "Directory of presentation files")->required()->check(CLI::ExistingDirectory);
  census->add_option("--expect-total", cfg.expect_total, "Expected number of files");
  census->add_option("--expect-nested-nonabelian", cfg.expect_nested_nonabelian,
                     "Expected number of non-abelian nested GVZ-groups");
  census->add_option("--expect-nested", cfg.expect_nested, "Expected number of nested GVZ-groups, abelian included");
  common(census, false);

  auto* count = app.add_subcommand("count", "Numbers of GVZ and nested GVZ groups of order p^5 or p^6");
  count->add_option("--p", cfg.count_prime, "Odd prime")->required();
  count->add_option("--order", cfg.count_order, "p5 or p6")->required();
  common(count, true);

  auto* corpus = app.add_subcommand("corpus", "Built-in groups");
  corpus->require_subcommand(1);
  auto* list = corpus->add_subcommand("list", "List the corpus");
  common(list, true);
  auto* show = corpus->add_subcommand("show", "Print the presentation of a corpus group");
  show->add_option("label", cfg.corpus_label, "Corpus label")->required();
  show->add_option("--p", cfg.corpus_prime, "Prime")->required();
  common(show, true);

  const bool wants_json = std::find(args.begin(), args.end(), "--json") != args.end();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    // --help, --help-all and --version
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    cfg.json = wants_json;
    cfg.output.clear();
    report_error(ctx, "usage", e.what(), kExitInput);
    return kExitInput;
  }
  // --json FILE on the subcommands that take one; a bare --json leaves the output empty.
  for (auto* sub : {verify, count, list, show})
    if (sub->parsed() && sub->count("--json") > 0) cfg.json = true;

  try {
    if (cfg.threads == 0) cfg.threads = default_threads();
    if (classify->parsed()) return cmd_classify(ctx);
    if (chartable->parsed()) return cmd_chartable(ctx);
    if (verify->parsed()) return cmd_verify(ctx);
    if (census->parsed()) return cmd_census(ctx);
    if (count->parsed()) return cmd_count(ctx);
    if (list->parsed()) return cmd_corpus_list(ctx);
    if (show->parsed()) return cmd_corpus_show(ctx);
  } catch (const ParseError& e) {
    report_error(ctx, "parse", (ctx.current_file.empty() ? "" : ctx.current_file + ": ") + e.what(), kExitInput);
    return kExitInput;
  } catch (const InputError& e) {
    report_error(ctx, "input", e.what(), kExitInput);
    return kExitInput;
  } catch (const InconsistencyError& e) {
    report_error(ctx, "inconsistency", e.what(), kExitInconsistency);
    return kExitInconsistency;
  } catch (const std::exception& e) {
    report_error(ctx, "internal", e.what(), kExitInconsistency);
    return kExitInconsistency;
  }
  return kExitInput;
}

}  // namespace pgclass
