#include "pgclass/presentation.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "pgclass/error.hpp"
#include "pgclass/numtheory.hpp"

namespace pgclass {

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.exp = -l.exp;
  return out;
}

bool Element::is_identity() const {
  for (int e : exps_)
    if (e != 0) return false;
  return true;
}

std::string to_string(const Element& e) {
  std::string s = "(";
  for (int i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e[i]);
  }
  return s + ")";
}

PcPresentation::PcPresentation(std::string name, int p, std::vector<std::string> generator_names)
    : name_(std::move(name)), p_(p), names_(std::move(generator_names)) {
  if (p < 2 || p > 65521 || !is_prime(static_cast<std::uint64_t>(p)))
    throw InputError(std::to_string(p) + " is not a supported prime");
  std::set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw InputError("duplicate generator name '" + n + "'");
  powers_.assign(names_.size(), Word{});
  power_set_.assign(names_.size(), false);
}

int PcPresentation::generator_index(std::string_view name) const {
  for (int i = 0; i < rank(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

const Word& PcPresentation::commutator(int j, int i) const {
  static const Word kEmpty;
  auto it = comms_.find({j, i});
  return it == comms_.end() ? kEmpty : it->second;
}

Word PcPresentation::simplify(Word w) {
  Word out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen)
      out.back().exp += l.exp;
    else
      out.push_back(l);
    if (out.back().exp == 0) out.pop_back();
  }
  return out;
}

void PcPresentation::set_power(int i, Word w) {
  if (i < 0 || i >= rank()) throw InputError("generator index out of range");
  for (const auto& l : w)
    if (l.gen <= i || l.gen >= rank())
      throw InputError("power relation for " + names_[i] + " uses a generator that is not later");
  powers_[i] = simplify(std::move(w));
  power_set_[i] = true;
}

void PcPresentation::set_commutator(int j, int i, Word w) {
  if (i < 0 || j >= rank() || j <= i) throw InputError("left side not index-decreasing");
  for (const auto& l : w)
    if (l.gen <= j || l.gen >= rank())
      throw InputError("commutator relation [" + names_[j] + "," + names_[i] +
                       "] uses a generator that is not later than " + names_[j]);
  comms_[{j, i}] = simplify(std::move(w));
}

bool operator==(const PcPresentation& a, const PcPresentation& b) {
  if (a.name_ != b.name_ || a.p_ != b.p_ || a.names_ != b.names_ || a.powers_ != b.powers_) return false;
  auto nontrivial = [](const PcPresentation& P) {
    std::map<PcPresentation::CommKey, Word> m;
    for (const auto& [k, w] : P.comms_)
      if (!w.empty()) m.emplace(k, w);
    return m;
  };
  return nontrivial(a) == nontrivial(b);
}

int PcPresentation::nontrivial_commutator_count() const {
  int c = 0;
  for (const auto& [k, w] : comms_)
    if (!w.empty()) ++c;
  return c;
}

int PcPresentation::nontrivial_power_count() const {
  int c = 0;
  for (const auto& w : powers_)
    if (!w.empty()) ++c;
  return c;
}

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || (static_cast<unsigned char>(c) & 0x80);
}
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

// Cursor over one statement; columns are reported relative to the full line.
class Cursor {
 public:
  Cursor(std::string_view text, int line, int col0) : s_(text), line_(line), col0_(col0) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  // Column of the next non-space character.
  int column() {
    skip_ws();
    return col0_ + static_cast<int>(pos_) + 1;
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(line_, column(), what); }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected identifier");
    std::size_t b = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }
  // Any run of non-space characters.
  std::string token() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail("expected a token");
    return std::string(s_.substr(b, pos_ - b));
  }
  long long integer() {
    skip_ws();
    std::size_t b = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = b;
      fail("expected integer");
    }
    if (pos_ - digits > 9) {
      pos_ = b;
      fail("integer out of range");
    }
    return std::stoll(std::string(s_.substr(b, pos_ - b)));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
};

struct ParseState {
  bool have_header = false;
  std::string name;
  int p = 0;
  PcPresentation pres;
  bool have_gens = false;
};

Word parse_word(const ParseState& st, Cursor& c, int line, int min_index, const std::string& lhs) {
  Word w;
  if (c.at_end()) c.fail("expected word (use 1 for identity)");
  if (c.peek() == '1') {
    c.integer();
    if (!c.at_end()) c.fail("unexpected text after identity word");
    return w;
  }
  while (!c.at_end()) {
    c.accept('*');
    int col = c.column();
    std::string id = c.ident();
    int idx = st.pres.generator_index(id);
    if (idx < 0) throw ParseError(line, col, "unknown generator '" + id + "'");
    if (idx <= min_index)
      throw ParseError(line, col,
                       "generator '" + id + "' in the right side must come after " + lhs);
    long long e = 1;
    if (c.accept('^')) e = c.integer();
    w.push_back({idx, static_cast<int>(e)});
  }
  return w;
}

void parse_statement(ParseState& st, std::string_view text, int line, int col0) {
  Cursor c(text, line, col0);
  if (c.at_end()) return;
  int kw_col = c.column();
  std::string kw = c.ident();
  if (kw == "group") {
    if (st.have_header) throw ParseError(line, kw_col, "duplicate group header");
    st.name = c.token();
    int prime_col = c.column();
    if (c.ident() != "prime") throw ParseError(line, prime_col, "expected 'prime'");
    int pcol = c.column();
    long long p = c.integer();
    if (p < 2 || p > 65521 || !is_prime(static_cast<std::uint64_t>(p)))
      throw ParseError(line, pcol, "p = " + std::to_string(p) + " is not prime");
    st.p = static_cast<int>(p);
    st.have_header = true;
  } else if (kw == "gens") {
    if (!st.have_header) throw ParseError(line, kw_col, "'gens' before 'group' header");
    if (st.have_gens) throw ParseError(line, kw_col, "duplicate gens statement");
    std::vector<std::string> names;
    std::set<std::string> seen;
    while (!c.at_end()) {
      int col = c.column();
      std::string id = c.ident();
      if (!seen.insert(id).second) throw ParseError(line, col, "duplicate generator '" + id + "'");
      names.push_back(id);
    }
    st.pres = PcPresentation(st.name, st.p, std::move(names));
    st.have_gens = true;
  } else if (kw == "pow" || kw == "comm") {
    if (!st.have_gens) throw ParseError(line, kw_col, "relation before 'gens'");
    auto resolve = [&](const std::string& id, int col) {
      int idx = st.pres.generator_index(id);
      if (idx < 0) throw ParseError(line, col, "unknown generator '" + id + "'");
      return idx;
    };
    auto word = [&](int min_index, const std::string& lhs) {
      return parse_word(st, c, line, min_index, lhs);
    };
    if (kw == "pow") {
      int col = c.column();
      int i = resolve(c.ident(), col);
      c.expect('^');
      int ecol = c.column();
      if (c.peek() == 'p') {
        c.ident();
      } else {
        long long e = c.integer();
        if (e != st.p) throw ParseError(line, ecol, "power exponent must be p");
      }
      c.expect('=');
      if (st.pres.has_power(i)) throw ParseError(line, kw_col, "duplicate relation");
      Word w = word(i, st.pres.generator_names()[i]);
      st.pres.set_power(i, std::move(w));
    } else {
      c.expect('[');
      int jcol = c.column();
      int j = resolve(c.ident(), jcol);
      c.expect(',');
      int icol = c.column();
      int i = resolve(c.ident(), icol);
      c.expect(']');
      if (j <= i) throw ParseError(line, jcol, "left side not index-decreasing");
      c.expect('=');
      if (st.pres.has_commutator(j, i)) throw ParseError(line, kw_col, "duplicate relation");
      Word w = word(j, st.pres.generator_names()[j]);
      st.pres.set_commutator(j, i, std::move(w));
    }
  } else {
    throw ParseError(line, kw_col, "unknown statement '" + kw + "'");
  }
}

}  // namespace

PcPresentation parse_presentation(std::string_view text) {
  ParseState st;
  int line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view ln = text.substr(start, nl - start);
    ++line;
    if (auto hash = ln.find('#'); hash != std::string_view::npos) ln = ln.substr(0, hash);
    if (!ln.empty() && ln.back() == '\r') ln.remove_suffix(1);
    std::size_t s = 0;
    while (s <= ln.size()) {
      std::size_t semi = ln.find(';', s);
      if (semi == std::string_view::npos) semi = ln.size();
      parse_statement(st, ln.substr(s, semi - s), line, static_cast<int>(s));
      s = semi + 1;
    }
    if (nl == text.size()) break;
    start = nl + 1;
  }
  if (!st.have_header) throw ParseError(1, 1, "missing 'group <name> prime <p>' header");
  if (!st.have_gens) throw ParseError(line, 1, "missing 'gens' statement");
  return st.pres;
}

PcPresentation load_presentation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

std::string format_word(const PcPresentation& P, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += P.generator_names()[l.gen];
    if (l.exp != 1) s += "^" + std::to_string(l.exp);
  }
  return s;
}

std::string format_presentation(const PcPresentation& P) {
  std::string s = "group " + P.name() + " prime " + std::to_string(P.prime()) + "\ngens";
  for (const auto& n : P.generator_names()) s += " " + n;
  s += "\n";
  for (int i = 0; i < P.rank(); ++i)
    if (P.has_power(i) && !P.power(i).empty())
      s += "pow " + P.generator_names()[i] + "^p = " + format_word(P, P.power(i)) + "\n";
  for (const auto& [key, w] : P.commutators())
    if (!w.empty())
      s += "comm [" + P.generator_names()[key.first] + "," + P.generator_names()[key.second] +
           "] = " + format_word(P, w) + "\n";
  return s;
}

}  // namespace pgclass
