#include "tightcore/session.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tightcore {

namespace {

// Argument shapes: I ideal, S semigroup ideal, R ring, G semigroup ring,
// L generator list <...>, P element text, N integer, K reduction kind,
// '+' any number of trailing integers.
const std::vector<std::pair<std::string, std::string>>& signatures() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"groebner", "I"},
      {"colon", "II"},
      {"intersect", "II"},
      {"bracket", "IN"},
      {"fclosure", "I"},
      {"tclosure", "I"},
      {"tclosure_sop", "I"},
      {"tight_member", "PI"},
      {"frobenius_member", "PI"},
      {"star_independent", "RL"},
      {"reduction_number", "II"},
      {"is_reduction", "IIK"},
      {"spread", "I"},
      {"star_spread", "I"},
      {"core", "I"},
      {"star_core", "I"},
      {"f_core", "I"},
      {"core_colon", "II"},
      {"minimal_reduction", "I"},
      {"compare_cores", "I+"},
      {"semigroup_conductor", "G"},
      {"semigroup_canonical", "GP"},
      {"semigroup_tclosure", "S"},
      {"semigroup_star_core", "S"},
      {"semigroup_crosscheck", "SN"},
      {"semigroup_core", "S"},
  };
  return table;
}

const std::map<std::string, std::set<std::string>>& ring_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"diagonal", {"p", "seed"}},
      {"e8", {"p", "seed"}},
      {"polynomial", {"p", "e", "vars", "seed"}},
      {"semigroup", {"p", "e", "n", "gens", "seed"}},
  };
  return keys;
}

const std::vector<std::string> kConfigKeys = {"seed",      "qmax",      "samples", "stall_window",
                                              "degree_cap", "precision", "n_max",   "spread_trials"};

std::uint64_t config_value(const SessionConfig& c, const std::string& key) {
  if (key == "seed") return c.seed;
  if (key == "qmax") return c.q_max;
  if (key == "samples") return c.samples;
  if (key == "stall_window") return c.stall_window;
  if (key == "degree_cap") return c.degree_cap;
  if (key == "precision") return c.precision;
  if (key == "n_max") return c.n_max;
  return c.spread_trials;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Token {
  std::string text;
  int column = 0;  // 1-based
  bool quoted = false;
};

class LineLexer {
 public:
  LineLexer(std::string_view line, int line_no) : s_(line), line_(line_no) {}

  [[noreturn]] void fail(const std::string& msg, int column) const {
    throw ParseError("line " + std::to_string(line_) + ", column " + std::to_string(column) + ": " + msg, line_,
                     column);
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= s_.size();
  }
  int column() const { return static_cast<int>(pos_) + 1; }
  std::string_view rest() {
    skip_space();
    return s_.substr(pos_);
  }
  void advance(std::size_t n) { pos_ += n; }

  // Bare word, quoted string, or a balanced <...> literal.
  Token next() {
    skip_space();
    Token t;
    t.column = column();
    if (pos_ >= s_.size()) fail("unexpected end of line", t.column);
    if (s_[pos_] == '"') {
      const auto close = s_.find('"', pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated string", t.column);
      t.text = std::string(s_.substr(pos_ + 1, close - pos_ - 1));
      t.quoted = true;
      pos_ = close + 1;
      return t;
    }
    if (s_[pos_] == '<') {
      const auto close = s_.find('>', pos_);
      if (close == std::string_view::npos) fail("missing '>'", t.column);
      t.text = std::string(s_.substr(pos_, close - pos_ + 1));
      pos_ = close + 1;
      return t;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '{' &&
           s_[pos_] != '}' && s_[pos_] != ',' && s_[pos_] != '=') {
      ++pos_;
    }
    if (pos_ == start) {
      t.text = std::string(1, s_[pos_]);
      ++pos_;
    } else {
      t.text = std::string(s_.substr(start, pos_ - start));
    }
    return t;
  }

  void expect(const std::string& what) {
    Token t = next();
    if (t.text != what) fail("expected '" + what + "', found '" + t.text + "'", t.column);
  }

  Token identifier(const char* role) {
    Token t = next();
    if (t.quoted || t.text.empty() || !is_ident_start(t.text[0]) ||
        !std::all_of(t.text.begin(), t.text.end(), is_ident)) {
      fail(std::string("expected ") + role + " name, found '" + t.text + "'", t.column);
    }
    return t;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

std::uint64_t parse_uint(const LineLexer& lx, const Token& t) {
  if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(c); })) {
    lx.fail("expected a non-negative integer, found '" + t.text + "'", t.column);
  }
  try {
    return std::stoull(t.text);
  } catch (const std::exception&) {
    lx.fail("integer out of range: " + t.text, t.column);
  }
}

struct Scope {
  std::map<std::string, std::string> ring_kind;   // ring name -> kind
  std::map<std::string, std::string> ideal_ring;  // ideal name -> ring name
  bool is_semigroup(const std::string& ring) const { return ring_kind.at(ring) == "semigroup"; }
};

// Identifiers outside <...> literals must name earlier ideals of the same ring.
void check_expression(const LineLexer& lx, int line, const std::string& expr, int column, const std::string& ring,
                      const Scope& scope) {
  int depth = 0;
  for (std::size_t i = 0; i < expr.size(); ++i) {
    const char c = expr[i];
    if (c == '<') ++depth;
    if (c == '>') --depth;
    if (depth > 0 || !is_ident_start(c)) continue;
    std::size_t j = i;
    while (j < expr.size() && is_ident(expr[j])) ++j;
    const std::string name = expr.substr(i, j - i);
    const int col = column + static_cast<int>(i);
    if (name != "maximal") {
      auto it = scope.ideal_ring.find(name);
      if (it == scope.ideal_ring.end()) {
        throw ReferenceError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                                 ": undeclared ideal '" + name + "'",
                             line, col);
      }
      if (it->second != ring) lx.fail("ideal '" + name + "' belongs to ring '" + it->second + "'", col);
    }
    i = j - 1;
  }
  if (depth != 0) lx.fail("unbalanced '<' in ideal expression", column);
}

void parse_config_line(LineLexer& lx, Session& s) {
  while (!lx.done()) {
    Token key = lx.next();
    if (key.text == ",") continue;
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key.text) == kConfigKeys.end()) {
      lx.fail("unknown config key '" + key.text + "'", key.column);
    }
    lx.expect("=");
    set_config(s.config, key.text, parse_uint(lx, lx.next()));
    if (std::find(s.config_keys.begin(), s.config_keys.end(), key.text) == s.config_keys.end()) {
      s.config_keys.push_back(key.text);
    }
  }
}

void declare(const LineLexer& lx, int line, std::set<std::string>& names, const Token& name) {
  if (!names.insert(name.text).second) {
    throw ReferenceError("line " + std::to_string(line) + ", column " + std::to_string(name.column) + ": '" +
                             name.text + "' is already declared",
                         line, name.column);
  }
  (void)lx;
}

void parse_ring_line(LineLexer& lx, int line, Session& s, Scope& scope, std::set<std::string>& names) {
  RingDecl r;
  r.line = line;
  Token name = lx.identifier("ring");
  Token kind = lx.next();
  // `ring semigroup { ... }` declares a ring named after its kind.
  const bool anonymous = kind.text == "{";
  if (anonymous) kind = name;
  declare(lx, line, names, name);
  r.name = name.text;
  if (!ring_keys().count(kind.text)) lx.fail("unknown ring kind '" + kind.text + "'", kind.column);
  r.kind = kind.text;
  if (!anonymous) lx.expect("{");
  for (;;) {
    Token key = lx.next();
    if (key.text == "}") break;
    if (key.text == ",") continue;
    if (!ring_keys().at(r.kind).count(key.text)) {
      lx.fail("unknown key '" + key.text + "' for ring kind " + r.kind, key.column);
    }
    lx.expect("=");
    Token value = lx.next();
    r.params.emplace_back(key.text, value.text);
  }
  if (!lx.done()) lx.fail("trailing text after '}'", lx.column());
  auto has = [&](const char* k) {
    return std::any_of(r.params.begin(), r.params.end(), [&](const auto& kv) { return kv.first == k; });
  };
  if (!has("p")) lx.fail("ring " + r.name + " needs p=", kind.column);
  if (r.kind == "semigroup" && !has("n") && !has("gens")) lx.fail("semigroup ring needs n= or gens=", kind.column);
  if (r.kind == "polynomial" && !has("vars")) lx.fail("polynomial ring needs vars=", kind.column);
  scope.ring_kind[r.name] = r.kind;
  s.rings.push_back(std::move(r));
  s.order += 'r';
}

void parse_ideal_line(LineLexer& lx, int line, Session& s, Scope& scope, std::set<std::string>& names) {
  IdealDecl d;
  d.line = line;
  Token name = lx.identifier("ideal");
  declare(lx, line, names, name);
  d.name = name.text;
  lx.expect("in");
  Token ring = lx.identifier("ring");
  if (!scope.ring_kind.count(ring.text)) {
    throw ReferenceError("line " + std::to_string(line) + ", column " + std::to_string(ring.column) +
                             ": undeclared ring '" + ring.text + "'",
                         line, ring.column);
  }
  d.ring = ring.text;
  lx.expect("=");
  std::string expr(lx.rest());
  d.expr_column = lx.column();
  while (!expr.empty() && std::isspace(static_cast<unsigned char>(expr.back()))) expr.pop_back();
  if (expr.empty()) lx.fail("empty ideal expression", d.expr_column);
  check_expression(lx, line, expr, d.expr_column, d.ring, scope);
  d.expr = expr;
  scope.ideal_ring[d.name] = d.ring;
  s.ideals.push_back(std::move(d));
  s.order += 'i';
}

void parse_compute_line(LineLexer& lx, int line, Session& s, const Scope& scope) {
  CommandDecl c;
  c.line = line;
  Token cmd = lx.next();
  const auto& table = signatures();
  auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == cmd.text; });
  if (it == table.end()) lx.fail("unknown command '" + cmd.text + "'", cmd.column);
  c.command = cmd.text;
  const std::string& sig = it->second;

  std::vector<Token> args;
  while (!lx.done()) {
    const int col = lx.column();
    if (lx.rest().substr(0, 7) == "expect " || lx.rest() == "expect") {
      lx.advance(6);
      std::string value(lx.rest());
      while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
      if (value.empty()) lx.fail("empty expectation", col);
      c.expect = value;
      break;
    }
    args.push_back(lx.next());
  }

  auto ref_error = [&](const Token& t, const std::string& what) {
    throw ReferenceError("line " + std::to_string(line) + ", column " + std::to_string(t.column) + ": undeclared " +
                             what + " '" + t.text + "'",
                         line, t.column);
  };
  std::size_t a = 0;
  for (std::size_t k = 0; k < sig.size(); ++k) {
    const char shape = sig[k];
    if (shape == '+') {
      for (; a < args.size(); ++a) parse_uint(lx, args[a]);
      break;
    }
    if (a >= args.size()) lx.fail(c.command + " expects " + std::to_string(sig.size()) + " arguments", lx.column());
    const Token& t = args[a++];
    switch (shape) {
      case 'I':
      case 'S': {
        auto r = scope.ideal_ring.find(t.text);
        if (r == scope.ideal_ring.end()) ref_error(t, "ideal");
        if (scope.is_semigroup(r->second) != (shape == 'S')) {
          lx.fail("'" + t.text + (shape == 'S' ? "' is not a semigroup ideal" : "' is a semigroup ideal"), t.column);
        }
        break;
      }
      case 'R':
      case 'G': {
        auto r = scope.ring_kind.find(t.text);
        if (r == scope.ring_kind.end()) ref_error(t, "ring");
        if ((r->second == "semigroup") != (shape == 'G')) lx.fail("ring '" + t.text + "' has the wrong kind", t.column);
        break;
      }
      case 'L':
        if (t.text.empty() || t.text.front() != '<') lx.fail("expected a generator list <...>", t.column);
        break;
      case 'N':
        parse_uint(lx, t);
        break;
      case 'K':
        if (t.text != "integral" && t.text != "tight" && t.text != "frobenius") {
          lx.fail("expected integral, tight or frobenius", t.column);
        }
        break;
      default:
        break;
    }
  }
  if (a < args.size()) lx.fail("too many arguments for " + c.command, args[a].column);
  for (const auto& t : args) c.args.push_back(t.text);
  s.commands.push_back(std::move(c));
  s.order += 'c';
}

std::string quote_if_needed(const std::string& arg) {
  if (!arg.empty() && arg.front() == '<') return arg;
  const bool plain = !arg.empty() && std::none_of(arg.begin(), arg.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}' || c == ',' || c == '=' || c == '"';
  });
  return plain ? arg : "\"" + arg + "\"";
}

}  // namespace

const std::vector<std::string>& session_commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, sig] : signatures()) out.push_back(name);
    return out;
  }();
  return names;
}

void set_config(SessionConfig& cfg, const std::string& key, std::uint64_t value) {
  auto narrow = [&](std::uint32_t& field) {
    if (value > 0xffffffffu) throw DomainError("config value for " + key + " is too large");
    field = static_cast<std::uint32_t>(value);
  };
  if (key == "seed") {
    cfg.seed = value;
  } else if (key == "qmax") {
    cfg.q_max = value;
  } else if (key == "samples") {
    narrow(cfg.samples);
  } else if (key == "stall_window") {
    narrow(cfg.stall_window);
  } else if (key == "degree_cap") {
    narrow(cfg.degree_cap);
  } else if (key == "precision") {
    narrow(cfg.precision);
  } else if (key == "n_max") {
    narrow(cfg.n_max);
  } else if (key == "spread_trials") {
    narrow(cfg.spread_trials);
  } else {
    throw DomainError("unknown config key '" + key + "'");
  }
}

Session parse_session(std::string_view text) {
  Session s;
  Scope scope;
  std::set<std::string> names;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    LineLexer lx(line, line_no);
    if (lx.done()) {
      if (end == text.size()) break;
      continue;
    }
    Token head = lx.next();
    if (head.text == "config") {
      parse_config_line(lx, s);
    } else if (head.text == "ring") {
      parse_ring_line(lx, line_no, s, scope, names);
    } else if (head.text == "ideal") {
      parse_ideal_line(lx, line_no, s, scope, names);
    } else if (head.text == "compute") {
      parse_compute_line(lx, line_no, s, scope);
    } else {
      lx.fail("expected config, ring, ideal or compute; found '" + head.text + "'", head.column);
    }
    if (end == text.size()) break;
  }
  return s;
}

std::string print_session(const Session& s) {
  std::ostringstream out;
  if (!s.config_keys.empty()) {
    out << "config";
    for (const auto& key : kConfigKeys) {
      if (std::find(s.config_keys.begin(), s.config_keys.end(), key) != s.config_keys.end()) {
        out << ' ' << key << '=' << config_value(s.config, key);
      }
    }
    out << '\n';
  }
  std::size_t r = 0, i = 0, c = 0;
  for (char kind : s.order) {
    if (kind == 'r') {
      const auto& d = s.rings[r++];
      out << "ring " << d.name << ' ' << d.kind << " {";
      for (std::size_t k = 0; k < d.params.size(); ++k) {
        out << (k ? ", " : " ") << d.params[k].first << '=' << quote_if_needed(d.params[k].second);
      }
      out << " }\n";
    } else if (kind == 'i') {
      const auto& d = s.ideals[i++];
      out << "ideal " << d.name << " in " << d.ring << " = " << d.expr << '\n';
    } else {
      const auto& d = s.commands[c++];
      out << "compute " << d.command;
      for (const auto& a : d.args) out << ' ' << quote_if_needed(a);
      if (d.expect) out << " expect " << *d.expect;
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace tightcore
