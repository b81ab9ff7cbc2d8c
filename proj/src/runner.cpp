#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "tightcore/catalog.hpp"
#include "tightcore/cores.hpp"
#include "tightcore/poly_io.hpp"
#include "tightcore/semigroup.hpp"
#include "tightcore/session.hpp"

namespace tightcore {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "tightcore-report/1";

std::uint32_t generic_degree(std::uint32_t p) {
  std::uint32_t e = 1;
  std::uint64_t size = p;
  while (size < kGenericFieldSize) {
    size *= p;
    ++e;
  }
  return e;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::uint32_t to_u32(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || n > 0xffffffffull) throw DomainError(key + "=" + v + " is not a valid integer");
  return static_cast<std::uint32_t>(n);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

// Generators inside <...>, with their offsets into `literal`.
std::vector<std::pair<std::string, std::size_t>> literal_items(const std::string& literal) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 1;
  const std::size_t end = literal.size() - 1;
  while (start <= end) {
    std::size_t comma = literal.find(',', start);
    if (comma == std::string::npos || comma > end) comma = end;
    std::size_t a = start;
    while (a < comma && std::isspace(static_cast<unsigned char>(literal[a]))) ++a;
    std::string item = trim(std::string_view(literal).substr(a, comma - a));
    if (!item.empty()) out.emplace_back(item, a);
    start = comma + 1;
  }
  return out;
}

// ---- ideal expressions over either kind of ring ----

struct PolyOps {
  using Ideal = IdealHandle;
  RingPtr R;
  const std::map<std::string, IdealHandle>* names;
  Ideal literal(const std::vector<std::pair<std::string, std::size_t>>& items,
                const std::function<int(std::size_t)>& column, int line) const {
    std::vector<Poly> gens;
    for (const auto& [text, offset] : items) {
      try {
        gens.push_back(R->parse(text));
      } catch (const ParseError& e) {
        const int col = column(offset) + e.column() - 1;
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what(), line,
                         col);
      }
    }
    return IdealHandle(R, gens);
  }
  Ideal maximal() const { return maximal_ideal(R); }
  const Ideal* lookup(const std::string& n) const {
    auto it = names->find(n);
    return it == names->end() ? nullptr : &it->second;
  }
  static Ideal sum(const Ideal& a, const Ideal& b) { return ideal_sum(a, b); }
  static Ideal product(const Ideal& a, const Ideal& b) { return ideal_product(a, b); }
  static Ideal power(const Ideal& a, std::uint32_t n) { return ideal_power(a, n); }
};

struct SgOps {
  using Ideal = SemigroupIdeal;
  SgRingPtr R;
  std::uint32_t precision;
  const std::map<std::string, SemigroupIdeal>* names;
  Ideal literal(const std::vector<std::pair<std::string, std::size_t>>& items,
                const std::function<int(std::size_t)>& column, int line) const {
    std::vector<SeriesElem> gens;
    for (const auto& [text, offset] : items) {
      try {
        gens.push_back(SeriesElem::parse(R, text));
      } catch (const ParseError& e) {
        const int col = column(offset) + e.column() - 1;
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what(), line,
                         col);
      }
    }
    return SemigroupIdeal(R, gens, precision);
  }
  Ideal maximal() const { return sg_maximal_ideal(R); }
  const Ideal* lookup(const std::string& n) const {
    auto it = names->find(n);
    return it == names->end() ? nullptr : &it->second;
  }
  static Ideal sum(const Ideal& a, const Ideal& b) { return sg_sum(a, b); }
  static Ideal product(const Ideal& a, const Ideal& b) { return sg_product(a, b); }
  static Ideal power(const Ideal& a, std::uint32_t n) { return sg_power(a, n); }
};

// sum := prod ('+' prod)*, prod := pow ('*' pow)*, pow := atom ('^' N)?,
// atom := <gens> | name | maximal | '(' sum ')'.
template <class Ops>
class ExprParser {
 public:
  using Ideal = typename Ops::Ideal;
  ExprParser(const Ops& ops, const std::string& text, int line, int column)
      : ops_(ops), s_(text), line_(line), column_(column) {}

  Ideal parse() {
    Ideal v = sum();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    const int col = column_ + static_cast<int>(pos_);
    throw ParseError("line " + std::to_string(line_) + ", column " + std::to_string(col) + ": " + msg, line_, col);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Ideal sum() {
    Ideal v = prod();
    while (eat('+')) v = Ops::sum(v, prod());
    return v;
  }
  Ideal prod() {
    Ideal v = pow();
    while (eat('*')) v = Ops::product(v, pow());
    return v;
  }
  Ideal pow() {
    Ideal v = atom();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      v = Ops::power(v, static_cast<std::uint32_t>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return v;
  }
  Ideal atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      Ideal v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (s_[pos_] == '<') {
      const std::size_t close = s_.find('>', pos_);
      if (close == std::string::npos) fail("missing '>'");
      const std::string lit = s_.substr(pos_, close - pos_ + 1);
      const std::size_t base = pos_;
      pos_ = close + 1;
      const int col0 = column_;
      return ops_.literal(
          literal_items(lit), [&](std::size_t off) { return col0 + static_cast<int>(base + off); }, line_);
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected an ideal");
    const std::string name = s_.substr(start, pos_ - start);
    if (const Ideal* I = ops_.lookup(name)) return *I;
    if (name == "maximal") return ops_.maximal();
    pos_ = start;
    const int col = column_ + static_cast<int>(pos_);
    throw ReferenceError("line " + std::to_string(line_) + ", column " + std::to_string(col) + ": unknown ideal '" +
                             name + "'",
                         line_, col);
  }

  const Ops& ops_;
  std::string s_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

// ---- JSON for results ----

Json verdict_json(const MembershipVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["method"] = v.method;
  j["witness_q"] = v.witness_q;
  j["q_tested"] = v.q_tested;
  j["bound"] = v.bound ? Json(v.bound->to_string()) : Json(nullptr);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json closure_json(const ClosureReport& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["input"] = r.input.to_string();
  j["lower"] = r.lower.to_string();
  j["upper"] = r.upper.to_string();
  j["exact"] = r.exact;
  j["upper_certified"] = r.upper_certified;
  j["stable"] = r.stable;
  j["q_first"] = r.q_first;
  j["q_last"] = r.q_last;
  j["test_ideal"] = r.test_ideal ? Json(r.test_ideal->to_string()) : Json(nullptr);
  j["method"] = r.method;
  return j;
}

Json bracket_json(const CoreBracket& b) {
  Json j;
  j["kind"] = to_string(b.kind);
  j["input"] = b.input.to_string();
  j["lower"] = b.lower ? Json(b.lower->to_string()) : Json(nullptr);
  j["upper"] = b.upper.to_string();
  j["exact"] = b.exact;
  j["stable"] = b.stable;
  j["samples"] = b.samples;
  j["seed"] = b.seed;
  j["trace"] = b.trace;
  Json reds = Json::array();
  for (const auto& r : b.reductions) reds.push_back(r.to_string());
  j["reductions"] = reds;
  j["method"] = b.method;
  return j;
}

Json certificate_json(const ReductionCertificate& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["J"] = c.J.to_string();
  j["I"] = c.I.to_string();
  j["certified"] = c.certified;
  j["reduction_number"] = c.reduction_number ? Json(*c.reduction_number) : Json(nullptr);
  Json checks = Json::array();
  for (std::size_t i = 0; i < c.verdicts.size(); ++i) {
    checks.push_back({{"element", format_poly(c.checked[i])}, {"verdict", verdict_json(c.verdicts[i])}});
  }
  j["checked"] = checks;
  return j;
}

Json sg_core_json(const SgCoreResult& r) {
  Json j;
  j["ideal"] = r.ideal.to_string();
  j["exact"] = r.exact;
  j["tightly_closed"] = r.tightly_closed;
  j["method"] = r.method;
  j["samples"] = r.samples;
  return j;
}

// ---- execution ----

// What an `expect` clause is compared against.
struct Value {
  std::variant<std::monostate, std::string, IdealHandle, SemigroupIdeal> v;
  std::string text() const {
    if (auto s = std::get_if<std::string>(&v)) return *s;
    if (auto I = std::get_if<IdealHandle>(&v)) return I->to_string();
    if (auto I = std::get_if<SemigroupIdeal>(&v)) return I->to_string();
    return "";
  }
};

class Runner {
 public:
  Runner(const Session& s, const RunOptions& opts) : s_(s), opts_(opts) {
    core_opts_.seed = s.config.seed;
    core_opts_.q_max = s.config.q_max;
    core_opts_.n_max = s.config.n_max;
    core_opts_.max_samples = s.config.samples;
    core_opts_.stall_window = s.config.stall_window;
    core_opts_.spread_trials = s.config.spread_trials;
  }

  RunResult run() {
    Json doc;
    doc["schema"] = kSchema;
    const auto& c = s_.config;
    doc["config"] = {{"seed", c.seed},         {"qmax", c.q_max},           {"samples", c.samples},
                     {"stall_window", c.stall_window}, {"degree_cap", c.degree_cap}, {"precision", c.precision},
                     {"n_max", c.n_max},       {"spread_trials", c.spread_trials}};
    Json rings = Json::array();
    Json reports = Json::array();
    bool success = true;
    std::size_t r = 0, i = 0, k = 0;
    for (char kind : s_.order) {
      Json rep;
      if (kind == 'r') {
        const auto& d = s_.rings[r++];
        rep = guarded(d.line, "ring", {d.name}, [&](Json& out) { return declare_ring(d, out); });
        if (rep["status"] == "ok") {
          rings.push_back(rep["result"]);
          continue;
        }
      } else if (kind == 'i') {
        const auto& d = s_.ideals[i++];
        rep = guarded(d.line, "ideal", {d.name}, [&](Json& out) { return declare_ideal(d, out); });
        if (rep["status"] == "ok") continue;
      } else {
        const auto& d = s_.commands[k++];
        rep = guarded(d.line, d.command, d.args, [&](Json& out) { return execute(d, out); }, d.expect);
      }
      if (rep["status"] != "ok" || (rep.contains("expect") && !rep["expect"]["held"].get<bool>())) success = false;
      reports.push_back(std::move(rep));
    }
    doc["rings"] = rings;
    doc["reports"] = reports;
    doc["success"] = success;
    return {doc.dump(2) + "\n", render_text(doc), success};
  }

 private:
  using Body = std::function<Value(Json&)>;

  Json guarded(int line, const std::string& command, const std::vector<std::string>& args, const Body& body,
               const std::optional<std::string>& expect = std::nullopt) {
    Json rep;
    rep["line"] = line;
    rep["command"] = command;
    rep["args"] = args;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Json result = Json::object();
      Value value = body(result);
      rep["status"] = "ok";
      rep["value"] = value.text();
      rep["result"] = result;
      if (expect) rep["expect"] = check_expect(*expect, value, line);
    } catch (const std::exception& e) {
      rep["status"] = "error";
      rep["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
      if (expect) rep["expect"] = {{"value", *expect}, {"held", false}};
    }
    if (opts_.timing) {
      const auto dt = std::chrono::steady_clock::now() - t0;
      rep["elapsed_ms"] = std::round(std::chrono::duration<double, std::milli>(dt).count() * 1000.0) / 1000.0;
    }
    return rep;
  }

  static std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const ReferenceError*>(&e)) return "reference";
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
    if (dynamic_cast<const ResourceError*>(&e)) return "resource";
    if (dynamic_cast<const NotRegisteredError*>(&e)) return "not_registered";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    return "internal";
  }

  Json check_expect(const std::string& expect, const Value& value, int line) {
    Json j;
    j["value"] = expect;
    bool held = false;
    if (auto I = std::get_if<IdealHandle>(&value.v)) {
      held = ideal_equal(*I, eval_poly(I->ring_ptr(), expect, line, 0));
    } else if (auto S = std::get_if<SemigroupIdeal>(&value.v)) {
      held = *S == eval_sg(S->ring_ptr(), expect, line, 0);
    } else if (auto str = std::get_if<std::string>(&value.v)) {
      held = *str == trim(expect);
    }
    j["held"] = held;
    return j;
  }

  // -- declarations --

  Value declare_ring(const RingDecl& d, Json& out) {
    std::map<std::string, std::string> kv(d.params.begin(), d.params.end());
    const std::uint32_t p = to_u32("p", kv.at("p"));
    const std::uint64_t seed = kv.count("seed") ? to_u32("seed", kv.at("seed")) : s_.config.seed;
    const std::uint32_t e = kv.count("e") ? to_u32("e", kv.at("e")) : generic_degree(p);
    out["name"] = d.name;
    out["kind"] = d.kind;
    if (d.kind == "semigroup") {
      SgRingPtr R;
      if (kv.count("gens")) {
        std::vector<std::uint32_t> gens;
        for (const auto& g : split_commas(kv.at("gens"))) gens.push_back(to_u32("gens", g));
        R = SemigroupRing::make(Field::make(p, e, seed), SemigroupDesc::from_generators(gens));
      } else {
        R = semigroup_ring(p, e, to_u32("n", kv.at("n")), seed);
      }
      sg_rings_[d.name] = R;
      const auto& S = R->semigroup();
      out["field_size"] = R->field().size();
      out["semigroup"] = S.generators();
      out["conductor"] = S.conductor();
      return {std::string("ok")};
    }
    RingPtr R;
    if (d.kind == "diagonal") {
      R = diagonal_hypersurface(p, seed, s_.config.degree_cap);
    } else if (d.kind == "e8") {
      R = e8_surface(p, seed, s_.config.degree_cap);
    } else {
      R = polynomial_ring(p, e, split_commas(kv.at("vars")), seed, s_.config.degree_cap);
    }
    rings_[d.name] = R;
    out["field_size"] = R->field().size();
    Json rel = Json::array();
    for (const auto& f : R->relations()) rel.push_back(format_poly(f));
    out["relations"] = rel;
    return {std::string("ok")};
  }

  IdealHandle eval_poly(const RingPtr& R, const std::string& expr, int line, int column) {
    PolyOps ops{R, &ideals_};
    return ExprParser<PolyOps>(ops, expr, line, column).parse();
  }
  SemigroupIdeal eval_sg(const SgRingPtr& R, const std::string& expr, int line, int column) {
    SgOps ops{R, s_.config.precision, &sg_ideals_};
    return ExprParser<SgOps>(ops, expr, line, column).parse();
  }

  Value declare_ideal(const IdealDecl& d, Json& out) {
    if (auto it = sg_rings_.find(d.ring); it != sg_rings_.end()) {
      auto I = eval_sg(it->second, d.expr, d.line, d.expr_column);
      sg_ideals_[d.name] = I;
      out["ideal"] = I.to_string();
      return {I};
    }
    auto it = rings_.find(d.ring);
    if (it == rings_.end()) throw DomainError("ring '" + d.ring + "' failed to build");
    auto I = eval_poly(it->second, d.expr, d.line, d.expr_column);
    ideals_[d.name] = I;
    out["ideal"] = I.to_string();
    return {I};
  }

  // -- commands --

  const IdealHandle& ideal(const std::string& n) const {
    auto it = ideals_.find(n);
    if (it == ideals_.end()) throw DomainError("ideal '" + n + "' is unavailable (its declaration failed)");
    return it->second;
  }
  const SemigroupIdeal& sg_ideal(const std::string& n) const {
    auto it = sg_ideals_.find(n);
    if (it == sg_ideals_.end()) throw DomainError("ideal '" + n + "' is unavailable (its declaration failed)");
    return it->second;
  }
  const RingPtr& ring(const std::string& n) const {
    auto it = rings_.find(n);
    if (it == rings_.end()) throw DomainError("ring '" + n + "' is unavailable (its declaration failed)");
    return it->second;
  }
  const SgRingPtr& sg_ring(const std::string& n) const {
    auto it = sg_rings_.find(n);
    if (it == sg_rings_.end()) throw DomainError("ring '" + n + "' is unavailable (its declaration failed)");
    return it->second;
  }

  static Value exact_value(bool exact, const IdealHandle& I) {
    return exact ? Value{I} : Value{std::string("inexact")};
  }

  Value execute(const CommandDecl& d, Json& out) {
    const auto& a = d.args;
    const auto& c = d.command;
    const std::uint64_t q_max = s_.config.q_max;

    if (c == "groebner") {
      const auto& I = ideal(a[0]);
      Json basis = Json::array();
      for (const auto& g : I.basis().polys) basis.push_back(format_poly(g));
      out["ideal"] = I.to_string();
      out["basis"] = basis;
      return {I};
    }
    if (c == "colon" || c == "intersect") {
      auto J = c == "colon" ? ideal_colon(ideal(a[0]), ideal(a[1])) : ideal_intersect(ideal(a[0]), ideal(a[1]));
      out["ideal"] = J.to_string();
      return {J};
    }
    if (c == "bracket") {
      auto J = bracket_power(ideal(a[0]), std::stoull(a[1]));
      out["ideal"] = J.to_string();
      return {J};
    }
    if (c == "fclosure" || c == "tclosure" || c == "tclosure_sop") {
      const auto& I = ideal(a[0]);
      ClosureReport r = c == "fclosure"  ? frobenius_closure(I, q_max)
                        : c == "tclosure" ? tight_closure_bracket(I, q_max)
                                          : tight_closure_sop(I);
      out = closure_json(r);
      return exact_value(r.exact, r.lower);
    }
    if (c == "tight_member" || c == "frobenius_member") {
      const auto& I = ideal(a[1]);
      const Poly x = I.ring().parse(a[0]);
      auto v = c == "tight_member" ? tight_member(x, I, q_max) : frobenius_member(x, I, q_max);
      out["element"] = format_poly(x);
      out["verdict"] = verdict_json(v);
      return {to_string(v.status)};
    }
    if (c == "star_independent") {
      const auto& R = ring(a[0]);
      std::vector<Poly> gens;
      for (const auto& [text, off] : literal_items(a[1])) gens.push_back(R->parse(text));
      auto rep = star_independent(R, gens, q_max);
      out["independent"] = to_string(rep.independent);
      Json per = Json::array();
      for (std::size_t i = 0; i < rep.per_element.size(); ++i) {
        per.push_back({{"element", format_poly(gens[i])}, {"verdict", verdict_json(rep.per_element[i])}});
      }
      out["per_element"] = per;
      return {to_string(rep.independent)};
    }
    if (c == "reduction_number") {
      auto r = reduction_number(ideal(a[0]), ideal(a[1]), s_.config.n_max);
      out["reduction_number"] = r ? Json(*r) : Json(nullptr);
      return {r ? std::to_string(*r) : std::string("none")};
    }
    if (c == "is_reduction") {
      const ReductionKind kind = a[2] == "integral" ? ReductionKind::integral
                                 : a[2] == "tight"  ? ReductionKind::tight
                                                    : ReductionKind::frobenius;
      auto cert = is_cl_reduction(ideal(a[0]), ideal(a[1]), kind, q_max, s_.config.n_max);
      out = certificate_json(cert);
      return {std::string(cert.certified ? "true" : "false")};
    }
    if (c == "spread") {
      const int l = analytic_spread(ideal(a[0]));
      out["analytic_spread"] = l;
      return {std::to_string(l)};
    }
    if (c == "star_spread") {
      auto r = star_spread(ideal(a[0]), core_opts_);
      out["analytic_spread"] = r.analytic_spread;
      out["star_low"] = r.star_low;
      out["star_high"] = r.star_high;
      out["exact"] = r.exact;
      out["height"] = r.height;
      out["mu"] = r.mu;
      out["deviation"] = r.deviation;
      out["second_deviation"] = r.second_deviation;
      Json w = Json::array();
      for (const auto& g : r.witness) w.push_back(format_poly(g));
      out["witness"] = w;
      return {r.exact ? std::to_string(r.star_low)
                      : std::to_string(r.star_low) + ".." + std::to_string(r.star_high)};
    }
    if (c == "core" || c == "star_core" || c == "f_core") {
      const CoreKind kind = c == "core" ? CoreKind::core : c == "star_core" ? CoreKind::star_core : CoreKind::f_core;
      auto b = core_by_intersection(ideal(a[0]), kind, core_opts_);
      out = bracket_json(b);
      return exact_value(b.exact, b.upper);
    }
    if (c == "core_colon") {
      auto K = core_colon_formula(ideal(a[0]), ideal(a[1]), s_.config.n_max);
      out["ideal"] = K.to_string();
      return {K};
    }
    if (c == "minimal_reduction") {
      auto J = find_minimal_reduction(ideal(a[0]), core_opts_);
      if (!J) throw ResourceError("no minimal reduction found within the sample budget");
      out["ideal"] = J->to_string();
      return {*J};
    }
    if (c == "compare_cores") {
      std::vector<std::uint64_t> seeds;
      for (std::size_t i = 1; i < a.size(); ++i) seeds.push_back(std::stoull(a[i]));
      if (seeds.empty()) seeds.push_back(s_.config.seed);
      auto cmp = compare_cores(ideal(a[0]), seeds, core_opts_);
      out["core"] = cmp.core ? Json(cmp.core->to_string()) : Json(nullptr);
      out["core_reduction"] = cmp.core_reduction ? Json(cmp.core_reduction->to_string()) : Json(nullptr);
      out["star"] = bracket_json(cmp.star);
      out["f"] = bracket_json(cmp.f);
      out["relation"] = to_string(cmp.relation);
      out["containments_hold"] = cmp.containments_hold;
      out["radicals_agree"] = cmp.radicals_agree;
      out["seeds_agree"] = cmp.seeds_agree;
      out["seeds"] = cmp.seeds;
      out["notes"] = cmp.notes;
      return {to_string(cmp.relation)};
    }
    if (c == "semigroup_conductor") {
      const auto& S = sg_ring(a[0])->semigroup();
      out["generators"] = S.generators();
      out["gaps"] = S.gaps();
      out["frobenius_number"] = S.frobenius_number();
      out["conductor"] = S.conductor();
      out["multiplicity"] = S.multiplicity();
      out["test_ideal"] = conductor_test_ideal(sg_ring(a[0])).to_string();
      return {std::to_string(S.conductor())};
    }
    if (c == "semigroup_canonical") {
      auto I = canonical_principal(SeriesElem::parse(sg_ring(a[0]), a[1]));
      out["ideal"] = I.to_string();
      return {I};
    }
    if (c == "semigroup_tclosure") {
      auto I = tight_closure_sg(sg_ideal(a[0]));
      out["ideal"] = I.to_string();
      return {I};
    }
    if (c == "semigroup_star_core" || c == "semigroup_core") {
      const auto& I = sg_ideal(a[0]);
      SgCoreResult r = c == "semigroup_star_core"
                           ? star_core_sg(I)
                           : sampled_core_sg(I, SgCoreKind::core, s_.config.samples, s_.config.seed,
                                             s_.config.stall_window, s_.config.n_max);
      out = sg_core_json(r);
      return r.exact ? Value{r.ideal} : Value{std::string("inexact")};
    }
    if (c == "semigroup_crosscheck") {
      const bool ok = star_core_crosscheck(sg_ideal(a[0]), to_u32("samples", a[1]), s_.config.seed);
      out["agrees"] = ok;
      return {std::string(ok ? "true" : "false")};
    }
    throw DomainError("unknown command '" + c + "'");
  }

  // -- text rendering --

  static std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string out;
      for (const auto& x : v) out += (out.empty() ? "" : ", ") + scalar_text(x);
      return "[" + out + "]";
    }
    return v.dump();
  }

  static void render_fields(std::ostringstream& out, const Json& obj, const std::string& indent) {
    for (const auto& [key, v] : obj.items()) {
      if (v.is_object()) {
        out << indent << key << ":\n";
        render_fields(out, v, indent + "  ");
      } else if (v.is_array() && !v.empty() && v.front().is_object()) {
        out << indent << key << ":\n";
        for (const auto& item : v) {
          out << indent << "  -\n";
          render_fields(out, item, indent + "    ");
        }
      } else {
        out << indent << key << ": " << scalar_text(v) << '\n';
      }
    }
  }

  static std::string render_text(const Json& doc) {
    std::ostringstream out;
    out << doc["schema"].get<std::string>() << '\n';
    out << "config:";
    for (const auto& [key, v] : doc["config"].items()) out << ' ' << key << '=' << v.dump();
    out << '\n';
    for (const auto& r : doc["rings"]) {
      out << "ring " << r["name"].get<std::string>() << " (" << r["kind"].get<std::string>()
          << ", field size " << r["field_size"].dump() << ")\n";
      if (r.contains("relations")) {
        for (const auto& f : r["relations"]) out << "  relation: " << f.get<std::string>() << '\n';
      }
    }
    for (const auto& rep : doc["reports"]) {
      out << "\nline " << rep["line"].dump() << ": " << rep["command"].get<std::string>();
      for (const auto& arg : rep["args"]) out << ' ' << arg.get<std::string>();
      out << "  [" << rep["status"].get<std::string>() << "]";
      if (rep.contains("elapsed_ms")) out << "  " << rep["elapsed_ms"].dump() << " ms";
      out << '\n';
      if (rep["status"] == "ok") {
        out << "  value: " << rep["value"].get<std::string>() << '\n';
        render_fields(out, rep["result"], "    ");
      } else {
        out << "  error (" << rep["error"]["kind"].get<std::string>()
            << "): " << rep["error"]["message"].get<std::string>() << '\n';
      }
      if (rep.contains("expect")) {
        out << "  expect " << rep["expect"]["value"].get<std::string>() << ": "
            << (rep["expect"]["held"].get<bool>() ? "held" : "FAILED") << '\n';
      }
    }
    out << "\nsuccess: " << (doc["success"].get<bool>() ? "true" : "false") << '\n';
    return out.str();
  }

  const Session& s_;
  RunOptions opts_;
  CoreOptions core_opts_;
  std::map<std::string, RingPtr> rings_;
  std::map<std::string, SgRingPtr> sg_rings_;
  std::map<std::string, IdealHandle> ideals_;
  std::map<std::string, SemigroupIdeal> sg_ideals_;
};

}  // namespace

RunResult run_session(const Session& s, const RunOptions& opts) { return Runner(s, opts).run(); }

}  // namespace tightcore
