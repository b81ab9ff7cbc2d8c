#include "tightcore/poly_io.hpp"

#include <cctype>

#include "tightcore/errors.hpp"

namespace tightcore {

std::string format_scalar(const Field& k, Scalar c) {
  if (c.v < k.characteristic()) return std::to_string(c.v);
  const auto coeffs = k.coefficients(c);
  std::string out;
  int nterms = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] == 0) continue;
    if (nterms++ > 0) out += "+";
    if (i == 0) {
      out += std::to_string(coeffs[i]);
      continue;
    }
    if (coeffs[i] != 1) out += std::to_string(coeffs[i]) + "*";
    out += "a";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return nterms > 1 ? "(" + out + ")" : out;
}

namespace {

std::string format_monomial(const PolyRing& r, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < r.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += r.variables()[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

class PolyParser {
 public:
  PolyParser(const PolyRingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Poly parse() {
    Poly f = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(pos_ + 1), 1, static_cast<int>(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly constant(Scalar c) const { return Poly::constant(ring_, c); }

  Poly expr() {
    Poly acc(ring_);
    bool first = true;
    for (;;) {
      bool negate = false;
      if (accept('-')) {
        negate = true;
      } else if (!first && !accept('+')) {
        break;
      } else if (first) {
        accept('+');
      }
      Poly t = product();
      acc = negate ? acc - t : acc + t;
      first = false;
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) break;
    }
    return acc;
  }

  Poly product() {
    Poly acc = power();
    while (accept('*')) acc = acc * power();
    return acc;
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const auto n = std::stoull(std::string(text_.substr(start, pos_ - start)));
      base = pow(base, n);
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of polynomial");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string digits(text_.substr(start, pos_ - start));
      std::uint64_t value = 0;
      const std::uint64_t p = ring_->field().characteristic();
      for (char d : digits) value = (value * 10 + static_cast<std::uint64_t>(d - '0')) % p;
      return constant({value});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      const int idx = ring_->index_of(name);
      if (idx >= 0) return Poly::variable(ring_, static_cast<std::size_t>(idx));
      if (auto param = ring_->field().parameter(name)) return constant(*param);
      if (name == "a" && ring_->field().degree() > 1) return constant(ring_->field().generator());
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const PolyRingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  const PolyRing& r = f.ring();
  const Field& k = r.field();
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    const std::string mono = format_monomial(r, t.mono);
    if (mono.empty()) {
      out += format_scalar(k, t.coeff);
    } else if (t.coeff == k.one()) {
      out += mono;
    } else {
      out += format_scalar(k, t.coeff) + "*" + mono;
    }
  }
  return out;
}

Poly parse_poly(const PolyRingPtr& ring, std::string_view text) { return PolyParser(ring, text).parse(); }

}  // namespace tightcore
