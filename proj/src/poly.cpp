#include "tightcore/poly.hpp"

#include <algorithm>
#include <numeric>

#include "tightcore/errors.hpp"

namespace tightcore {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t i, std::uint16_t power) {
  Monomial m;
  m.set(i, power);
  return m;
}

void Monomial::set(std::size_t i, std::uint16_t value) {
  degree = degree - exps[i] + value;
  exps[i] = value;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree > other.degree) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exps[i] > other.exps[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exps[i] != 0 && other.exps[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const std::uint32_t s = std::uint32_t{exps[i]} + other.exps[i];
    if (s > 0xffff) throw ResourceError("monomial exponent overflow");
    out.exps[i] = static_cast<std::uint16_t>(s);
  }
  out.degree = degree + other.degree;
  return out;
}

Monomial Monomial::quotient_of(const Monomial& numerator) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) out.exps[i] = numerator.exps[i] - exps[i];
  out.degree = numerator.degree - degree;
  return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial out;
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    out.exps[i] = std::max(exps[i], other.exps[i]);
    d += out.exps[i];
  }
  out.degree = d;
  return out;
}

Monomial Monomial::pow(std::uint32_t n) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const std::uint64_t s = std::uint64_t{exps[i]} * n;
    if (s > 0xffff) throw ResourceError("monomial exponent overflow");
    out.exps[i] = static_cast<std::uint16_t>(s);
  }
  out.degree = degree * n;
  return out;
}

// ---------------------------------------------------------------- MonomialOrder

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  MonomialOrder o;
  o.kind = OrderKind::grevlex;
  o.priority.resize(nvars);
  std::iota(o.priority.begin(), o.priority.end(), 0);
  return o;
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  MonomialOrder o = grevlex(nvars);
  o.kind = OrderKind::lex;
  return o;
}

MonomialOrder MonomialOrder::elimination(std::size_t nvars, const std::vector<std::size_t>& eliminated) {
  MonomialOrder o;
  o.kind = OrderKind::block;
  o.block_size = eliminated.size();
  o.priority = eliminated;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (std::find(eliminated.begin(), eliminated.end(), i) == eliminated.end()) o.priority.push_back(i);
  }
  return o;
}

namespace {

// grevlex restricted to priority[lo, hi).
std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, const std::vector<std::size_t>& pr,
                                   std::size_t lo, std::size_t hi) {
  std::uint32_t da = 0, db = 0;
  for (std::size_t k = lo; k < hi; ++k) {
    da += a.exps[pr[k]];
    db += b.exps[pr[k]];
  }
  if (da != db) return da <=> db;
  for (std::size_t k = hi; k-- > lo;) {
    const auto ea = a.exps[pr[k]];
    const auto eb = b.exps[pr[k]];
    if (ea != eb) return eb <=> ea;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = priority.size();
  switch (kind) {
    case OrderKind::lex:
      for (std::size_t k = 0; k < n; ++k) {
        const auto ea = a.exps[priority[k]];
        const auto eb = b.exps[priority[k]];
        if (ea != eb) return ea <=> eb;
      }
      return std::strong_ordering::equal;
    case OrderKind::grevlex: {
      if (a.degree != b.degree) return a.degree <=> b.degree;
      for (std::size_t k = n; k-- > 0;) {
        const auto ea = a.exps[priority[k]];
        const auto eb = b.exps[priority[k]];
        if (ea != eb) return eb <=> ea;
      }
      return std::strong_ordering::equal;
    }
    case OrderKind::block: {
      auto c = grevlex_range(a, b, priority, 0, block_size);
      if (c != 0) return c;
      return grevlex_range(a, b, priority, block_size, n);
    }
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- PolyRing

PolyRing::PolyRing(FieldPtr field, std::vector<std::string> variables, MonomialOrder order)
    : field_(std::move(field)), vars_(std::move(variables)), order_(std::move(order)) {
  if (vars_.size() > kMaxVars) throw DomainError("at most 16 variables are supported");
  if (order_.priority.size() != vars_.size()) throw DomainError("monomial order has wrong variable count");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = i + 1; j < vars_.size(); ++j) {
      if (vars_[i] == vars_[j]) throw DomainError("duplicate variable name '" + vars_[i] + "'");
    }
  }
}

PolyRing::PolyRing(FieldPtr field, std::vector<std::string> variables)
    : PolyRing(std::move(field), variables, MonomialOrder::grevlex(variables.size())) {}

std::shared_ptr<const PolyRing> PolyRing::make(FieldPtr field, std::vector<std::string> variables) {
  return std::make_shared<const PolyRing>(std::move(field), std::move(variables));
}

std::shared_ptr<const PolyRing> PolyRing::make(FieldPtr field, std::vector<std::string> variables,
                                               MonomialOrder order) {
  return std::make_shared<const PolyRing>(std::move(field), std::move(variables), std::move(order));
}

int PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool PolyRing::same_as(const PolyRing& other) const {
  return this == &other || (field_->same_as(*other.field_) && vars_ == other.vars_ && order_ == other.order_);
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(PolyRingPtr ring, Scalar c) {
  Poly p(std::move(ring));
  if (c.v != 0) p.terms_.push_back({Monomial::one(), c});
  return p;
}

Poly Poly::variable(PolyRingPtr ring, std::size_t i) {
  if (i >= ring->nvars()) throw DomainError("variable index out of range");
  Poly p(ring);
  p.terms_.push_back({Monomial::variable(i), ring->field().one()});
  return p;
}

Poly Poly::monomial(PolyRingPtr ring, const Monomial& m, Scalar c) {
  Poly p(std::move(ring));
  if (c.v != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(PolyRingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  const PolyRing& r = *p.ring_;
  const Field& k = r.field();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return r.compare(a.mono, b.mono) > 0; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff = k.add(p.terms_.back().coeff, t.coeff);
      if (p.terms_.back().coeff.v == 0) p.terms_.pop_back();
    } else if (t.coeff.v != 0) {
      p.terms_.push_back(t);
    }
  }
  return p;
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree);
  return d;
}

std::uint32_t Poly::order_at_origin() const {
  if (terms_.empty()) return 0;
  std::uint32_t d = terms_.front().mono.degree;
  for (const auto& t : terms_) d = std::min(d, t.mono.degree);
  return d;
}

Scalar Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.degree == 0) return terms_.back().coeff;
  return {0};
}

bool Poly::is_homogeneous() const {
  for (const auto& t : terms_) {
    if (t.mono.degree != terms_.front().mono.degree) return false;
  }
  return true;
}

void Poly::check_ring(const Poly& other) const {
  if (ring_ == other.ring_) return;
  if (!ring_ || !other.ring_ || !ring_->same_as(*other.ring_)) {
    throw DomainError("polynomials belong to different rings");
  }
}

Poly Poly::operator+(const Poly& other) const {
  check_ring(other);
  const PolyRing& r = *ring_;
  const Field& k = r.field();
  Poly out(ring_);
  out.terms_.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    auto c = r.compare(terms_[i].mono, other.terms_[j].mono);
    if (c > 0) {
      out.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      out.terms_.push_back(other.terms_[j++]);
    } else {
      Scalar s = k.add(terms_[i].coeff, other.terms_[j].coeff);
      if (s.v != 0) out.terms_.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  out.terms_.insert(out.terms_.end(), terms_.begin() + static_cast<std::ptrdiff_t>(i), terms_.end());
  out.terms_.insert(out.terms_.end(), other.terms_.begin() + static_cast<std::ptrdiff_t>(j), other.terms_.end());
  return out;
}

Poly Poly::operator-() const {
  Poly out(ring_);
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff = ring_->field().neg(t.coeff);
  return out;
}

Poly Poly::operator-(const Poly& other) const { return *this + (-other); }

Poly Poly::sub_mul_term(const Monomial& m, Scalar c, const Poly& g) const {
  check_ring(g);
  const PolyRing& r = *ring_;
  const Field& k = r.field();
  const Scalar nc = k.neg(c);
  Poly out(ring_);
  out.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < g.terms_.size()) {
    const Monomial gm = g.terms_[j].mono * m;
    auto cmp = r.compare(terms_[i].mono, gm);
    if (cmp > 0) {
      out.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      out.terms_.push_back({gm, k.mul(nc, g.terms_[j].coeff)});
      ++j;
    } else {
      Scalar s = k.add(terms_[i].coeff, k.mul(nc, g.terms_[j].coeff));
      if (s.v != 0) out.terms_.push_back({gm, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
  for (; j < g.terms_.size(); ++j) out.terms_.push_back({g.terms_[j].mono * m, k.mul(nc, g.terms_[j].coeff)});
  return out;
}

Poly Poly::operator*(const Poly& other) const {
  check_ring(other);
  if (terms_.empty() || other.terms_.empty()) return Poly(ring_);
  const Poly& small = terms_.size() <= other.terms_.size() ? *this : other;
  const Poly& large = terms_.size() <= other.terms_.size() ? other : *this;
  Poly acc(ring_);
  for (const auto& t : small.terms_) acc = acc.sub_mul_term(t.mono, ring_->field().neg(t.coeff), large);
  return acc;
}

Poly Poly::scaled(Scalar c) const {
  Poly out(ring_);
  if (c.v == 0) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff = ring_->field().mul(t.coeff, c);
  return out;
}

Poly Poly::mul_term(const Monomial& m, Scalar c) const {
  Poly out(ring_);
  if (c.v == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.mono * m, ring_->field().mul(t.coeff, c)});
  return out;
}

Poly Poly::monic() const {
  if (terms_.empty() || terms_.front().coeff == ring_->field().one()) return *this;
  return scaled(ring_->field().inv(terms_.front().coeff));
}

Poly Poly::in_ring(PolyRingPtr target) const {
  if (target->nvars() != ring_->nvars() || !target->field().same_as(ring_->field())) {
    throw DomainError("incompatible target ring");
  }
  return from_terms(std::move(target), terms_);
}

Poly Poly::remapped(PolyRingPtr target, const std::vector<std::size_t>& new_index) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (t.mono.exps[i] == 0) continue;
      if (new_index[i] >= target->nvars()) throw DomainError("variable has no image in target ring");
      m.set(new_index[i], t.mono.exps[i]);
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(std::move(target), std::move(out));
}

bool Poly::operator==(const Poly& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].mono == other.terms_[i].mono) || terms_[i].coeff != other.terms_[i].coeff) return false;
  }
  return true;
}

Poly pow(const Poly& f, std::uint64_t n) {
  Poly acc = Poly::constant(f.ring_ptr(), f.ring().field().one());
  Poly base = f;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

Poly frobenius_power(const Poly& f, std::uint64_t q) {
  const Field& k = f.ring().field();
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    if (q > 0xffff) throw ResourceError("Frobenius exponent too large");
    out.push_back({t.mono.pow(static_cast<std::uint32_t>(q)), k.frobenius(t.coeff, q)});
  }
  // Monomial powers preserve the order, so the result is already sorted.
  return Poly::from_terms(f.ring_ptr(), std::move(out));
}

}  // namespace tightcore
