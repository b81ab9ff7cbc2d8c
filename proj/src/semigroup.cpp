#include "tightcore/semigroup.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "tightcore/errors.hpp"
#include "tightcore/poly_io.hpp"

namespace tightcore {

namespace {

using Vec = std::vector<Scalar>;

std::optional<std::size_t> pivot_of(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].v != 0) return i;
  }
  return std::nullopt;
}

// Reduced row echelon form, pivots at the lowest exponent, rows sorted by pivot.
class Echelon {
 public:
  Echelon(const Field& k, std::size_t width) : k_(k), width_(width) {}

  void reduce(Vec& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar c = v[pivots_[r]];
      if (c.v == 0) continue;
      for (std::size_t i = pivots_[r]; i < width_; ++i) v[i] = k_.sub(v[i], k_.mul(c, rows_[r][i]));
    }
  }

  bool insert(Vec v) {
    v.resize(width_, Scalar{0});
    reduce(v);
    auto p = pivot_of(v);
    if (!p) return false;
    const Scalar inv = k_.inv(v[*p]);
    for (auto& c : v) c = k_.mul(c, inv);
    for (auto& row : rows_) {
      const Scalar c = row[*p];
      if (c.v == 0) continue;
      for (std::size_t i = *p; i < width_; ++i) row[i] = k_.sub(row[i], k_.mul(c, v[i]));
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), *p) - pivots_.begin();
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, *p);
    return true;
  }

  const std::vector<Vec>& rows() const { return rows_; }

 private:
  const Field& k_;
  std::size_t width_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

bool same_ring(const SemigroupRing& a, const SemigroupRing& b) {
  return &a == &b || (a.field().same_as(b.field()) && a.semigroup() == b.semigroup());
}

void check_same(const SemigroupIdeal& I, const SemigroupIdeal& J) {
  if (!same_ring(I.ring(), J.ring())) throw DomainError("semigroup ideals live in different rings");
}

void require_maximal_conductor(const SemigroupRing& R, const char* what) {
  if (!R.semigroup().has_maximal_conductor()) {
    throw PreconditionError(std::string(what) + " needs a semigroup of the form {0, n, n+1, ...}");
  }
}

SeriesElem from_vec(const SgRingPtr& R, Vec v) { return SeriesElem(R, std::move(v)); }

// Strips one pair of angle brackets and splits at top-level commas; offsets are 0-based.
std::vector<std::pair<std::string, std::size_t>> split_generators(std::string_view text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin < end && text[begin] == '<') {
    if (text[end - 1] != '>') throw ParseError("missing '>'", 1, static_cast<int>(end + 1));
    ++begin;
    --end;
  }
  std::vector<std::pair<std::string, std::size_t>> out;
  int depth = 0;
  std::size_t start = begin;
  for (std::size_t i = begin; i <= end; ++i) {
    if (i == end || (text[i] == ',' && depth == 0)) {
      out.emplace_back(std::string(text.substr(start, i - start)), start);
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  return out;
}

}  // namespace

// ---- SemigroupDesc ----

SemigroupDesc SemigroupDesc::from_generators(std::vector<std::uint32_t> gens) {
  if (gens.empty()) throw DomainError("a semigroup needs at least one generator");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.front() == 0) throw DomainError("semigroup generators must be positive");
  std::uint32_t g = 0;
  for (auto x : gens) g = std::gcd(g, x);
  if (g != 1) throw DomainError("semigroup generators must have gcd 1");

  SemigroupDesc S;
  S.multiplicity_ = gens.front();
  // Membership by dynamic programming; a run of `multiplicity` consecutive members closes the search.
  std::vector<bool> in{true};
  std::uint32_t run = 0;
  for (std::uint32_t i = 1; run < S.multiplicity_; ++i) {
    bool member = false;
    for (auto x : gens) member = member || (x <= i && in[i - x]);
    in.push_back(member);
    run = member ? run + 1 : 0;
    if (!member) S.gaps_.push_back(i);
  }
  S.conductor_ = S.gaps_.empty() ? 0 : S.gaps_.back() + 1;
  // Keep only generators that are not sums of smaller members.
  for (auto x : gens) {
    std::vector<bool> reach(x + 1, false);
    reach[0] = true;
    for (std::uint32_t i = 1; i <= x; ++i) {
      for (auto y : S.gens_) reach[i] = reach[i] || (y <= i && reach[i - y]);
    }
    if (!reach[x]) S.gens_.push_back(x);
  }
  return S;
}

SemigroupDesc SemigroupDesc::maximal_conductor(std::uint32_t n) {
  if (n == 0) throw DomainError("multiplicity must be positive");
  std::vector<std::uint32_t> gens;
  for (std::uint32_t i = n; i < 2 * n; ++i) gens.push_back(i);
  return from_generators(gens);
}

bool SemigroupDesc::contains(std::uint64_t i) const {
  if (i == 0 || i >= conductor_) return true;
  return !std::binary_search(gaps_.begin(), gaps_.end(), static_cast<std::uint32_t>(i));
}

// ---- SemigroupRing ----

SemigroupRing::SemigroupRing(FieldPtr field, SemigroupDesc S)
    : field_(std::move(field)), S_(std::move(S)), t_ring_(PolyRing::make(field_, {"t"})) {}

SgRingPtr SemigroupRing::make(FieldPtr field, SemigroupDesc S) {
  return SgRingPtr(new SemigroupRing(std::move(field), std::move(S)));
}

SgRingPtr semigroup_ring(std::uint32_t p, std::uint32_t e, std::uint32_t n, std::uint64_t seed) {
  return SemigroupRing::make(Field::make(p, e, seed), SemigroupDesc::maximal_conductor(n));
}

// ---- SeriesElem ----

SeriesElem::SeriesElem(SgRingPtr ring, std::vector<Scalar> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  trim();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].v != 0 && !ring_->semigroup().contains(i)) {
      throw DomainError("t^" + std::to_string(i) + " is not in the semigroup ring");
    }
  }
}

SeriesElem SeriesElem::monomial(SgRingPtr ring, std::uint32_t exponent, Scalar c) {
  std::vector<Scalar> v(exponent + 1, Scalar{0});
  v[exponent] = c;
  return SeriesElem(std::move(ring), std::move(v));
}

SeriesElem SeriesElem::parse(const SgRingPtr& ring, std::string_view text) {
  const Poly f = parse_poly(ring->t_ring(), text);
  std::vector<Scalar> v;
  for (const auto& term : f.terms()) {
    const std::uint32_t d = term.mono[0];
    if (v.size() <= d) v.resize(d + 1, Scalar{0});
    v[d] = term.coeff;
  }
  return SeriesElem(ring, std::move(v));
}

void SeriesElem::trim() {
  while (!coeffs_.empty() && coeffs_.back().v == 0) coeffs_.pop_back();
}

std::uint32_t SeriesElem::valuation() const {
  auto p = pivot_of(coeffs_);
  if (!p) throw DomainError("the zero element has no valuation");
  return static_cast<std::uint32_t>(*p);
}

SeriesElem SeriesElem::operator+(const SeriesElem& o) const {
  const Field& k = ring_->field();
  Vec v(std::max(coeffs_.size(), o.coeffs_.size()), Scalar{0});
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = k.add(coeff(i), o.coeff(i));
  return SeriesElem(ring_, std::move(v));
}

SeriesElem SeriesElem::operator-(const SeriesElem& o) const { return *this + o.scaled(ring_->field().neg(Scalar{1})); }

SeriesElem SeriesElem::operator*(const SeriesElem& o) const {
  if (is_zero() || o.is_zero()) return SeriesElem(ring_, {});
  const Field& k = ring_->field();
  Vec v(coeffs_.size() + o.coeffs_.size() - 1, Scalar{0});
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].v == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] = k.add(v[i + j], k.mul(coeffs_[i], o.coeffs_[j]));
  }
  return SeriesElem(ring_, std::move(v));
}

SeriesElem SeriesElem::scaled(Scalar c) const {
  Vec v = coeffs_;
  for (auto& x : v) x = ring_->field().mul(x, c);
  return SeriesElem(ring_, std::move(v));
}

SeriesElem SeriesElem::truncated(std::uint32_t n) const {
  Vec v(coeffs_.begin(), coeffs_.begin() + std::min<std::size_t>(n, coeffs_.size()));
  return SeriesElem(ring_, std::move(v));
}

std::string SeriesElem::to_string() const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].v != 0) terms.push_back({Monomial::variable(0, static_cast<std::uint16_t>(i)), coeffs_[i]});
  }
  return format_poly(Poly::from_terms(ring_->t_ring(), std::move(terms)));
}

// ---- SemigroupIdeal ----

SemigroupIdeal::SemigroupIdeal(SgRingPtr ring, std::vector<SeriesElem> gens, std::uint32_t extra_precision)
    : ring_(std::move(ring)), input_(std::move(gens)) {
  for (const auto& g : input_) {
    if (!same_ring(*g.ring_ptr(), *ring_)) throw DomainError("generator from a different semigroup ring");
    if (g.is_zero()) continue;
    order_ = order_ ? std::min(*order_, g.valuation()) : g.valuation();
  }
  if (!order_) return;
  const SemigroupDesc& S = ring_->semigroup();
  cutoff_ = *order_ + S.conductor();
  const std::uint32_t width = cutoff_ + extra_precision;
  Echelon E(ring_->field(), width);
  for (const auto& g : input_) {
    if (g.is_zero()) continue;
    for (std::uint32_t s = 0; g.valuation() + s < width; ++s) {
      if (!S.contains(s)) continue;
      Vec v(width, Scalar{0});
      for (std::size_t i = 0; i < g.coefficients().size() && i + s < width; ++i) v[i + s] = g.coefficients()[i];
      E.insert(std::move(v));
    }
  }
  for (const auto& row : E.rows()) {
    if (*pivot_of(row) >= cutoff_) break;
    rows_.emplace_back(row.begin(), row.begin() + cutoff_);
  }
}

SemigroupIdeal SemigroupIdeal::parse(const SgRingPtr& ring, std::string_view text) {
  std::vector<SeriesElem> gens;
  for (const auto& [piece, offset] : split_generators(text)) {
    try {
      gens.push_back(SeriesElem::parse(ring, piece));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), e.line(), e.column() + static_cast<int>(offset));
    }
  }
  return SemigroupIdeal(ring, std::move(gens));
}

std::vector<Vec> SemigroupIdeal::window(std::uint32_t n) const {
  if (!order_) return {};
  std::vector<Vec> out;
  for (const auto& row : rows_) {
    Vec v = row;
    v.resize(n, Scalar{0});
    out.push_back(std::move(v));
  }
  for (std::uint32_t j = cutoff_; j < n; ++j) {
    Vec v(n, Scalar{0});
    v[j] = Scalar{1};
    out.push_back(std::move(v));
  }
  return out;
}

bool SemigroupIdeal::contains(const SeriesElem& f) const {
  if (f.is_zero()) return true;
  if (!order_ || f.valuation() < *order_) return false;
  Echelon E(ring_->field(), cutoff_);
  for (const auto& row : rows_) E.insert(row);
  Vec v(cutoff_, Scalar{0});
  for (std::size_t i = 0; i < cutoff_; ++i) v[i] = f.coeff(i);
  E.reduce(v);
  return !pivot_of(v);
}

std::vector<SeriesElem> SemigroupIdeal::minimal_generators() const {
  if (!order_) return {};
  const std::uint32_t n = ring_->semigroup().multiplicity();
  const std::uint32_t width = cutoff_ + n;
  const SemigroupIdeal mI = sg_product(*this, sg_maximal_ideal(ring_));
  Echelon E(ring_->field(), width);
  for (auto& row : mI.window(width)) E.insert(std::move(row));
  std::vector<SeriesElem> out;
  for (auto& row : window(width)) {
    if (E.insert(row)) out.push_back(from_vec(ring_, row));
  }
  return out;
}

std::string SemigroupIdeal::to_string() const {
  if (!order_) return "<0>";
  std::string out = "<";
  bool first = true;
  for (const auto& g : minimal_generators()) {
    if (!first) out += ", ";
    out += g.to_string();
    first = false;
  }
  return out + ">";
}

bool operator==(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  return same_ring(a.ring(), b.ring()) && a.order_ == b.order_ && a.rows_ == b.rows_;
}

// ---- ideal arithmetic ----

SemigroupIdeal sg_maximal_ideal(const SgRingPtr& R) { return sg_valuation_ideal(R, 1); }

SemigroupIdeal sg_valuation_ideal(const SgRingPtr& R, std::uint32_t a) {
  const SemigroupDesc& S = R->semigroup();
  std::vector<SeriesElem> gens;
  const std::uint32_t stop = std::max(a, S.conductor()) + S.multiplicity();
  for (std::uint32_t j = a; j < stop; ++j) {
    if (S.contains(j)) gens.push_back(SeriesElem::monomial(R, j, Scalar{1}));
  }
  return SemigroupIdeal(R, std::move(gens));
}

SemigroupIdeal sg_sum(const SemigroupIdeal& I, const SemigroupIdeal& J) {
  check_same(I, J);
  auto gens = I.minimal_generators();
  for (auto& g : J.minimal_generators()) gens.push_back(std::move(g));
  return SemigroupIdeal(I.ring_ptr(), std::move(gens));
}

SemigroupIdeal sg_product(const SemigroupIdeal& I, const SemigroupIdeal& J) {
  check_same(I, J);
  // Generators of I and J taken from their windows: a generating set of each ideal.
  auto spanning = [](const SemigroupIdeal& K) {
    std::vector<SeriesElem> gens;
    const std::uint32_t width = K.cutoff() + K.ring().semigroup().multiplicity();
    for (auto& row : K.window(width)) gens.emplace_back(K.ring_ptr(), std::move(row));
    return gens;
  };
  std::vector<SeriesElem> gens;
  const auto a = spanning(I), b = spanning(J);
  for (const auto& f : a) {
    for (const auto& g : b) gens.push_back(f * g);
  }
  return SemigroupIdeal(I.ring_ptr(), std::move(gens));
}

SemigroupIdeal sg_power(const SemigroupIdeal& I, std::uint32_t n) {
  SemigroupIdeal out(I.ring_ptr(), {SeriesElem::monomial(I.ring_ptr(), 0, Scalar{1})});
  for (std::uint32_t i = 0; i < n; ++i) out = sg_product(out, I);
  return out;
}

SemigroupIdeal sg_intersect(const SemigroupIdeal& I, const SemigroupIdeal& J) {
  check_same(I, J);
  if (I.is_zero() || J.is_zero()) return SemigroupIdeal(I.ring_ptr(), {});
  const Field& k = I.ring().field();
  const std::uint32_t C = std::max(I.cutoff(), J.cutoff());
  // Zassenhaus: rows (v | v) for v in I and (w | 0) for w in J; rows vanishing
  // on the first block span the intersection in the second.
  Echelon E(k, 2 * C);
  for (const auto& v : I.window(C)) {
    Vec row(2 * C);
    std::copy(v.begin(), v.end(), row.begin());
    std::copy(v.begin(), v.end(), row.begin() + C);
    E.insert(std::move(row));
  }
  for (const auto& w : J.window(C)) {
    Vec row(2 * C, Scalar{0});
    std::copy(w.begin(), w.end(), row.begin());
    E.insert(std::move(row));
  }
  std::vector<SeriesElem> gens;
  for (const auto& row : E.rows()) {
    if (*pivot_of(row) < C) continue;
    gens.emplace_back(I.ring_ptr(), Vec(row.begin() + C, row.end()));
  }
  const std::uint32_t n = I.ring().semigroup().multiplicity();
  for (std::uint32_t j = C; j < C + n; ++j) gens.push_back(SeriesElem::monomial(I.ring_ptr(), j, Scalar{1}));
  return SemigroupIdeal(I.ring_ptr(), std::move(gens));
}

bool sg_contains(const SemigroupIdeal& I, const SemigroupIdeal& J) {
  check_same(I, J);
  for (const auto& g : J.minimal_generators()) {
    if (!I.contains(g)) return false;
  }
  return true;
}

// ---- closed forms ----

SemigroupIdeal canonical_principal(const SeriesElem& f) {
  require_maximal_conductor(f.ring(), "canonical_principal");
  if (f.is_zero()) throw DomainError("canonical_principal of zero");
  if (f.valuation() == 0) throw DomainError("canonical_principal of a unit: " + f.to_string());
  return SemigroupIdeal(f.ring_ptr(), {f});
}

SemigroupIdeal integral_closure_sg(const SemigroupIdeal& I) {
  if (I.is_zero()) return I;
  return sg_valuation_ideal(I.ring_ptr(), *I.order());
}

SemigroupIdeal tight_closure_sg(const SemigroupIdeal& I) {
  require_maximal_conductor(I.ring(), "tight_closure_sg");
  return integral_closure_sg(I);
}

SgCoreResult star_core_sg(const SemigroupIdeal& I) {
  require_maximal_conductor(I.ring(), "star_core_sg");
  if (I.is_zero()) throw PreconditionError("star_core_sg of the zero ideal");
  if (!(tight_closure_sg(I) == I)) {
    throw PreconditionError(I.to_string() + " is not tightly closed; apply tight_closure_sg first");
  }
  SgCoreResult out;
  out.exact = true;
  out.tightly_closed = true;
  if (I.mu() == 1) {
    out.ideal = I;
    out.method = "principal";
    return out;
  }
  out.ideal = sg_valuation_ideal(I.ring_ptr(), *I.order() + I.ring().semigroup().multiplicity());
  out.method = "closed-form";
  return out;
}

SemigroupIdeal conductor_test_ideal(const SgRingPtr& R) { return sg_valuation_ideal(R, R->semigroup().conductor()); }

bool star_core_crosscheck(const SemigroupIdeal& I, std::uint32_t samples, std::uint64_t seed) {
  const SgCoreResult closed = star_core_sg(I);
  if (samples == 0) return false;
  const SgRingPtr& R = I.ring_ptr();
  const Field& k = R->field();
  const std::uint32_t m = *I.order(), n = R->semigroup().multiplicity();
  std::optional<SemigroupIdeal> running;
  for (std::uint32_t s = 0; s < samples; ++s) {
    Vec v(m + n, Scalar{0});
    v[m] = Scalar{1};
    for (std::uint32_t j = 1; j < n; ++j) v[m + j] = k.from_random_word(mix_seed(seed, std::uint64_t{s} * n + j));
    SemigroupIdeal f(R, {SeriesElem(R, std::move(v))});
    running = running ? sg_intersect(*running, f) : f;
  }
  return *running == closed.ideal;
}

SgCoreResult sampled_core_sg(const SemigroupIdeal& I, SgCoreKind kind, std::uint32_t samples, std::uint64_t seed,
                             std::uint32_t stall_window, std::uint32_t n_max) {
  if (I.is_zero()) throw DomainError("sampled_core_sg of the zero ideal");
  const SgRingPtr& R = I.ring_ptr();
  const Field& k = R->field();
  const auto gens = I.minimal_generators();
  const std::uint64_t stream = mix_seed(seed, kind == SgCoreKind::core ? 0xc0 : 0x5c);

  std::vector<SemigroupIdeal> powers{sg_power(I, 0), I};  // I^0, I^1, ... grown on demand
  auto power = [&](std::uint32_t r) -> const SemigroupIdeal& {
    while (powers.size() <= r) powers.push_back(sg_product(powers.back(), I));
    return powers[r];
  };
  std::optional<SemigroupIdeal> tight_I;
  if (kind == SgCoreKind::star_core) tight_I = tight_closure_sg(I);

  SgCoreResult out;
  // A reduction inside (f) with the same closure is f times a unit, so (f) is its own core.
  if (gens.size() == 1) {
    out.ideal = I;
    out.exact = true;
    out.method = "principal";
    out.tightly_closed = R->semigroup().has_maximal_conductor() && tight_closure_sg(I) == I;
    return out;
  }
  out.method = kind == SgCoreKind::core ? "sampled-reductions" : "sampled-star-reductions";
  std::optional<SemigroupIdeal> running;
  std::uint32_t stall = 0;
  for (std::uint32_t s = 0; s < samples; ++s) {
    SeriesElem f(R, {});
    for (std::size_t j = 0; j < gens.size(); ++j) {
      f = f + gens[j].scaled(k.from_random_word(mix_seed(stream, std::uint64_t{s} * gens.size() + j)));
    }
    if (f.is_zero()) continue;
    const SemigroupIdeal J(R, {f});
    bool certified = false;
    if (kind == SgCoreKind::core) {
      for (std::uint32_t r = 0; r <= n_max && !certified; ++r) certified = sg_product(J, power(r)) == power(r + 1);
    } else {
      certified = tight_closure_sg(J) == *tight_I;
    }
    if (!certified) continue;
    ++out.samples;
    SemigroupIdeal next = running ? sg_intersect(*running, J) : J;
    stall = running && next == *running ? stall + 1 : 0;
    running = std::move(next);
    if (stall >= stall_window) break;
  }
  if (!running) throw ResourceError("no sampled element was certified as a reduction");
  out.ideal = *running;
  out.exact = false;
  out.tightly_closed = R->semigroup().has_maximal_conductor() && tight_closure_sg(out.ideal) == out.ideal;
  return out;
}

}  // namespace tightcore
