#include "tightcore/field.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <utility>

#include "tightcore/errors.hpp"

namespace tightcore {

namespace {

constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 23;

using DigitPoly = std::vector<std::uint32_t>;  // coefficients over Z/p, low degree first

void trim(DigitPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

DigitPoly poly_mod(DigitPoly a, const DigitPoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

DigitPoly poly_mulmod(const DigitPoly& a, const DigitPoly& b, const DigitPoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  DigitPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(out), m, p);
}

DigitPoly poly_gcd(DigitPoly a, DigitPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    DigitPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m, by repeated p-th powering.
DigitPoly frob_x(const DigitPoly& m, std::uint32_t p, std::uint32_t k) {
  DigitPoly cur = poly_mod({0, 1}, m, p);
  for (std::uint32_t step = 0; step < k; ++step) {
    DigitPoly acc{1};
    DigitPoly base = cur;
    std::uint64_t n = p;
    while (n > 0) {
      if (n & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      n >>= 1;
    }
    cur = std::move(acc);
  }
  return cur;
}

// Ben-Or irreducibility test.
bool is_irreducible(const DigitPoly& f, std::uint32_t p) {
  const std::size_t d = f.size() - 1;
  if (d == 1) return true;
  for (std::uint32_t k = 1; k <= d / 2; ++k) {
    DigitPoly h = frob_x(f, p, k);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (h.empty()) return false;
    DigitPoly g = poly_gcd(f, h, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t degree_for_size(std::uint32_t p, std::uint64_t bound) {
  std::uint32_t e = 1;
  std::uint64_t q = p;
  while (q < bound) {
    q *= p;
    ++e;
  }
  return e;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Field::Field(std::uint32_t p, std::uint32_t e, std::uint64_t seed, std::vector<std::string> parameter_names)
    : p_(p), e_(e), q_(1), seed_(seed), param_names_(std::move(parameter_names)) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw DomainError("field extension degree must be >= 1");
  pow_p_.push_back(1);
  for (std::uint32_t i = 0; i < e; ++i) {
    if (q_ > (std::uint64_t{1} << 62) / p) throw DomainError("field size p^e exceeds 2^62");
    q_ *= p;
    pow_p_.push_back(q_);
  }

  // Lexicographically first monic irreducible: enumerate the lower coefficients
  // as a base-p counter, most significant coefficient first.
  DigitPoly f(e + 1, 0);
  f[e] = 1;
  for (std::uint64_t code = 0; code < q_; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (e > 1 && f[0] == 0) continue;
    if (is_irreducible(f, p)) break;
  }
  modulus_ = f;

  if (q_ <= kTableLimit && e_ > 1) build_tables();

  std::uint64_t counter = 0;
  for (const auto& name : param_names_) {
    Scalar value{0};
    while (value.v == 0) value = from_random_word(mix_seed(seed_ ^ (std::uint64_t{p} << 32 | e), counter++));
    params_[name] = value;
  }
}

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t e, std::uint64_t seed,
                                         std::vector<std::string> parameter_names) {
  return std::make_shared<const Field>(p, e, seed, std::move(parameter_names));
}

std::optional<Scalar> Field::parameter(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) return std::nullopt;
  return it->second;
}

Scalar Field::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint64_t>(r)};
}

Scalar Field::generator() const {
  if (e_ == 1) return {0};
  return {p_};
}

std::vector<std::uint32_t> Field::coefficients(Scalar a) const {
  std::vector<std::uint32_t> c(e_, 0);
  for (std::uint32_t i = 0; i < e_; ++i) {
    c[i] = static_cast<std::uint32_t>(a.v % p_);
    a.v /= p_;
  }
  return c;
}

Scalar Field::from_coefficients(const std::vector<std::uint32_t>& c) const {
  std::uint64_t v = 0;
  for (std::size_t i = std::min<std::size_t>(c.size(), e_); i-- > 0;) v = v * p_ + c[i] % p_;
  return {v};
}

Scalar Field::add(Scalar a, Scalar b) const {
  if (p_ == 2) return {a.v ^ b.v};
  if (e_ == 1) {
    std::uint64_t s = a.v + b.v;
    return {s >= p_ ? s - p_ : s};
  }
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint64_t s = a.v % p_ + b.v % p_;
    if (s >= p_) s -= p_;
    out += s * pow_p_[i];
    a.v /= p_;
    b.v /= p_;
  }
  return {out};
}

Scalar Field::neg(Scalar a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return {a.v == 0 ? 0 : p_ - a.v};
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint64_t d = a.v % p_;
    out += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    a.v /= p_;
  }
  return {out};
}

Scalar Field::sub(Scalar a, Scalar b) const { return add(a, neg(b)); }

Scalar Field::mul_slow(Scalar a, Scalar b) const {
  if (a.v == 0 || b.v == 0) return {0};
  if (e_ == 1) return {static_cast<std::uint64_t>((unsigned __int128)a.v * b.v % p_)};
  if (p_ == 2) {
    // Carry-less multiply, then reduce by the modulus bit pattern.
    unsigned __int128 prod = 0;
    for (std::uint32_t i = 0; i < e_; ++i) {
      if ((b.v >> i) & 1) prod ^= static_cast<unsigned __int128>(a.v) << i;
    }
    std::uint64_t mod_bits = 0;
    for (std::uint32_t i = 0; i <= e_; ++i) mod_bits |= std::uint64_t{modulus_[i]} << i;
    for (int bit = 2 * static_cast<int>(e_) - 2; bit >= static_cast<int>(e_); --bit) {
      if ((prod >> bit) & 1) prod ^= static_cast<unsigned __int128>(mod_bits) << (bit - static_cast<int>(e_));
    }
    return {static_cast<std::uint64_t>(prod)};
  }
  // Schoolbook product on stack digit arrays, then reduction by the monic modulus.
  std::uint64_t da[64], db[64], prod[128] = {};
  for (std::uint32_t i = 0; i < e_; ++i) {
    da[i] = a.v % p_;
    a.v /= p_;
    db[i] = b.v % p_;
    b.v /= p_;
  }
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  for (std::uint32_t d = 2 * e_ - 2; d >= e_; --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    const std::uint32_t shift = d - e_;
    for (std::uint32_t i = 0; i < e_; ++i) prod[shift + i] = (prod[shift + i] + (p_ - modulus_[i]) * c) % p_;
    prod[d] = 0;
  }
  std::uint64_t v = 0;
  for (std::uint32_t i = e_; i-- > 0;) v = v * p_ + prod[i];
  return {v};
}

Scalar Field::pow_slow(Scalar a, std::uint64_t n) const {
  Scalar acc = one();
  while (n > 0) {
    if (n & 1) acc = mul_slow(acc, a);
    a = mul_slow(a, a);
    n >>= 1;
  }
  return acc;
}

void Field::build_tables() {
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  Scalar g{0};
  for (std::uint64_t cand = p_; cand < q_; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      if (pow_slow({cand}, order / r) == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = {cand};
      break;
    }
  }
  exp_.resize(order);
  log_.assign(q_, 0);
  if (p_ == 2) {
    Scalar cur = one();
    for (std::uint64_t i = 0; i < order; ++i) {
      exp_[i] = static_cast<std::uint32_t>(cur.v);
      log_[cur.v] = static_cast<std::uint32_t>(i);
      cur = mul_slow(cur, g);
    }
    return;
  }
  // Multiplication by g as an e x e matrix over Z/p; column j is g * X^j.
  std::vector<std::uint64_t> mat(std::size_t{e_} * e_);
  for (std::uint32_t j = 0; j < e_; ++j) {
    const auto col = coefficients(mul_slow(g, {pow_p_[j]}));
    for (std::uint32_t i = 0; i < e_; ++i) mat[std::size_t{i} * e_ + j] = col[i];
  }
  std::vector<std::uint64_t> c(e_, 0), next(e_);
  c[0] = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    std::uint64_t v = 0;
    for (std::uint32_t j = e_; j-- > 0;) v = v * p_ + c[j];
    exp_[i] = static_cast<std::uint32_t>(v);
    log_[v] = static_cast<std::uint32_t>(i);
    for (std::uint32_t r = 0; r < e_; ++r) {
      std::uint64_t acc = 0;
      for (std::uint32_t j = 0; j < e_; ++j) acc += mat[std::size_t{r} * e_ + j] * c[j];
      next[r] = acc % p_;
    }
    c.swap(next);
  }
}

Scalar Field::mul(Scalar a, Scalar b) const {
  if (a.v == 0 || b.v == 0) return {0};
  if (!exp_.empty()) {
    std::uint64_t s = std::uint64_t{log_[a.v]} + log_[b.v];
    if (s >= q_ - 1) s -= q_ - 1;
    return {exp_[s]};
  }
  return mul_slow(a, b);
}

Scalar Field::inv(Scalar a) const {
  if (a.v == 0) throw DomainError("division by zero in GF(" + std::to_string(p_) + "^" + std::to_string(e_) + ")");
  if (!exp_.empty()) {
    std::uint64_t l = log_[a.v];
    return {exp_[l == 0 ? 0 : q_ - 1 - l]};
  }
  if (e_ == 1) return {inv_mod(static_cast<std::uint32_t>(a.v), p_)};
  return pow_slow(a, q_ - 2);
}

Scalar Field::div(Scalar a, Scalar b) const { return mul(a, inv(b)); }

Scalar Field::pow(Scalar a, std::uint64_t n) const {
  if (n == 0) return one();
  if (a.v == 0) return zero();
  if (!exp_.empty()) {
    const std::uint64_t order = q_ - 1;
    const std::uint64_t l = static_cast<std::uint64_t>((unsigned __int128)log_[a.v] * (n % order) % order);
    return {exp_[l]};
  }
  Scalar acc = one();
  while (n > 0) {
    if (n & 1) acc = mul(acc, a);
    a = mul(a, a);
    n >>= 1;
  }
  return acc;
}

Scalar Field::frobenius(Scalar a, std::uint64_t q) const {
  if (q == 0) throw DomainError("Frobenius exponent must be a power of p");
  std::uint64_t k = 0;
  while (q % p_ == 0) {
    q /= p_;
    ++k;
  }
  if (q != 1) throw DomainError("Frobenius exponent is not a power of the characteristic");
  // a^(p^k) = a^(p^(k mod e)) since a^(p^e) = a.
  k %= e_;
  for (std::uint64_t i = 0; i < k; ++i) a = pow(a, p_);
  return a;
}

bool Field::same_as(const Field& other) const {
  return this == &other ||
         (p_ == other.p_ && e_ == other.e_ && seed_ == other.seed_ && param_names_ == other.param_names_);
}

}  // namespace tightcore
