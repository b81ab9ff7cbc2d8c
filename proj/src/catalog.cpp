#include "tightcore/catalog.hpp"

#include "tightcore/errors.hpp"
#include "tightcore/poly_io.hpp"

namespace tightcore {

namespace {

std::vector<Poly> monomials_of_degree(const PolyRingPtr& S, std::uint32_t d) {
  std::vector<Poly> out;
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t var, std::uint32_t left) -> void {
    if (var + 1 == S->nvars()) {
      cur.set(var, static_cast<std::uint16_t>(left));
      out.push_back(Poly::monomial(S, cur, S->field().one()));
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      cur.set(var, static_cast<std::uint16_t>(e));
      self(self, var + 1, left - e);
    }
    cur.set(var, 0);
  };
  rec(rec, 0, d);
  return out;
}

}  // namespace

RingPtr diagonal_hypersurface(std::uint32_t p, std::uint64_t seed, std::uint32_t degree_cap) {
  auto k = Field::make(p, degree_for_size(p, kGenericFieldSize), seed, {"u", "v", "w"});
  auto S = PolyRing::make(k, {"x", "y", "z"});
  const std::string ps = std::to_string(p);
  Poly relation = parse_poly(S, "u*x^" + ps + " + v*y^" + ps + " + w*z^" + ps);
  RingOptions opts;
  opts.name = "diag_p" + ps;
  opts.flags.gorenstein_isolated_singularity = true;
  opts.known_test_ideal = monomials_of_degree(S, p - 1);
  opts.degree_cap = degree_cap;
  return RingDesc::make(S, {relation}, opts);
}

RingPtr e8_surface(std::uint32_t p, std::uint64_t seed, std::uint32_t degree_cap) {
  if (p <= 7) throw DomainError("x^2 - y^3 - z^7 is used here only in characteristic > 7");
  auto k = Field::make(p, degree_for_size(p, kGenericFieldSize), seed);
  auto S = PolyRing::make(k, {"x", "y", "z"});
  RingOptions opts;
  opts.name = "e8_p" + std::to_string(p);
  opts.flags.gorenstein_isolated_singularity = true;
  opts.known_test_ideal = monomials_of_degree(S, 1);
  opts.degree_cap = degree_cap;
  return RingDesc::make(S, {parse_poly(S, "x^2 - y^3 - z^7")}, opts);
}

RingPtr polynomial_ring(std::uint32_t p, std::uint32_t e, std::vector<std::string> vars, std::uint64_t seed,
                        std::uint32_t degree_cap) {
  auto S = PolyRing::make(Field::make(p, e, seed), std::move(vars));
  RingOptions opts;
  opts.name = "poly";
  opts.flags.gorenstein_isolated_singularity = true;
  opts.known_test_ideal = std::vector<Poly>{Poly::constant(S, S->field().one())};
  opts.degree_cap = degree_cap;
  return RingDesc::make(S, {}, opts);
}

IdealHandle test_ideal_lookup(const RingPtr& R) {
  if (!R->known_test_ideal()) throw NotRegisteredError("no test ideal registered for ring '" + R->name() + "'");
  return IdealHandle(R, *R->known_test_ideal());
}

}  // namespace tightcore
