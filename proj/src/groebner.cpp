#include "tightcore/groebner.hpp"

#include <algorithm>
#include <bit>
#include <tuple>
#include <set>

#include "tightcore/errors.hpp"

namespace tightcore {

namespace {

void check_same_ring(const PolyRing& a, const PolyRing& b) {
  if (!a.same_as(b)) throw DomainError("polynomial and basis use different rings or monomial orders");
}

// cur[from..] - c*m*g[1..], where the leading terms are known to cancel.
std::vector<Term> cancel_leading(const PolyRing& r, const std::vector<Term>& cur, std::size_t from,
                                 const Monomial& m, Scalar c, const Poly& g) {
  const Field& k = r.field();
  const Scalar nc = k.neg(c);
  const auto& gt = g.terms();
  std::vector<Term> out;
  out.reserve(cur.size() - from + gt.size());
  std::size_t i = from, j = 1;
  while (i < cur.size() && j < gt.size()) {
    const Monomial gm = gt[j].mono * m;
    auto cmp = r.compare(cur[i].mono, gm);
    if (cmp > 0) {
      out.push_back(cur[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, k.mul(nc, gt[j].coeff)});
      ++j;
    } else {
      Scalar s = k.add(cur[i].coeff, k.mul(nc, gt[j].coeff));
      if (s.v != 0) out.push_back({gm, s});
      ++i;
      ++j;
    }
  }
  for (; i < cur.size(); ++i) out.push_back(cur[i]);
  for (; j < gt.size(); ++j) out.push_back({gt[j].mono * m, k.mul(nc, gt[j].coeff)});
  return out;
}

const Poly* find_divisor(const Monomial& m, std::span<const Poly> basis) {
  for (const auto& g : basis) {
    if (g.leading_monomial().divides(m)) return &g;
  }
  return nullptr;
}

Poly reduce_full(const Poly& f, std::span<const Poly> basis) {
  const PolyRing& r = f.ring();
  const Field& k = r.field();
  std::vector<Term> cur = f.terms();
  std::vector<Term> rem;
  std::size_t head = 0;
  while (head < cur.size()) {
    const Term t = cur[head];
    const Poly* g = find_divisor(t.mono, basis);
    if (g == nullptr) {
      rem.push_back(t);
      ++head;
      continue;
    }
    const Monomial q = g->leading_monomial().quotient_of(t.mono);
    const Scalar c = k.div(t.coeff, g->leading_coeff());
    cur = cancel_leading(r, cur, head + 1, q, c, *g);
    head = 0;
  }
  return Poly::from_terms(f.ring_ptr(), std::move(rem));
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

}  // namespace

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  out.reserve(polys.size());
  for (const auto& g : polys) out.push_back(g.leading_monomial());
  return out;
}

Poly s_polynomial(const Poly& f, const Poly& g) {
  const Field& k = f.ring().field();
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Poly a = f.mul_term(f.leading_monomial().quotient_of(l), k.inv(f.leading_coeff()));
  return a.sub_mul_term(g.leading_monomial().quotient_of(l), k.inv(g.leading_coeff()), g);
}

Poly normal_form(const Poly& f, std::span<const Poly> basis) {
  for (const auto& g : basis) check_same_ring(f.ring(), g.ring());
  return reduce_full(f, basis);
}

Poly normal_form(const Poly& f, const GroebnerBasis& G) {
  check_same_ring(f.ring(), *G.ring);
  return reduce_full(f, G.polys);
}

bool is_member(const Poly& f, const GroebnerBasis& G) { return normal_form(f, G).is_zero(); }

GroebnerBasis buchberger(const PolyRingPtr& ring, std::span<const Poly> gens, const GroebnerOptions& opts) {
  GroebnerBasis out;
  out.ring = ring;

  std::vector<Poly> G;
  std::vector<bool> alive;
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add_poly = [&](Poly f) {
    f = f.monic();
    const std::size_t n = G.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      pairs.push_back({i, n, G[i].leading_monomial().lcm(f.leading_monomial())});
      pending.insert({i, n});
    }
    // Older elements whose leading monomial is a multiple of the new one are
    // redundant for the final basis, but remain usable as reducers.
    G.push_back(std::move(f));
    alive.push_back(true);
  };

  bool unit = false;
  for (const auto& g0 : gens) {
    Poly g = g0.ring_ptr() == ring ? g0 : g0.in_ring(ring);
    if (g.is_zero()) continue;
    Poly r = reduce_full(g, G);
    if (r.is_zero()) continue;
    if (r.is_constant()) {
      unit = true;
      break;
    }
    add_poly(std::move(r));
  }

  while (!unit && !pairs.empty()) {
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it) {
      if (it->lcm.degree < best->lcm.degree ||
          (it->lcm.degree == best->lcm.degree &&
           (ring->compare(it->lcm, best->lcm) < 0 ||
            (ring->compare(it->lcm, best->lcm) == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i))))) {
        best = it;
      }
    }
    const Pair pr = *best;
    pairs.erase(best);
    pending.erase({pr.i, pr.j});

    const Poly& f = G[pr.i];
    const Poly& g = G[pr.j];
    if (f.leading_monomial().coprime(g.leading_monomial())) continue;

    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!G[k].leading_monomial().divides(pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
      if (!pending.contains(key(pr.i, k)) && !pending.contains(key(pr.j, k))) chain = true;
    }
    if (chain) continue;

    Poly r = reduce_full(s_polynomial(f, g), G);
    if (r.is_zero()) continue;
    if (r.is_constant()) {
      unit = true;
      break;
    }
    if (r.total_degree() > opts.degree_cap) {
      throw ResourceError("Groebner computation exceeded the degree cap of " + std::to_string(opts.degree_cap));
    }
    add_poly(std::move(r));
  }

  if (unit) {
    out.polys.push_back(Poly::constant(ring, ring->field().one()));
    return out;
  }

  // Minimize: drop elements whose leading monomial is divisible by another's.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = G[i].leading_monomial();
      const auto& lj = G[j].leading_monomial();
      if (lj.divides(li) && (!(li == lj) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  // Inter-reduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    const Poly lead = Poly::monomial(ring, minimal[i].leading_monomial(), minimal[i].leading_coeff());
    const Poly tail = minimal[i] - lead;
    minimal[i] = (lead + reduce_full(tail, others)).monic();
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const Poly& a, const Poly& b) { return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0; });
  out.polys = std::move(minimal);
  return out;
}

GroebnerBasis buchberger(std::span<const Poly> gens, const MonomialOrder& order, const GroebnerOptions& opts) {
  if (gens.empty()) throw DomainError("buchberger with an explicit order needs at least one generator");
  const PolyRing& base = gens.front().ring();
  auto ring = PolyRing::make(base.field_ptr(), base.variables(), order);
  return buchberger(ring, gens, opts);
}

GroebnerBasis eliminate(const GroebnerBasis& G, const std::vector<std::size_t>& keep, const GroebnerOptions& opts) {
  const PolyRing& r = *G.ring;
  std::vector<std::size_t> dropped;
  for (std::size_t i = 0; i < r.nvars(); ++i) {
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) dropped.push_back(i);
  }
  if (dropped.empty()) return G;

  auto uses_dropped = [&](const Poly& f) {
    for (const auto& t : f.terms()) {
      for (auto d : dropped) {
        if (t.mono[d] != 0) return true;
      }
    }
    return false;
  };

  std::vector<Poly> contracted;
  const auto& ord = r.order();
  const bool already = ord.kind == OrderKind::block && ord.block_size == dropped.size() &&
                       std::is_permutation(ord.priority.begin(), ord.priority.begin() + static_cast<std::ptrdiff_t>(dropped.size()),
                                           dropped.begin());
  if (already) {
    for (const auto& g : G.polys) {
      if (!uses_dropped(g)) contracted.push_back(g);
    }
  } else {
    auto elim_ring = PolyRing::make(r.field_ptr(), r.variables(), MonomialOrder::elimination(r.nvars(), dropped));
    GroebnerBasis E = buchberger(elim_ring, G.polys, opts);
    for (const auto& g : E.polys) {
      if (!uses_dropped(g)) contracted.push_back(g.in_ring(G.ring));
    }
  }
  return buchberger(G.ring, contracted, opts);
}

int krull_dimension(const GroebnerBasis& G) {
  if (G.is_unit_ideal()) return -1;
  const std::size_t n = G.ring->nvars();
  const auto lms = G.leading_monomials();
  std::vector<std::uint32_t> supports;
  for (const auto& m : lms) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] != 0) s |= 1u << i;
    }
    supports.push_back(s);
  }
  int best = 0;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    const int size = std::popcount(subset);
    if (size <= best) continue;
    bool independent = true;
    for (auto s : supports) {
      if ((s & ~subset) == 0) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

bool is_zero_dimensional(const GroebnerBasis& G) {
  if (G.is_unit_ideal()) return true;
  const std::size_t n = G.ring->nvars();
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (const auto& g : G.polys) {
      const auto& m = g.leading_monomial();
      if (m[i] != 0 && m.degree == m[i]) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

StandardMonomials quotient_vspace_basis(const GroebnerBasis& G, std::uint32_t bound) {
  StandardMonomials out;
  if (G.is_unit_ideal()) {
    out.complete = true;
    return out;
  }
  const std::size_t n = G.ring->nvars();
  const auto lms = G.leading_monomials();
  out.complete = is_zero_dimensional(G);
  std::vector<std::uint32_t> cap(n, bound);
  if (out.complete) {
    std::uint32_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t a = 0xffffffffu;
      for (const auto& m : lms) {
        if (m[i] != 0 && m.degree == m[i]) a = std::min<std::uint32_t>(a, m[i]);
      }
      cap[i] = a - 1;
      total += a - 1;
    }
    bound = total;
  }
  auto standard = [&](const Monomial& m) {
    for (const auto& l : lms) {
      if (l.divides(m)) return false;
    }
    return true;
  };
  // Depth-first enumeration; standard monomials form an order ideal, so prune
  // as soon as a prefix is non-standard.
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t var) -> void {
    if (var == n) {
      out.monomials.push_back(cur);
      return;
    }
    const std::uint32_t base = cur.degree;
    for (std::uint32_t e = 0; e <= cap[var] && base + e <= bound; ++e) {
      cur.set(var, static_cast<std::uint16_t>(e));
      if (!standard(cur)) break;
      self(self, var + 1);
    }
    cur.set(var, 0);
  };
  rec(rec, 0);
  std::sort(out.monomials.begin(), out.monomials.end(),
            [&](const Monomial& a, const Monomial& b) { return G.ring->compare(a, b) < 0; });
  return out;
}

}  // namespace tightcore
