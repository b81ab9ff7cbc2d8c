#pragma once

#include <cstdint>

#include "tightcore/ideal.hpp"

namespace tightcore {

/// Smallest field size used when specializing parameters or sampling general elements.
inline constexpr std::uint64_t kGenericFieldSize = std::uint64_t{1} << 20;

/// k[x,y,z]/(u x^p + v y^p + w z^p) over GF(p^e) with p^e >= 2^20 and u, v, w
/// seeded random nonzero scalars. Test ideal m^(p-1).
RingPtr diagonal_hypersurface(std::uint32_t p, std::uint64_t seed, std::uint32_t degree_cap = 60);

/// k[x,y,z]/(x^2 - y^3 - z^7) over GF(p^e) with p^e >= 2^20; p must exceed 7
/// so the singularity is isolated and rational. Test ideal m.
RingPtr e8_surface(std::uint32_t p, std::uint64_t seed, std::uint32_t degree_cap = 60);

/// k[vars] over GF(p^e); regular, so every ideal is tightly closed (test ideal R).
RingPtr polynomial_ring(std::uint32_t p, std::uint32_t e, std::vector<std::string> vars, std::uint64_t seed = 0,
                        std::uint32_t degree_cap = 60);

/// The registered test ideal of R. Throws NotRegisteredError when none is known.
IdealHandle test_ideal_lookup(const RingPtr& R);

}  // namespace tightcore
