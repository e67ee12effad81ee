#pragma once

// Brute-force reference implementations used to cross-check the library.
// Nothing here calls the routine it is checking.

#include <cstdint>
#include <random>
#include <vector>

#include "qmoduli/quiver.hpp"
#include "qmoduli/stability.hpp"
#include "qmoduli/toric.hpp"

namespace qmoduli::oracle {

/// Nonempty proper vertex masks closed under the nonzero arrows.
std::vector<std::uint64_t> closed_subsets(const Quiver& q, const std::vector<bool>& nonzero);

/// King's criterion by exhaustion: θ(S) >= 0 on every closed S, with
/// equality somewhere meaning strictly semistable.
Stability stability(const Quiver& q, const std::vector<bool>& nonzero, const Weight& w);

/// Every exponent vector in [0, bound]^A with divergence r w, in lex order.
std::vector<IntVector> lattice_points(const Quiver& q, const Weight& w, Int r, Int bound);

/// Characters u in [-bound, bound]^rank with <u, v_i> >= -a_i for all rays.
std::size_t h0(const Fan& f, const ToricDivisor& d, Int bound);

/// Independent check of an isomorphism witness: det = ±1, rays of `a` land
/// on the matched rays of `b`, the matching is a bijection and every cone
/// of `a` lands on a cone of `b`.
bool valid_witness(const Fan& a, const Fan& b, const FanIsomorphism& iso);

Integer det(const IntMatrix& m);

/// Product of random elementary integer operations.
IntMatrix random_unimodular(std::size_t d, std::mt19937_64& rng, int steps = 6);

/// Random acyclic quiver: arrows go from lower to higher vertex labels.
Quiver random_acyclic_quiver(std::mt19937_64& rng, int max_vertices, std::size_t max_arrows);

/// Random zero-sum weight with entries in [-bound, bound].
Weight random_weight(std::mt19937_64& rng, std::size_t size, int bound);

/// Random nonzero rational with small numerator and denominator.
Rational random_nonzero(std::mt19937_64& rng);

}  // namespace qmoduli::oracle
