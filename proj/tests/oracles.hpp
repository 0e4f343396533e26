#pragma once

// Independent reference computations used to pin expected values. Nothing in
// here may call into the Smith-normal-form or homology code under test.

#include <vector>

#include "polyhom/zlinalg.hpp"

namespace oracles {

using polyhom::Int;
using polyhom::IntMatrix;

/// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
Int bareiss_determinant(const IntMatrix& m);

/// Rank over Q by fraction-free elimination.
std::size_t gauss_rank(const IntMatrix& m);

/// Invariant factors d_1 | d_2 | ... | d_rank via gcds of k x k minors:
/// d_k = gcd(all k-minors) / gcd(all (k-1)-minors). Exponential in size;
/// intended for matrices up to ~6x6.
std::vector<Int> minor_gcd_divisors(const IntMatrix& m);

/// Homology of a complex of FREE abelian groups, computed without any shared
/// code path: rank H_n = nullity(d_n) - rank(d_{n+1}) via Gauss rank, and
/// torsion(H_n) = invariant factors >= 2 of d_{n+1} via minor gcds.
polyhom::FgAbGroup free_complex_homology(const IntMatrix& d_n, const IntMatrix& d_np1);

/// The standard 2-periodic free resolution of Z over Z[C2], tensored down:
/// Z <- Z <- Z <- ... with differentials 0, 1+t, 0, ... evaluated at t = action.
/// action = +1 gives the trivial module, action = -1 the sign module.
/// Returns the differentials d_1..d_top (1x1 matrices).
std::vector<IntMatrix> c2_periodic_resolution(int action, std::size_t top);

/// Homology of the periodic resolution complex in degrees 0..top-1, computed
/// with free_complex_homology only.
std::vector<polyhom::FgAbGroup> c2_group_homology(int action, std::size_t top);

}  // namespace oracles
