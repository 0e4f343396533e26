#pragma once

#include "polyhom/cellterm.hpp"

namespace polyhom {

/// Street's oriental O_n as a polygraph. Generators are the nonempty subsets
/// of {0..n} written as digit strings ("02", "013", ...); the generator for a
/// subset of size i+1 has dimension i. Supported for n <= 4; dimensions up to
/// 3 use the displayed boundary data, n = 4 is derived (see oriental4_derive).
Polygraph oriental(int n);

/// Structural check of the boundary factorization: odd faces compose the
/// source and even faces the target, each face sits inside a whisker, and the
/// innermost 1-whiskers are units except R_1 = (01) around face 0 and
/// L_1 = (n-1,n) around face n.
ValidationReport oriental_boundary_shape_check(int n);

/// O_4 produced by construction and then validated against the
/// augmented-directed-complex oracle (odd/even face partition of the simplex
/// chain complex), the shape check, and polygraph validation.
/// Throws OracleFailure when any validation fails.
Polygraph oriental4_derive();

/// Boundary of the principal cell xi_n in master coordinates (generators are
/// digit-string subsets of {0..n}). Used for face relabelings.
TermPtr oriental_principal_boundary(int n, Side side);

}  // namespace polyhom
