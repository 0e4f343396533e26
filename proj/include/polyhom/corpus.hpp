#pragma once

#include <memory>

#include "polyhom/chaincomplexer.hpp"
#include "polyhom/simplicial.hpp"

namespace polyhom {

/// The standard n-simplex as a simplicial set (n <= 8); simplices are named
/// by their vertex subsets ("0", "02", "013", ...).
SimplicialSetData delta_set(int n);

/// The boundary of the standard n-simplex (the full simplex removed),
/// truncated at n-1.
SimplicialSetData boundary_delta_set(int n);

/// The group Z/2 as a one-object category with morphism "a".
FiniteCategoryData c2_category();

/// The n-disk D_n: generators e{k}s, e{k}t in dimension k < n and the
/// fundamental cell "zeta" on top.
Polygraph disk(int n);

/// The (n-1)-sphere S^{n-1}: the (n-1)-truncation of D_n.
Polygraph sphere_boundary(int n);

/// The bubble B: one object, no 1-generators, one 2-generator with unit
/// boundaries.
Polygraph bubble();

/// Polygraphic resolution of the group Z/2 (one generator per dimension up to
/// 4; constant-Z differentials 0, 2, 0, 2).
Polygraph z2_resolution();

/// An oplax cylinder fixture: a source polygraph P, a target polygraph Q
/// containing two copies of P joined by cylinder cells, and the oplax data
/// from the bottom to the top inclusion.
struct CylinderFixture {
    std::unique_ptr<Polygraph> source, target;
    OplaxData oplax;

    CylinderFixture() = default;
    CylinderFixture(const CylinderFixture&) = delete;
    CylinderFixture& operator=(const CylinderFixture&) = delete;
    CylinderFixture(CylinderFixture&&) = default;
    CylinderFixture& operator=(CylinderFixture&&) = default;
};

/// Cylinder over D_0: target is D_1, alpha sends the point to zeta.
std::unique_ptr<CylinderFixture> cylinder_over_point();

/// Cylinder over D_1.
std::unique_ptr<CylinderFixture> cylinder_over_d1();

/// Cylinder over the oriental O_2 (the full Gray cylinder O_2 x D_1).
std::unique_ptr<CylinderFixture> cylinder_over_o2();

}  // namespace polyhom
