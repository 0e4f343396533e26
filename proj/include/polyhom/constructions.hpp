#pragma once

#include <memory>

#include "polyhom/chaincomplexer.hpp"

namespace polyhom {

/// A cell of the right-adjoint omega-category G(N) over (X, M): a cell x of X
/// together with a table of maps u^eps_i : M_{t0(s_i x)} -> N_i (on free
/// covers) and a top slot u_n, subject to
///   d_i u^eps_i = u^1_{i-1} - u^0_{i-1}   (1 < i <= n)
///   d_1 u^eps_1 = u^1_0 - u^0_0 t_1(x)*.
struct GCell {
    TermPtr x;
    std::vector<std::pair<IntMatrix, IntMatrix>> lower;  // (u^0_i, u^1_i) for i < dim
    IntMatrix top;

    int dim() const { return int(lower.size()); }
};

/// Everything G(N)'s cell operations need: the base, the coefficient system
/// and the coefficient complex.
struct GContext {
    const Polygraph* base = nullptr;
    const LocalSystemData* m = nullptr;
    const ChainComplex* n = nullptr;
};

ValidationReport validate_gcell(const GContext& ctx, const GCell& cell);

GCell g_source(const GContext& ctx, const GCell& cell);
GCell g_target(const GContext& ctx, const GCell& cell);
GCell g_unit(const GContext& ctx, const GCell& cell);
/// (y,V) *_level (x,U); throws NotComposable when boundary tables disagree.
GCell g_comp(const GContext& ctx, int level, const GCell& left, const GCell& right);

/// Eps_N(x, U, m) = u_n(m).
IntVec counit_eps(const ChainComplex& n, const GCell& cell, const IntVec& coeff);

/// Precomputed data for the unit at an object (X', p : X' -> X).
struct EtaContext {
    const OmegaFunctorData* p = nullptr;
    const LocalSystemData* m = nullptr;  // system on X
    LocalSystemData pulled;              // p*(M) on X'
    ChainComplex complex;                // C(X', p*(M)) = F(X', p)
    std::vector<DegreeLayout> layouts;
};

EtaContext make_eta_context(const OmegaFunctorData& p, const LocalSystemData& m);

/// Eta_{(X',p)}(x') = (p(x'), U_{x'}): slot (i, eps) includes the class of
/// the i-boundary of x' into C_i(X', p*(M)).
GCell unit_eta(const EtaContext& ctx, const TermPtr& cell);

struct CheckReport {
    bool ok = true;
    std::vector<std::string> failures;
    void fail(std::string what) {
        ok = false;
        failures.push_back(std::move(what));
    }
    std::string to_string() const;
};

/// Both triangle identities plus eta-functoriality and GCell-invariant
/// preservation, on the finite fixture (X' = p.source over X = p.target).
/// Samples random G(N)-cells up to dimension 2 using the given seed.
CheckReport adjunction_triangle_check(const OmegaFunctorData& p, const LocalSystemData& m,
                                      const ChainComplex& n, unsigned seed = 1);

/// Set-valued functor on the base: a finite set per object, a function
/// E_{t0 g} -> E_{s0 g} per 1-generator.
struct SetFunctorData {
    std::map<std::string, std::vector<std::string>> sets;
    std::map<std::string, std::map<std::string, std::string>> maps;
};

ValidationReport check_set_functor(const Polygraph& x, const SetFunctorData& e);

struct GrothendieckResult {
    std::unique_ptr<Polygraph> total;
    OmegaFunctorData projection;  // total -> base

    GrothendieckResult() = default;
    GrothendieckResult(const GrothendieckResult&) = delete;
    GrothendieckResult(GrothendieckResult&&) = default;
};

/// The set-valued Grothendieck construction: generators (b, a) named "b@a",
/// boundaries lifted with the 0-composition twist.
GrothendieckResult grothendieck(const Polygraph& x, const SetFunctorData& e);

/// The weak local system of free abelian groups on the fibers.
LocalSystemData free_module_system(const Polygraph& x, const SetFunctorData& e);

/// C(total, Z) equals C(X, free-module system) under the canonical basis
/// bijection (b, a) <-> basis element a of Z[E_{t0 b}].
CheckReport abelianization_identity_check(const Polygraph& x, const SetFunctorData& e);

}  // namespace polyhom
