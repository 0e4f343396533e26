#pragma once

#include <map>
#include <string>
#include <vector>

#include "polyhom/cellterm.hpp"
#include "polyhom/localsystem.hpp"
#include "polyhom/zlinalg.hpp"

namespace polyhom {

/// An element of C_n(X, M) in the generator basis: a finite sum of
/// (n-generator, coefficient vector) pairs, vectors over the free cover of
/// the generator's coefficient group.
struct ChainElement {
    int degree = 0;
    std::map<std::string, IntVec> terms;

    void add(const std::string& gen, const IntVec& v);
    ChainElement operator+(const ChainElement& other) const;
    ChainElement operator-(const ChainElement& other) const;
};

/// Class of the cell described by t with coefficient vector coeff in
/// M_{t0 t}, computed by the defining relations:
///   (x1 *0 x0, m) = (x1, m) + (x0, t1(x1)*(m)),
///   (x1 *i x0, m) = (x1, m) + (x0, m) for i > 0, units vanish.
ChainElement cls(const Polygraph& p, const LocalSystemData& m, const TermPtr& t, const IntVec& coeff);

/// Basis layout of one degree of C(X, M): generators sorted by name with
/// their coefficient blocks.
struct DegreeLayout {
    std::vector<std::string> gens;
    std::map<std::string, std::size_t> offset;
    std::size_t total = 0;
};

DegreeLayout degree_layout(const Polygraph& p, const LocalSystemData& m, int n);
IntVec element_vector(const Polygraph& p, const LocalSystemData& m, const DegreeLayout& layout,
                      const ChainElement& e);

/// The complex C(X, M) on the generator basis (degree n is the direct sum of
/// M_{t0 b} over n-generators b).
ChainComplex chain_complex(const Polygraph& p, const LocalSystemData& m);

std::vector<FgAbGroup> polygraphic_homology(const Polygraph& p, const LocalSystemData& m);

/// C(f, M): the chain map induced by an omega-functor, from
/// C(X', f*(M)) to C(X, M). Throws CommutationFailure for invalid data.
ChainMap induced_chain_map(const OmegaFunctorData& f, const LocalSystemData& m);

/// C(X, phi) for a morphism of coefficient systems phi: m_from -> m_to given
/// per object. Throws NaturalityFailure when a square fails.
ChainMap coefficient_chain_map(const Polygraph& p, const LocalSystemData& m_from,
                               const LocalSystemData& m_to,
                               const std::map<std::string, IntMatrix>& phi);

/// Oplax transformation from f0 to f1, given by a (dim+1)-cell of the target
/// per generator of the common source.
struct OplaxData {
    OmegaFunctorData f0, f1;
    std::map<std::string, TermPtr> alpha;

    const Polygraph& source() const { return *f0.source; }
    const Polygraph& target() const { return *f0.target; }
};

/// Boundary conditions of an oplax transformation, exact in dimensions <= 1
/// and abelianized above.
ValidationReport validate_oplax(const OplaxData& a);

/// Extension of alpha from generators to all cells.
TermPtr extend_oplax(const OplaxData& a, const TermPtr& t);

/// The homotopy h of Lemma-type (x', m) -> (alpha_{x'}, m), together with the
/// residual d h + h d - (C(f1, M) - C(f0, phi)) which must vanish.
struct HomotopyResult {
    std::vector<IntMatrix> h;          // h[n]: C_n(source, f1*M) -> C_{n+1}(target, M)
    std::vector<IntMatrix> residual;   // residual[n] on free covers
    bool residual_zero = false;
    ChainComplex source_complex, target_complex;
};

HomotopyResult homotopy_from_oplax(const OplaxData& a, const LocalSystemData& m);

}  // namespace polyhom
