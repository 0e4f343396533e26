#pragma once

#include <map>
#include <string>

#include "polyhom/cellterm.hpp"
#include "polyhom/zlinalg.hpp"

namespace polyhom {

/// Coefficient data of a weak local system: an abelian group per 0-generator
/// and, for every 1-generator g, the matrix of g* : M_{t0 g} -> M_{s0 g} on
/// free covers. The same container serves polygraph, simplicial-set and
/// finite-category bases; validation is done against the base separately.
struct LocalSystemData {
    std::map<std::string, PresentedGroup> groups;
    std::map<std::string, IntMatrix> arrows;

    const PresentedGroup& group_at(const std::string& name) const;
    const IntMatrix& arrow(const std::string& name) const;
};

/// Constant system: the given group at every 0-generator, identities on
/// 1-generators.
LocalSystemData constant_system(const Polygraph& p, const PresentedGroup& g);

/// Matrix of t* on free covers, for t of dimension <= 1: the product of the
/// generator matrices along the path, rightmost segment applied last.
IntMatrix evaluate_on_1cell(const Polygraph& p, const LocalSystemData& m, const TermPtr& t);

ValidationReport check_weak_local_system(const Polygraph& p, const LocalSystemData& m);

/// All 1-generator matrices invertible as maps of presented groups.
bool is_local_system(const Polygraph& p, const LocalSystemData& m);

/// f*(M): groups pulled along the object images, arrows evaluated on the
/// image 1-cells.
LocalSystemData pullback(const LocalSystemData& m, const OmegaFunctorData& f);

}  // namespace polyhom
