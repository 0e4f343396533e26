#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polyhom/chaincomplexer.hpp"
#include "polyhom/localsystem.hpp"

namespace polyhom {

/// A possibly-degenerate simplex in Eilenberg-Zilber form:
/// s_{word[0]} s_{word[1]} ... s_{word[k-1]} base with word strictly
/// decreasing and base nondegenerate.
struct FaceRef {
    std::vector<int> word;
    std::string base;
    bool degenerate() const { return !word.empty(); }
    bool operator==(const FaceRef&) const = default;
    std::string to_string() const;
};

struct Simplex {
    std::string name;
    int dim = 0;
    std::vector<FaceRef> faces;  // d_0 .. d_dim for dim >= 1
};

/// Finite truncated simplicial set given by its nondegenerate simplices.
class SimplicialSetData {
  public:
    explicit SimplicialSetData(int truncation) : truncation_(truncation) {}

    void add_simplex(Simplex s);
    int truncation() const { return truncation_; }
    bool has(const std::string& name) const { return index_.count(name) != 0; }
    const Simplex& simplex(const std::string& name) const;
    const std::vector<std::string>& simplices_of_dim(int n) const;
    const std::vector<Simplex>& all() const { return simplices_; }

  private:
    int truncation_;
    std::vector<Simplex> simplices_;
    std::map<std::string, std::size_t> index_;
    std::map<int, std::vector<std::string>> by_dim_;
};

int ref_dim(const SimplicialSetData& x, const FaceRef& r);
FaceRef face(const SimplicialSetData& x, const FaceRef& r, int i);
FaceRef degeneracy(const FaceRef& r, int j);
/// Iterated sub-simplex x_{S} for strictly increasing vertex indices S.
FaceRef subsimplex(const SimplicialSetData& x, const std::string& name, const std::vector<int>& s);
std::string last_vertex(const SimplicialSetData& x, const std::string& name);
/// The edge x_{n-1,n} of a simplex of dimension >= 1.
FaceRef last_edge(const SimplicialSetData& x, const std::string& name);

/// Simplicial identities d_i d_j = d_{j-1} d_i checked by expansion.
ValidationReport validate_simplicial(const SimplicialSetData& x);

LocalSystemData constant_system(const SimplicialSetData& x, const PresentedGroup& g);
ValidationReport check_weak_local_system(const SimplicialSetData& x, const LocalSystemData& m);

/// Twisted normalized chain complex in degrees 0..truncation.
ChainComplex normalized_complex(const SimplicialSetData& x, const LocalSystemData& m);

struct SimplicialMapData {
    const SimplicialSetData* source = nullptr;
    const SimplicialSetData* target = nullptr;
    std::map<std::string, FaceRef> images;
};

FaceRef apply_simplicial(const SimplicialMapData& f, const FaceRef& r);
ValidationReport validate_simplicial_map(const SimplicialMapData& f);
LocalSystemData pullback(const LocalSystemData& m, const SimplicialMapData& f);
ChainMap induced_simplicial_chain_map(const SimplicialMapData& f, const LocalSystemData& m);

/// Small category with an explicit composition table. Identities are
/// implicit; compose maps (g, f) with t(f) = s(g) to g . f, or to nothing
/// when the composite is an identity.
struct FiniteCategoryData {
    struct Morphism {
        std::string name, src, tgt;
    };
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;  // non-identity morphisms
    std::map<std::pair<std::string, std::string>, std::optional<std::string>> compose;

    const Morphism& morphism(const std::string& name) const;
    std::optional<std::string> composite(const std::string& g, const std::string& f) const;
};

ValidationReport validate_category(const FiniteCategoryData& c);
LocalSystemData constant_system(const FiniteCategoryData& c, const PresentedGroup& g);
ValidationReport check_weak_local_system(const FiniteCategoryData& c, const LocalSystemData& m);
bool is_local_system(const FiniteCategoryData& c, const LocalSystemData& m);

/// Nerve truncated at dimension cap: nondegenerate n-simplices are the
/// composable chains of non-identity morphisms, named "f1|f2|...|fn".
SimplicialSetData nerve(const FiniteCategoryData& c, int cap);

struct CatPresentation {
    struct Arrow {
        std::string name, src, tgt;
    };
    struct Relation {
        std::vector<std::string> lhs, rhs;  // words in composition order (later arrows first)
    };
    std::vector<std::string> objects;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
};

/// Generators = nondegenerate 1-simplices, one relation d_1 = d_0 . d_2 per
/// nondegenerate 2-simplex (degenerate edges become empty words).
CatPresentation fundamental_category(const SimplicialSetData& x);

struct GroupoidPresentation {
    CatPresentation presentation;
    std::string basepoint;
    std::vector<std::vector<std::string>> components;  // vertex names per component
};

GroupoidPresentation pi1(const SimplicialSetData& x, const std::string& basepoint);

/// Closed multiplication table for a finitely presented group, built by
/// coset-style closure over the trivial subgroup. Relators use signed
/// 1-based letters (+i / -i for generator i-1 and its inverse).
struct CosetTable {
    std::size_t order = 0;
    std::vector<std::vector<std::size_t>> act;  // act[element][2*gen + (inverse?1:0)]

    std::size_t apply(std::size_t g, int signed_letter) const;
};

CosetTable coset_enumeration(std::size_t ngens, const std::vector<std::vector<int>>& relators,
                             std::size_t cap);

/// pi_1(X, basepoint) enumerated via a spanning tree and coset closure.
/// Element 0 is the identity. Throws CapExceeded when enumeration does not
/// close within cap.
class Pi1Enumeration {
  public:
    std::size_t order() const { return table_.order; }
    /// Right action g . [edge] of the class of an edge path on hom-set
    /// coordinates (tree edges act trivially).
    std::size_t act_edge(std::size_t g, const std::string& edge_name) const;

    CosetTable table_;
    std::map<std::string, int> edge_letter_;  // non-tree edge -> signed letter
};

Pi1Enumeration enumerate_pi1(const SimplicialSetData& x, const std::string& basepoint, std::size_t cap);

struct UniversalCover {
    std::unique_ptr<SimplicialSetData> cover;
    SimplicialMapData projection;  // cover -> base
    std::size_t fiber_size = 0;
};

/// Simplices (x, g) with g in Pi_1(X; last vertex of x, basepoint); the last
/// face twists by the last edge. The base must be connected.
UniversalCover universal_cover(const SimplicialSetData& x, const std::string& basepoint, std::size_t cap);

/// Polygraph image c(X) for truncation <= 3 (<= 4 with the flag): generators
/// are the nondegenerate simplices with oriental-shaped boundaries.
Polygraph realization_polygraph(const SimplicialSetData& x, bool allow_dim4 = false);

struct ComparisonReport {
    bool ok = false;
    std::string detail;
};

/// Degreewise identification of the normalized complex with the polygraphic
/// complex of the realization: reports the first discrepancy.
ComparisonReport comparison_iso_check(const SimplicialSetData& x, const LocalSystemData& m,
                                      bool allow_dim4 = false);

}  // namespace polyhom
