#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "polyhom/errors.hpp"

namespace polyhom {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
    static IntMatrix column(const IntVec& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const = default;

    IntMatrix operator*(const IntMatrix& other) const;
    IntMatrix operator+(const IntMatrix& other) const;
    IntMatrix operator-(const IntMatrix& other) const;
    IntMatrix operator-() const;
    IntMatrix operator*(const Int& scalar) const;

    IntVec apply(const IntVec& v) const;

    IntMatrix transpose() const;
    /// Columns of this followed by columns of other (same row count).
    IntMatrix hstack(const IntMatrix& other) const;
    IntMatrix submatrix_cols(std::size_t first, std::size_t count) const;
    IntVec col(std::size_t j) const;
    void set_col(std::size_t j, const IntVec& v);

    bool is_zero() const;
    bool is_identity() const;

    std::string to_string() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> entries_;
};

/// u * m * v == s with u, v unimodular; s diagonal, nonnegative, each entry
/// dividing the next. uinv, vinv are the tracked inverses.
struct SmithResult {
    IntMatrix s, u, v, uinv, vinv;
    std::size_t rank = 0;

    IntVec divisors() const;
};

SmithResult smith_normal_form(const IntMatrix& m);

/// Canonical form of a finitely generated abelian group:
/// Z^rank + Z/d1 + ... with 2 <= d1 | d2 | ...
struct FgAbGroup {
    std::size_t rank = 0;
    std::vector<Int> torsion;

    bool operator==(const FgAbGroup& other) const = default;
    bool trivial() const { return rank == 0 && torsion.empty(); }
    std::string to_string() const;
};

/// Abelian group presented as the cokernel of `relations` acting on
/// Z^generators. Free groups have a relation matrix with zero columns.
struct PresentedGroup {
    std::size_t generators = 0;
    IntMatrix relations;  // generators x (number of relators)

    static PresentedGroup free_group(std::size_t n) { return {n, IntMatrix::zero(n, 0)}; }
    bool is_free() const { return relations.cols() == 0 || relations.is_zero(); }
    FgAbGroup canonical() const;
};

/// Basis (as columns) of { x : a x = 0 }.
IntMatrix kernel_basis(const IntMatrix& a);

/// Basis (as columns) of the lattice spanned by the columns of a.
IntMatrix image_basis(const IntMatrix& a);

/// Integer solution x of a x = b for each column of b, if one exists.
std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b);

/// Does every column of b lie in the column lattice of a?
bool in_image(const IntMatrix& a, const IntMatrix& b);

/// Z^a.rows() / (column lattice of a), in canonical form.
FgAbGroup cokernel_group(const IntMatrix& a);

/// Chain complex of presented abelian groups in degrees 0..N.
/// diffs[n] (n >= 1) is the matrix of d_n on free covers; diffs[0] is the
/// empty map out of degree 0.
struct ChainComplex {
    std::vector<PresentedGroup> groups;
    std::vector<IntMatrix> diffs;

    std::size_t top_degree() const { return groups.empty() ? 0 : groups.size() - 1; }
    const PresentedGroup& group(std::size_t n) const { return groups.at(n); }
    const IntMatrix& d(std::size_t n) const { return diffs.at(n); }
    bool all_free() const;

    /// Throws ShapeMismatch / DDNotZero when the complex invariants fail.
    void validate() const;

    static ChainComplex from_free(const std::vector<std::size_t>& ranks,
                                  const std::vector<IntMatrix>& differentials);
};

/// Degreewise map of chain complexes, given on free covers.
struct ChainMap {
    ChainComplex source, target;
    std::vector<IntMatrix> components;  // components[n]: target_n x source_n

    const IntMatrix& at(std::size_t n) const { return components.at(n); }

    /// Throws CommutationFailure unless dPhi == Phi d modulo target relations.
    void validate() const;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap identity_chain_map(const ChainComplex& c);

/// H_n = ker d_n / (im d_{n+1} + relations), canonical form.
FgAbGroup homology_at(const ChainComplex& c, std::size_t n);
std::vector<FgAbGroup> homology_of_complex(const ChainComplex& c);

/// Matrix of the map induced by f on H_n, written in the canonical
/// coordinates produced by homology_presentation (free summands first,
/// then torsion summands).
struct HomologyPresentation {
    IntMatrix cycle_basis;    // columns: basis of the cycle lattice in degree n
    IntMatrix boundary_in_basis;  // boundaries + relations expressed in that basis
    FgAbGroup group;
    /// Change of basis: canonical coordinates of a cycle expressed in cycle_basis coords.
    IntMatrix to_canonical;  // (rank + #torsion) x cycle_basis.cols()
};

HomologyPresentation homology_presentation(const ChainComplex& c, std::size_t n);
IntMatrix induced_homology_map(const ChainMap& f, std::size_t n);

/// Is the induced map coker(src) -> coker(tgt) of f a bijection?
bool is_isomorphism(const IntMatrix& f, const PresentedGroup& src, const PresentedGroup& tgt);

}  // namespace polyhom
