#include "polyhom/zlinalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace polyhom {

namespace {

long max_entry_bits() {
    static long cached = [] {
        const char* env = std::getenv("POLYHOM_MAX_ENTRY_BITS");
        if (!env || !*env) return -1L;
        return std::atol(env);
    }();
    return cached;
}

void guard_entry(const Int& x) {
    long cap = max_entry_bits();
    if (cap >= 0 && static_cast<long>(msb(abs(x) + 1)) + 1 > cap)
        throw EntryLimitExceeded("entry needs more than " + std::to_string(cap) + " bits");
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw ShapeMismatch("matrix entries length " + std::to_string(entries_.size()) + " expected " +
                            std::to_string(rows_ * cols_));
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw ShapeMismatch("ragged row in matrix literal");
        std::size_t j = 0;
        for (long long x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

IntMatrix IntMatrix::column(const IntVec& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_)
        throw ShapeMismatch("product " + std::to_string(rows_) + "x" + std::to_string(cols_) + " * " +
                            std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                out(i, j) += a * other(k, j);
                guard_entry(out(i, j));
            }
        }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ShapeMismatch("sum of unequal shapes");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + other.entries_[i];
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ShapeMismatch("difference of unequal shapes");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - other.entries_[i];
    return out;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = -entries_[i];
    return out;
}

IntMatrix IntMatrix::operator*(const Int& scalar) const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * scalar;
    return out;
}

IntVec IntMatrix::apply(const IntVec& v) const {
    if (v.size() != cols_) throw ShapeMismatch("apply: vector length " + std::to_string(v.size()));
    IntVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& other) const {
    if (rows_ != other.rows_) throw ShapeMismatch("hstack row counts differ");
    IntMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
    }
    return out;
}

IntMatrix IntMatrix::submatrix_cols(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw ShapeMismatch("submatrix_cols out of range");
    IntMatrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
}

IntVec IntMatrix::col(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void IntMatrix::set_col(std::size_t j, const IntVec& v) {
    if (v.size() != rows_) throw ShapeMismatch("set_col length");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool IntMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? " [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

/* Row and column operations mirrored into the unimodular factors and their
 * tracked inverses. s = u * m * v stays invariant throughout. */
struct SnfWork {
    IntMatrix s, u, uinv, v, vinv;

    void row_swap(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < s.cols(); ++k) std::swap(s(i, k), s(j, k));
        for (std::size_t k = 0; k < u.cols(); ++k) std::swap(u(i, k), u(j, k));
        for (std::size_t k = 0; k < uinv.rows(); ++k) std::swap(uinv(k, i), uinv(k, j));
    }
    void col_swap(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < s.rows(); ++k) std::swap(s(k, i), s(k, j));
        for (std::size_t k = 0; k < v.rows(); ++k) std::swap(v(k, i), v(k, j));
        for (std::size_t k = 0; k < vinv.cols(); ++k) std::swap(vinv(i, k), vinv(j, k));
    }
    void row_negate(std::size_t i) {
        for (std::size_t k = 0; k < s.cols(); ++k) s(i, k) = -s(i, k);
        for (std::size_t k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
        for (std::size_t k = 0; k < uinv.rows(); ++k) uinv(k, i) = -uinv(k, i);
    }
    // row_i -= q * row_j
    void row_sub(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < s.cols(); ++k) { s(i, k) -= q * s(j, k); guard_entry(s(i, k)); }
        for (std::size_t k = 0; k < u.cols(); ++k) { u(i, k) -= q * u(j, k); guard_entry(u(i, k)); }
        for (std::size_t k = 0; k < uinv.rows(); ++k) { uinv(k, j) += q * uinv(k, i); guard_entry(uinv(k, j)); }
    }
    // col_j -= q * col_i
    void col_sub(std::size_t j, std::size_t i, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < s.rows(); ++k) { s(k, j) -= q * s(k, i); guard_entry(s(k, j)); }
        for (std::size_t k = 0; k < v.rows(); ++k) { v(k, j) -= q * v(k, i); guard_entry(v(k, j)); }
        for (std::size_t k = 0; k < vinv.cols(); ++k) { vinv(i, k) += q * vinv(j, k); guard_entry(vinv(i, k)); }
    }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    SnfWork w{m, IntMatrix::identity(R), IntMatrix::identity(R), IntMatrix::identity(C), IntMatrix::identity(C)};
    IntMatrix& s = w.s;

    const std::size_t bound = std::min(R, C);
    std::size_t t = 0;
    while (t < bound) {
        // pivot with minimal absolute value in the trailing submatrix
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (s(i, j) != 0 && (best == 0 || abs(s(i, j)) < best)) {
                    best = abs(s(i, j));
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        if (pi != t) w.row_swap(t, pi);
        if (pj != t) w.col_swap(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (s(i, t) == 0) continue;
                Int q = s(i, t) / s(t, t);
                w.row_sub(i, t, q);
                if (s(i, t) != 0) {
                    // remainder is strictly smaller: promote it to the pivot slot
                    w.row_swap(t, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            for (std::size_t j = t + 1; j < C; ++j) {
                if (s(t, j) == 0) continue;
                Int q = s(t, j) / s(t, t);
                w.col_sub(j, t, q);
                if (s(t, j) != 0) {
                    w.col_swap(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the whole trailing block for the divisor chain
            bool fixed = false;
            for (std::size_t i = t + 1; i < R && !fixed; ++i)
                for (std::size_t j = t + 1; j < C && !fixed; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        w.row_sub(t, i, Int(-1));  // row_t += row_i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (s(t, t) < 0) w.row_negate(t);
        ++t;
    }

    SmithResult out{std::move(w.s), std::move(w.u), std::move(w.v), std::move(w.uinv), std::move(w.vinv), t};
    return out;
}

IntVec SmithResult::divisors() const {
    IntVec d(rank);
    for (std::size_t i = 0; i < rank; ++i) d[i] = s(i, i);
    return d;
}

std::string FgAbGroup::to_string() const {
    if (trivial()) return "0";
    std::string out;
    if (rank == 1) out = "Z";
    else if (rank > 1) out = "Z^" + std::to_string(rank);
    for (const Int& d : torsion) {
        if (!out.empty()) out += " + ";
        out += "Z/" + d.str();
    }
    return out;
}

FgAbGroup PresentedGroup::canonical() const {
    if (relations.rows() != generators) throw ShapeMismatch("relations rows != generators");
    return cokernel_group(relations);
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithResult snf = smith_normal_form(a);
    return snf.v.submatrix_cols(snf.rank, a.cols() - snf.rank);
}

IntMatrix image_basis(const IntMatrix& a) {
    SmithResult snf = smith_normal_form(a);
    IntMatrix out(a.rows(), snf.rank);
    for (std::size_t j = 0; j < snf.rank; ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = snf.uinv(i, j) * snf.s(j, j);
    return out;
}

std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw ShapeMismatch("solve: row counts differ");
    SmithResult snf = smith_normal_form(a);
    IntMatrix c = snf.u * b;
    IntMatrix y(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < snf.rank; ++i) {
            if (c(i, j) % snf.s(i, i) != 0) return std::nullopt;
            y(i, j) = c(i, j) / snf.s(i, i);
        }
        for (std::size_t i = snf.rank; i < a.rows(); ++i)
            if (c(i, j) != 0) return std::nullopt;
    }
    return snf.v * y;
}

bool in_image(const IntMatrix& a, const IntMatrix& b) { return solve(a, b).has_value(); }

FgAbGroup cokernel_group(const IntMatrix& a) {
    SmithResult snf = smith_normal_form(a);
    FgAbGroup g;
    g.rank = a.rows() - snf.rank;
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.s(i, i) >= 2) g.torsion.push_back(snf.s(i, i));
    return g;
}

bool ChainComplex::all_free() const {
    return std::all_of(groups.begin(), groups.end(), [](const PresentedGroup& g) { return g.is_free(); });
}

void ChainComplex::validate() const {
    if (groups.empty()) throw ShapeMismatch("empty chain complex");
    if (diffs.size() != groups.size()) throw ShapeMismatch("chain complex: diffs/groups length mismatch");
    for (std::size_t n = 0; n < groups.size(); ++n) {
        if (groups[n].relations.rows() != groups[n].generators)
            throw ShapeMismatch("degree " + std::to_string(n) + ": relations rows != generators");
        std::size_t expect_rows = n == 0 ? 0 : groups[n - 1].generators;
        if (diffs[n].rows() != expect_rows || diffs[n].cols() != groups[n].generators)
            throw ShapeMismatch("degree " + std::to_string(n) + ": differential is " +
                                std::to_string(diffs[n].rows()) + "x" + std::to_string(diffs[n].cols()));
        // relations must be carried into relations by the differential
        if (n >= 1 && groups[n].relations.cols() > 0) {
            IntMatrix img = diffs[n] * groups[n].relations;
            if (!img.is_zero() && !in_image(groups[n - 1].relations, img))
                throw ShapeMismatch("degree " + std::to_string(n) + ": differential does not preserve relations");
        }
    }
    for (std::size_t n = 2; n < groups.size(); ++n) {
        IntMatrix dd = diffs[n - 1] * diffs[n];
        if (dd.is_zero()) continue;
        if (!in_image(groups[n - 2].relations, dd))
            throw DDNotZero("degrees " + std::to_string(n) + "->" + std::to_string(n - 2));
    }
}

ChainComplex ChainComplex::from_free(const std::vector<std::size_t>& ranks,
                                     const std::vector<IntMatrix>& differentials) {
    ChainComplex c;
    for (std::size_t r : ranks) c.groups.push_back(PresentedGroup::free_group(r));
    c.diffs.push_back(IntMatrix::zero(0, ranks.empty() ? 0 : ranks[0]));
    for (std::size_t n = 1; n < ranks.size(); ++n) {
        if (differentials.size() < n) throw ShapeMismatch("from_free: missing differential");
        c.diffs.push_back(differentials[n - 1]);
    }
    c.validate();
    return c;
}

void ChainMap::validate() const {
    std::size_t top = std::max(source.top_degree(), target.top_degree());
    if (components.size() != top + 1) throw ShapeMismatch("chain map: wrong number of components");
    auto rank_at = [](const ChainComplex& c, std::size_t n) {
        return n <= c.top_degree() ? c.group(n).generators : 0;
    };
    for (std::size_t n = 0; n <= top; ++n) {
        if (components[n].rows() != rank_at(target, n) || components[n].cols() != rank_at(source, n))
            throw ShapeMismatch("chain map degree " + std::to_string(n));
        // relations of the source must land in relations of the target
        if (n <= source.top_degree() && n <= target.top_degree() && source.group(n).relations.cols() > 0) {
            IntMatrix img = components[n] * source.group(n).relations;
            if (!img.is_zero() && !in_image(target.group(n).relations, img))
                throw CommutationFailure("degree " + std::to_string(n) + ": relations not preserved");
        }
    }
    for (std::size_t n = 1; n <= top; ++n) {
        std::size_t src_cols = rank_at(source, n);
        IntMatrix lhs = n <= target.top_degree()
                            ? target.d(n) * components[n]
                            : IntMatrix::zero(0, src_cols);
        if (lhs.rows() == 0) lhs = IntMatrix::zero(rank_at(target, n - 1), src_cols);
        IntMatrix rhs = n <= source.top_degree()
                            ? components[n - 1] * source.d(n)
                            : IntMatrix::zero(rank_at(target, n - 1), src_cols);
        IntMatrix diff = lhs - rhs;
        if (diff.is_zero()) continue;
        bool ok = n - 1 <= target.top_degree() && in_image(target.group(n - 1).relations, diff);
        if (!ok) throw CommutationFailure("degree " + std::to_string(n));
    }
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    std::size_t top = std::max(f.source.top_degree(), g.target.top_degree());
    ChainMap out{f.source, g.target, {}};
    auto rank_at = [](const ChainComplex& c, std::size_t n) {
        return n <= c.top_degree() ? c.group(n).generators : 0;
    };
    for (std::size_t n = 0; n <= top; ++n) {
        IntMatrix gf = (n < g.components.size() && n < f.components.size())
                           ? g.components[n] * f.components[n]
                           : IntMatrix::zero(rank_at(g.target, n), rank_at(f.source, n));
        out.components.push_back(std::move(gf));
    }
    return out;
}

ChainMap identity_chain_map(const ChainComplex& c) {
    ChainMap out{c, c, {}};
    for (std::size_t n = 0; n <= c.top_degree(); ++n)
        out.components.push_back(IntMatrix::identity(c.group(n).generators));
    return out;
}

HomologyPresentation homology_presentation(const ChainComplex& c, std::size_t n) {
    if (n > c.top_degree()) {
        HomologyPresentation hp;
        hp.cycle_basis = IntMatrix::zero(0, 0);
        hp.boundary_in_basis = IntMatrix::zero(0, 0);
        hp.to_canonical = IntMatrix::zero(0, 0);
        return hp;
    }
    const std::size_t gn = c.group(n).generators;

    // cycles: x with d_n(x) inside the relation lattice one degree down
    IntMatrix a = c.d(n);
    if (n >= 1) a = a.hstack(c.group(n - 1).relations);
    IntMatrix ker = kernel_basis(a);
    IntMatrix proj(gn, ker.cols());
    for (std::size_t i = 0; i < gn; ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) proj(i, j) = ker(i, j);
    IntMatrix cycle = image_basis(proj);

    // boundaries plus relations of this degree
    IntMatrix bdry = n < c.top_degree() ? c.d(n + 1) : IntMatrix::zero(gn, 0);
    bdry = bdry.hstack(c.group(n).relations);
    auto w = solve(cycle, bdry);
    if (!w) throw ShapeMismatch("homology: boundaries do not lie in the cycle lattice");

    HomologyPresentation hp;
    hp.cycle_basis = cycle;
    hp.boundary_in_basis = *w;

    SmithResult snf = smith_normal_form(hp.boundary_in_basis);
    const std::size_t k = cycle.cols();
    hp.group.rank = k - snf.rank;
    std::vector<std::size_t> torsion_rows;
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.s(i, i) >= 2) {
            hp.group.torsion.push_back(snf.s(i, i));
            torsion_rows.push_back(i);
        }
    IntMatrix tc(hp.group.rank + torsion_rows.size(), k);
    for (std::size_t r = 0; r < hp.group.rank; ++r)
        for (std::size_t j = 0; j < k; ++j) tc(r, j) = snf.u(snf.rank + r, j);
    for (std::size_t r = 0; r < torsion_rows.size(); ++r)
        for (std::size_t j = 0; j < k; ++j) tc(hp.group.rank + r, j) = snf.u(torsion_rows[r], j);
    hp.to_canonical = std::move(tc);
    return hp;
}

FgAbGroup homology_at(const ChainComplex& c, std::size_t n) { return homology_presentation(c, n).group; }

std::vector<FgAbGroup> homology_of_complex(const ChainComplex& c) {
    c.validate();
    std::vector<FgAbGroup> out;
    for (std::size_t n = 0; n <= c.top_degree(); ++n) out.push_back(homology_at(c, n));
    return out;
}

IntMatrix induced_homology_map(const ChainMap& f, std::size_t n) {
    HomologyPresentation src = homology_presentation(f.source, n);
    HomologyPresentation tgt = homology_presentation(f.target, n);
    std::size_t fn_rows = n <= f.target.top_degree() ? f.target.group(n).generators : 0;
    IntMatrix comp = n < f.components.size() ? f.components[n]
                                             : IntMatrix::zero(fn_rows, src.cycle_basis.rows());
    IntMatrix mapped = comp * src.cycle_basis;
    auto t = solve(tgt.cycle_basis, mapped);
    if (!t) throw ShapeMismatch("induced map does not preserve cycles");
    IntMatrix out = tgt.to_canonical * *t;
    // torsion coordinates are only defined modulo the divisor
    for (std::size_t r = 0; r < tgt.group.torsion.size(); ++r) {
        std::size_t row = tgt.group.rank + r;
        const Int& d = tgt.group.torsion[r];
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out(row, j) %= d;
            if (out(row, j) < 0) out(row, j) += d;
        }
    }
    return out;
}

bool is_isomorphism(const IntMatrix& f, const PresentedGroup& src, const PresentedGroup& tgt) {
    if (f.rows() != tgt.generators || f.cols() != src.generators)
        throw ShapeMismatch("is_isomorphism: map is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()));
    if (src.relations.cols() > 0) {
        IntMatrix img = f * src.relations;
        if (!img.is_zero() && !in_image(tgt.relations, img))
            throw ShapeMismatch("is_isomorphism: relations not carried into relations");
    }

    // surjective: free cover of target is exhausted by image + relations
    if (!cokernel_group(f.hstack(tgt.relations)).trivial()) return false;

    // injective: preimage lattice of the target relations reduces to the source relations
    IntMatrix ker = kernel_basis(f.hstack(tgt.relations));
    IntMatrix proj(src.generators, ker.cols());
    for (std::size_t i = 0; i < src.generators; ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) proj(i, j) = ker(i, j);
    IntMatrix lattice = image_basis(proj);
    if (lattice.cols() == 0) return true;
    auto w = solve(lattice, src.relations);
    if (!w) throw ShapeMismatch("is_isomorphism: source relations outside preimage lattice");
    return cokernel_group(*w).trivial();
}

}  // namespace polyhom
