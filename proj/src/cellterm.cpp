#include "polyhom/cellterm.hpp"

#include <algorithm>
#include <sstream>

#include "polyhom/zlinalg.hpp"

namespace polyhom {

TermPtr CellTerm::gen(std::string name) {
    auto t = std::shared_ptr<CellTerm>(new CellTerm());
    t->kind_ = Kind::Gen;
    t->gen_ = std::move(name);
    return t;
}

TermPtr CellTerm::id(TermPtr inner) {
    auto t = std::shared_ptr<CellTerm>(new CellTerm());
    t->kind_ = Kind::Id;
    t->inner_ = std::move(inner);
    return t;
}

TermPtr CellTerm::id(TermPtr inner, int wraps) {
    TermPtr t = std::move(inner);
    for (int i = 0; i < wraps; ++i) t = id(t);
    return t;
}

TermPtr CellTerm::comp_raw(int level, TermPtr left, TermPtr right) {
    auto t = std::shared_ptr<CellTerm>(new CellTerm());
    t->kind_ = Kind::Comp;
    t->level_ = level;
    t->left_ = std::move(left);
    t->right_ = std::move(right);
    return t;
}

bool CellTerm::operator==(const CellTerm& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::Gen: return gen_ == other.gen_;
        case Kind::Id: return *inner_ == *other.inner_;
        case Kind::Comp:
            return level_ == other.level_ && *left_ == *other.left_ && *right_ == *other.right_;
    }
    return false;
}

std::string ValidationReport::to_string() const {
    if (ok()) return "valid";
    std::ostringstream os;
    for (const auto& v : violations) os << v.code << " at " << v.where << ": " << v.detail << "\n";
    return os.str();
}

void Polygraph::add_generator(Generator g) {
    if (index_.count(g.name)) throw ValidationFailure("duplicate generator name: " + g.name);
    if (g.dim < 0) throw ValidationFailure("negative dimension for generator " + g.name);
    if ((g.dim == 0) != (g.src == nullptr && g.tgt == nullptr))
        throw ValidationFailure("generator " + g.name + ": boundary presence does not match dimension");
    index_[g.name] = generators_.size();
    max_dim_ = std::max(max_dim_, g.dim);
    auto& bucket = by_dim_[g.dim];
    bucket.insert(std::upper_bound(bucket.begin(), bucket.end(), g.name), g.name);
    generators_.push_back(std::move(g));
}

const Generator& Polygraph::generator(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownGenerator(name);
    return generators_[it->second];
}

const std::vector<std::string>& Polygraph::generators_of_dim(int n) const {
    static const std::vector<std::string> empty;
    auto it = by_dim_.find(n);
    return it == by_dim_.end() ? empty : it->second;
}

int dim(const Polygraph& p, const CellTerm& t) {
    switch (t.kind()) {
        case CellTerm::Kind::Gen: return p.generator(t.gen_name()).dim;
        case CellTerm::Kind::Id: return dim(p, *t.inner()) + 1;
        case CellTerm::Kind::Comp: {
            int dl = dim(p, *t.left());
            int dr = dim(p, *t.right());
            if (dl != dr) throw InvalidTerm("composition factors of unequal dimension");
            if (t.level() >= dl) throw InvalidTerm("composition level not below factor dimension");
            return dl;
        }
    }
    throw InvalidTerm("unreachable term kind");
}

TermPtr comp(const Polygraph& p, int level, TermPtr left, TermPtr right) {
    int dl = dim(p, *left);
    int dr = dim(p, *right);
    int n = std::max({dl, dr, level + 1});
    return CellTerm::comp_raw(level, CellTerm::id(std::move(left), n - dl),
                              CellTerm::id(std::move(right), n - dr));
}

TermPtr boundary(const Polygraph& p, const TermPtr& t, int k, Side side) {
    int n = dim(p, *t);
    if (k < 0 || k > n) throw LevelOutOfRange("boundary at " + std::to_string(k) + " of a " +
                                              std::to_string(n) + "-cell");
    if (k == n) return t;
    switch (t->kind()) {
        case CellTerm::Kind::Gen: {
            const Generator& g = p.generator(t->gen_name());
            TermPtr b = side == Side::Src ? g.src : g.tgt;
            return k == n - 1 ? b : boundary(p, b, k, side);
        }
        case CellTerm::Kind::Id: {
            // both (n-1)-boundaries of a unit are the cell itself
            return k == n - 1 ? t->inner() : boundary(p, t->inner(), k, side);
        }
        case CellTerm::Kind::Comp: {
            if (k <= t->level())
                return side == Side::Src ? boundary(p, t->right(), k, side)
                                         : boundary(p, t->left(), k, side);
            return CellTerm::comp_raw(t->level(), boundary(p, t->left(), k, side),
                                      boundary(p, t->right(), k, side));
        }
    }
    throw InvalidTerm("unreachable term kind");
}

Path1 normal_form_1(const Polygraph& p, const TermPtr& t) {
    int n = dim(p, *t);
    if (n > 1) throw InvalidTerm("normal_form_1 of a " + std::to_string(n) + "-cell");
    if (t->kind() == CellTerm::Kind::Gen) {
        const Generator& g = p.generator(t->gen_name());
        if (n == 0) return {g.name, g.name, {}};
        std::string s = object_of(p, t, Side::Src);
        std::string e = object_of(p, t, Side::Tgt);
        return {s, e, {g.name}};
    }
    if (t->kind() == CellTerm::Kind::Id) {
        Path1 inner = normal_form_1(p, t->inner());
        return {inner.src_object, inner.tgt_object, {}};
    }
    Path1 a = normal_form_1(p, t->left());
    Path1 b = normal_form_1(p, t->right());
    Path1 out{b.src_object, a.tgt_object, a.arrows};
    out.arrows.insert(out.arrows.end(), b.arrows.begin(), b.arrows.end());
    return out;
}

std::string object_of(const Polygraph& p, const TermPtr& t, Side side) {
    TermPtr b = boundary(p, t, 0, side);
    return b->gen_name();
}

std::string to_string(const CellTerm& t) {
    switch (t.kind()) {
        case CellTerm::Kind::Gen: return t.gen_name();
        case CellTerm::Kind::Id: return "1(" + to_string(*t.inner()) + ")";
        case CellTerm::Kind::Comp:
            return "(" + to_string(*t.left()) + " *" + std::to_string(t.level()) + " " +
                   to_string(*t.right()) + ")";
    }
    return "?";
}

namespace {

/* Constant-Z abelianization of a term: multiset of its top-dimensional
 * generator occurrences. Units contribute nothing. */
void zcls_into(const Polygraph& p, const TermPtr& t, int degree, std::map<std::string, Int>& acc, const Int& c) {
    switch (t->kind()) {
        case CellTerm::Kind::Gen: {
            if (p.generator(t->gen_name()).dim != degree)
                throw InvalidTerm("unpadded factor " + t->gen_name() + " in degree " + std::to_string(degree));
            acc[t->gen_name()] += c;
            return;
        }
        case CellTerm::Kind::Id:
            return;
        case CellTerm::Kind::Comp:
            zcls_into(p, t->left(), degree, acc, c);
            zcls_into(p, t->right(), degree, acc, c);
            return;
    }
}

std::map<std::string, Int> zcls(const Polygraph& p, const TermPtr& t) {
    std::map<std::string, Int> acc;
    zcls_into(p, t, dim(p, *t), acc, 1);
    for (auto it = acc.begin(); it != acc.end();)
        it = it->second == 0 ? acc.erase(it) : std::next(it);
    return acc;
}

}  // namespace

bool compare_cells(const Polygraph& p, const TermPtr& a, const TermPtr& b) {
    int da = dim(p, *a), db = dim(p, *b);
    if (da != db) return false;
    if (da == 0) return object_of(p, a, Side::Src) == object_of(p, b, Side::Src);
    if (da == 1) return normal_form_1(p, a) == normal_form_1(p, b);
    if (normal_form_1(p, boundary(p, a, 1, Side::Src)) != normal_form_1(p, boundary(p, b, 1, Side::Src)))
        return false;
    if (normal_form_1(p, boundary(p, a, 1, Side::Tgt)) != normal_form_1(p, boundary(p, b, 1, Side::Tgt)))
        return false;
    return zcls(p, a) == zcls(p, b);
}

namespace {

void validate_term(const Polygraph& p, const TermPtr& t, int expect_dim, const std::string& where,
                   ValidationReport& report) {
    switch (t->kind()) {
        case CellTerm::Kind::Gen:
            if (!p.has(t->gen_name())) {
                report.violations.push_back({"UnknownGenerator", where, t->gen_name()});
                return;
            }
            if (p.generator(t->gen_name()).dim != expect_dim)
                report.violations.push_back(
                    {"DimensionMismatch", where,
                     t->gen_name() + " has dimension " + std::to_string(p.generator(t->gen_name()).dim) +
                         ", expected " + std::to_string(expect_dim)});
            return;
        case CellTerm::Kind::Id:
            if (expect_dim < 1) {
                report.violations.push_back({"DimensionMismatch", where, "unit in dimension 0"});
                return;
            }
            validate_term(p, t->inner(), expect_dim - 1, where, report);
            return;
        case CellTerm::Kind::Comp: {
            if (t->level() < 0 || t->level() >= expect_dim) {
                report.violations.push_back(
                    {"LevelOutOfRange", where, "level " + std::to_string(t->level())});
                return;
            }
            std::size_t before = report.violations.size();
            validate_term(p, t->left(), expect_dim, where, report);
            validate_term(p, t->right(), expect_dim, where, report);
            if (report.violations.size() != before) return;
            TermPtr rt = boundary(p, t->right(), t->level(), Side::Tgt);
            TermPtr ls = boundary(p, t->left(), t->level(), Side::Src);
            if (!compare_cells(p, rt, ls))
                report.violations.push_back({"NotComposable", where,
                                             "at level " + std::to_string(t->level()) + ": " +
                                                 to_string(*t->right()) + " then " + to_string(*t->left())});
            return;
        }
    }
}

}  // namespace

ValidationReport validate_polygraph(const Polygraph& p) {
    ValidationReport report;
    for (const Generator& g : p.all()) {
        if (g.dim == 0) continue;
        std::size_t before = report.violations.size();
        validate_term(p, g.src, g.dim - 1, g.name + ".src", report);
        validate_term(p, g.tgt, g.dim - 1, g.name + ".tgt", report);
        if (report.violations.size() != before) continue;
        if (g.dim >= 2) {
            if (object_of(p, g.src, Side::Src) != object_of(p, g.tgt, Side::Src) ||
                object_of(p, g.src, Side::Tgt) != object_of(p, g.tgt, Side::Tgt))
                report.violations.push_back({"EndpointMismatch", g.name, "0-boundaries of src and tgt differ"});
        }
        if (g.dim >= 3) {
            for (Side side : {Side::Src, Side::Tgt}) {
                Path1 a = normal_form_1(p, boundary(p, g.src, 1, side));
                Path1 b = normal_form_1(p, boundary(p, g.tgt, 1, side));
                if (a != b)
                    report.violations.push_back({"EndpointMismatch", g.name, "1-boundaries of src and tgt differ"});
            }
        }
    }
    if (!report.ok()) return report;

    /* Abelianized globularity: the constant-Z differential of every generator
     * must itself be a cycle one degree down (necessary for d.d = 0). */
    std::map<int, std::map<std::string, std::size_t>> pos;
    for (int n = 0; n <= p.max_dim(); ++n) {
        const auto& names = p.generators_of_dim(n);
        for (std::size_t i = 0; i < names.size(); ++i) pos[n][names[i]] = i;
    }
    auto zd = [&](const Generator& g) {
        // constant-Z differential column of generator g
        IntVec col(p.generators_of_dim(g.dim - 1).size());
        if (g.dim == 1) {
            col[pos[0][object_of(p, CellTerm::gen(g.name), Side::Tgt)]] += 1;
            col[pos[0][object_of(p, CellTerm::gen(g.name), Side::Src)]] -= 1;
        } else {
            for (const auto& [name, c] : zcls(p, g.tgt)) col[pos[g.dim - 1][name]] += c;
            for (const auto& [name, c] : zcls(p, g.src)) col[pos[g.dim - 1][name]] -= c;
        }
        return col;
    };
    std::map<int, IntMatrix> d;
    for (int n = 1; n <= p.max_dim(); ++n) {
        const auto& names = p.generators_of_dim(n);
        IntMatrix m(p.generators_of_dim(n - 1).size(), names.size());
        for (std::size_t j = 0; j < names.size(); ++j) m.set_col(j, zd(p.generator(names[j])));
        d[n] = std::move(m);
    }
    for (int n = 2; n <= p.max_dim(); ++n) {
        const auto& names = p.generators_of_dim(n);
        for (const auto& name : names) {
            IntVec col = zd(p.generator(name));
            IntVec dd = d[n - 1].apply(col);
            if (!std::all_of(dd.begin(), dd.end(), [](const Int& x) { return x == 0; }))
                report.violations.push_back({"GlobularityFailure", name, "d(d(cell)) != 0 over constant Z"});
        }
    }
    return report;
}

OmegaFunctorData OmegaFunctorData::identity(const Polygraph& p) {
    OmegaFunctorData f{&p, &p, {}};
    for (const Generator& g : p.all()) f.images[g.name] = CellTerm::gen(g.name);
    return f;
}

TermPtr apply_functor(const OmegaFunctorData& f, const TermPtr& t) {
    switch (t->kind()) {
        case CellTerm::Kind::Gen: {
            auto it = f.images.find(t->gen_name());
            if (it == f.images.end()) throw UnknownGenerator(t->gen_name());
            return it->second;
        }
        case CellTerm::Kind::Id:
            return CellTerm::id(apply_functor(f, t->inner()));
        case CellTerm::Kind::Comp:
            return CellTerm::comp_raw(t->level(), apply_functor(f, t->left()),
                                      apply_functor(f, t->right()));
    }
    throw InvalidTerm("unreachable term kind");
}

OmegaFunctorData compose(const OmegaFunctorData& outer, const OmegaFunctorData& inner) {
    OmegaFunctorData out{inner.source, outer.target, {}};
    for (const auto& [name, img] : inner.images) out.images[name] = apply_functor(outer, img);
    return out;
}

ValidationReport validate_functor(const OmegaFunctorData& f) {
    ValidationReport report;
    for (const Generator& g : f.source->all()) {
        auto it = f.images.find(g.name);
        if (it == f.images.end()) {
            report.violations.push_back({"MissingImage", g.name, "no image assigned"});
            continue;
        }
        int di;
        try {
            di = dim(*f.target, *it->second);
        } catch (const Error& e) {
            report.violations.push_back({"InvalidImage", g.name, e.what()});
            continue;
        }
        if (di != g.dim) {
            report.violations.push_back({"DimensionMismatch", g.name, "image dimension " + std::to_string(di)});
            continue;
        }
        if (g.dim == 0) continue;
        TermPtr img = it->second;
        for (Side side : {Side::Src, Side::Tgt}) {
            TermPtr lhs = apply_functor(f, side == Side::Src ? g.src : g.tgt);
            TermPtr rhs = boundary(*f.target, img, g.dim - 1, side);
            if (!compare_cells(*f.target, lhs, rhs))
                report.violations.push_back({"BoundaryNotPreserved", g.name,
                                             side == Side::Src ? "source" : "target"});
        }
    }
    return report;
}

}  // namespace polyhom
