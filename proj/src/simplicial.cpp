#include "polyhom/simplicial.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "polyhom/orientals.hpp"

namespace polyhom {

std::string FaceRef::to_string() const {
    std::string out;
    for (int j : word) out += "s" + std::to_string(j) + " ";
    return out + base;
}

void SimplicialSetData::add_simplex(Simplex s) {
    if (index_.count(s.name)) throw ValidationFailure("duplicate simplex name: " + s.name);
    if (s.dim < 0 || s.dim > truncation_)
        throw ValidationFailure("simplex " + s.name + " outside truncation range");
    index_[s.name] = simplices_.size();
    auto& bucket = by_dim_[s.dim];
    bucket.insert(std::upper_bound(bucket.begin(), bucket.end(), s.name), s.name);
    simplices_.push_back(std::move(s));
}

const Simplex& SimplicialSetData::simplex(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownGenerator("simplex " + name);
    return simplices_[it->second];
}

const std::vector<std::string>& SimplicialSetData::simplices_of_dim(int n) const {
    static const std::vector<std::string> empty;
    auto it = by_dim_.find(n);
    return it == by_dim_.end() ? empty : it->second;
}

int ref_dim(const SimplicialSetData& x, const FaceRef& r) {
    return x.simplex(r.base).dim + int(r.word.size());
}

FaceRef degeneracy(const FaceRef& r, int j) {
    // push s_j through the decreasing word with s_i s_j = s_{j+1} s_i (i <= j)
    FaceRef out = r;
    std::vector<int> prefix;
    std::size_t k = 0;
    int cur = j;
    while (k < out.word.size() && cur <= out.word[k]) {
        prefix.push_back(out.word[k] + 1);
        ++k;
    }
    prefix.push_back(cur);
    prefix.insert(prefix.end(), out.word.begin() + k, out.word.end());
    out.word = std::move(prefix);
    return out;
}

FaceRef face(const SimplicialSetData& x, const FaceRef& r, int i) {
    int n = ref_dim(x, r);
    if (i < 0 || i > n || n == 0) throw LevelOutOfRange("face d_" + std::to_string(i));
    if (r.word.empty()) return x.simplex(r.base).faces.at(i);
    int j = r.word.front();
    FaceRef inner{std::vector<int>(r.word.begin() + 1, r.word.end()), r.base};
    if (i == j || i == j + 1) return inner;
    if (i < j) return degeneracy(face(x, inner, i), j - 1);
    return degeneracy(face(x, inner, i - 1), j);
}

FaceRef subsimplex(const SimplicialSetData& x, const std::string& name, const std::vector<int>& s) {
    FaceRef r{{}, name};
    int n = x.simplex(name).dim;
    std::set<int> keep(s.begin(), s.end());
    for (int i = n; i >= 0; --i)
        if (!keep.count(i)) r = face(x, r, i);
    return r;
}

std::string last_vertex(const SimplicialSetData& x, const std::string& name) {
    const Simplex& s = x.simplex(name);
    if (s.dim == 0) return name;
    return last_vertex(x, s.faces[0].base);  // degeneracies keep the last vertex
}

FaceRef last_edge(const SimplicialSetData& x, const std::string& name) {
    FaceRef r{{}, name};
    int n = x.simplex(name).dim;
    if (n < 1) throw LevelOutOfRange("last edge of a vertex");
    for (int k = 0; k < n - 1; ++k) r = face(x, r, 0);
    return r;
}

ValidationReport validate_simplicial(const SimplicialSetData& x) {
    ValidationReport report;
    for (const Simplex& s : x.all()) {
        if (s.dim == 0) {
            if (!s.faces.empty()) report.violations.push_back({"FaceCount", s.name, "vertex with faces"});
            continue;
        }
        if (int(s.faces.size()) != s.dim + 1) {
            report.violations.push_back({"FaceCount", s.name, std::to_string(s.faces.size()) + " faces"});
            continue;
        }
        bool bad = false;
        for (int i = 0; i <= s.dim && !bad; ++i) {
            const FaceRef& f = s.faces[i];
            if (!x.has(f.base)) {
                report.violations.push_back({"UnknownSimplex", s.name, f.base});
                bad = true;
                break;
            }
            for (std::size_t k = 0; k + 1 < f.word.size(); ++k)
                if (f.word[k] <= f.word[k + 1]) {
                    report.violations.push_back({"DegeneracyWord", s.name, "word not strictly decreasing"});
                    bad = true;
                    break;
                }
            int b = x.simplex(f.base).dim;
            for (std::size_t k = 0; k < f.word.size() && !bad; ++k) {
                int applied_to = b + int(f.word.size() - k) - 1;
                if (f.word[k] < 0 || f.word[k] > applied_to) {
                    report.violations.push_back({"DegeneracyWord", s.name, "index out of range"});
                    bad = true;
                }
            }
            if (!bad && ref_dim(x, f) != s.dim - 1)
                report.violations.push_back({"FaceDim", s.name, "face " + std::to_string(i)}), bad = true;
        }
    }
    if (!report.ok()) return report;
    for (const Simplex& s : x.all()) {
        if (s.dim < 2) continue;
        FaceRef self{{}, s.name};
        for (int j = 1; j <= s.dim; ++j)
            for (int i = 0; i < j; ++i) {
                FaceRef a = face(x, face(x, self, j), i);
                FaceRef b = face(x, face(x, self, i), j - 1);
                if (!(a == b))
                    report.violations.push_back({"SimplicialIdentity", s.name,
                                                 "d_" + std::to_string(i) + " d_" + std::to_string(j)});
            }
    }
    return report;
}

LocalSystemData constant_system(const SimplicialSetData& x, const PresentedGroup& g) {
    LocalSystemData m;
    for (const std::string& v : x.simplices_of_dim(0)) m.groups[v] = g;
    for (const std::string& e : x.simplices_of_dim(1)) m.arrows[e] = IntMatrix::identity(g.generators);
    return m;
}

namespace {

std::string vertex_of(const SimplicialSetData& x, const FaceRef& r) {
    return r.base;  // dimension-0 refs are never degenerate
}

IntMatrix edge_matrix(const SimplicialSetData& x, const LocalSystemData& m, const FaceRef& edge) {
    if (edge.degenerate()) return IntMatrix::identity(m.group_at(edge.base).generators);
    return m.arrow(edge.base);
}

std::string edge_src(const SimplicialSetData& x, const std::string& e) {
    return vertex_of(x, face(x, {{}, e}, 1));
}
std::string edge_tgt(const SimplicialSetData& x, const std::string& e) {
    return vertex_of(x, face(x, {{}, e}, 0));
}

}  // namespace

ValidationReport check_weak_local_system(const SimplicialSetData& x, const LocalSystemData& m) {
    ValidationReport report;
    for (const std::string& v : x.simplices_of_dim(0))
        if (!m.groups.count(v)) report.violations.push_back({"MissingGroup", v, "no coefficient group"});
    for (const std::string& e : x.simplices_of_dim(1)) {
        if (!m.arrows.count(e)) {
            report.violations.push_back({"MissingArrow", e, "no matrix"});
            continue;
        }
        if (!report.ok()) continue;
        const IntMatrix& a = m.arrow(e);
        const PresentedGroup& sg = m.group_at(edge_src(x, e));
        const PresentedGroup& tg = m.group_at(edge_tgt(x, e));
        if (a.rows() != sg.generators || a.cols() != tg.generators) {
            report.violations.push_back({"ShapeMismatch", e, "arrow matrix shape"});
            continue;
        }
        if (tg.relations.cols() > 0) {
            IntMatrix img = a * tg.relations;
            if (!img.is_zero() && !in_image(sg.relations, img))
                report.violations.push_back({"RelationsNotPreserved", e, "arrow does not respect relations"});
        }
    }
    if (!report.ok()) return report;
    for (const std::string& t : x.simplices_of_dim(2)) {
        FaceRef self{{}, t};
        IntMatrix m01 = edge_matrix(x, m, face(x, self, 2));
        IntMatrix m12 = edge_matrix(x, m, face(x, self, 0));
        IntMatrix m02 = edge_matrix(x, m, face(x, self, 1));
        IntMatrix diff = m02 - m01 * m12;
        if (diff.is_zero()) continue;
        std::string v0 = vertex_of(x, subsimplex(x, t, {0}));
        if (!in_image(m.group_at(v0).relations, diff))
            report.violations.push_back({"WeakFunctoriality", t, "(d1)* != (d2)*(d0)*"});
    }
    return report;
}

namespace {

struct SimpLayout {
    std::vector<std::string> names;
    std::map<std::string, std::size_t> offset;
    std::size_t total = 0;
};

SimpLayout simp_layout(const SimplicialSetData& x, const LocalSystemData& m, int n) {
    SimpLayout l;
    l.names = x.simplices_of_dim(n);
    for (const std::string& s : l.names) {
        l.offset[s] = l.total;
        l.total += m.group_at(last_vertex(x, s)).generators;
    }
    return l;
}

}  // namespace

ChainComplex normalized_complex(const SimplicialSetData& x, const LocalSystemData& m) {
    ChainComplex c;
    std::vector<SimpLayout> layouts;
    for (int n = 0; n <= x.truncation(); ++n) layouts.push_back(simp_layout(x, m, n));

    for (int n = 0; n <= x.truncation(); ++n) {
        const SimpLayout& l = layouts[n];
        std::size_t rel_cols = 0;
        for (const std::string& s : l.names) rel_cols += m.group_at(last_vertex(x, s)).relations.cols();
        IntMatrix rel(l.total, rel_cols);
        std::size_t col = 0;
        for (const std::string& s : l.names) {
            const PresentedGroup& g = m.group_at(last_vertex(x, s));
            for (std::size_t j = 0; j < g.relations.cols(); ++j, ++col)
                for (std::size_t i = 0; i < g.generators; ++i) rel(l.offset.at(s) + i, col) = g.relations(i, j);
        }
        c.groups.push_back(PresentedGroup{l.total, std::move(rel)});
    }

    c.diffs.push_back(IntMatrix::zero(0, layouts[0].total));
    for (int n = 1; n <= x.truncation(); ++n) {
        const SimpLayout& cur = layouts[n];
        const SimpLayout& below = layouts[n - 1];
        IntMatrix d(below.total, cur.total);
        for (const std::string& sname : cur.names) {
            const Simplex& s = x.simplex(sname);
            const PresentedGroup& g = m.group_at(last_vertex(x, sname));
            IntMatrix twist = edge_matrix(x, m, last_edge(x, sname));
            for (std::size_t j = 0; j < g.generators; ++j) {
                IntVec colv(below.total);
                for (int i = 0; i <= n; ++i) {
                    const FaceRef& f = s.faces[i];
                    if (f.degenerate()) continue;  // normalized: degenerate faces vanish
                    Int sign = i % 2 == 0 ? 1 : -1;
                    if (i < n) {
                        colv[below.offset.at(f.base) + j] += sign;
                    } else {
                        IntVec e(g.generators);
                        e[j] = 1;
                        IntVec tw = twist.apply(e);
                        std::size_t off = below.offset.at(f.base);
                        for (std::size_t k = 0; k < tw.size(); ++k) colv[off + k] += sign * tw[k];
                    }
                }
                d.set_col(cur.offset.at(sname) + j, colv);
            }
        }
        c.diffs.push_back(std::move(d));
    }
    c.validate();
    return c;
}

FaceRef apply_simplicial(const SimplicialMapData& f, const FaceRef& r) {
    auto it = f.images.find(r.base);
    if (it == f.images.end()) throw UnknownGenerator("no image for simplex " + r.base);
    FaceRef out = it->second;
    for (auto j = r.word.rbegin(); j != r.word.rend(); ++j) out = degeneracy(out, *j);
    return out;
}

ValidationReport validate_simplicial_map(const SimplicialMapData& f) {
    ValidationReport report;
    for (const Simplex& s : f.source->all()) {
        auto it = f.images.find(s.name);
        if (it == f.images.end()) {
            report.violations.push_back({"MissingImage", s.name, "no image"});
            continue;
        }
        if (ref_dim(*f.target, it->second) != s.dim) {
            report.violations.push_back({"DimensionMismatch", s.name, "image dimension"});
            continue;
        }
        FaceRef self{{}, s.name};
        for (int i = 0; i <= s.dim && s.dim >= 1; ++i) {
            FaceRef lhs = apply_simplicial(f, face(*f.source, self, i));
            FaceRef rhs = face(*f.target, apply_simplicial(f, self), i);
            if (!(lhs == rhs))
                report.violations.push_back({"FaceNotPreserved", s.name, "d_" + std::to_string(i)});
        }
    }
    return report;
}

LocalSystemData pullback(const LocalSystemData& m, const SimplicialMapData& f) {
    LocalSystemData out;
    for (const std::string& v : f.source->simplices_of_dim(0))
        out.groups[v] = m.group_at(apply_simplicial(f, {{}, v}).base);
    for (const std::string& e : f.source->simplices_of_dim(1))
        out.arrows[e] = edge_matrix(*f.target, m, apply_simplicial(f, {{}, e}));
    return out;
}

ChainMap induced_simplicial_chain_map(const SimplicialMapData& f, const LocalSystemData& m) {
    LocalSystemData pulled = pullback(m, f);
    ChainComplex src = normalized_complex(*f.source, pulled);
    ChainComplex tgt = normalized_complex(*f.target, m);
    std::size_t top = std::max(src.top_degree(), tgt.top_degree());
    ChainMap out{std::move(src), std::move(tgt), {}};
    for (std::size_t n = 0; n <= top; ++n) {
        SimpLayout sl = simp_layout(*f.source, pulled, int(n));
        SimpLayout tl = simp_layout(*f.target, m, int(n));
        IntMatrix comp(tl.total, sl.total);
        for (const std::string& sname : sl.names) {
            FaceRef img = apply_simplicial(f, {{}, sname});
            if (img.degenerate()) continue;  // lands in the degenerate subcomplex
            std::size_t cols = m.group_at(last_vertex(*f.target, img.base)).generators;
            for (std::size_t j = 0; j < cols; ++j) comp(tl.offset.at(img.base) + j, sl.offset.at(sname) + j) = 1;
        }
        out.components.push_back(std::move(comp));
    }
    out.validate();
    return out;
}

const FiniteCategoryData::Morphism& FiniteCategoryData::morphism(const std::string& name) const {
    for (const auto& m : morphisms)
        if (m.name == name) return m;
    throw UnknownGenerator("morphism " + name);
}

std::optional<std::string> FiniteCategoryData::composite(const std::string& g, const std::string& f) const {
    auto it = compose.find({g, f});
    if (it == compose.end()) throw ValidationFailure("composite " + g + " . " + f + " missing from table");
    return it->second;
}

namespace {

/* Extended morphism: either an identity at an object or a named morphism. */
struct ExtMor {
    std::optional<std::string> name;  // nullopt = identity
    std::string src, tgt;
};

ExtMor ext_compose(const FiniteCategoryData& c, const ExtMor& g, const ExtMor& f) {
    if (f.tgt != g.src) throw ValidationFailure("composing non-composable morphisms");
    if (!f.name) return g;
    if (!g.name) return f;
    auto h = c.composite(*g.name, *f.name);
    if (!h) return ExtMor{std::nullopt, f.src, f.src};
    return ExtMor{*h, f.src, g.tgt};
}

}  // namespace

ValidationReport validate_category(const FiniteCategoryData& c) {
    ValidationReport report;
    std::set<std::string> objs(c.objects.begin(), c.objects.end());
    for (const auto& m : c.morphisms)
        if (!objs.count(m.src) || !objs.count(m.tgt))
            report.violations.push_back({"UnknownObject", m.name, "endpoint missing"});
    if (!report.ok()) return report;
    for (const auto& g : c.morphisms)
        for (const auto& f : c.morphisms) {
            if (f.tgt != g.src) continue;
            std::optional<std::string> h;
            try {
                h = c.composite(g.name, f.name);
            } catch (const Error& e) {
                report.violations.push_back({"MissingComposite", g.name + "." + f.name, e.what()});
                continue;
            }
            if (h) {
                const auto& hm = c.morphism(*h);
                if (hm.src != f.src || hm.tgt != g.tgt)
                    report.violations.push_back({"CompositeEndpoints", g.name + "." + f.name, *h});
            } else if (f.src != g.tgt) {
                report.violations.push_back({"CompositeEndpoints", g.name + "." + f.name, "identity composite of a non-loop"});
            }
        }
    if (!report.ok()) return report;
    for (const auto& h : c.morphisms)
        for (const auto& g : c.morphisms)
            for (const auto& f : c.morphisms) {
                if (f.tgt != g.src || g.tgt != h.src) continue;
                ExtMor hf{h.name, h.src, h.tgt}, gf{g.name, g.src, g.tgt}, ff{f.name, f.src, f.tgt};
                ExtMor lhs = ext_compose(c, ext_compose(c, hf, gf), ff);
                ExtMor rhs = ext_compose(c, hf, ext_compose(c, gf, ff));
                if (lhs.name != rhs.name)
                    report.violations.push_back({"Associativity", h.name + "." + g.name + "." + f.name, ""});
            }
    return report;
}

LocalSystemData constant_system(const FiniteCategoryData& c, const PresentedGroup& g) {
    LocalSystemData m;
    for (const std::string& o : c.objects) m.groups[o] = g;
    for (const auto& mor : c.morphisms) m.arrows[mor.name] = IntMatrix::identity(g.generators);
    return m;
}

ValidationReport check_weak_local_system(const FiniteCategoryData& c, const LocalSystemData& m) {
    ValidationReport report;
    for (const std::string& o : c.objects)
        if (!m.groups.count(o)) report.violations.push_back({"MissingGroup", o, "no coefficient group"});
    for (const auto& mor : c.morphisms) {
        if (!m.arrows.count(mor.name)) {
            report.violations.push_back({"MissingArrow", mor.name, "no matrix"});
            continue;
        }
        const IntMatrix& a = m.arrow(mor.name);
        if (!m.groups.count(mor.src) || !m.groups.count(mor.tgt)) continue;
        if (a.rows() != m.group_at(mor.src).generators || a.cols() != m.group_at(mor.tgt).generators)
            report.violations.push_back({"ShapeMismatch", mor.name, "arrow matrix shape"});
    }
    if (!report.ok()) return report;
    for (const auto& g : c.morphisms)
        for (const auto& f : c.morphisms) {
            if (f.tgt != g.src) continue;
            auto h = c.composite(g.name, f.name);
            IntMatrix lhs = h ? m.arrow(*h) : IntMatrix::identity(m.group_at(f.src).generators);
            IntMatrix rhs = m.arrow(f.name) * m.arrow(g.name);
            IntMatrix diff = lhs - rhs;
            if (diff.is_zero()) continue;
            if (!in_image(m.group_at(f.src).relations, diff))
                report.violations.push_back({"WeakFunctoriality", g.name + "." + f.name, "(g.f)* != f* g*"});
        }
    return report;
}

bool is_local_system(const FiniteCategoryData& c, const LocalSystemData& m) {
    for (const auto& mor : c.morphisms)
        if (!is_isomorphism(m.arrow(mor.name), m.group_at(mor.tgt), m.group_at(mor.src))) return false;
    return true;
}

namespace {

std::string chain_name(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "|" : "") + parts[i];
    return out;
}

}  // namespace

SimplicialSetData nerve(const FiniteCategoryData& c, int cap) {
    if (cap < 0) throw ValidationFailure("nerve cap must be nonnegative");
    SimplicialSetData x(cap);
    for (const std::string& o : c.objects) x.add_simplex({o, 0, {}});

    std::vector<std::vector<std::vector<std::string>>> chains(cap + 1);
    for (const auto& m : c.morphisms) chains[1].push_back({m.name});
    for (int n = 2; n <= cap; ++n)
        for (const auto& chain : chains[n - 1])
            for (const auto& m : c.morphisms)
                if (c.morphism(chain.back()).tgt == m.src) {
                    auto longer = chain;
                    longer.push_back(m.name);
                    chains[n].push_back(longer);
                }

    for (int n = 1; n <= cap; ++n) {
        for (const auto& chain : chains[n]) {
            Simplex s{chain_name(chain), n, {}};
            for (int i = 0; i <= n; ++i) {
                if (i == 0) {
                    std::vector<std::string> rest(chain.begin() + 1, chain.end());
                    s.faces.push_back({{}, rest.empty() ? c.morphism(chain[0]).tgt : chain_name(rest)});
                } else if (i == n) {
                    std::vector<std::string> rest(chain.begin(), chain.end() - 1);
                    s.faces.push_back({{}, rest.empty() ? c.morphism(chain[0]).src : chain_name(rest)});
                } else {
                    auto h = c.composite(chain[i], chain[i - 1]);
                    std::vector<std::string> parts(chain.begin(), chain.begin() + (i - 1));
                    if (h) {
                        parts.push_back(*h);
                        parts.insert(parts.end(), chain.begin() + i + 1, chain.end());
                        s.faces.push_back({{}, chain_name(parts)});
                    } else {
                        // the composite is an identity: the face is degenerate
                        parts.insert(parts.end(), chain.begin() + i + 1, chain.end());
                        std::string base =
                            parts.empty() ? c.morphism(chain[i - 1]).src : chain_name(parts);
                        s.faces.push_back({{i - 1}, base});
                    }
                }
            }
            x.add_simplex(std::move(s));
        }
    }
    return x;
}

CatPresentation fundamental_category(const SimplicialSetData& x) {
    CatPresentation p;
    p.objects = x.simplices_of_dim(0);
    for (const std::string& e : x.simplices_of_dim(1))
        p.arrows.push_back({e, edge_src(x, e), edge_tgt(x, e)});
    auto word_of = [&](const FaceRef& r) {
        std::vector<std::string> w;
        if (!r.degenerate()) w.push_back(r.base);
        return w;
    };
    for (const std::string& t : x.simplices_of_dim(2)) {
        FaceRef self{{}, t};
        CatPresentation::Relation rel;
        rel.lhs = word_of(face(x, self, 1));
        rel.rhs = word_of(face(x, self, 0));
        auto w2 = word_of(face(x, self, 2));
        rel.rhs.insert(rel.rhs.end(), w2.begin(), w2.end());
        p.relations.push_back(std::move(rel));
    }
    return p;
}

GroupoidPresentation pi1(const SimplicialSetData& x, const std::string& basepoint) {
    GroupoidPresentation g;
    g.presentation = fundamental_category(x);
    g.basepoint = basepoint;
    // connected components of the underlying undirected graph
    std::map<std::string, std::vector<std::string>> adj;
    for (const std::string& v : x.simplices_of_dim(0)) adj[v];
    for (const auto& a : g.presentation.arrows) {
        adj[a.src].push_back(a.tgt);
        adj[a.tgt].push_back(a.src);
    }
    std::set<std::string> seen;
    for (const auto& [v, _] : adj) {
        if (seen.count(v)) continue;
        std::vector<std::string> comp;
        std::deque<std::string> queue{v};
        seen.insert(v);
        while (!queue.empty()) {
            std::string w = queue.front();
            queue.pop_front();
            comp.push_back(w);
            for (const std::string& u : adj[w])
                if (seen.insert(u).second) queue.push_back(u);
        }
        std::sort(comp.begin(), comp.end());
        g.components.push_back(std::move(comp));
    }
    return g;
}

std::size_t CosetTable::apply(std::size_t g, int signed_letter) const {
    if (signed_letter == 0) throw LevelOutOfRange("letter 0");
    std::size_t idx = 2 * std::size_t(std::abs(signed_letter) - 1) + (signed_letter < 0 ? 1 : 0);
    return act.at(g).at(idx);
}

namespace {

constexpr std::size_t kUndef = std::size_t(-1);

struct TcState {
    std::size_t nl;  // number of letters (2 * generators)
    std::size_t cap;
    std::vector<std::vector<std::size_t>> tab;
    std::vector<std::size_t> rep;
    std::size_t live = 0;

    std::size_t find(std::size_t c) {
        while (rep[c] != c) {
            rep[c] = rep[rep[c]];
            c = rep[c];
        }
        return c;
    }
    std::size_t fresh() {
        if (tab.size() >= cap) throw CapExceeded("coset enumeration passed " + std::to_string(cap));
        tab.push_back(std::vector<std::size_t>(nl, kUndef));
        rep.push_back(tab.size() - 1);
        ++live;
        return tab.size() - 1;
    }
    static std::size_t inv(std::size_t x) { return x ^ 1; }

    void coincide(std::size_t a, std::size_t b) {
        std::deque<std::pair<std::size_t, std::size_t>> queue{{a, b}};
        while (!queue.empty()) {
            auto [p, q] = queue.front();
            queue.pop_front();
            p = find(p);
            q = find(q);
            if (p == q) continue;
            if (q < p) std::swap(p, q);
            rep[q] = p;
            --live;
            for (std::size_t xx = 0; xx < nl; ++xx) {
                std::size_t d = tab[q][xx];
                if (d == kUndef) continue;
                d = find(d);
                if (tab[p][xx] == kUndef)
                    tab[p][xx] = d;
                else if (find(tab[p][xx]) != d)
                    queue.push_back({tab[p][xx], d});
                std::size_t& rev = tab[d][inv(xx)];
                if (rev == kUndef)
                    rev = p;
                else if (find(rev) != p)
                    queue.push_back({rev, p});
            }
        }
    }

    void scan_and_fill(std::size_t c, const std::vector<std::size_t>& w) {
        std::size_t f = find(c), b = find(c);
        std::size_t i = 0, j = w.size();  // j is one past the last unscanned letter
        for (;;) {
            while (i < j && tab[f][w[i]] != kUndef) f = find(tab[f][w[i++]]);
            if (i == j) {
                if (f != b) coincide(f, b);
                return;
            }
            while (j > i && tab[b][inv(w[j - 1])] != kUndef) b = find(tab[b][inv(w[--j])]);
            if (j == i) {
                if (f != b) coincide(f, b);
                return;
            }
            if (j == i + 1) {
                tab[f][w[i]] = b;
                tab[b][inv(w[i])] = f;
                return;
            }
            std::size_t d = fresh();
            tab[f][w[i]] = d;
            tab[d][inv(w[i])] = f;
        }
    }
};

}  // namespace

CosetTable coset_enumeration(std::size_t ngens, const std::vector<std::vector<int>>& relators,
                             std::size_t cap) {
    TcState tc{2 * std::max<std::size_t>(ngens, 1), cap, {}, {}, 0};
    tc.nl = 2 * ngens;
    if (ngens == 0) {
        CosetTable t;
        t.order = 1;
        t.act = {{}};
        return t;
    }
    std::vector<std::vector<std::size_t>> words;
    for (const auto& r : relators) {
        std::vector<std::size_t> w;
        for (int s : r) {
            if (s == 0 || std::size_t(std::abs(s)) > ngens) throw LevelOutOfRange("bad relator letter");
            w.push_back(2 * std::size_t(std::abs(s) - 1) + (s < 0 ? 1 : 0));
        }
        if (!w.empty()) words.push_back(std::move(w));
    }
    tc.fresh();
    for (std::size_t c = 0; c < tc.tab.size(); ++c) {
        if (tc.find(c) != c) continue;
        for (const auto& w : words) {
            tc.scan_and_fill(c, w);
            if (tc.find(c) != c) break;
        }
        if (tc.find(c) != c) continue;
        for (std::size_t xx = 0; xx < tc.nl; ++xx) {
            if (tc.tab[c][xx] != kUndef) continue;
            std::size_t d = tc.fresh();
            tc.tab[c][xx] = d;
            tc.tab[d][TcState::inv(xx)] = c;
        }
    }
    // compress and double-check closure
    std::map<std::size_t, std::size_t> remap;
    for (std::size_t c = 0; c < tc.tab.size(); ++c)
        if (tc.find(c) == c) {
            std::size_t id = remap.size();
            remap[c] = id;
        }
    CosetTable out;
    out.order = remap.size();
    out.act.assign(out.order, std::vector<std::size_t>(tc.nl, kUndef));
    for (const auto& [c, idx] : remap)
        for (std::size_t xx = 0; xx < tc.nl; ++xx) {
            std::size_t d = tc.tab[c][xx];
            if (d == kUndef) throw Error("coset table incomplete after enumeration");
            out.act[idx][xx] = remap.at(tc.find(d));
        }
    // identity element must be coset 0
    if (!remap.count(tc.find(0)) || remap.at(tc.find(0)) != 0) throw Error("identity coset remap failure");
    return out;
}

Pi1Enumeration enumerate_pi1(const SimplicialSetData& x, const std::string& basepoint, std::size_t cap) {
    if (!x.has(basepoint) || x.simplex(basepoint).dim != 0) throw UnknownGenerator("basepoint " + basepoint);

    // spanning tree of the basepoint component
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> adj;  // vertex -> (edge, other)
    for (const std::string& e : x.simplices_of_dim(1)) {
        adj[edge_src(x, e)].push_back({e, edge_tgt(x, e)});
        adj[edge_tgt(x, e)].push_back({e, edge_src(x, e)});
    }
    std::set<std::string> reached{basepoint};
    std::set<std::string> tree_edges;
    std::deque<std::string> queue{basepoint};
    while (!queue.empty()) {
        std::string v = queue.front();
        queue.pop_front();
        for (const auto& [e, w] : adj[v])
            if (reached.insert(w).second) {
                tree_edges.insert(e);
                queue.push_back(w);
            }
    }

    Pi1Enumeration out;
    int next_letter = 1;
    for (const std::string& e : x.simplices_of_dim(1)) {
        if (!reached.count(edge_src(x, e))) continue;  // other component
        if (!tree_edges.count(e)) out.edge_letter_[e] = next_letter++;
    }
    std::size_t ngens = std::size_t(next_letter - 1);

    auto phi_word = [&](const std::vector<std::string>& arrows) {
        // arrows in composition order (later first); group product in the same order
        std::vector<int> w;
        for (const std::string& e : arrows) {
            auto it = out.edge_letter_.find(e);
            if (it != out.edge_letter_.end()) w.push_back(it->second);
        }
        return w;
    };

    std::vector<std::vector<int>> relators;
    for (const std::string& t : x.simplices_of_dim(2)) {
        if (!reached.count(last_vertex(x, t))) continue;
        FaceRef self{{}, t};
        std::vector<std::string> lhs, rhs;
        if (!face(x, self, 1).degenerate()) lhs.push_back(face(x, self, 1).base);
        if (!face(x, self, 0).degenerate()) rhs.push_back(face(x, self, 0).base);
        if (!face(x, self, 2).degenerate()) rhs.push_back(face(x, self, 2).base);
        std::vector<int> rel = phi_word(lhs);
        std::vector<int> rw = phi_word(rhs);
        for (auto it = rw.rbegin(); it != rw.rend(); ++it) rel.push_back(-*it);
        if (!rel.empty()) relators.push_back(std::move(rel));
    }

    out.table_ = coset_enumeration(ngens, relators, cap);
    return out;
}

std::size_t Pi1Enumeration::act_edge(std::size_t g, const std::string& edge_name) const {
    auto it = edge_letter_.find(edge_name);
    if (it == edge_letter_.end()) return g;  // tree edge: trivial class
    return table_.apply(g, it->second);
}

UniversalCover universal_cover(const SimplicialSetData& x, const std::string& basepoint, std::size_t cap) {
    GroupoidPresentation g = pi1(x, basepoint);
    for (const auto& comp : g.components)
        if (std::find(comp.begin(), comp.end(), basepoint) != comp.end() &&
            comp.size() != std::size_t(x.simplices_of_dim(0).size()))
            throw ValidationFailure("universal cover of a disconnected simplicial set");

    Pi1Enumeration pi = enumerate_pi1(x, basepoint, cap);
    std::size_t order = pi.order();

    UniversalCover out;
    out.cover = std::make_unique<SimplicialSetData>(x.truncation());
    out.fiber_size = order;
    auto lift_name = [](const std::string& base, std::size_t gg) {
        return base + "@" + std::to_string(gg);
    };

    for (int n = 0; n <= x.truncation(); ++n)
        for (const std::string& sname : x.simplices_of_dim(n)) {
            const Simplex& s = x.simplex(sname);
            for (std::size_t gg = 0; gg < order; ++gg) {
                Simplex lifted{lift_name(sname, gg), n, {}};
                for (int i = 0; i <= n && n >= 1; ++i) {
                    const FaceRef& f = s.faces[i];
                    std::size_t hh = gg;
                    if (i == n) {
                        FaceRef e = last_edge(x, sname);
                        if (!e.degenerate()) hh = pi.act_edge(gg, e.base);
                    }
                    lifted.faces.push_back({f.word, lift_name(f.base, hh)});
                }
                out.cover->add_simplex(std::move(lifted));
            }
        }

    out.projection.source = out.cover.get();
    out.projection.target = &x;
    for (int n = 0; n <= x.truncation(); ++n)
        for (const std::string& sname : x.simplices_of_dim(n))
            for (std::size_t gg = 0; gg < order; ++gg)
                out.projection.images[lift_name(sname, gg)] = FaceRef{{}, sname};
    return out;
}

Polygraph realization_polygraph(const SimplicialSetData& x, bool allow_dim4) {
    int bound = allow_dim4 ? 4 : 3;
    Polygraph p;
    for (int n = 0; n <= x.truncation(); ++n) {
        const auto& names = x.simplices_of_dim(n);
        if (!names.empty() && n > bound)
            throw DimensionUnsupported("realization of a " + std::to_string(n) + "-simplex");
        for (const std::string& sname : names) {
            if (n == 0) {
                p.add_generator({sname, 0, nullptr, nullptr});
                continue;
            }
            // relabel the oriental boundary: digit subsets become iterated faces
            std::function<TermPtr(const TermPtr&)> transform = [&](const TermPtr& t) -> TermPtr {
                switch (t->kind()) {
                    case CellTerm::Kind::Gen: {
                        std::vector<int> s;
                        for (char ch : t->gen_name()) s.push_back(ch - '0');
                        FaceRef r = subsimplex(x, sname, s);
                        return CellTerm::id(CellTerm::gen(r.base), int(r.word.size()));
                    }
                    case CellTerm::Kind::Id:
                        return CellTerm::id(transform(t->inner()));
                    case CellTerm::Kind::Comp:
                        return CellTerm::comp_raw(t->level(), transform(t->left()), transform(t->right()));
                }
                throw InvalidTerm("unreachable");
            };
            p.add_generator({sname, n, transform(oriental_principal_boundary(n, Side::Src)),
                             transform(oriental_principal_boundary(n, Side::Tgt))});
        }
    }
    return p;
}

ComparisonReport comparison_iso_check(const SimplicialSetData& x, const LocalSystemData& m,
                                      bool allow_dim4) {
    ChainComplex n_cx = normalized_complex(x, m);
    Polygraph p = realization_polygraph(x, allow_dim4);
    ChainComplex c_cx = chain_complex(p, m);

    ComparisonReport rep;
    std::size_t common = std::min(n_cx.top_degree(), c_cx.top_degree());
    for (std::size_t d = common + 1; d <= n_cx.top_degree(); ++d)
        if (n_cx.group(d).generators != 0) {
            rep.detail = "normalized complex has extra degree " + std::to_string(d);
            return rep;
        }
    for (std::size_t d = common + 1; d <= c_cx.top_degree(); ++d)
        if (c_cx.group(d).generators != 0) {
            rep.detail = "polygraphic complex has extra degree " + std::to_string(d);
            return rep;
        }
    for (std::size_t d = 0; d <= common; ++d) {
        if (n_cx.group(d).generators != c_cx.group(d).generators) {
            rep.detail = "rank mismatch in degree " + std::to_string(d);
            return rep;
        }
        if (!(n_cx.d(d) == c_cx.d(d))) {
            rep.detail = "differential mismatch in degree " + std::to_string(d) + ": normalized " +
                         n_cx.d(d).to_string() + " vs polygraphic " + c_cx.d(d).to_string();
            return rep;
        }
    }
    rep.ok = true;
    rep.detail = "complexes agree degreewise";
    return rep;
}

}  // namespace polyhom
