#include "polyhom/chaincomplexer.hpp"

#include <algorithm>
#include <functional>

namespace polyhom {

void ChainElement::add(const std::string& gen, const IntVec& v) {
    auto it = terms.find(gen);
    if (it == terms.end()) {
        if (std::any_of(v.begin(), v.end(), [](const Int& x) { return x != 0; })) terms[gen] = v;
        return;
    }
    IntVec& acc = it->second;
    if (acc.size() != v.size()) throw ShapeMismatch("chain element coefficient sizes at " + gen);
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
    if (std::all_of(acc.begin(), acc.end(), [](const Int& x) { return x == 0; })) terms.erase(it);
}

ChainElement ChainElement::operator+(const ChainElement& other) const {
    ChainElement out = *this;
    for (const auto& [g, v] : other.terms) out.add(g, v);
    return out;
}

ChainElement ChainElement::operator-(const ChainElement& other) const {
    ChainElement out = *this;
    for (const auto& [g, v] : other.terms) {
        IntVec neg(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        out.add(g, neg);
    }
    return out;
}

namespace {

void cls_into(const Polygraph& p, const LocalSystemData& m, const TermPtr& t, const IntVec& coeff,
              int degree, ChainElement& acc) {
    switch (t->kind()) {
        case CellTerm::Kind::Gen: {
            const Generator& g = p.generator(t->gen_name());
            if (g.dim != degree) throw InvalidTerm("unpadded factor " + g.name + " in cls");
            if (coeff.size() != m.group_at(object_of(p, t, Side::Tgt)).generators)
                throw ShapeMismatch("cls coefficient at " + g.name);
            acc.add(g.name, coeff);
            return;
        }
        case CellTerm::Kind::Id:
            return;  // units vanish
        case CellTerm::Kind::Comp: {
            cls_into(p, m, t->left(), coeff, degree, acc);
            if (t->level() == 0) {
                IntMatrix twist = evaluate_on_1cell(p, m, boundary(p, t->left(), 1, Side::Tgt));
                cls_into(p, m, t->right(), twist.apply(coeff), degree, acc);
            } else {
                cls_into(p, m, t->right(), coeff, degree, acc);
            }
            return;
        }
    }
}

}  // namespace

ChainElement cls(const Polygraph& p, const LocalSystemData& m, const TermPtr& t, const IntVec& coeff) {
    ChainElement out;
    out.degree = dim(p, *t);
    cls_into(p, m, t, coeff, out.degree, out);
    return out;
}

DegreeLayout degree_layout(const Polygraph& p, const LocalSystemData& m, int n) {
    DegreeLayout layout;
    layout.gens = p.generators_of_dim(n);
    for (const std::string& g : layout.gens) {
        layout.offset[g] = layout.total;
        layout.total += m.group_at(object_of(p, CellTerm::gen(g), Side::Tgt)).generators;
    }
    return layout;
}

IntVec element_vector(const Polygraph& p, const LocalSystemData& m, const DegreeLayout& layout,
                      const ChainElement& e) {
    IntVec out(layout.total);
    for (const auto& [g, v] : e.terms) {
        auto it = layout.offset.find(g);
        if (it == layout.offset.end()) throw UnknownGenerator(g + " not in degree layout");
        for (std::size_t i = 0; i < v.size(); ++i) out[it->second + i] = v[i];
    }
    return out;
}

ChainComplex chain_complex(const Polygraph& p, const LocalSystemData& m) {
    ChainComplex c;
    std::vector<DegreeLayout> layouts;
    for (int n = 0; n <= p.max_dim(); ++n) layouts.push_back(degree_layout(p, m, n));

    for (int n = 0; n <= p.max_dim(); ++n) {
        const DegreeLayout& layout = layouts[n];
        std::size_t rel_cols = 0;
        for (const std::string& g : layout.gens)
            rel_cols += m.group_at(object_of(p, CellTerm::gen(g), Side::Tgt)).relations.cols();
        IntMatrix rel(layout.total, rel_cols);
        std::size_t col = 0;
        for (const std::string& g : layout.gens) {
            const PresentedGroup& grp = m.group_at(object_of(p, CellTerm::gen(g), Side::Tgt));
            std::size_t off = layout.offset.at(g);
            for (std::size_t j = 0; j < grp.relations.cols(); ++j, ++col)
                for (std::size_t i = 0; i < grp.generators; ++i) rel(off + i, col) = grp.relations(i, j);
        }
        c.groups.push_back(PresentedGroup{layout.total, std::move(rel)});
    }

    c.diffs.push_back(IntMatrix::zero(0, layouts[0].total));
    for (int n = 1; n <= p.max_dim(); ++n) {
        const DegreeLayout& cur = layouts[n];
        const DegreeLayout& below = layouts[n - 1];
        IntMatrix d(below.total, cur.total);
        for (const std::string& gname : cur.gens) {
            TermPtr g = CellTerm::gen(gname);
            const PresentedGroup& grp = m.group_at(object_of(p, g, Side::Tgt));
            for (std::size_t j = 0; j < grp.generators; ++j) {
                IntVec e(grp.generators);
                e[j] = 1;
                ChainElement de;
                if (n == 1) {
                    de.degree = 0;
                    de.add(object_of(p, g, Side::Tgt), e);
                    IntVec twisted = evaluate_on_1cell(p, m, g).apply(e);
                    for (Int& x : twisted) x = -x;
                    de.add(object_of(p, g, Side::Src), twisted);
                } else {
                    const Generator& gen = p.generator(gname);
                    de = cls(p, m, gen.tgt, e) - cls(p, m, gen.src, e);
                }
                d.set_col(cur.offset.at(gname) + j, element_vector(p, m, below, de));
            }
        }
        c.diffs.push_back(std::move(d));
    }
    c.validate();  // raises DDNotZero when the necessary condition fails
    return c;
}

std::vector<FgAbGroup> polygraphic_homology(const Polygraph& p, const LocalSystemData& m) {
    return homology_of_complex(chain_complex(p, m));
}

namespace {

ChainMap make_chain_map(ChainComplex src, ChainComplex tgt,
                        const std::function<ChainElement(int, const std::string&, const IntVec&)>& image,
                        const Polygraph& src_poly, const LocalSystemData& src_m, const Polygraph& tgt_poly,
                        const LocalSystemData& tgt_m) {
    std::size_t top = std::max(src.top_degree(), tgt.top_degree());
    ChainMap out{std::move(src), std::move(tgt), {}};
    for (std::size_t n = 0; n <= top; ++n) {
        DegreeLayout sl = degree_layout(src_poly, src_m, int(n));
        DegreeLayout tl = degree_layout(tgt_poly, tgt_m, int(n));
        IntMatrix comp(tl.total, sl.total);
        for (const std::string& gname : sl.gens) {
            const PresentedGroup& grp =
                src_m.group_at(object_of(src_poly, CellTerm::gen(gname), Side::Tgt));
            for (std::size_t j = 0; j < grp.generators; ++j) {
                IntVec e(grp.generators);
                e[j] = 1;
                ChainElement el = image(int(n), gname, e);
                comp.set_col(sl.offset.at(gname) + j, element_vector(tgt_poly, tgt_m, tl, el));
            }
        }
        out.components.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

ChainMap induced_chain_map(const OmegaFunctorData& f, const LocalSystemData& m) {
    LocalSystemData pulled = pullback(m, f);
    ChainComplex src = chain_complex(*f.source, pulled);
    ChainComplex tgt = chain_complex(*f.target, m);
    ChainMap out = make_chain_map(
        std::move(src), std::move(tgt),
        [&](int, const std::string& gname, const IntVec& e) {
            return cls(*f.target, m, apply_functor(f, CellTerm::gen(gname)), e);
        },
        *f.source, pulled, *f.target, m);
    out.validate();
    return out;
}

ChainMap coefficient_chain_map(const Polygraph& p, const LocalSystemData& m_from,
                               const LocalSystemData& m_to,
                               const std::map<std::string, IntMatrix>& phi) {
    for (const std::string& gname : p.generators_of_dim(1)) {
        TermPtr g = CellTerm::gen(gname);
        std::string s0 = object_of(p, g, Side::Src), t0 = object_of(p, g, Side::Tgt);
        IntMatrix lhs = m_to.arrow(gname) * phi.at(t0);
        IntMatrix rhs = phi.at(s0) * m_from.arrow(gname);
        IntMatrix diff = lhs - rhs;
        if (!diff.is_zero() && !in_image(m_to.group_at(s0).relations, diff))
            throw NaturalityFailure("at 1-generator " + gname);
    }
    ChainComplex src = chain_complex(p, m_from);
    ChainComplex tgt = chain_complex(p, m_to);
    ChainMap out = make_chain_map(
        std::move(src), std::move(tgt),
        [&](int, const std::string& gname, const IntVec& e) {
            std::string t0 = object_of(p, CellTerm::gen(gname), Side::Tgt);
            ChainElement el;
            el.degree = p.generator(gname).dim;
            el.add(gname, phi.at(t0).apply(e));
            return el;
        },
        p, m_from, p, m_to);
    out.validate();
    return out;
}

TermPtr extend_oplax(const OplaxData& a, const TermPtr& t) {
    const Polygraph& src = a.source();
    const Polygraph& tgt = a.target();
    switch (t->kind()) {
        case CellTerm::Kind::Gen: {
            auto it = a.alpha.find(t->gen_name());
            if (it == a.alpha.end()) throw UnknownGenerator("no alpha for " + t->gen_name());
            return it->second;
        }
        case CellTerm::Kind::Id:
            return CellTerm::id(extend_oplax(a, t->inner()));
        case CellTerm::Kind::Comp: {
            const TermPtr& x1 = t->left();
            const TermPtr& x0 = t->right();
            int i = t->level();
            // left half: f1(t_{i+1} x1) *0 a(s_0) *1 ... *_{i-1} a(s_{i-1}) *_i a(x0)
            TermPtr left = apply_functor(a.f1, boundary(src, x1, i + 1, Side::Tgt));
            for (int k = 0; k < i; ++k)
                left = comp(tgt, k, left, extend_oplax(a, boundary(src, x0, k, Side::Src)));
            left = comp(tgt, i, left, extend_oplax(a, x0));
            // right half: a(x1) *_i a(t_{i-1}) *_{i-1} ... *1 a(t_0) *0 f0(s_{i+1} x0)
            TermPtr right = apply_functor(a.f0, boundary(src, x0, i + 1, Side::Src));
            for (int k = 0; k < i; ++k)
                right = comp(tgt, k, extend_oplax(a, boundary(src, x1, k, Side::Tgt)), right);
            right = comp(tgt, i, extend_oplax(a, x1), right);
            return comp(tgt, i + 1, left, right);
        }
    }
    throw InvalidTerm("unreachable");
}

ValidationReport validate_oplax(const OplaxData& a) {
    ValidationReport report;
    const Polygraph& src = a.source();
    const Polygraph& tgt = a.target();
    for (ValidationReport sub : {validate_functor(a.f0), validate_functor(a.f1)})
        for (auto& v : sub.violations) report.violations.push_back(std::move(v));
    if (!report.ok()) return report;

    for (const Generator& g : src.all()) {
        auto it = a.alpha.find(g.name);
        if (it == a.alpha.end()) {
            report.violations.push_back({"MissingAlpha", g.name, "no cylinder cell"});
            continue;
        }
        const TermPtr& ag = it->second;
        int d;
        try {
            d = dim(tgt, *ag);
        } catch (const Error& e) {
            report.violations.push_back({"InvalidAlpha", g.name, e.what()});
            continue;
        }
        if (d != g.dim + 1) {
            report.violations.push_back({"DimensionMismatch", g.name, "alpha has dimension " + std::to_string(d)});
            continue;
        }
        TermPtr x = CellTerm::gen(g.name);
        for (int i = 0; i <= g.dim; ++i) {
            // s_i(alpha_x) = a(t_{i-1}x) *_{i-1} ... *_1 a(t_0 x) *_0 f0(s_i x)
            TermPtr want_s = apply_functor(a.f0, boundary(src, x, i, Side::Src));
            for (int k = 0; k < i; ++k)
                want_s = comp(tgt, k, extend_oplax(a, boundary(src, x, k, Side::Tgt)), want_s);
            // t_i(alpha_x) = f1(t_i x) *_0 a(s_0 x) *_1 ... *_{i-1} a(s_{i-1} x)
            TermPtr want_t = apply_functor(a.f1, boundary(src, x, i, Side::Tgt));
            for (int k = 0; k < i; ++k)
                want_t = comp(tgt, k, want_t, extend_oplax(a, boundary(src, x, k, Side::Src)));
            if (!compare_cells(tgt, boundary(tgt, ag, i, Side::Src), want_s))
                report.violations.push_back({"OplaxBoundary", g.name, "s_" + std::to_string(i)});
            if (!compare_cells(tgt, boundary(tgt, ag, i, Side::Tgt), want_t))
                report.violations.push_back({"OplaxBoundary", g.name, "t_" + std::to_string(i)});
        }
    }
    return report;
}

HomotopyResult homotopy_from_oplax(const OplaxData& a, const LocalSystemData& m) {
    const Polygraph& src = a.source();
    const Polygraph& tgt = a.target();

    LocalSystemData m1 = pullback(m, a.f1);
    HomotopyResult out;
    out.source_complex = chain_complex(src, m1);
    out.target_complex = chain_complex(tgt, m);

    // phi = M * alpha on objects: M_{f1(x)} -> M_{f0(x)}
    std::map<std::string, IntMatrix> phi;
    for (const std::string& x : src.generators_of_dim(0))
        phi[x] = evaluate_on_1cell(tgt, m, a.alpha.at(x));

    int top_src = src.max_dim();
    std::vector<DegreeLayout> src_layout, tgt_layout;
    for (int n = 0; n <= top_src; ++n) src_layout.push_back(degree_layout(src, m1, n));
    for (int n = 0; n <= tgt.max_dim(); ++n) tgt_layout.push_back(degree_layout(tgt, m, n));

    auto tgt_vec = [&](int n, const ChainElement& e) {
        if (n <= tgt.max_dim()) return element_vector(tgt, m, tgt_layout[n], e);
        if (!e.terms.empty()) throw ShapeMismatch("chain element above target top degree");
        return IntVec{};
    };

    for (int n = 0; n <= top_src; ++n) {
        std::size_t rows = n + 1 <= tgt.max_dim() ? tgt_layout[n + 1].total : 0;
        IntMatrix h(rows, src_layout[n].total);
        for (const std::string& gname : src_layout[n].gens) {
            const PresentedGroup& grp = m1.group_at(object_of(src, CellTerm::gen(gname), Side::Tgt));
            TermPtr ext = extend_oplax(a, CellTerm::gen(gname));
            for (std::size_t j = 0; j < grp.generators; ++j) {
                IntVec e(grp.generators);
                e[j] = 1;
                IntVec v = tgt_vec(n + 1, cls(tgt, m, ext, e));
                if (rows) h.set_col(src_layout[n].offset.at(gname) + j, v);
            }
        }
        out.h.push_back(std::move(h));
    }

    // C(f1, M) and C(f0, phi), both out of C(source, f1*M)
    std::vector<IntMatrix> f1_comp, f0phi_comp;
    for (int n = 0; n <= top_src; ++n) {
        std::size_t rows = n <= tgt.max_dim() ? tgt_layout[n].total : 0;
        IntMatrix c1(rows, src_layout[n].total), c0(rows, src_layout[n].total);
        for (const std::string& gname : src_layout[n].gens) {
            const PresentedGroup& grp = m1.group_at(object_of(src, CellTerm::gen(gname), Side::Tgt));
            std::string t0 = object_of(src, CellTerm::gen(gname), Side::Tgt);
            TermPtr img1 = apply_functor(a.f1, CellTerm::gen(gname));
            TermPtr img0 = apply_functor(a.f0, CellTerm::gen(gname));
            for (std::size_t j = 0; j < grp.generators; ++j) {
                IntVec e(grp.generators);
                e[j] = 1;
                if (rows) {
                    c1.set_col(src_layout[n].offset.at(gname) + j, tgt_vec(n, cls(tgt, m, img1, e)));
                    c0.set_col(src_layout[n].offset.at(gname) + j,
                               tgt_vec(n, cls(tgt, m, img0, phi.at(t0).apply(e))));
                }
            }
        }
        f1_comp.push_back(std::move(c1));
        f0phi_comp.push_back(std::move(c0));
    }

    out.residual_zero = true;
    for (int n = 0; n <= top_src; ++n) {
        std::size_t rows = n <= tgt.max_dim() ? tgt_layout[n].total : 0;
        IntMatrix r(rows, src_layout[n].total);
        if (rows) {
            if (n + 1 <= tgt.max_dim()) r = r + out.target_complex.d(n + 1) * out.h[n];
            if (n >= 1) r = r + out.h[n - 1] * out.source_complex.d(n);
            r = r - (f1_comp[n] - f0phi_comp[n]);
        }
        if (!r.is_zero()) {
            // allow exactness only modulo coefficient relations of the target degree
            bool ok = n <= tgt.max_dim() && in_image(out.target_complex.group(n).relations, r);
            if (!ok) out.residual_zero = false;
        }
        out.residual.push_back(std::move(r));
    }
    return out;
}

}  // namespace polyhom
