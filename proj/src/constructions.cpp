#include "polyhom/constructions.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace polyhom {

namespace {

std::size_t rank_at(const ChainComplex& n, int i) {
    return i >= 0 && i <= int(n.top_degree()) ? n.group(std::size_t(i)).generators : 0;
}

const PresentedGroup& coeff_group(const GContext& ctx, const TermPtr& t, int i, Side side) {
    TermPtr b = boundary(*ctx.base, t, i, side);
    return ctx.m->group_at(object_of(*ctx.base, b, Side::Tgt));
}

}  // namespace

std::string CheckReport::to_string() const {
    if (ok) return "ok";
    std::ostringstream os;
    for (const auto& f : failures) os << f << "\n";
    return os.str();
}

ValidationReport validate_gcell(const GContext& ctx, const GCell& cell) {
    ValidationReport report;
    int n = cell.dim();
    auto check_slot = [&](const IntMatrix& u, int i, Side side, const std::string& label) {
        const PresentedGroup& g = coeff_group(ctx, cell.x, i, side);
        if (u.rows() != rank_at(*ctx.n, i) || u.cols() != g.generators)
            report.violations.push_back({"ShapeMismatch", label,
                                         std::to_string(u.rows()) + "x" + std::to_string(u.cols())});
    };
    if (dim(*ctx.base, *cell.x) != n) {
        report.violations.push_back({"DimensionMismatch", "base", "table size vs cell dimension"});
        return report;
    }
    for (int i = 0; i < n; ++i) {
        check_slot(cell.lower[i].first, i, Side::Src, "u0_" + std::to_string(i));
        check_slot(cell.lower[i].second, i, Side::Tgt, "u1_" + std::to_string(i));
    }
    check_slot(cell.top, n, Side::Src, "u_" + std::to_string(n));
    if (!report.ok()) return report;

    auto slot = [&](int i, int eps) -> const IntMatrix& {
        if (i == n) return cell.top;
        return eps == 0 ? cell.lower[i].first : cell.lower[i].second;
    };
    for (int i = 1; i <= n; ++i) {
        for (int eps = 0; eps <= (i == n ? 0 : 1); ++eps) {
            if (i > int(ctx.n->top_degree())) {
                if (!slot(i, eps).is_zero())
                    report.violations.push_back({"DifferentialCompat", "u_" + std::to_string(i), "slot above complex top"});
                continue;
            }
            IntMatrix lhs = ctx.n->d(std::size_t(i)) * slot(i, eps);
            IntMatrix rhs = i == 1 ? cell.lower[0].second -
                                         cell.lower[0].first *
                                             evaluate_on_1cell(*ctx.base, *ctx.m,
                                                               boundary(*ctx.base, cell.x, 1, Side::Tgt))
                                   : cell.lower[i - 1].second - cell.lower[i - 1].first;
            if (!(lhs == rhs))
                report.violations.push_back({"DifferentialCompat",
                                             "u" + std::to_string(eps) + "_" + std::to_string(i),
                                             "d u != u1 - u0"});
        }
    }
    return report;
}

GCell g_source(const GContext& ctx, const GCell& cell) {
    int n = cell.dim();
    if (n == 0) throw LevelOutOfRange("source of a 0-cell of G(N)");
    GCell out;
    out.x = boundary(*ctx.base, cell.x, n - 1, Side::Src);
    out.lower.assign(cell.lower.begin(), cell.lower.end() - 1);
    out.top = cell.lower.back().first;
    return out;
}

GCell g_target(const GContext& ctx, const GCell& cell) {
    int n = cell.dim();
    if (n == 0) throw LevelOutOfRange("target of a 0-cell of G(N)");
    GCell out;
    out.x = boundary(*ctx.base, cell.x, n - 1, Side::Tgt);
    out.lower.assign(cell.lower.begin(), cell.lower.end() - 1);
    out.top = cell.lower.back().second;
    return out;
}

GCell g_unit(const GContext& ctx, const GCell& cell) {
    int n = cell.dim();
    GCell out;
    out.x = CellTerm::id(cell.x);
    out.lower = cell.lower;
    out.lower.push_back({cell.top, cell.top});
    out.top = IntMatrix::zero(rank_at(*ctx.n, n + 1), coeff_group(ctx, cell.x, n, Side::Src).generators);
    return out;
}

GCell g_comp(const GContext& ctx, int level, const GCell& left, const GCell& right) {
    int n = left.dim();
    if (right.dim() != n || level < 0 || level >= n)
        throw NotComposable("G(N) composition level " + std::to_string(level));
    if (!compare_cells(*ctx.base, boundary(*ctx.base, right.x, level, Side::Tgt),
                       boundary(*ctx.base, left.x, level, Side::Src)))
        throw NotComposable("base cells not " + std::to_string(level) + "-composable");
    // boundary tables must agree: s_level(left) = t_level(right)
    for (int k = 0; k < level; ++k)
        if (!(left.lower[k].first == right.lower[k].first) ||
            !(left.lower[k].second == right.lower[k].second))
            throw NotComposable("slot " + std::to_string(k) + " differs");
    const IntMatrix& left_bot = level == n ? left.top : left.lower[level].first;
    const IntMatrix& right_top = level == n ? right.top : right.lower[level].second;
    if (!(left_bot == right_top)) throw NotComposable("slot " + std::to_string(level) + " differs");

    GCell out;
    out.x = comp(*ctx.base, level, left.x, right.x);
    out.lower.resize(n);
    IntMatrix twist = level == 0 ? evaluate_on_1cell(*ctx.base, *ctx.m,
                                                     boundary(*ctx.base, left.x, 1, Side::Tgt))
                                 : IntMatrix::identity(0);
    for (int k = 0; k < n; ++k) {
        if (k < level) {
            out.lower[k] = right.lower[k];
        } else if (k == level) {
            out.lower[k] = {right.lower[k].first, left.lower[k].second};
        } else {
            if (level == 0) {
                out.lower[k] = {left.lower[k].first + right.lower[k].first * twist,
                                left.lower[k].second + right.lower[k].second * twist};
            } else {
                out.lower[k] = {left.lower[k].first + right.lower[k].first,
                                left.lower[k].second + right.lower[k].second};
            }
        }
    }
    out.top = level == 0 ? left.top + right.top * twist : left.top + right.top;
    return out;
}

IntVec counit_eps(const ChainComplex& n, const GCell& cell, const IntVec& coeff) {
    if (cell.top.cols() != coeff.size()) throw ShapeMismatch("counit coefficient length");
    (void)n;
    return cell.top.apply(coeff);
}

EtaContext make_eta_context(const OmegaFunctorData& p, const LocalSystemData& m) {
    EtaContext ctx;
    ctx.p = &p;
    ctx.m = &m;
    ctx.pulled = pullback(m, p);
    ctx.complex = chain_complex(*p.source, ctx.pulled);
    for (int i = 0; i <= p.source->max_dim(); ++i)
        ctx.layouts.push_back(degree_layout(*p.source, ctx.pulled, i));
    return ctx;
}

GCell unit_eta(const EtaContext& ctx, const TermPtr& cell) {
    const Polygraph& xp = *ctx.p->source;
    int n = dim(xp, *cell);
    GCell out;
    out.x = apply_functor(*ctx.p, cell);

    auto slot = [&](int i, Side side) {
        TermPtr b = boundary(xp, cell, i, side);
        const PresentedGroup& g = ctx.pulled.group_at(object_of(xp, b, Side::Tgt));
        std::size_t rows = i <= xp.max_dim() ? ctx.layouts[i].total : 0;
        IntMatrix u(rows, g.generators);
        for (std::size_t j = 0; j < g.generators; ++j) {
            IntVec e(g.generators);
            e[j] = 1;
            u.set_col(j, element_vector(xp, ctx.pulled, ctx.layouts[i], cls(xp, ctx.pulled, b, e)));
        }
        return u;
    };
    for (int i = 0; i < n; ++i) out.lower.push_back({slot(i, Side::Src), slot(i, Side::Tgt)});
    out.top = slot(n, Side::Src);
    return out;
}

namespace {

bool gcell_equal(const GContext& ctx, const GCell& a, const GCell& b) {
    if (a.dim() != b.dim()) return false;
    if (!compare_cells(*ctx.base, a.x, b.x)) return false;
    for (int k = 0; k < a.dim(); ++k)
        if (!(a.lower[k].first == b.lower[k].first) || !(a.lower[k].second == b.lower[k].second))
            return false;
    return a.top == b.top;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> entry(-2, 2);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
    return m;
}

/// Random valid G(N)-cell over a generator of the base, built top-down so the
/// differential conditions hold by construction (requires N free with dd = 0).
GCell random_gcell(const GContext& ctx, std::mt19937_64& rng, const std::string& gen_name) {
    const Generator& g = ctx.base->generator(gen_name);
    GCell out;
    out.x = CellTerm::gen(gen_name);
    int n = g.dim;
    out.lower.resize(n);
    out.top = random_matrix(rng, rank_at(*ctx.n, n), coeff_group(ctx, out.x, n, Side::Src).generators);
    // working downward: pick u^0_i freely, set u^1_i from the condition one level up
    IntMatrix upper0 = out.top, upper1 = out.top;
    for (int i = n - 1; i >= 0; --i) {
        IntMatrix d_up = i + 1 <= int(ctx.n->top_degree())
                             ? ctx.n->d(std::size_t(i + 1)) * upper0
                             : IntMatrix::zero(rank_at(*ctx.n, i), upper0.cols());
        IntMatrix u0 = random_matrix(rng, rank_at(*ctx.n, i),
                                     coeff_group(ctx, out.x, i, Side::Src).generators);
        IntMatrix u1 = i == 0 ? d_up + u0 * evaluate_on_1cell(*ctx.base, *ctx.m,
                                                              boundary(*ctx.base, out.x, 1, Side::Tgt))
                              : d_up + u0;
        out.lower[i] = {u0, u1};
        upper0 = u0;
        upper1 = u1;
    }
    (void)upper1;
    return out;
}

}  // namespace

CheckReport adjunction_triangle_check(const OmegaFunctorData& p, const LocalSystemData& m,
                                      const ChainComplex& n, unsigned seed) {
    CheckReport report;
    const Polygraph& xp = *p.source;
    const Polygraph& x = *p.target;
    EtaContext eta = make_eta_context(p, m);
    GContext gN{&x, &m, &n};
    GContext gFXp{&x, &m, &eta.complex};

    /* Triangle 1: eps_{F(X')} ( F(eta)(b, v) ) = (b, v) on every basis chain. */
    for (const Generator& b : xp.all()) {
        GCell etab = unit_eta(eta, CellTerm::gen(b.name));
        ValidationReport vg = validate_gcell(gFXp, etab);
        if (!vg.ok()) report.fail("eta(" + b.name + ") is not a valid G-cell: " + vg.to_string());
        const PresentedGroup& grp = eta.pulled.group_at(object_of(xp, CellTerm::gen(b.name), Side::Tgt));
        for (std::size_t j = 0; j < grp.generators; ++j) {
            IntVec e(grp.generators);
            e[j] = 1;
            IntVec got = counit_eps(eta.complex, etab, e);
            ChainElement basis;
            basis.degree = b.dim;
            basis.add(b.name, e);
            IntVec want = element_vector(xp, eta.pulled, eta.layouts[b.dim], basis);
            if (got != want) report.fail("triangle 1 fails on (" + b.name + ", e_" + std::to_string(j) + ")");
        }
    }

    /* Eta is functorial: compatible with units, boundaries and compositions. */
    for (const Generator& b : xp.all()) {
        TermPtr t = CellTerm::gen(b.name);
        GCell etab = unit_eta(eta, t);
        if (!gcell_equal(gFXp, unit_eta(eta, CellTerm::id(t)), g_unit(gFXp, etab)))
            report.fail("eta(1_" + b.name + ") != 1_eta(" + b.name + ")");
        if (b.dim >= 1) {
            if (!gcell_equal(gFXp, unit_eta(eta, b.src), g_source(gFXp, etab)))
                report.fail("eta(s " + b.name + ") != s eta(" + b.name + ")");
            if (!gcell_equal(gFXp, unit_eta(eta, b.tgt), g_target(gFXp, etab)))
                report.fail("eta(t " + b.name + ") != t eta(" + b.name + ")");
        }
    }
    // composite cells: every composable generator pair at every level
    for (const Generator& a : xp.all())
        for (const Generator& b : xp.all()) {
            if (a.dim != b.dim || a.dim == 0) continue;
            for (int i = 0; i < a.dim; ++i) {
                TermPtr at = CellTerm::gen(a.name), bt = CellTerm::gen(b.name);
                if (!compare_cells(xp, boundary(xp, bt, i, Side::Tgt), boundary(xp, at, i, Side::Src)))
                    continue;
                TermPtr composite = comp(xp, i, at, bt);
                GCell lhs = unit_eta(eta, composite);
                GCell rhs = g_comp(gFXp, i, unit_eta(eta, at), unit_eta(eta, bt));
                if (!gcell_equal(gFXp, lhs, rhs))
                    report.fail("eta(" + a.name + " *" + std::to_string(i) + " " + b.name +
                                ") is not the composite of the etas");
            }
        }

    /* Triangle 2: G(eps) . eta_{G(N)} = id on sampled cells of G(N), i.e. the
     * top slot of every iterated boundary agrees with the recorded slot. */
    std::mt19937_64 rng(seed);
    std::vector<GCell> samples;
    for (const Generator& b : x.all()) {
        if (b.dim > 2) continue;
        for (int trial = 0; trial < 3; ++trial) samples.push_back(random_gcell(gN, rng, b.name));
    }
    {
        // include composites among the samples when composable pairs exist
        std::vector<GCell> extra;
        for (const GCell& u : samples)
            for (const GCell& v : samples) {
                if (u.dim() != v.dim() || u.dim() == 0 || extra.size() >= 6) continue;
                for (int i = 0; i < u.dim(); ++i) {
                    try {
                        extra.push_back(g_comp(gN, i, u, v));
                    } catch (const NotComposable&) {
                    }
                }
            }
        for (auto& e : extra) samples.push_back(std::move(e));
    }
    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
        const GCell& cell = samples[idx];
        ValidationReport vg = validate_gcell(gN, cell);
        if (!vg.ok()) {
            report.fail("sample " + std::to_string(idx) + " invalid: " + vg.to_string());
            continue;
        }
        // eta_{G(N)} followed by G(eps): slot (i, eps) becomes the top slot of
        // the corresponding boundary; all must reproduce the recorded table.
        GCell cur0 = cell, cur1 = cell;
        for (int i = cell.dim() - 1; i >= 0; --i) {
            cur0 = g_source(gN, cur0);
            cur1 = g_target(gN, cur1);
            if (!(cur0.top == cell.lower[i].first) || !(cur1.top == cell.lower[i].second)) {
                report.fail("triangle 2 fails on sample " + std::to_string(idx) + " at level " +
                            std::to_string(i));
                break;
            }
        }
        // units stay units
        GCell unit = g_unit(gN, cell);
        ValidationReport vu = validate_gcell(gN, unit);
        if (!vu.ok()) report.fail("unit of sample " + std::to_string(idx) + " invalid");
        if (!gcell_equal(gN, g_source(gN, unit), cell) || !gcell_equal(gN, g_target(gN, unit), cell))
            report.fail("unit boundaries of sample " + std::to_string(idx) + " are not the cell");
    }
    return report;
}

ValidationReport check_set_functor(const Polygraph& x, const SetFunctorData& e) {
    ValidationReport report;
    for (const std::string& v : x.generators_of_dim(0))
        if (!e.sets.count(v)) report.violations.push_back({"MissingSet", v, "no fiber"});
    for (const std::string& g : x.generators_of_dim(1)) {
        auto it = e.maps.find(g);
        if (it == e.maps.end()) {
            report.violations.push_back({"MissingMap", g, "no function"});
            continue;
        }
        if (!report.ok()) continue;
        std::string s0 = object_of(x, CellTerm::gen(g), Side::Src);
        std::string t0 = object_of(x, CellTerm::gen(g), Side::Tgt);
        const auto& dom = e.sets.at(t0);
        const auto& cod = e.sets.at(s0);
        for (const std::string& a : dom) {
            auto fa = it->second.find(a);
            if (fa == it->second.end())
                report.violations.push_back({"MapNotTotal", g, "no value at " + a});
            else if (std::find(cod.begin(), cod.end(), fa->second) == cod.end())
                report.violations.push_back({"MapNotIntoFiber", g, fa->second});
        }
    }
    if (!report.ok()) return report;

    auto eval_path = [&](const TermPtr& t, std::string a) {
        Path1 path = normal_form_1(x, t);
        for (const std::string& g : path.arrows) a = e.maps.at(g).at(a);
        return a;
    };
    for (const std::string& name : x.generators_of_dim(2)) {
        const Generator& b = x.generator(name);
        std::string t0 = object_of(x, b.src, Side::Tgt);
        for (const std::string& a : e.sets.at(t0))
            if (eval_path(b.src, a) != eval_path(b.tgt, a))
                report.violations.push_back({"WeakFunctoriality", name, "at element " + a});
    }
    return report;
}

namespace {

std::string fiber_name(const std::string& b, const std::string& a) { return b + "@" + a; }

TermPtr lift_term(const Polygraph& x, const SetFunctorData& e, const TermPtr& t, const std::string& a) {
    switch (t->kind()) {
        case CellTerm::Kind::Gen:
            return CellTerm::gen(fiber_name(t->gen_name(), a));
        case CellTerm::Kind::Id:
            return CellTerm::id(lift_term(x, e, t->inner(), a));
        case CellTerm::Kind::Comp: {
            TermPtr left = lift_term(x, e, t->left(), a);
            std::string a_right = a;
            if (t->level() == 0) {
                Path1 path = normal_form_1(x, boundary(x, t->left(), 1, Side::Tgt));
                for (const std::string& g : path.arrows) a_right = e.maps.at(g).at(a_right);
            }
            return CellTerm::comp_raw(t->level(), left, lift_term(x, e, t->right(), a_right));
        }
    }
    throw InvalidTerm("unreachable");
}

}  // namespace

GrothendieckResult grothendieck(const Polygraph& x, const SetFunctorData& e) {
    ValidationReport ok = check_set_functor(x, e);
    if (!ok.ok()) throw ValidationFailure("set functor: " + ok.to_string());

    GrothendieckResult out;
    out.total = std::make_unique<Polygraph>();
    for (int n = 0; n <= x.max_dim(); ++n)
        for (const std::string& bname : x.generators_of_dim(n)) {
            const Generator& b = x.generator(bname);
            std::string t0 = object_of(x, CellTerm::gen(bname), Side::Tgt);
            for (const std::string& a : e.sets.at(t0)) {
                Generator lifted{fiber_name(bname, a), n, nullptr, nullptr};
                if (n == 1) {
                    std::string a_src = e.maps.at(bname).at(a);
                    lifted.src = lift_term(x, e, b.src, a_src);
                    lifted.tgt = lift_term(x, e, b.tgt, a);
                } else if (n >= 2) {
                    lifted.src = lift_term(x, e, b.src, a);
                    lifted.tgt = lift_term(x, e, b.tgt, a);
                }
                out.total->add_generator(std::move(lifted));
            }
        }

    out.projection.source = out.total.get();
    out.projection.target = &x;
    for (const Generator& g : out.total->all()) {
        std::string base = g.name.substr(0, g.name.find('@'));
        out.projection.images[g.name] = CellTerm::gen(base);
    }
    return out;
}

LocalSystemData free_module_system(const Polygraph& x, const SetFunctorData& e) {
    LocalSystemData m;
    for (const std::string& v : x.generators_of_dim(0))
        m.groups[v] = PresentedGroup::free_group(e.sets.at(v).size());
    for (const std::string& g : x.generators_of_dim(1)) {
        std::string s0 = object_of(x, CellTerm::gen(g), Side::Src);
        std::string t0 = object_of(x, CellTerm::gen(g), Side::Tgt);
        const auto& dom = e.sets.at(t0);
        const auto& cod = e.sets.at(s0);
        IntMatrix a(cod.size(), dom.size());
        for (std::size_t j = 0; j < dom.size(); ++j) {
            const std::string& img = e.maps.at(g).at(dom[j]);
            std::size_t i = std::find(cod.begin(), cod.end(), img) - cod.begin();
            a(i, j) = 1;
        }
        m.arrows[g] = std::move(a);
    }
    return m;
}

CheckReport abelianization_identity_check(const Polygraph& x, const SetFunctorData& e) {
    CheckReport report;
    GrothendieckResult gr = grothendieck(x, e);
    ValidationReport vp = validate_polygraph(*gr.total);
    if (!vp.ok()) {
        report.fail("total polygraph invalid: " + vp.to_string());
        return report;
    }
    ValidationReport vf = validate_functor(gr.projection);
    if (!vf.ok()) report.fail("projection is not a functor: " + vf.to_string());

    LocalSystemData mE = free_module_system(x, e);
    LocalSystemData z_total = constant_system(*gr.total, PresentedGroup::free_group(1));
    ChainComplex total_cx = chain_complex(*gr.total, z_total);
    ChainComplex base_cx = chain_complex(x, mE);

    if (total_cx.top_degree() != base_cx.top_degree()) {
        report.fail("top degrees differ");
        return report;
    }
    // basis bijection (b, a) <-> (b, e_a) as index maps per degree
    for (int n = 0; n <= x.max_dim(); ++n) {
        DegreeLayout tl = degree_layout(*gr.total, z_total, n);
        DegreeLayout bl = degree_layout(x, mE, n);
        if (tl.total != bl.total) {
            report.fail("degree " + std::to_string(n) + ": fiber generator counts disagree");
            return report;
        }
    }
    auto index_map = [&](int n) {
        DegreeLayout tl = degree_layout(*gr.total, z_total, n);
        DegreeLayout bl = degree_layout(x, mE, n);
        std::vector<std::size_t> perm(tl.total);
        for (const std::string& lifted : tl.gens) {
            std::size_t at = lifted.find('@');
            std::string b = lifted.substr(0, at), a = lifted.substr(at + 1);
            std::string t0 = object_of(x, CellTerm::gen(b), Side::Tgt);
            const auto& fiber = e.sets.at(t0);
            std::size_t j = std::find(fiber.begin(), fiber.end(), a) - fiber.begin();
            perm[tl.offset.at(lifted)] = bl.offset.at(b) + j;
        }
        return perm;
    };
    for (int n = 1; n <= x.max_dim(); ++n) {
        std::vector<std::size_t> cur = index_map(n), below = index_map(n - 1);
        const IntMatrix& dt = total_cx.d(std::size_t(n));
        const IntMatrix& db = base_cx.d(std::size_t(n));
        for (std::size_t r = 0; r < dt.rows(); ++r)
            for (std::size_t c = 0; c < dt.cols(); ++c)
                if (dt(r, c) != db(below[r], cur[c])) {
                    report.fail("differential entries differ in degree " + std::to_string(n));
                    return report;
                }
    }
    return report;
}

}  // namespace polyhom
