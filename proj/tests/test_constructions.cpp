#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "polyhom/constructions.hpp"
#include "polyhom/orientals.hpp"

using namespace polyhom;
using T = CellTerm;

namespace {

/// D_1 with a 1x1 system (arrow lambda) and a small free complex.
struct D1Fixture {
    Polygraph base = disk(1);
    LocalSystemData m;
    ChainComplex n;

    explicit D1Fixture(long long lambda) {
        m.groups["e0s"] = PresentedGroup::free_group(1);
        m.groups["e0t"] = PresentedGroup::free_group(1);
        m.arrows["zeta"] = IntMatrix::from_rows({{lambda}});
        n = ChainComplex::from_free({1, 2, 2},
                                    {IntMatrix::from_rows({{1, -1}}),
                                     IntMatrix::from_rows({{1, 2}, {1, 2}})});
    }
};

}  // namespace

TEST_CASE("G(N) cell operations") {
    D1Fixture fx(3);
    GContext ctx{&fx.base, &fx.m, &fx.n};

    // a 1-cell of G(N) over zeta with handpicked slots
    GCell cell;
    cell.x = T::gen("zeta");
    cell.top = IntMatrix::from_rows({{1}, {0}});
    IntMatrix u00 = IntMatrix::from_rows({{2}});
    // d_1 u_1 = u^1_0 - u^0_0 t_1(x)*: u^1_0 = d_1 u_1 + 3 u^0_0
    IntMatrix u10 = fx.n.d(1) * cell.top + u00 * IntMatrix::from_rows({{3}});
    cell.lower = {{u00, u10}};
    REQUIRE(validate_gcell(ctx, cell).ok());

    SUBCASE("source and target drop the top slot") {
        GCell s = g_source(ctx, cell);
        CHECK(s.dim() == 0);
        CHECK(s.top == u00);
        CHECK(object_of(fx.base, s.x, Side::Src) == "e0s");
        GCell t = g_target(ctx, cell);
        CHECK(t.top == u10);
        CHECK(validate_gcell(ctx, s).ok());
        CHECK(validate_gcell(ctx, t).ok());
    }
    SUBCASE("unit then source gives the cell back") {
        GCell unit = g_unit(ctx, cell);
        CHECK(unit.dim() == 2);
        CHECK(validate_gcell(ctx, unit).ok());
        CHECK(unit.top.is_zero());
        GCell back = g_source(ctx, unit);
        CHECK(compare_cells(fx.base, back.x, cell.x));
        CHECK(back.top == cell.top);
        CHECK(back.lower == cell.lower);
    }
}

TEST_CASE("G(N) composition twists the right factor at level 0") {
    // base: a path of two edges u: a -> b, v: b -> c
    Polygraph path;
    path.add_generator({"a", 0, nullptr, nullptr});
    path.add_generator({"b", 0, nullptr, nullptr});
    path.add_generator({"c", 0, nullptr, nullptr});
    path.add_generator({"u", 1, T::gen("a"), T::gen("b")});
    path.add_generator({"v", 1, T::gen("b"), T::gen("c")});
    LocalSystemData m;
    for (const char* o : {"a", "b", "c"}) m.groups[o] = PresentedGroup::free_group(1);
    m.arrows["u"] = IntMatrix::from_rows({{2}});
    m.arrows["v"] = IntMatrix::from_rows({{5}});
    ChainComplex n = ChainComplex::from_free({1, 1}, {IntMatrix::from_rows({{7}})});
    GContext ctx{&path, &m, &n};

    auto one_cell = [&](const std::string& edge, long long top, long long u00) {
        GCell c;
        c.x = T::gen(edge);
        c.top = IntMatrix::from_rows({{top}});
        IntMatrix u0 = IntMatrix::from_rows({{u00}});
        IntMatrix u1 = n.d(1) * c.top + u0 * m.arrow(edge);
        c.lower = {{u0, u1}};
        return c;
    };
    GCell over_u = one_cell("u", 1, 1);   // u^1_0 = 7 + 2 = 9
    GCell over_v = one_cell("v", 2, 9);   // matches t_0 slot of over_u
    REQUIRE(validate_gcell(ctx, over_u).ok());
    REQUIRE(validate_gcell(ctx, over_v).ok());

    GCell vu = g_comp(ctx, 0, over_v, over_u);
    CHECK(validate_gcell(ctx, vu).ok());
    // v_top + u_top . t_1(v)* = 2 + 1 * 5
    CHECK(vu.top == IntMatrix::from_rows({{7}}));
    CHECK(vu.lower[0].first == over_u.lower[0].first);
    CHECK(vu.lower[0].second == over_v.lower[0].second);

    GCell mismatched = one_cell("v", 2, 8);
    CHECK_THROWS_AS(g_comp(ctx, 0, mismatched, over_u), NotComposable);
}

TEST_CASE("G(N) composition above the level keeps low slots") {
    // ladder: two vertically stacked 2-cells alpha: f => g, beta: g => h
    Polygraph ladder;
    ladder.add_generator({"u", 0, nullptr, nullptr});
    ladder.add_generator({"v", 0, nullptr, nullptr});
    for (const char* e : {"f", "g", "h"}) ladder.add_generator({e, 1, T::gen("u"), T::gen("v")});
    ladder.add_generator({"alpha", 2, T::gen("f"), T::gen("g")});
    ladder.add_generator({"beta", 2, T::gen("g"), T::gen("h")});
    REQUIRE(validate_polygraph(ladder).ok());
    LocalSystemData m = constant_system(ladder, PresentedGroup::free_group(1));
    ChainComplex n = ChainComplex::from_free({1, 2, 2},
                                             {IntMatrix::from_rows({{1, -1}}),
                                              IntMatrix::from_rows({{1, 2}, {1, 2}})});
    GContext ctx{&ladder, &m, &n};

    GCell right;  // over alpha
    right.x = T::gen("alpha");
    right.top = IntMatrix::from_rows({{1}, {1}});
    IntMatrix u01 = IntMatrix::from_rows({{0}, {2}});
    IntMatrix u11 = n.d(2) * right.top + u01;
    IntMatrix u00 = IntMatrix::from_rows({{4}});
    IntMatrix u10 = n.d(1) * u01 + u00;
    right.lower = {{u00, u10}, {u01, u11}};
    REQUIRE(validate_gcell(ctx, right).ok());

    GCell left;  // over beta, glued along slot 1
    left.x = T::gen("beta");
    left.top = IntMatrix::from_rows({{2}, {0}});
    left.lower = right.lower;
    left.lower[1].first = right.lower[1].second;
    left.lower[1].second = n.d(2) * left.top + left.lower[1].first;
    REQUIRE(validate_gcell(ctx, left).ok());

    GCell out = g_comp(ctx, 1, left, right);
    CHECK(validate_gcell(ctx, out).ok());
    CHECK(out.lower[0].first == right.lower[0].first);  // slots <= level fixed
    CHECK(out.lower[0].second == right.lower[0].second);
    CHECK(out.lower[1].first == right.lower[1].first);
    CHECK(out.lower[1].second == left.lower[1].second);
    CHECK(out.top == left.top + right.top);
    CHECK(compare_cells(ladder, out.x, comp(ladder, 1, T::gen("beta"), T::gen("alpha"))));
}

TEST_CASE("unit of the adjunction on the D_1 fixture") {
    D1Fixture fx(3);
    OmegaFunctorData idf = OmegaFunctorData::identity(fx.base);
    EtaContext eta = make_eta_context(idf, fx.m);
    GCell e = unit_eta(eta, T::gen("zeta"));
    GContext ctx{&fx.base, &fx.m, &eta.complex};
    CHECK(validate_gcell(ctx, e).ok());
    // the top slot is the basis inclusion at zeta, endpoint slots are the
    // basis inclusions at the two objects
    CHECK(e.top == IntMatrix::from_rows({{1}}));
    CHECK(e.lower[0].first == IntMatrix::from_rows({{1}, {0}}));
    CHECK(e.lower[0].second == IntMatrix::from_rows({{0}, {1}}));
    // eps(eta(zeta), m) = (zeta, m)
    CHECK(counit_eps(eta.complex, e, {Int(5)}) == IntVec{Int(5)});
    // constant complex: eps is the top slot applied
    GCell scaled = e;
    scaled.top = IntMatrix::from_rows({{4}});
    CHECK(counit_eps(eta.complex, scaled, {Int(2)}) == IntVec{Int(8)});
}

TEST_CASE("triangle identities on the fixture bases") {
    SUBCASE("point base") {
        Polygraph d0 = disk(0);
        LocalSystemData m = constant_system(d0, PresentedGroup::free_group(2));
        ChainComplex n = ChainComplex::from_free({2}, {});
        CheckReport rep = adjunction_triangle_check(OmegaFunctorData::identity(d0), m, n, 11);
        CAPTURE(rep.to_string());
        CHECK(rep.ok);
    }
    SUBCASE("interval with a nontrivial system") {
        D1Fixture fx(2);
        CheckReport rep =
            adjunction_triangle_check(OmegaFunctorData::identity(fx.base), fx.m, fx.n, 12);
        CAPTURE(rep.to_string());
        CHECK(rep.ok);
    }
    SUBCASE("2-disk") {
        Polygraph d2 = disk(2);
        LocalSystemData m = constant_system(d2, PresentedGroup::free_group(1));
        m.arrows["e1s"] = IntMatrix::from_rows({{-1}});
        m.arrows["e1t"] = IntMatrix::from_rows({{-1}});
        ChainComplex n = ChainComplex::from_free({1, 2, 2},
                                                 {IntMatrix::from_rows({{1, -1}}),
                                                  IntMatrix::from_rows({{1, 2}, {1, 2}})});
        CheckReport rep = adjunction_triangle_check(OmegaFunctorData::identity(d2), m, n, 13);
        CAPTURE(rep.to_string());
        CHECK(rep.ok);
    }
    SUBCASE("oriental O_2 with constant Z") {
        Polygraph o2 = oriental(2);
        LocalSystemData m = constant_system(o2, PresentedGroup::free_group(1));
        ChainComplex n = ChainComplex::from_free({2, 2}, {IntMatrix::from_rows({{0, 1}, {0, 0}})});
        CheckReport rep = adjunction_triangle_check(OmegaFunctorData::identity(o2), m, n, 14);
        CAPTURE(rep.to_string());
        CHECK(rep.ok);
    }
    SUBCASE("non-identity projection: interval over the 2-disk source edge") {
        Polygraph d1 = disk(1);
        Polygraph d2 = disk(2);
        OmegaFunctorData p{&d1, &d2, {}};
        p.images["e0s"] = T::gen("e0s");
        p.images["e0t"] = T::gen("e0t");
        p.images["zeta"] = T::gen("e1s");
        REQUIRE(validate_functor(p).ok());
        LocalSystemData m = constant_system(d2, PresentedGroup::free_group(1));
        ChainComplex n = ChainComplex::from_free({1, 1}, {IntMatrix::from_rows({{2}})});
        CheckReport rep = adjunction_triangle_check(p, m, n, 15);
        CAPTURE(rep.to_string());
        CHECK(rep.ok);
    }
}

TEST_CASE("grothendieck construction") {
    SUBCASE("singleton fibers reproduce the base") {
        Polygraph b = bubble();
        SetFunctorData e;
        e.sets["pt"] = {"s"};
        GrothendieckResult gr = grothendieck(b, e);
        CHECK(gr.total->all().size() == b.all().size());
        CHECK(validate_polygraph(*gr.total).ok());
        CHECK(validate_functor(gr.projection).ok());
        CheckReport rep = abelianization_identity_check(b, e);
        CHECK(rep.ok);
    }
    SUBCASE("interval with a fiber map") {
        Polygraph d1 = disk(1);
        SetFunctorData e;
        e.sets["e0s"] = {"ua"};
        e.sets["e0t"] = {"a"};
        e.maps["zeta"] = {{"a", "ua"}};
        GrothendieckResult gr = grothendieck(d1, e);
        const Generator& lifted = gr.total->generator("zeta@a");
        CHECK(object_of(*gr.total, lifted.src, Side::Src) == "e0s@ua");
        CHECK(object_of(*gr.total, lifted.tgt, Side::Src) == "e0t@a");
        CHECK(abelianization_identity_check(d1, e).ok);
    }
    SUBCASE("fiber counts follow the sets") {
        Polygraph o2 = oriental(2);
        SetFunctorData e;
        e.sets["0"] = {"p", "q"};
        e.sets["1"] = {"m"};
        e.sets["2"] = {"z", "w", "y"};
        e.maps["12"] = {{"z", "m"}, {"w", "m"}, {"y", "m"}};
        e.maps["01"] = {{"m", "q"}};
        e.maps["02"] = {{"z", "q"}, {"w", "q"}, {"y", "q"}};
        REQUIRE(check_set_functor(o2, e).ok());
        GrothendieckResult gr = grothendieck(o2, e);
        CHECK(gr.total->generators_of_dim(0).size() == 6);
        CHECK(gr.total->generators_of_dim(1).size() == 2 + 3 + 3);  // fibers at t_0
        CHECK(gr.total->generators_of_dim(2).size() == 3);
        CHECK(abelianization_identity_check(o2, e).ok);
    }
    SUBCASE("weak functoriality violations are caught") {
        Polygraph o2 = oriental(2);
        SetFunctorData e;
        e.sets["0"] = {"p", "q"};
        e.sets["1"] = {"m"};
        e.sets["2"] = {"z"};
        e.maps["12"] = {{"z", "m"}};
        e.maps["01"] = {{"m", "q"}};
        e.maps["02"] = {{"z", "p"}};  // disagrees with the composite
        CHECK(!check_set_functor(o2, e).ok());
        CHECK_THROWS_AS(grothendieck(o2, e), ValidationFailure);
    }
    SUBCASE("random finite set-functors on the fixture bases") {
        std::mt19937_64 rng(505);
        std::uniform_int_distribution<int> size(1, 3);
        for (int trial = 0; trial < 6; ++trial) {
            // D_1: free choice of fiber map
            Polygraph d1 = disk(1);
            SetFunctorData e;
            auto make_fiber = [&](int k) {
                std::vector<std::string> f;
                for (int i = 0; i < k; ++i) f.push_back("x" + std::to_string(i));
                return f;
            };
            e.sets["e0s"] = make_fiber(size(rng));
            e.sets["e0t"] = make_fiber(size(rng));
            std::uniform_int_distribution<std::size_t> tgt(0, e.sets["e0s"].size() - 1);
            for (const std::string& a : e.sets["e0t"])
                e.maps["zeta"][a] = e.sets["e0s"][tgt(rng)];
            CHECK(abelianization_identity_check(d1, e).ok);
        }
    }
}
