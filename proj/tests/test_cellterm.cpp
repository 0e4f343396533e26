#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyhom/corpus.hpp"
#include "polyhom/orientals.hpp"

using namespace polyhom;
using T = CellTerm;

TEST_CASE("dimension computation") {
    Polygraph o2 = oriental(2);
    CHECK(dim(o2, *T::gen("0")) == 0);
    CHECK(dim(o2, *T::id(T::gen("0"))) == 1);
    CHECK(dim(o2, *T::comp_raw(0, T::gen("12"), T::gen("01"))) == 1);
    CHECK(dim(o2, *T::gen("012")) == 2);
    CHECK_THROWS_AS(dim(o2, *T::gen("nope")), UnknownGenerator);
    CHECK_THROWS_AS(dim(o2, *T::comp_raw(0, T::gen("012"), T::gen("01"))), InvalidTerm);
    CHECK_THROWS_AS(dim(o2, *T::comp_raw(1, T::gen("12"), T::gen("01"))), InvalidTerm);
}

TEST_CASE("boundary computation") {
    Polygraph o2 = oriental(2);
    TermPtr path = T::comp_raw(0, T::gen("12"), T::gen("01"));
    CHECK(object_of(o2, path, Side::Src) == "0");
    CHECK(object_of(o2, path, Side::Tgt) == "2");

    Polygraph o3 = oriental(3);
    // s_1 of the source of the principal 3-cell collapses to the long edge
    TermPtr s2 = o3.generator("0123").src;
    TermPtr s1 = boundary(o3, s2, 1, Side::Src);
    CHECK(normal_form_1(o3, s1).arrows == std::vector<std::string>{"03"});

    Polygraph d1 = disk(1);
    TermPtr unit = T::id(T::gen("zeta"));
    CHECK(*boundary(d1, unit, 1, Side::Tgt) == *T::gen("zeta"));
    CHECK(*boundary(d1, unit, 1, Side::Src) == *T::gen("zeta"));
    CHECK_THROWS_AS(boundary(d1, T::gen("zeta"), 5, Side::Src), LevelOutOfRange);
}

TEST_CASE("normal forms of low cells") {
    Polygraph o2 = oriental(2);
    Path1 p = normal_form_1(o2, T::comp_raw(0, T::gen("12"), T::gen("01")));
    CHECK(p.arrows == std::vector<std::string>{"12", "01"});
    CHECK(p.src_object == "0");
    CHECK(p.tgt_object == "2");

    Path1 unit = normal_form_1(o2, T::id(T::gen("1")));
    CHECK(unit.arrows.empty());
    CHECK(unit.src_object == "1");

    // unit absorption in a composite
    Path1 absorbed = normal_form_1(o2, T::comp_raw(0, T::id(T::gen("1")), T::gen("01")));
    CHECK(absorbed.arrows == std::vector<std::string>{"01"});
}

TEST_CASE("validate_polygraph accepts the corpus") {
    CHECK(validate_polygraph(disk(2)).ok());
    CHECK(validate_polygraph(disk(4)).ok());
    CHECK(validate_polygraph(sphere_boundary(3)).ok());
    CHECK(validate_polygraph(sphere_boundary(4)).ok());
    CHECK(validate_polygraph(bubble()).ok());
    CHECK(validate_polygraph(z2_resolution()).ok());
    for (int n = 0; n <= 3; ++n) CHECK(validate_polygraph(oriental(n)).ok());
}

TEST_CASE("validate_polygraph rejects corrupted boundaries") {
    SUBCASE("endpoint mismatch") {
        Polygraph p;
        p.add_generator({"u", 0, nullptr, nullptr});
        p.add_generator({"v", 0, nullptr, nullptr});
        p.add_generator({"w", 0, nullptr, nullptr});
        p.add_generator({"f", 1, T::gen("u"), T::gen("v")});
        p.add_generator({"g", 1, T::gen("u"), T::gen("w")});
        p.add_generator({"cell", 2, T::gen("f"), T::gen("g")});
        ValidationReport r = validate_polygraph(p);
        CHECK(!r.ok());
        CHECK(r.violations[0].code == "EndpointMismatch");
    }
    SUBCASE("single corrupted face in each corpus fixture") {
        // rebuilding each fixture with one boundary redirected must fail
        auto corrupt = [](const Polygraph& src, const std::string& gen_name) {
            Polygraph out;
            for (const Generator& g : src.all()) {
                Generator copy = g;
                if (g.name == gen_name && g.dim >= 2) copy.src = copy.tgt;  // collapse one boundary
                out.add_generator(std::move(copy));
            }
            return out;
        };
        // disk: make zeta's source equal its target but corrupt a middle cell
        Polygraph d3 = disk(3);
        Polygraph bad = corrupt(d3, "e2s");
        // e2s: src == tgt == e1t breaks nothing globularity-wise but breaks zeta's
        // abelianized globularity: d(zeta) = e2t - e2s, d(e2s) changes
        ValidationReport r = validate_polygraph(bad);
        CHECK(!r.ok());

        Polygraph o3 = oriental(3);
        Polygraph bad2 = corrupt(o3, "0123");
        CHECK(!validate_polygraph(bad2).ok());
    }
    SUBCASE("composability violation inside a term") {
        Polygraph p;
        p.add_generator({"u", 0, nullptr, nullptr});
        p.add_generator({"v", 0, nullptr, nullptr});
        p.add_generator({"f", 1, T::gen("u"), T::gen("v")});
        p.add_generator({"good", 1, T::gen("u"), T::gen("v")});
        p.add_generator({"cell", 2, T::gen("f"), T::comp_raw(0, T::gen("good"), T::gen("good"))});
        ValidationReport r = validate_polygraph(p);
        CHECK(!r.ok());
        bool found = false;
        for (const auto& v : r.violations) found = found || v.code == "NotComposable";
        CHECK(found);
    }
}

TEST_CASE("functor application and validation") {
    Polygraph s2 = sphere_boundary(3);
    Polygraph b = bubble();
    OmegaFunctorData f{&s2, &b, {}};
    f.images["e0s"] = T::gen("pt");
    f.images["e0t"] = T::gen("pt");
    f.images["e1s"] = T::id(T::gen("pt"));
    f.images["e1t"] = T::id(T::gen("pt"));
    f.images["e2s"] = T::gen("x");
    f.images["e2t"] = T::gen("x");
    CHECK(validate_functor(f).ok());
    CHECK(*apply_functor(f, T::gen("e2s")) == *T::gen("x"));
    CHECK(*apply_functor(f, T::id(T::gen("e1s"))) == *T::id(T::id(T::gen("pt"))));

    OmegaFunctorData idf = OmegaFunctorData::identity(s2);
    CHECK(validate_functor(idf).ok());
    TermPtr t = T::comp_raw(1, T::gen("e2s"), T::gen("e2t"));
    CHECK(*apply_functor(idf, t) == *t);

    // breaking one image must be caught
    f.images["e2t"] = T::id(T::gen("e1s"));  // wrong dimension target cell
    CHECK(!validate_functor(f).ok());
}

TEST_CASE("globular identities on random corpus terms") {
    std::mt19937_64 rng(4242);
    std::vector<Polygraph> ps;
    ps.push_back(oriental(3));
    ps.push_back(z2_resolution());
    ps.push_back(disk(4));
    for (const Polygraph& p : ps) {
        // collect boundary terms of generators as a seed population
        std::vector<TermPtr> terms;
        for (const Generator& g : p.all()) {
            terms.push_back(T::gen(g.name));
            if (g.dim >= 1) {
                terms.push_back(g.src);
                terms.push_back(g.tgt);
                terms.push_back(T::id(T::gen(g.name)));
            }
        }
        for (const TermPtr& t : terms) {
            int n = dim(p, *t);
            for (int l = 1; l <= n; ++l)
                for (int k = 0; k < l; ++k)
                    for (Side s1 : {Side::Src, Side::Tgt})
                        for (Side s2 : {Side::Src, Side::Tgt}) {
                            TermPtr a = boundary(p, boundary(p, t, l, s1), k, s2);
                            TermPtr b = boundary(p, t, k, s2);
                            CAPTURE(to_string(*t));
                            CHECK(compare_cells(p, a, b));
                        }
        }
        (void)rng;
    }
}

TEST_CASE("functor commutes with boundary on the corpus") {
    Polygraph s2 = sphere_boundary(3);
    Polygraph b = bubble();
    OmegaFunctorData f{&s2, &b, {}};
    f.images["e0s"] = T::gen("pt");
    f.images["e0t"] = T::gen("pt");
    f.images["e1s"] = T::id(T::gen("pt"));
    f.images["e1t"] = T::id(T::gen("pt"));
    f.images["e2s"] = T::gen("x");
    f.images["e2t"] = T::gen("x");
    for (const Generator& g : s2.all()) {
        TermPtr t = T::gen(g.name);
        for (int k = 0; k <= g.dim; ++k)
            for (Side side : {Side::Src, Side::Tgt}) {
                TermPtr lhs = apply_functor(f, boundary(s2, t, k, side));
                TermPtr rhs = boundary(b, apply_functor(f, t), k, side);
                CHECK(compare_cells(b, lhs, rhs));
            }
    }
}

TEST_CASE("comp pads mixed dimensions") {
    Polygraph o3 = oriental(3);
    TermPtr whisker = comp(o3, 0, T::gen("23"), T::gen("012"));
    CHECK(dim(o3, *whisker) == 2);
    CHECK(whisker->left()->kind() == CellTerm::Kind::Id);
    CHECK(compare_cells(o3, boundary(o3, whisker, 1, Side::Src),
                        comp(o3, 0, T::gen("23"), T::gen("02"))));
}
