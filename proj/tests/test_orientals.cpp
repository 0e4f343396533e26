#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyhom/chaincomplexer.hpp"
#include "polyhom/orientals.hpp"

using namespace polyhom;
using T = CellTerm;

namespace {

std::size_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r = r * std::size_t(n - i) / std::size_t(i + 1);
    return r;
}

/// A weak local system on an oriental with 1x1 groups: v(ij) = u(i) u(j) for
/// random signs u, which satisfies every triangle constraint.
LocalSystemData sign_pattern_system(const Polygraph& p, std::mt19937_64& rng) {
    LocalSystemData m;
    std::map<std::string, Int> u;
    std::uniform_int_distribution<int> flip(0, 1);
    for (const std::string& v : p.generators_of_dim(0)) {
        m.groups[v] = PresentedGroup::free_group(1);
        u[v] = flip(rng) ? 1 : -1;
    }
    for (const std::string& e : p.generators_of_dim(1)) {
        std::string s = object_of(p, T::gen(e), Side::Src);
        std::string t = object_of(p, T::gen(e), Side::Tgt);
        IntMatrix a(1, 1);
        a(0, 0) = u[s] * u[t];
        m.arrows[e] = std::move(a);
    }
    return m;
}

}  // namespace

TEST_CASE("oriental generator counts are binomial") {
    for (int n = 0; n <= 4; ++n) {
        Polygraph p = oriental(n);
        for (int i = 0; i <= n; ++i)
            CHECK(p.generators_of_dim(i).size() == binomial(n + 1, i + 1));
    }
    CHECK_THROWS_AS(oriental(5), DimensionUnsupported);
}

TEST_CASE("boundaries of the principal cells match the displayed data") {
    Polygraph o2 = oriental(2);
    CHECK(*o2.generator("012").src == *T::gen("02"));
    CHECK(*o2.generator("012").tgt == *T::comp_raw(0, T::gen("12"), T::gen("01")));

    Polygraph o3 = oriental(3);
    CHECK(*o3.generator("0123").src ==
          *T::comp_raw(1, T::comp_raw(0, T::id(T::gen("23")), T::gen("012")), T::gen("023")));
    CHECK(*o3.generator("0123").tgt ==
          *T::comp_raw(1, T::comp_raw(0, T::gen("123"), T::id(T::gen("01"))), T::gen("013")));

    CHECK(oriental(0).generators_of_dim(0) == std::vector<std::string>{"0"});
    Polygraph o1 = oriental(1);
    CHECK(*o1.generator("01").src == *T::gen("0"));
    CHECK(*o1.generator("01").tgt == *T::gen("1"));
}

TEST_CASE("shape check per the whisker factorization") {
    for (int n = 1; n <= 4; ++n) {
        ValidationReport r = oriental_boundary_shape_check(n);
        CAPTURE(n);
        CHECK(r.ok());
    }
}

TEST_CASE("faces restrict to lower orientals") {
    Polygraph o3 = oriental(3);
    Polygraph o2 = oriental(2);
    // the generator (013) of O_3 must carry the O_2 boundary relabeled by 0,1,3
    const Generator& g = o3.generator("013");
    CHECK(*g.src == *T::gen("03"));
    CHECK(*g.tgt == *T::comp_raw(0, T::gen("13"), T::gen("01")));
    // and (012) of O_3 agrees verbatim with the principal cell of O_2
    CHECK(*o3.generator("012").src == *o2.generator("012").src);
    CHECK(*o3.generator("012").tgt == *o2.generator("012").tgt);
}

TEST_CASE("abelianized boundary of xi_n: odd faces in, even faces out, face n twisted") {
    std::mt19937_64 rng(99);
    for (int n = 2; n <= 4; ++n) {
        Polygraph p = oriental(n);
        LocalSystemData m = sign_pattern_system(p, rng);
        std::string principal;
        for (int k = 0; k <= n; ++k) principal += char('0' + k);
        const Generator& xi = p.generator(principal);

        IntVec coeff{Int(5)};
        ChainElement src_cls = cls(p, m, xi.src, coeff);
        ChainElement tgt_cls = cls(p, m, xi.tgt, coeff);

        std::string last_edge;
        last_edge += char('0' + n - 1);
        last_edge += char('0' + n);
        Int twist = m.arrow(last_edge)(0, 0);

        auto face_name = [&](int i) {
            std::string s;
            for (int k = 0; k <= n; ++k)
                if (k != i) s += char('0' + k);
            return s;
        };
        for (int i = 0; i <= n; ++i) {
            const ChainElement& side = i % 2 ? src_cls : tgt_cls;
            IntVec expect = i == n ? IntVec{twist * 5} : IntVec{Int(5)};
            REQUIRE(side.terms.count(face_name(i)));
            CHECK(side.terms.at(face_name(i)) == expect);
        }
        CHECK(src_cls.terms.size() == std::size_t(n / 2 + n % 2));
        CHECK(tgt_cls.terms.size() == std::size_t(n / 2 + 1));
    }
}

TEST_CASE("oriental 4 derivation validates against its oracles") {
    Polygraph o4 = oriental4_derive();
    CHECK(validate_polygraph(o4).ok());
    CHECK(o4.all().size() == 31);
    // the polygraphic complex of an oriental is the complex of a point
    LocalSystemData z = constant_system(o4, PresentedGroup::free_group(1));
    auto h = polygraphic_homology(o4, z);
    CHECK(h[0] == FgAbGroup{1, {}});
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i].trivial());
}
