#include "polyhom/corpus.hpp"

namespace polyhom {

namespace {
using T = CellTerm;

void add_subset_simplices(SimplicialSetData& x, int n, bool include_top) {
    std::vector<std::vector<std::string>> by_size(n + 2);
    for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
        std::string s;
        for (int k = 0; k <= n; ++k)
            if (mask & (1 << k)) s += char('0' + k);
        if (!include_top && int(s.size()) == n + 1) continue;
        by_size[s.size()].push_back(s);
    }
    for (int sz = 1; sz <= n + 1; ++sz) {
        std::sort(by_size[sz].begin(), by_size[sz].end());
        for (const std::string& s : by_size[sz]) {
            Simplex sim{s, sz - 1, {}};
            for (int i = 0; i < sz && sz >= 2; ++i)
                sim.faces.push_back({{}, s.substr(0, i) + s.substr(i + 1)});
            x.add_simplex(std::move(sim));
        }
    }
}

}  // namespace

SimplicialSetData delta_set(int n) {
    if (n < 0 || n > 8) throw DimensionUnsupported("delta_set(" + std::to_string(n) + ")");
    SimplicialSetData x(n);
    add_subset_simplices(x, n, true);
    return x;
}

SimplicialSetData boundary_delta_set(int n) {
    if (n < 1 || n > 8) throw DimensionUnsupported("boundary_delta_set(" + std::to_string(n) + ")");
    SimplicialSetData x(n - 1);
    add_subset_simplices(x, n, false);
    return x;
}

FiniteCategoryData c2_category() {
    FiniteCategoryData c;
    c.objects = {"*"};
    c.morphisms = {{"a", "*", "*"}};
    c.compose[{"a", "a"}] = std::nullopt;  // a . a = identity
    return c;
}

Polygraph disk(int n) {
    if (n < 0) throw DimensionUnsupported("disk of negative dimension");
    Polygraph p;
    for (int k = 0; k < n; ++k) {
        std::string s = "e" + std::to_string(k) + "s";
        std::string t = "e" + std::to_string(k) + "t";
        if (k == 0) {
            p.add_generator({s, 0, nullptr, nullptr});
            p.add_generator({t, 0, nullptr, nullptr});
        } else {
            TermPtr lo_s = T::gen("e" + std::to_string(k - 1) + "s");
            TermPtr lo_t = T::gen("e" + std::to_string(k - 1) + "t");
            p.add_generator({s, k, lo_s, lo_t});
            p.add_generator({t, k, lo_s, lo_t});
        }
    }
    if (n == 0) {
        p.add_generator({"zeta", 0, nullptr, nullptr});
    } else {
        p.add_generator({"zeta", n, T::gen("e" + std::to_string(n - 1) + "s"),
                         T::gen("e" + std::to_string(n - 1) + "t")});
    }
    return p;
}

Polygraph sphere_boundary(int n) {
    if (n < 0) throw DimensionUnsupported("sphere boundary of negative dimension");
    Polygraph p;
    for (int k = 0; k < n; ++k) {
        std::string s = "e" + std::to_string(k) + "s";
        std::string t = "e" + std::to_string(k) + "t";
        if (k == 0) {
            p.add_generator({s, 0, nullptr, nullptr});
            p.add_generator({t, 0, nullptr, nullptr});
        } else {
            TermPtr lo_s = T::gen("e" + std::to_string(k - 1) + "s");
            TermPtr lo_t = T::gen("e" + std::to_string(k - 1) + "t");
            p.add_generator({s, k, lo_s, lo_t});
            p.add_generator({t, k, lo_s, lo_t});
        }
    }
    return p;
}

Polygraph bubble() {
    Polygraph p;
    p.add_generator({"pt", 0, nullptr, nullptr});
    p.add_generator({"x", 2, T::id(T::gen("pt")), T::id(T::gen("pt"))});
    return p;
}

Polygraph z2_resolution() {
    Polygraph p;
    p.add_generator({"p", 0, nullptr, nullptr});
    p.add_generator({"a", 1, T::gen("p"), T::gen("p")});
    // r: a*a => 1_p, the rewriting rule for the relation a^2 = 1
    p.add_generator({"r", 2, T::comp_raw(0, T::gen("a"), T::gen("a")), T::id(T::gen("p"))});
    // c: the two one-step reductions of a^3 agree after one more step
    p.add_generator({"c", 3, T::comp_raw(0, T::gen("r"), T::id(T::gen("a"))),
                     T::comp_raw(0, T::id(T::gen("a")), T::gen("r"))});
    // e: by interchange both boundaries present r *0 r; the target walks the
    // two c-mediated reductions of a^4, the source stays put
    TermPtr rr = T::comp_raw(0, T::gen("r"), T::gen("r"));
    TermPtr u = T::comp_raw(2, T::comp_raw(0, T::id(T::id(T::gen("a"))), T::gen("c")),
                            T::comp_raw(0, T::gen("c"), T::id(T::id(T::gen("a")))));
    p.add_generator({"e", 4, T::id(rr), T::comp_raw(1, T::id(T::gen("r")), u)});
    return p;
}

std::unique_ptr<CylinderFixture> cylinder_over_point() {
    auto fx = std::make_unique<CylinderFixture>();
    fx->source = std::make_unique<Polygraph>(disk(0));
    fx->target = std::make_unique<Polygraph>(disk(1));
    fx->oplax.f0 = OmegaFunctorData{fx->source.get(), fx->target.get(), {{"zeta", T::gen("e0s")}}};
    fx->oplax.f1 = OmegaFunctorData{fx->source.get(), fx->target.get(), {{"zeta", T::gen("e0t")}}};
    fx->oplax.alpha = {{"zeta", T::gen("zeta")}};
    return fx;
}

std::unique_ptr<CylinderFixture> cylinder_over_d1() {
    auto fx = std::make_unique<CylinderFixture>();
    fx->source = std::make_unique<Polygraph>(disk(1));

    auto q = std::make_unique<Polygraph>();
    q->add_generator({"a0", 0, nullptr, nullptr});
    q->add_generator({"a1", 0, nullptr, nullptr});
    q->add_generator({"b0", 0, nullptr, nullptr});
    q->add_generator({"b1", 0, nullptr, nullptr});
    q->add_generator({"ea", 1, T::gen("a0"), T::gen("a1")});
    q->add_generator({"eb", 1, T::gen("b0"), T::gen("b1")});
    q->add_generator({"c0", 1, T::gen("a0"), T::gen("b0")});
    q->add_generator({"c1", 1, T::gen("a1"), T::gen("b1")});
    q->add_generator({"q", 2, T::comp_raw(0, T::gen("c1"), T::gen("ea")),
                      T::comp_raw(0, T::gen("eb"), T::gen("c0"))});
    fx->target = std::move(q);

    fx->oplax.f0 = OmegaFunctorData{
        fx->source.get(), fx->target.get(),
        {{"e0s", T::gen("a0")}, {"e0t", T::gen("a1")}, {"zeta", T::gen("ea")}}};
    fx->oplax.f1 = OmegaFunctorData{
        fx->source.get(), fx->target.get(),
        {{"e0s", T::gen("b0")}, {"e0t", T::gen("b1")}, {"zeta", T::gen("eb")}}};
    fx->oplax.alpha = {{"e0s", T::gen("c0")}, {"e0t", T::gen("c1")}, {"zeta", T::gen("q")}};
    return fx;
}

std::unique_ptr<CylinderFixture> cylinder_over_o2() {
    auto fx = std::make_unique<CylinderFixture>();

    auto o2 = std::make_unique<Polygraph>();
    o2->add_generator({"0", 0, nullptr, nullptr});
    o2->add_generator({"1", 0, nullptr, nullptr});
    o2->add_generator({"2", 0, nullptr, nullptr});
    o2->add_generator({"01", 1, T::gen("0"), T::gen("1")});
    o2->add_generator({"12", 1, T::gen("1"), T::gen("2")});
    o2->add_generator({"02", 1, T::gen("0"), T::gen("2")});
    o2->add_generator({"012", 2, T::gen("02"), T::comp_raw(0, T::gen("12"), T::gen("01"))});
    fx->source = std::move(o2);

    auto q = std::make_unique<Polygraph>();
    for (const char* v : {"a0", "a1", "a2", "b0", "b1", "b2"}) q->add_generator({v, 0, nullptr, nullptr});
    auto edge = [&](const std::string& name, const std::string& s, const std::string& t) {
        q->add_generator({name, 1, T::gen(s), T::gen(t)});
    };
    edge("a01", "a0", "a1");
    edge("a12", "a1", "a2");
    edge("a02", "a0", "a2");
    edge("b01", "b0", "b1");
    edge("b12", "b1", "b2");
    edge("b02", "b0", "b2");
    edge("c0", "a0", "b0");
    edge("c1", "a1", "b1");
    edge("c2", "a2", "b2");
    q->add_generator({"a012", 2, T::gen("a02"), T::comp_raw(0, T::gen("a12"), T::gen("a01"))});
    q->add_generator({"b012", 2, T::gen("b02"), T::comp_raw(0, T::gen("b12"), T::gen("b01"))});
    q->add_generator({"q01", 2, T::comp_raw(0, T::gen("c1"), T::gen("a01")),
                      T::comp_raw(0, T::gen("b01"), T::gen("c0"))});
    q->add_generator({"q12", 2, T::comp_raw(0, T::gen("c2"), T::gen("a12")),
                      T::comp_raw(0, T::gen("b12"), T::gen("c1"))});
    q->add_generator({"q02", 2, T::comp_raw(0, T::gen("c2"), T::gen("a02")),
                      T::comp_raw(0, T::gen("b02"), T::gen("c0"))});
    // alpha of the triangle: the cylinder 3-cell
    // source: alpha_{(12)*(01)} *1 (c2 *0 a012)
    TermPtr alpha_t1 = T::comp_raw(1, T::comp_raw(0, T::id(T::gen("b12")), T::gen("q01")),
                                   T::comp_raw(0, T::gen("q12"), T::id(T::gen("a01"))));
    TermPtr src012 = T::comp_raw(1, alpha_t1, T::comp_raw(0, T::id(T::gen("c2")), T::gen("a012")));
    // target: (b012 *0 c0) *1 q02
    TermPtr tgt012 = T::comp_raw(1, T::comp_raw(0, T::gen("b012"), T::id(T::gen("c0"))), T::gen("q02"));
    q->add_generator({"q012", 3, src012, tgt012});
    fx->target = std::move(q);

    auto copy_images = [&](char prefix) {
        std::map<std::string, TermPtr> images;
        for (const char* v : {"0", "1", "2"}) images[v] = T::gen(std::string(1, prefix) + v);
        for (const char* e : {"01", "12", "02"}) images[e] = T::gen(std::string(1, prefix) + e);
        images["012"] = T::gen(std::string(1, prefix) + "012");
        return images;
    };
    fx->oplax.f0 = OmegaFunctorData{fx->source.get(), fx->target.get(), copy_images('a')};
    fx->oplax.f1 = OmegaFunctorData{fx->source.get(), fx->target.get(), copy_images('b')};
    fx->oplax.alpha = {{"0", T::gen("c0")},   {"1", T::gen("c1")},   {"2", T::gen("c2")},
                       {"01", T::gen("q01")}, {"12", T::gen("q12")}, {"02", T::gen("q02")},
                       {"012", T::gen("q012")}};
    return fx;
}

}  // namespace polyhom
