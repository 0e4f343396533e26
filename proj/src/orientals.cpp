#include "polyhom/orientals.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "polyhom/zlinalg.hpp"

namespace polyhom {

namespace {

using G = CellTerm;

/* Relabel a term over O_i master coordinates (digits 0..i) by the inclusion
 * digit k -> labels[k]. */
TermPtr relabel(const TermPtr& t, const std::string& labels) {
    switch (t->kind()) {
        case CellTerm::Kind::Gen: {
            std::string out;
            for (char c : t->gen_name()) out += labels[c - '0'];
            return G::gen(out);
        }
        case CellTerm::Kind::Id:
            return G::id(relabel(t->inner(), labels));
        case CellTerm::Kind::Comp:
            return G::comp_raw(t->level(), relabel(t->left(), labels), relabel(t->right(), labels));
    }
    throw InvalidTerm("unreachable");
}

/* Principal-cell boundaries of O_n in master coordinates. */
TermPtr xi_boundary(int n, Side side) {
    switch (n) {
        case 1:
            return G::gen(side == Side::Src ? "0" : "1");
        case 2:
            return side == Side::Src ? G::gen("02") : G::comp_raw(0, G::gen("12"), G::gen("01"));
        case 3:
            if (side == Side::Src)
                // ((23)*0(012))*1(023)
                return G::comp_raw(1, G::comp_raw(0, G::id(G::gen("23")), G::gen("012")), G::gen("023"));
            // ((123)*0(01))*1(013)
            return G::comp_raw(1, G::comp_raw(0, G::gen("123"), G::id(G::gen("01"))), G::gen("013"));
        case 4: {
            if (side == Side::Src) {
                // A_3 *2 A_1 with A_1 = ((34)(23) *0 (012)) *1 (0234),
                //                A_3 = ((234) *0 (12)(01)) *1 (0124)
                TermPtr w_a1 = G::comp_raw(0, G::id(G::comp_raw(0, G::gen("34"), G::gen("23"))), G::gen("012"));
                TermPtr a1 = G::comp_raw(1, G::id(w_a1), G::gen("0234"));
                TermPtr w_a3 = G::comp_raw(0, G::gen("234"), G::id(G::comp_raw(0, G::gen("12"), G::gen("01"))));
                TermPtr a3 = G::comp_raw(1, G::id(w_a3), G::gen("0124"));
                return G::comp_raw(2, a3, a1);
            }
            // A_0 *2 A_2 *2 A_4 with A_4 = ((34) *0 (0123)) *1 (034),
            // A_2 = ((34)(123)(01)) *1 (0134), A_0 = ((1234) *0 (01)) *1 (014)
            TermPtr a4 = G::comp_raw(1, G::comp_raw(0, G::id(G::id(G::gen("34"))), G::gen("0123")),
                                     G::id(G::gen("034")));
            TermPtr w_a2 =
                G::comp_raw(0, G::id(G::gen("34")), G::comp_raw(0, G::gen("123"), G::id(G::gen("01"))));
            TermPtr a2 = G::comp_raw(1, G::id(w_a2), G::gen("0134"));
            TermPtr a0 = G::comp_raw(1, G::comp_raw(0, G::gen("1234"), G::id(G::id(G::gen("01")))),
                                     G::id(G::gen("014")));
            return G::comp_raw(2, a0, G::comp_raw(2, a2, a4));
        }
        default:
            throw DimensionUnsupported("oriental boundary for n = " + std::to_string(n));
    }
}

std::vector<std::string> subsets_of(int n) {
    std::vector<std::string> out;
    for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
        std::string s;
        for (int k = 0; k <= n; ++k)
            if (mask & (1 << k)) s += char('0' + k);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

Polygraph build_oriental(int n) {
    Polygraph p;
    for (const std::string& s : subsets_of(n)) {
        int d = int(s.size()) - 1;
        Generator g{s, d, nullptr, nullptr};
        if (d >= 1) {
            g.src = relabel(xi_boundary(d, Side::Src), s);
            g.tgt = relabel(xi_boundary(d, Side::Tgt), s);
        }
        p.add_generator(std::move(g));
    }
    return p;
}

/* ---- shape check helpers ---- */

void flatten_level(const Polygraph& p, const TermPtr& t, int level, std::vector<TermPtr>& out) {
    if (t->kind() == CellTerm::Kind::Comp && t->level() == level) {
        flatten_level(p, t->left(), level, out);
        flatten_level(p, t->right(), level, out);
        return;
    }
    out.push_back(t);
}

/* Count occurrences of generators of the given dimension, ignoring units. */
int count_dim_gens(const Polygraph& p, const TermPtr& t, int d) {
    switch (t->kind()) {
        case CellTerm::Kind::Gen: return p.generator(t->gen_name()).dim == d ? 1 : 0;
        case CellTerm::Kind::Id: return count_dim_gens(p, t->inner(), d);
        case CellTerm::Kind::Comp:
            return count_dim_gens(p, t->left(), d) + count_dim_gens(p, t->right(), d);
    }
    return 0;
}

struct Whisker {
    std::string face;
    std::vector<std::string> left1, right1;  // innermost 1-cell whiskers
    bool ok = false;
    std::string problem;
};

/* Peel a whisker A_i down to its face generator, collecting the level-0
 * 1-cell factors that sit immediately around the face. */
Whisker peel_whisker(const Polygraph& p, const TermPtr& t, int face_dim) {
    Whisker w;
    TermPtr cur = t;
    for (;;) {
        if (cur->kind() == CellTerm::Kind::Gen) {
            if (p.generator(cur->gen_name()).dim != face_dim) {
                w.problem = "innermost generator has wrong dimension";
                return w;
            }
            w.face = cur->gen_name();
            w.ok = true;
            return w;
        }
        if (cur->kind() == CellTerm::Kind::Id) {
            w.problem = "face generator wrapped in a unit";
            return w;
        }
        int l = count_dim_gens(p, cur->left(), face_dim);
        int r = count_dim_gens(p, cur->right(), face_dim);
        if (l + r != 1) {
            w.problem = "whisker does not contain a unique face";
            return w;
        }
        const TermPtr& core = l == 1 ? cur->left() : cur->right();
        const TermPtr& other = l == 1 ? cur->right() : cur->left();
        if (cur->level() == 0) {
            // record the 1-cell content of the level-0 whisker
            Path1 path = normal_form_1(p, boundary(p, other, 1, Side::Src));
            auto& slot = l == 1 ? w.right1 : w.left1;
            slot.insert(slot.end(), path.arrows.begin(), path.arrows.end());
        }
        cur = core;
    }
}

}  // namespace

Polygraph oriental(int n) {
    if (n < 0) throw DimensionUnsupported("negative oriental index");
    if (n <= 3) return build_oriental(n);
    if (n == 4) return oriental4_derive();
    throw DimensionUnsupported("oriental(" + std::to_string(n) + ") not available");
}

TermPtr oriental_principal_boundary(int n, Side side) { return xi_boundary(n, side); }

ValidationReport oriental_boundary_shape_check(int n) {
    ValidationReport report;
    if (n < 1 || n > 4) {
        report.violations.push_back({"DimensionUnsupported", "oriental", std::to_string(n)});
        return report;
    }
    Polygraph p = build_oriental(n);
    std::string principal;
    for (int k = 0; k <= n; ++k) principal += char('0' + k);
    const Generator& xi = p.generator(principal);

    auto face_name = [&](int i) {
        std::string s;
        for (int k = 0; k <= n; ++k)
            if (k != i) s += char('0' + k);
        return s;
    };

    for (Side side : {Side::Src, Side::Tgt}) {
        const TermPtr& b = side == Side::Src ? xi.src : xi.tgt;
        std::vector<int> expected;  // face indices in composition-chain order
        if (side == Side::Src) {
            for (int i = n % 2 == 0 ? n - 1 : n; i >= 1; i -= 2) expected.push_back(i);
        } else {
            for (int i = 0; i <= n; i += 2) expected.push_back(i);
        }
        std::vector<TermPtr> factors;
        if (n == 1) {
            factors = {b};
        } else {
            flatten_level(p, b, n - 2, factors);
        }
        if (factors.size() != expected.size()) {
            report.violations.push_back({"ShapeMismatch", principal,
                                         std::string(side == Side::Src ? "source" : "target") + " has " +
                                             std::to_string(factors.size()) + " factors"});
            continue;
        }
        for (std::size_t k = 0; k < factors.size(); ++k) {
            int i = expected[k];
            if (n == 1) {
                if (factors[k]->gen_name() != face_name(i))
                    report.violations.push_back({"ShapeMismatch", principal, "endpoint is not face " + std::to_string(i)});
                continue;
            }
            Whisker w = peel_whisker(p, factors[k], n - 1);
            if (!w.ok) {
                report.violations.push_back({"ShapeMismatch", principal + " face slot " + std::to_string(i), w.problem});
                continue;
            }
            if (w.face != face_name(i)) {
                report.violations.push_back({"ShapeMismatch", principal,
                                             "slot " + std::to_string(i) + " holds face " + w.face});
                continue;
            }
            if (n == 2) continue;  // no whisker slots when 1 <= k <= n-2 is empty
            std::vector<std::string> expect_left, expect_right;
            if (i == 0) expect_right = {std::string() + char('0') + char('1')};
            if (i == n) expect_left = {std::string() + char('0' + n - 1) + char('0' + n)};
            if (w.left1 != expect_left)
                report.violations.push_back({"WhiskerClause", w.face, "L_1 is not " +
                                                 (expect_left.empty() ? std::string("a unit") : expect_left[0])});
            if (w.right1 != expect_right)
                report.violations.push_back({"WhiskerClause", w.face, "R_1 is not " +
                                                 (expect_right.empty() ? std::string("a unit") : expect_right[0])});
        }
        // abelianized content: odd faces in the source, even faces in the target
        if (n >= 2) {
            std::set<std::string> expect_cls, got;
            for (int i = side == Side::Src ? 1 : 0; i <= n; i += 2) expect_cls.insert(face_name(i));
            for (const TermPtr& f : factors) {
                Whisker w = peel_whisker(p, f, n - 1);
                if (w.ok) got.insert(w.face);
            }
            if (got != expect_cls)
                report.violations.push_back({"FaceParity", principal,
                                             side == Side::Src ? "source faces are not the odd ones"
                                                               : "target faces are not the even ones"});
        }
    }
    return report;
}

Polygraph oriental4_derive() {
    Polygraph p = build_oriental(4);

    ValidationReport vp = validate_polygraph(p);
    if (!vp.ok()) throw OracleFailure("oriental4: polygraph validation: " + vp.to_string());
    ValidationReport shape = oriental_boundary_shape_check(4);
    if (!shape.ok()) throw OracleFailure("oriental4: shape check: " + shape.to_string());

    /* Independent oracle: the boundary in the chain complex of the 4-simplex
     * splits into odd (source) and even (target) faces. Check every generator
     * of every dimension against its stored boundary classes. */
    auto faces_of = [](const std::string& s) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.substr(0, i) + s.substr(i + 1));
        return out;
    };
    for (const Generator& g : p.all()) {
        if (g.dim < 1) continue;
        std::vector<std::string> fs = faces_of(g.name);
        std::set<std::string> odd, even;
        for (std::size_t i = 0; i < fs.size(); ++i) (i % 2 ? odd : even).insert(fs[i]);
        for (Side side : {Side::Src, Side::Tgt}) {
            const std::set<std::string>& expect = side == Side::Src ? odd : even;
            const TermPtr& b = side == Side::Src ? g.src : g.tgt;
            std::set<std::string> got;
            std::vector<TermPtr> stack{b};
            while (!stack.empty()) {
                TermPtr t = stack.back();
                stack.pop_back();
                switch (t->kind()) {
                    case CellTerm::Kind::Gen:
                        if (p.generator(t->gen_name()).dim == g.dim - 1) got.insert(t->gen_name());
                        break;
                    case CellTerm::Kind::Id: break;  // units vanish in the abelianization
                    case CellTerm::Kind::Comp:
                        stack.push_back(t->left());
                        stack.push_back(t->right());
                        break;
                }
            }
            if (got != expect)
                throw OracleFailure("oriental4: face partition of " + g.name +
                                    (side == Side::Src ? " source" : " target"));
        }
    }
    return p;
}

}  // namespace polyhom
