#include "polyhom/localsystem.hpp"

namespace polyhom {

const PresentedGroup& LocalSystemData::group_at(const std::string& name) const {
    auto it = groups.find(name);
    if (it == groups.end()) throw UnknownGenerator("no coefficient group at " + name);
    return it->second;
}

const IntMatrix& LocalSystemData::arrow(const std::string& name) const {
    auto it = arrows.find(name);
    if (it == arrows.end()) throw UnknownGenerator("no arrow matrix at " + name);
    return it->second;
}

LocalSystemData constant_system(const Polygraph& p, const PresentedGroup& g) {
    LocalSystemData m;
    for (const std::string& name : p.generators_of_dim(0)) m.groups[name] = g;
    for (const std::string& name : p.generators_of_dim(1))
        m.arrows[name] = IntMatrix::identity(g.generators);
    return m;
}

IntMatrix evaluate_on_1cell(const Polygraph& p, const LocalSystemData& m, const TermPtr& t) {
    Path1 path = normal_form_1(p, t);
    IntMatrix acc = IntMatrix::identity(m.group_at(path.tgt_object).generators);
    // (x1 *0 x0)* = x0* x1*: walk the word from the later arrows to the earlier
    for (const std::string& g : path.arrows) {
        const IntMatrix& a = m.arrow(g);
        if (a.cols() != acc.rows())
            throw ShapeMismatch("arrow " + g + " expects " + std::to_string(a.cols()) + " columns");
        acc = a * acc;
    }
    if (acc.rows() != m.group_at(path.src_object).generators)
        throw ShapeMismatch("path evaluation does not land in the source object group");
    return acc;
}

ValidationReport check_weak_local_system(const Polygraph& p, const LocalSystemData& m) {
    ValidationReport report;
    for (const std::string& name : p.generators_of_dim(0))
        if (!m.groups.count(name)) report.violations.push_back({"MissingGroup", name, "no coefficient group"});
    for (const std::string& name : p.generators_of_dim(1)) {
        auto it = m.arrows.find(name);
        if (it == m.arrows.end()) {
            report.violations.push_back({"MissingArrow", name, "no matrix"});
            continue;
        }
        std::string s0 = object_of(p, CellTerm::gen(name), Side::Src);
        std::string t0 = object_of(p, CellTerm::gen(name), Side::Tgt);
        if (!m.groups.count(s0) || !m.groups.count(t0)) continue;
        const PresentedGroup& src_g = m.group_at(s0);
        const PresentedGroup& tgt_g = m.group_at(t0);
        if (it->second.rows() != src_g.generators || it->second.cols() != tgt_g.generators) {
            report.violations.push_back({"ShapeMismatch", name,
                                         "matrix is " + std::to_string(it->second.rows()) + "x" +
                                             std::to_string(it->second.cols())});
            continue;
        }
        if (tgt_g.relations.cols() > 0) {
            IntMatrix img = it->second * tgt_g.relations;
            if (!img.is_zero() && !in_image(src_g.relations, img))
                report.violations.push_back({"RelationsNotPreserved", name, "arrow does not respect relations"});
        }
    }
    if (!report.ok()) return report;

    // weak functoriality: both 1-boundaries of a 2-generator evaluate equally
    for (const std::string& name : p.generators_of_dim(2)) {
        const Generator& b = p.generator(name);
        IntMatrix lhs = evaluate_on_1cell(p, m, b.src);
        IntMatrix rhs = evaluate_on_1cell(p, m, b.tgt);
        IntMatrix diff = lhs - rhs;
        if (diff.is_zero()) continue;
        std::string s0 = object_of(p, b.src, Side::Src);
        if (!in_image(m.group_at(s0).relations, diff))
            report.violations.push_back({"WeakFunctoriality", name, "s_1* != t_1* as maps"});
    }
    return report;
}

bool is_local_system(const Polygraph& p, const LocalSystemData& m) {
    for (const std::string& name : p.generators_of_dim(1)) {
        std::string s0 = object_of(p, CellTerm::gen(name), Side::Src);
        std::string t0 = object_of(p, CellTerm::gen(name), Side::Tgt);
        if (!is_isomorphism(m.arrow(name), m.group_at(t0), m.group_at(s0))) return false;
    }
    return true;
}

LocalSystemData pullback(const LocalSystemData& m, const OmegaFunctorData& f) {
    LocalSystemData out;
    for (const std::string& name : f.source->generators_of_dim(0)) {
        TermPtr img = apply_functor(f, CellTerm::gen(name));
        out.groups[name] = m.group_at(object_of(*f.target, img, Side::Src));
    }
    for (const std::string& name : f.source->generators_of_dim(1)) {
        TermPtr img = apply_functor(f, CellTerm::gen(name));
        out.arrows[name] = evaluate_on_1cell(*f.target, m, img);
    }
    return out;
}

}  // namespace polyhom
