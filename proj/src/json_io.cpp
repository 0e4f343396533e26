#include "polyhom/json_io.hpp"

#include <fstream>

namespace polyhom {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << canonical_dump(j);
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

Int int_from_json(const json& v) {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_string()) return Int(v.get<std::string>());
    bad("matrix entry must be an integer or a decimal string");
}

IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array()) bad("matrix must be an array of rows");
    if (j.size() != rows) bad("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols) bad("matrix row " + std::to_string(i) + " has wrong length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = int_from_json(row[k]);
    }
    return m;
}

/// Matrix with free shape (both dimensions read off the JSON itself).
IntMatrix matrix_from_json_free(const json& j) {
    if (!j.is_array()) bad("matrix must be an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j[0].size();
    return matrix_from_json(j, rows, cols);
}

int term_dim(const json& j, const std::map<std::string, int>& dims) {
    if (j.contains("gen")) {
        auto it = dims.find(j.at("gen").get<std::string>());
        if (it == dims.end()) bad("term references unknown generator " + j.at("gen").get<std::string>());
        return it->second;
    }
    if (j.contains("id")) return term_dim(j.at("id"), dims) + 1;
    if (j.contains("comp")) {
        const json& c = j.at("comp");
        if (!c.is_array() || c.size() != 3) bad("comp must be [level, left, right]");
        int level = c[0].get<int>();
        return std::max({term_dim(c[1], dims), term_dim(c[2], dims), level + 1});
    }
    bad("term must be one of gen/id/comp");
}

}  // namespace

json term_to_json(const CellTerm& t) {
    switch (t.kind()) {
        case CellTerm::Kind::Gen:
            return json{{"gen", t.gen_name()}};
        case CellTerm::Kind::Id:
            return json{{"id", term_to_json(*t.inner())}};
        case CellTerm::Kind::Comp:
            return json{{"comp", json::array({t.level(), term_to_json(*t.left()), term_to_json(*t.right())})}};
    }
    bad("unreachable term kind");
}

TermPtr term_from_json(const json& j, const std::map<std::string, int>& dims) {
    if (j.contains("gen")) return CellTerm::gen(j.at("gen").get<std::string>());
    if (j.contains("id")) return CellTerm::id(term_from_json(j.at("id"), dims));
    if (j.contains("comp")) {
        const json& c = j.at("comp");
        if (!c.is_array() || c.size() != 3) bad("comp must be [level, left, right]");
        int level = c[0].get<int>();
        TermPtr left = term_from_json(c[1], dims);
        TermPtr right = term_from_json(c[2], dims);
        // pad the lower-dimensional factor so both sides compose
        int dl = term_dim(c[1], dims), dr = term_dim(c[2], dims);
        int n = std::max({dl, dr, level + 1});
        return CellTerm::comp_raw(level, CellTerm::id(left, n - dl), CellTerm::id(right, n - dr));
    }
    bad("term must be one of gen/id/comp");
}

json to_json(const Polygraph& p) {
    json gens = json::array();
    for (const Generator& g : p.all()) {
        json item{{"name", g.name}, {"dim", g.dim}};
        if (g.dim >= 1) {
            item["src"] = term_to_json(*g.src);
            item["tgt"] = term_to_json(*g.tgt);
        }
        gens.push_back(std::move(item));
    }
    return json{{"generators", std::move(gens)}};
}

Polygraph polygraph_from_json(const json& j) {
    if (!j.contains("generators") || !j.at("generators").is_array()) bad("polygraph needs a generators array");
    std::map<std::string, int> dims;
    for (const json& g : j.at("generators")) {
        std::string name = g.at("name").get<std::string>();
        if (dims.count(name)) bad("duplicate generator " + name);
        dims[name] = g.at("dim").get<int>();
    }
    Polygraph p;
    try {
        for (const json& g : j.at("generators")) {
            Generator gen{g.at("name").get<std::string>(), g.at("dim").get<int>(), nullptr, nullptr};
            if (gen.dim >= 1) {
                if (!g.contains("src") || !g.contains("tgt")) bad("generator " + gen.name + " misses boundaries");
                gen.src = term_from_json(g.at("src"), dims);
                gen.tgt = term_from_json(g.at("tgt"), dims);
            }
            p.add_generator(std::move(gen));
        }
    } catch (const json::exception& e) {
        bad(std::string("polygraph: ") + e.what());
    } catch (const ValidationFailure& e) {
        bad(std::string("polygraph: ") + e.what());
    }
    return p;
}

json to_json(const LocalSystemData& m) {
    json groups = json::object();
    for (const auto& [name, g] : m.groups) {
        json item{{"rank", g.generators}};
        if (g.relations.cols() > 0) item["relations"] = matrix_to_json(g.relations);
        groups[name] = std::move(item);
    }
    json arrows = json::object();
    for (const auto& [name, a] : m.arrows) arrows[name] = matrix_to_json(a);
    return json{{"groups", std::move(groups)}, {"arrows", std::move(arrows)}};
}

LocalSystemData system_from_json(const json& j) {
    LocalSystemData m;
    try {
        for (const auto& [name, item] : j.at("groups").items()) {
            std::size_t rank = item.at("rank").get<std::size_t>();
            PresentedGroup g = PresentedGroup::free_group(rank);
            if (item.contains("relations")) {
                const json& rel = item.at("relations");
                std::size_t cols = rank == 0 || rel.empty() ? 0 : rel[0].size();
                g.relations = matrix_from_json(rel, rank, cols);
            }
            m.groups[name] = std::move(g);
        }
        for (const auto& [name, a] : j.at("arrows").items()) m.arrows[name] = matrix_from_json_free(a);
    } catch (const json::exception& e) {
        bad(std::string("local system: ") + e.what());
    }
    return m;
}

json to_json(const SimplicialSetData& x) {
    json simplices = json::array();
    for (const Simplex& s : x.all()) {
        json item{{"name", s.name}, {"dim", s.dim}};
        if (s.dim >= 1) {
            json faces = json::array();
            for (const FaceRef& f : s.faces) {
                if (f.degenerate())
                    faces.push_back(json{{"deg", json::array({f.word, f.base})}});
                else
                    faces.push_back(json{{"nd", f.base}});
            }
            item["faces"] = std::move(faces);
        }
        simplices.push_back(std::move(item));
    }
    return json{{"truncation", x.truncation()}, {"simplices", std::move(simplices)}};
}

SimplicialSetData simplicial_from_json(const json& j) {
    try {
        SimplicialSetData x(j.at("truncation").get<int>());
        for (const json& s : j.at("simplices")) {
            Simplex sim{s.at("name").get<std::string>(), s.at("dim").get<int>(), {}};
            if (sim.dim >= 1) {
                for (const json& f : s.at("faces")) {
                    if (f.contains("nd")) {
                        sim.faces.push_back({{}, f.at("nd").get<std::string>()});
                    } else if (f.contains("deg")) {
                        const json& d = f.at("deg");
                        sim.faces.push_back({d.at(0).get<std::vector<int>>(), d.at(1).get<std::string>()});
                    } else {
                        bad("face must be nd or deg");
                    }
                }
            }
            x.add_simplex(std::move(sim));
        }
        return x;
    } catch (const json::exception& e) {
        bad(std::string("simplicial set: ") + e.what());
    } catch (const ValidationFailure& e) {
        bad(std::string("simplicial set: ") + e.what());
    }
}

json to_json(const FiniteCategoryData& c) {
    json morphisms = json::array();
    for (const auto& m : c.morphisms)
        morphisms.push_back(json{{"name", m.name}, {"src", m.src}, {"tgt", m.tgt}});
    json table = json::array();
    for (const auto& [pair, h] : c.compose) {
        json entry = json::array({pair.first, pair.second});
        entry.push_back(h ? json(*h) : json(nullptr));
        table.push_back(std::move(entry));
    }
    return json{{"objects", c.objects}, {"morphisms", std::move(morphisms)}, {"compose", std::move(table)}};
}

FiniteCategoryData category_from_json(const json& j) {
    FiniteCategoryData c;
    try {
        c.objects = j.at("objects").get<std::vector<std::string>>();
        for (const json& m : j.at("morphisms"))
            c.morphisms.push_back({m.at("name").get<std::string>(), m.at("src").get<std::string>(),
                                   m.at("tgt").get<std::string>()});
        for (const json& e : j.at("compose")) {
            if (!e.is_array() || e.size() != 3) bad("compose entries are [g, f, h-or-null]");
            std::optional<std::string> h;
            if (!e[2].is_null()) h = e[2].get<std::string>();
            c.compose[{e[0].get<std::string>(), e[1].get<std::string>()}] = h;
        }
    } catch (const json::exception& e) {
        bad(std::string("category: ") + e.what());
    }
    return c;
}

json to_json(const ChainComplex& c) {
    json ranks = json::array();
    for (const auto& g : c.groups) {
        json item{{"rank", g.generators}};
        if (g.relations.cols() > 0) item["relations"] = matrix_to_json(g.relations);
        ranks.push_back(std::move(item));
    }
    json diffs = json::array();
    for (std::size_t n = 1; n <= c.top_degree(); ++n) diffs.push_back(matrix_to_json(c.d(n)));
    return json{{"groups", std::move(ranks)}, {"differentials", std::move(diffs)}};
}

ChainComplex complex_from_json(const json& j) {
    ChainComplex c;
    try {
        for (const json& item : j.at("groups")) {
            std::size_t rank = item.at("rank").get<std::size_t>();
            PresentedGroup g = PresentedGroup::free_group(rank);
            if (item.contains("relations")) {
                const json& rel = item.at("relations");
                std::size_t cols = rel.empty() ? 0 : rel[0].size();
                g.relations = matrix_from_json(rel, rank, cols);
            }
            c.groups.push_back(std::move(g));
        }
        c.diffs.push_back(IntMatrix::zero(0, c.groups.empty() ? 0 : c.groups[0].generators));
        const json& diffs = j.at("differentials");
        for (std::size_t n = 1; n < c.groups.size(); ++n) {
            if (diffs.size() < n) bad("missing differential " + std::to_string(n));
            c.diffs.push_back(
                matrix_from_json(diffs[n - 1], c.groups[n - 1].generators, c.groups[n].generators));
        }
    } catch (const json::exception& e) {
        bad(std::string("chain complex: ") + e.what());
    }
    c.validate();
    return c;
}

namespace {

std::map<std::string, TermPtr> images_from_json(const json& j, const Polygraph& target) {
    std::map<std::string, int> dims;
    for (const Generator& g : target.all()) dims[g.name] = g.dim;
    std::map<std::string, TermPtr> out;
    for (const auto& [name, term] : j.items()) out[name] = term_from_json(term, dims);
    return out;
}

json images_to_json(const std::map<std::string, TermPtr>& images) {
    json out = json::object();
    for (const auto& [name, t] : images) out[name] = term_to_json(*t);
    return out;
}

}  // namespace

OplaxFixture oplax_fixture_from_json(const json& j) {
    OplaxFixture f;
    try {
        f.source = std::make_unique<Polygraph>(polygraph_from_json(j.at("source")));
        f.target = std::make_unique<Polygraph>(polygraph_from_json(j.at("target")));
        f.oplax.f0 = OmegaFunctorData{f.source.get(), f.target.get(), images_from_json(j.at("f0"), *f.target)};
        f.oplax.f1 = OmegaFunctorData{f.source.get(), f.target.get(), images_from_json(j.at("f1"), *f.target)};
        f.oplax.alpha = images_from_json(j.at("alpha"), *f.target);
        f.system = system_from_json(j.at("system"));
    } catch (const json::exception& e) {
        bad(std::string("oplax fixture: ") + e.what());
    }
    return f;
}

json to_json(const OplaxFixture& f) {
    return json{{"source", to_json(*f.source)},      {"target", to_json(*f.target)},
                {"f0", images_to_json(f.oplax.f0.images)}, {"f1", images_to_json(f.oplax.f1.images)},
                {"alpha", images_to_json(f.oplax.alpha)},  {"system", to_json(f.system)}};
}

AdjunctionFixture adjunction_fixture_from_json(const json& j) {
    AdjunctionFixture f;
    try {
        f.base = std::make_unique<Polygraph>(polygraph_from_json(j.at("base")));
        f.over = std::make_unique<Polygraph>(polygraph_from_json(j.at("over")));
        f.proj = OmegaFunctorData{f.over.get(), f.base.get(), images_from_json(j.at("proj"), *f.base)};
        f.system = system_from_json(j.at("system"));
        f.complex = complex_from_json(j.at("complex"));
    } catch (const json::exception& e) {
        bad(std::string("adjunction fixture: ") + e.what());
    }
    return f;
}

json to_json(const AdjunctionFixture& f) {
    return json{{"base", to_json(*f.base)},
                {"over", to_json(*f.over)},
                {"proj", images_to_json(f.proj.images)},
                {"system", to_json(f.system)},
                {"complex", to_json(f.complex)}};
}

GrothendieckFixture grothendieck_fixture_from_json(const json& j) {
    GrothendieckFixture f;
    try {
        f.base = std::make_unique<Polygraph>(polygraph_from_json(j.at("base")));
        for (const auto& [name, elems] : j.at("sets").items())
            f.functor.sets[name] = elems.get<std::vector<std::string>>();
        for (const auto& [name, table] : j.at("maps").items())
            for (const auto& [from, to] : table.items()) f.functor.maps[name][from] = to.get<std::string>();
    } catch (const json::exception& e) {
        bad(std::string("grothendieck fixture: ") + e.what());
    }
    return f;
}

json to_json(const Polygraph& base, const SetFunctorData& functor) {
    json sets = json::object(), maps = json::object();
    for (const auto& [name, elems] : functor.sets) sets[name] = elems;
    for (const auto& [name, table] : functor.maps) {
        json t = json::object();
        for (const auto& [from, to] : table) t[from] = to;
        maps[name] = std::move(t);
    }
    return json{{"base", to_json(base)}, {"sets", std::move(sets)}, {"maps", std::move(maps)}};
}

}  // namespace polyhom
