#pragma once

// Shared helpers for the test binaries: CLI invocation, random weak local
// systems, and random composite cell terms over a polygraph.

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "polyhom/corpus.hpp"
#include "polyhom/simplicial.hpp"

namespace testutil {

using namespace polyhom;

struct CliResult {
    int exit_code = -1;
    std::string out, err;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline CliResult run_cli(const std::string& args) {
    const char* cli = std::getenv("POLYHOM_CLI");
    if (!cli) throw std::runtime_error("POLYHOM_CLI not set");
    static int counter = 0;
    std::string out_file = "/tmp/polyhom_out_" + std::to_string(getpid()) + "_" + std::to_string(counter);
    std::string err_file = out_file + ".err";
    ++counter;
    std::string cmd = std::string(cli) + " " + args + " >" + out_file + " 2>" + err_file;
    int rc = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    std::remove(out_file.c_str());
    std::remove(err_file.c_str());
    return r;
}

inline std::string fixture(const std::string& name) {
    const char* dir = std::getenv("POLYHOM_FIXTURES");
    if (!dir) throw std::runtime_error("POLYHOM_FIXTURES not set");
    return std::string(dir) + "/" + name;
}

inline std::string first_line(const std::string& s) {
    auto pos = s.find('\n');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

/// Weak local system with 1x1 groups and arrow values u(src)*u(tgt) for
/// random signs u per object; every composite constraint holds automatically.
inline LocalSystemData random_sign_system(const Polygraph& p, std::mt19937_64& rng) {
    LocalSystemData m;
    std::map<std::string, Int> u;
    std::uniform_int_distribution<int> flip(0, 1);
    for (const std::string& v : p.generators_of_dim(0)) {
        m.groups[v] = PresentedGroup::free_group(1);
        u[v] = flip(rng) ? 1 : -1;
    }
    for (const std::string& e : p.generators_of_dim(1)) {
        IntMatrix a(1, 1);
        a(0, 0) = u[object_of(p, CellTerm::gen(e), Side::Src)] * u[object_of(p, CellTerm::gen(e), Side::Tgt)];
        m.arrows[e] = std::move(a);
    }
    return m;
}

inline LocalSystemData random_sign_system(const SimplicialSetData& x, std::mt19937_64& rng) {
    LocalSystemData m;
    std::map<std::string, Int> u;
    std::uniform_int_distribution<int> flip(0, 1);
    for (const std::string& v : x.simplices_of_dim(0)) {
        m.groups[v] = PresentedGroup::free_group(1);
        u[v] = flip(rng) ? 1 : -1;
    }
    for (const std::string& e : x.simplices_of_dim(1)) {
        FaceRef self{{}, e};
        std::string s = face(x, self, 1).base;
        std::string t = face(x, self, 0).base;
        IntMatrix a(1, 1);
        a(0, 0) = u[s] * u[t];
        m.arrows[e] = std::move(a);
    }
    return m;
}

/// Random well-formed composites over a polygraph, grown from the generators
/// and their boundaries.
inline std::vector<TermPtr> random_composites(const Polygraph& p, std::mt19937_64& rng, int want) {
    std::vector<TermPtr> pool;
    for (const Generator& g : p.all()) {
        pool.push_back(CellTerm::gen(g.name));
        if (g.dim >= 1) {
            pool.push_back(g.src);
            pool.push_back(g.tgt);
        }
    }
    std::vector<TermPtr> made;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int attempts = 0;
    while (int(made.size()) < want && attempts < want * 200) {
        ++attempts;
        TermPtr a = pool[pick(rng)];
        TermPtr b = pool[pick(rng)];
        int da = dim(p, *a), db = dim(p, *b);
        int n = std::max(da, db);
        if (n == 0) continue;
        std::uniform_int_distribution<int> lvl(0, n - 1);
        int i = lvl(rng);
        TermPtr aa = CellTerm::id(a, n - da), bb = CellTerm::id(b, n - db);
        if (!compare_cells(p, boundary(p, bb, i, Side::Tgt), boundary(p, aa, i, Side::Src))) continue;
        TermPtr c = CellTerm::comp_raw(i, aa, bb);
        made.push_back(c);
        if (pool.size() < 120) pool.push_back(c);
    }
    return made;
}

}  // namespace testutil
