#include <CLI11.hpp>
#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polyhom/json_io.hpp"
#include "polyhom/orientals.hpp"

using namespace polyhom;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitValidation = 2;
constexpr int kExitParse = 3;

/* ---- SHA-256 (FIPS 180-4), enough to fingerprint input files ---- */
struct Sha256 {
    static constexpr std::array<std::uint32_t, 64> k = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
        0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
        0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
        0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
        0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
        0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
        0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
        0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

    static std::string hex(const std::string& data) {
        std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                          0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
        std::string msg = data;
        std::uint64_t bitlen = std::uint64_t(msg.size()) * 8;
        msg.push_back(char(0x80));
        while (msg.size() % 64 != 56) msg.push_back(char(0));
        for (int i = 7; i >= 0; --i) msg.push_back(char((bitlen >> (8 * i)) & 0xff));
        auto rotr = [](std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); };
        for (std::size_t off = 0; off < msg.size(); off += 64) {
            std::array<std::uint32_t, 64> w{};
            for (int i = 0; i < 16; ++i)
                w[i] = (std::uint32_t(std::uint8_t(msg[off + 4 * i])) << 24) |
                       (std::uint32_t(std::uint8_t(msg[off + 4 * i + 1])) << 16) |
                       (std::uint32_t(std::uint8_t(msg[off + 4 * i + 2])) << 8) |
                       std::uint32_t(std::uint8_t(msg[off + 4 * i + 3]));
            for (int i = 16; i < 64; ++i) {
                std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
                std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
                w[i] = w[i - 16] + s0 + w[i - 7] + s1;
            }
            auto [a, b, c, d, e, f, g, hh] = h;
            for (int i = 0; i < 64; ++i) {
                std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
                std::uint32_t ch = (e & f) ^ (~e & g);
                std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
                std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
                std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
                std::uint32_t t2 = s0 + maj;
                hh = g; g = f; f = e; e = d + t1;
                d = c; c = b; b = a; a = t1 + t2;
            }
            h = {h[0] + a, h[1] + b, h[2] + c, h[3] + d, h[4] + e, h[5] + f, h[6] + g, h[7] + hh};
        }
        std::ostringstream os;
        for (std::uint32_t x : h) {
            for (int i = 7; i >= 0; --i) os << "0123456789abcdef"[(x >> (4 * i)) & 0xf];
        }
        return os.str();
    }
};

std::string file_sha256(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return Sha256::hex(ss.str());
}

json input_entry(const std::string& path) {
    return json{{"path", path}, {"sha256", file_sha256(path)}};
}

json homology_table(const std::vector<FgAbGroup>& h, std::size_t degrees) {
    json out = json::array();
    for (std::size_t n = 0; n < degrees; ++n) {
        FgAbGroup g = n < h.size() ? h[n] : FgAbGroup{};
        json torsion = json::array();
        for (const Int& d : g.torsion) torsion.push_back(d.str());
        out.push_back(json{{"degree", n}, {"group", g.to_string()}, {"rank", g.rank}, {"torsion", torsion}});
    }
    return out;
}

void print_homology_line(const json& table) {
    bool first = true;
    for (const json& row : table) {
        std::cout << (first ? "" : " ") << "H" << row.at("degree").get<std::size_t>() << "="
                  << row.at("group").get<std::string>();
        first = false;
    }
    std::cout << "\n";
}

void emit_report(const std::string& path, const json& report) {
    if (!path.empty()) save_json_file(path, report);
}

int run_homology(const std::string& polygraph_file, const std::string& system_file, int max_degree,
                 const std::string& report_file) {
    auto t0 = std::chrono::steady_clock::now();
    Polygraph p = polygraph_from_json(load_json_file(polygraph_file));
    LocalSystemData m = system_from_json(load_json_file(system_file));

    ValidationReport vp = validate_polygraph(p);
    if (!vp.ok()) {
        std::cerr << "polygraph invalid:\n" << vp.to_string();
        return kExitValidation;
    }
    ValidationReport vm = check_weak_local_system(p, m);
    if (!vm.ok()) {
        std::cerr << "local system invalid:\n" << vm.to_string();
        return kExitValidation;
    }

    auto h = polygraphic_homology(p, m);
    std::size_t degrees = std::max<std::size_t>(h.size(), max_degree >= 0 ? std::size_t(max_degree) + 1 : 0);
    json table = homology_table(h, degrees);
    print_homology_line(table);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    std::cout << "elapsed: " << ms.count() << " ms\n";

    emit_report(report_file, json{{"command", "homology"},
                                  {"inputs", {{"polygraph", input_entry(polygraph_file)},
                                              {"system", input_entry(system_file)}}},
                                  {"results", {{"homology", table}}}});
    return kExitPass;
}

int run_simplicial(const std::string& space_file, const std::string& system_file, int max_degree,
                   const std::string& report_file) {
    auto t0 = std::chrono::steady_clock::now();
    SimplicialSetData x = simplicial_from_json(load_json_file(space_file));
    LocalSystemData m = system_from_json(load_json_file(system_file));

    ValidationReport vx = validate_simplicial(x);
    if (!vx.ok()) {
        std::cerr << "simplicial set invalid:\n" << vx.to_string();
        return kExitValidation;
    }
    ValidationReport vm = check_weak_local_system(x, m);
    if (!vm.ok()) {
        std::cerr << "local system invalid:\n" << vm.to_string();
        return kExitValidation;
    }

    auto h = homology_of_complex(normalized_complex(x, m));
    std::size_t degrees = std::max<std::size_t>(h.size(), max_degree >= 0 ? std::size_t(max_degree) + 1 : 0);
    json table = homology_table(h, degrees);
    print_homology_line(table);
    std::cout << "degree " << x.truncation()
              << " is at the truncation bound (missing higher boundaries make it unreliable)\n";
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    std::cout << "elapsed: " << ms.count() << " ms\n";

    emit_report(report_file,
                json{{"command", "simplicial"},
                     {"inputs", {{"space", input_entry(space_file)}, {"system", input_entry(system_file)}}},
                     {"results", {{"homology", table}, {"unreliable_degree", x.truncation()}}}});
    return kExitPass;
}

int run_check(const std::string& what, const std::vector<std::string>& inputs, bool dim4,
              const std::string& report_file) {
    bool pass = false;
    std::string detail;
    json input_hashes = json::object();
    for (std::size_t i = 0; i < inputs.size(); ++i)
        input_hashes["input" + std::to_string(i)] = input_entry(inputs[i]);

    auto need = [&](std::size_t n) {
        if (inputs.size() != n)
            throw ParseError("check " + what + " expects " + std::to_string(n) + " input file(s)");
    };

    if (what == "prop4_7") {
        need(2);
        SimplicialSetData x = simplicial_from_json(load_json_file(inputs[0]));
        LocalSystemData m = system_from_json(load_json_file(inputs[1]));
        ValidationReport vx = validate_simplicial(x);
        if (!vx.ok()) {
            std::cerr << vx.to_string();
            return kExitValidation;
        }
        ComparisonReport rep = comparison_iso_check(x, m, dim4);
        pass = rep.ok;
        detail = rep.detail;
    } else if (what == "lemma3_12") {
        need(1);
        OplaxFixture f = oplax_fixture_from_json(load_json_file(inputs[0]));
        ValidationReport vo = validate_oplax(f.oplax);
        if (!vo.ok()) {
            std::cerr << vo.to_string();
            return kExitValidation;
        }
        HomotopyResult hr = homotopy_from_oplax(f.oplax, f.system);
        pass = hr.residual_zero;
        detail = pass ? "residual dh + hd - (C(f1) - C(f0,phi)) vanishes" : "nonzero residual";
        if (!pass)
            for (std::size_t n = 0; n < hr.residual.size(); ++n)
                if (!hr.residual[n].is_zero())
                    detail += "; degree " + std::to_string(n) + ": " + hr.residual[n].to_string();
    } else if (what == "adjunction") {
        need(1);
        AdjunctionFixture f = adjunction_fixture_from_json(load_json_file(inputs[0]));
        CheckReport rep = adjunction_triangle_check(f.proj, f.system, f.complex);
        pass = rep.ok;
        detail = rep.to_string();
    } else if (what == "grothendieck") {
        need(1);
        GrothendieckFixture f = grothendieck_fixture_from_json(load_json_file(inputs[0]));
        CheckReport rep = abelianization_identity_check(*f.base, f.functor);
        pass = rep.ok;
        detail = rep.to_string();
    } else if (what == "globularity") {
        need(1);
        Polygraph p = polygraph_from_json(load_json_file(inputs[0]));
        ValidationReport rep = validate_polygraph(p);
        pass = rep.ok;
        detail = rep.to_string();
    } else {
        throw ParseError("unknown check: " + what);
    }

    std::cout << (pass ? "PASS" : "FAIL") << " " << what << ": " << detail << "\n";
    emit_report(report_file, json{{"command", "check"},
                                  {"inputs", input_hashes},
                                  {"results", {{"check", what}, {"pass", pass}, {"detail", detail}}}});
    return pass ? kExitPass : kExitFail;
}

int run_compare(const std::string& left_file, const std::string& right_file, int max_degree,
                const std::string& report_file) {
    json left = load_json_file(left_file);
    json right = load_json_file(right_file);
    json lh, rh;
    try {
        lh = left.at("results").at("homology");
        rh = right.at("results").at("homology");
    } catch (const json::exception& e) {
        throw ParseError(std::string("reports must carry results.homology: ") + e.what());
    }
    std::size_t degrees = std::min(lh.size(), rh.size());
    if (max_degree >= 0) degrees = std::min(degrees, std::size_t(max_degree) + 1);
    bool all_equal = true;
    json verdicts = json::array();
    for (std::size_t n = 0; n < degrees; ++n) {
        std::string a = lh[n].at("group").get<std::string>();
        std::string b = rh[n].at("group").get<std::string>();
        bool eq = a == b;
        all_equal = all_equal && eq;
        std::cout << "degree " << n << ": " << (eq ? "EQUAL (" + a + ")" : "DIFFER (" + a + " vs " + b + ")")
                  << "\n";
        verdicts.push_back(json{{"degree", n}, {"equal", eq}, {"left", a}, {"right", b}});
    }
    emit_report(report_file, json{{"command", "compare"},
                                  {"inputs", {{"left", input_entry(left_file)},
                                              {"right", input_entry(right_file)}}},
                                  {"results", {{"verdicts", verdicts}, {"equal", all_equal}}}});
    return all_equal ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyhom: exact polygraphic and twisted simplicial homology"};
    app.require_subcommand(1);

    std::string polygraph_file, system_file, space_file, report_file;
    std::string left_file, right_file, what;
    std::vector<std::string> inputs;
    int max_degree = -1;
    bool dim4 = false;

    auto* homology = app.add_subcommand("homology", "polygraphic homology of C(X, M)");
    homology->add_option("--polygraph", polygraph_file, "polygraph JSON")->required();
    homology->add_option("--system", system_file, "local system JSON")->required();
    homology->add_option("--max-degree", max_degree, "pad the report up to this degree");
    homology->add_option("--report", report_file, "write a machine-readable report");

    auto* simplicial = app.add_subcommand("simplicial", "twisted normalized homology of a simplicial set");
    simplicial->add_option("--space", space_file, "simplicial set JSON")->required();
    simplicial->add_option("--system", system_file, "local system JSON")->required();
    simplicial->add_option("--max-degree", max_degree, "pad the report up to this degree");
    simplicial->add_option("--report", report_file, "write a machine-readable report");

    auto* check = app.add_subcommand("check", "verify one of the structural identities");
    check->add_option("--what", what, "prop4_7 | lemma3_12 | adjunction | grothendieck | globularity")
        ->required();
    check->add_option("--inputs", inputs, "input files for the chosen check")->required();
    check->add_flag("--dim4", dim4, "allow 4-dimensional simplices in prop4_7");
    check->add_option("--report", report_file, "write a machine-readable report");

    auto* compare = app.add_subcommand("compare", "diff the homology tables of two reports");
    compare->add_option("--left", left_file, "left report JSON")->required();
    compare->add_option("--right", right_file, "right report JSON")->required();
    compare->add_option("--max-degree", max_degree, "compare this many degrees");
    compare->add_option("--report", report_file, "write a machine-readable report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (homology->parsed()) return run_homology(polygraph_file, system_file, max_degree, report_file);
        if (simplicial->parsed()) return run_simplicial(space_file, system_file, max_degree, report_file);
        if (check->parsed()) return run_check(what, inputs, dim4, report_file);
        if (compare->parsed()) return run_compare(left_file, right_file, max_degree, report_file);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationFailure& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }
    return kExitParse;
}
