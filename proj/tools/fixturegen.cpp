// Regenerates the JSON fixtures shipped under fixtures/ from the built-in
// corpus. Also used to keep the canonical serialization in sync.

#include <filesystem>
#include <iostream>

#include "polyhom/json_io.hpp"
#include "polyhom/orientals.hpp"

using namespace polyhom;

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);
    auto put = [&](const std::string& name, const json& j) {
        save_json_file((dir / name).string(), j);
        std::cout << "wrote " << (dir / name).string() << "\n";
    };

    auto z = PresentedGroup::free_group(1);

    Polygraph b = bubble();
    put("bubble.json", to_json(b));
    put("bubble_z.json", to_json(constant_system(b, z)));

    Polygraph s2 = sphere_boundary(3);
    put("sphere2.json", to_json(s2));
    put("sphere2_z.json", to_json(constant_system(s2, z)));

    for (int n = 1; n <= 4; ++n) {
        Polygraph d = disk(n);
        put("disk" + std::to_string(n) + ".json", to_json(d));
        put("disk" + std::to_string(n) + "_z.json", to_json(constant_system(d, z)));
    }

    Polygraph res = z2_resolution();
    put("z2_resolution.json", to_json(res));
    put("z2_resolution_z.json", to_json(constant_system(res, z)));

    for (int n = 2; n <= 3; ++n) put("oriental" + std::to_string(n) + ".json", to_json(oriental(n)));

    FiniteCategoryData c2 = c2_category();
    put("c2_category.json", to_json(c2));
    SimplicialSetData nc2 = nerve(c2, 5);
    put("nerve_c2_trunc5.json", to_json(nc2));
    put("nerve_c2_trunc5_z.json", to_json(constant_system(nc2, z)));
    LocalSystemData sign = constant_system(nc2, z);
    sign.arrows["a"] = IntMatrix::from_rows({{-1}});
    put("nerve_c2_trunc5_sign.json", to_json(sign));

    for (int n = 0; n <= 3; ++n) {
        SimplicialSetData d = delta_set(n);
        put("delta" + std::to_string(n) + ".json", to_json(d));
        put("delta" + std::to_string(n) + "_z.json", to_json(constant_system(d, z)));
    }
    for (int n = 2; n <= 3; ++n) {
        SimplicialSetData bd = boundary_delta_set(n);
        put("boundary_delta" + std::to_string(n) + ".json", to_json(bd));
        put("boundary_delta" + std::to_string(n) + "_z.json", to_json(constant_system(bd, z)));
    }

    {
        auto cyl = cylinder_over_d1();
        OplaxFixture f;
        f.source = std::move(cyl->source);
        f.target = std::move(cyl->target);
        f.oplax = cyl->oplax;
        f.oplax.f0.source = f.source.get();
        f.oplax.f0.target = f.target.get();
        f.oplax.f1.source = f.source.get();
        f.oplax.f1.target = f.target.get();
        f.system = constant_system(*f.target, z);
        put("cylinder_d1_oplax.json", to_json(f));
    }

    {
        AdjunctionFixture f;
        f.base = std::make_unique<Polygraph>(disk(1));
        f.over = std::make_unique<Polygraph>(disk(1));
        f.proj = OmegaFunctorData::identity(*f.over);
        f.proj.source = f.over.get();
        f.proj.target = f.base.get();
        f.system = LocalSystemData{};
        f.system.groups["e0s"] = z;
        f.system.groups["e0t"] = z;
        f.system.arrows["zeta"] = IntMatrix::from_rows({{2}});
        f.complex = ChainComplex::from_free(
            {2, 1}, {IntMatrix::from_rows({{1}, {-1}})});
        put("adjunction_d1.json", to_json(f));
    }

    {
        Polygraph o2 = oriental(2);
        SetFunctorData e;
        e.sets["0"] = {"p", "q"};
        e.sets["1"] = {"m"};
        e.sets["2"] = {"z", "w"};
        e.maps["12"] = {{"z", "m"}, {"w", "m"}};
        e.maps["01"] = {{"m", "p"}};
        e.maps["02"] = {{"z", "p"}, {"w", "p"}};
        put("grothendieck_o2.json", to_json(o2, e));
    }
    return 0;
}
