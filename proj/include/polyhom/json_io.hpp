#pragma once

#include <json.hpp>
#include <memory>
#include <string>

#include "polyhom/constructions.hpp"
#include "polyhom/corpus.hpp"
#include "polyhom/simplicial.hpp"

namespace polyhom {

using json = nlohmann::json;

/// Reads a JSON file; throws ParseError on IO or syntax problems.
json load_json_file(const std::string& path);
/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& j);
void save_json_file(const std::string& path, const json& j);

json term_to_json(const CellTerm& t);
TermPtr term_from_json(const json& j, const std::map<std::string, int>& dims);

json to_json(const Polygraph& p);
Polygraph polygraph_from_json(const json& j);

json to_json(const LocalSystemData& m);
LocalSystemData system_from_json(const json& j);

json to_json(const SimplicialSetData& x);
SimplicialSetData simplicial_from_json(const json& j);

json to_json(const FiniteCategoryData& c);
FiniteCategoryData category_from_json(const json& j);

json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const json& j);

struct OplaxFixture {
    std::unique_ptr<Polygraph> source, target;
    OplaxData oplax;
    LocalSystemData system;

    OplaxFixture() = default;
    OplaxFixture(const OplaxFixture&) = delete;
    OplaxFixture(OplaxFixture&&) = default;
};
OplaxFixture oplax_fixture_from_json(const json& j);
json to_json(const OplaxFixture& f);

struct AdjunctionFixture {
    std::unique_ptr<Polygraph> base, over;
    OmegaFunctorData proj;
    LocalSystemData system;
    ChainComplex complex;

    AdjunctionFixture() = default;
    AdjunctionFixture(const AdjunctionFixture&) = delete;
    AdjunctionFixture(AdjunctionFixture&&) = default;
};
AdjunctionFixture adjunction_fixture_from_json(const json& j);
json to_json(const AdjunctionFixture& f);

struct GrothendieckFixture {
    std::unique_ptr<Polygraph> base;
    SetFunctorData functor;

    GrothendieckFixture() = default;
    GrothendieckFixture(const GrothendieckFixture&) = delete;
    GrothendieckFixture(GrothendieckFixture&&) = default;
};
GrothendieckFixture grothendieck_fixture_from_json(const json& j);
json to_json(const Polygraph& base, const SetFunctorData& functor);

}  // namespace polyhom
