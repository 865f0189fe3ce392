// JSON serialization for every file format the tools read and write. Output
// is canonical: object keys sorted, collections in their canonical orders, so
// identical runs produce byte-identical files.
#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "clonelab/catalog.hpp"
#include "clonelab/characteristic.hpp"
#include "clonelab/conditions.hpp"
#include "clonelab/decomposition.hpp"
#include "clonelab/galois.hpp"
#include "clonelab/verify.hpp"

namespace clonelab::io {

using json = nlohmann::json;  // std::map-backed: keys come out sorted

json to_json(const FiniteFunction& f);
FiniteFunction function_from_json(const json& j);

json to_json(const FunctionSet& set);
FunctionSet function_set_from_json(const json& j);

json generators_to_json(const GeneratorSet& gens);
GeneratorSet generators_from_json(const json& j);

json to_json(const QSet& h);
QSet qset_from_json(const json& j);

json to_json(const SubsetFamily& fam);
SubsetFamily family_from_json(const json& j);

json to_json(const TraceSet& traces);

json to_json(const DeltaReport& report);

json to_json(const BinaryPairRelation& rel);

json to_json(const PostClassId& id);
PostClassId post_class_from_json(const json& j);

json to_json(const PiFamily& fam);

json to_json(const ArityVerdict& verdict);

json to_json(const NTupleRelation& rel);

json to_json(const Characteristic& chi);

json to_json(const VerificationReport& report);

json to_json(const FunctionShape& shape);

void write_json_file(const std::filesystem::path& path, const json& j);
json read_json_file(const std::filesystem::path& path);

}  // namespace clonelab::io
