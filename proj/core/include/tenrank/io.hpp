#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "tenrank/degeneration.hpp"
#include "tenrank/persistence.hpp"
#include "tenrank/rates.hpp"

namespace tenrank {

using Json = nlohmann::ordered_json;

/// Version of every JSON document this library writes.
inline constexpr int kFormatVersion = 1;

// {"shape":[...],"scalar":"cyc"|"eps","entries":[{"idx":[...],"val":"..."}]}
Json to_json(const CycTensor& t);
Json to_json(const EpsTensor& t);
Json to_json(const AnyTensor& t);
/// Throws ParseError on malformed input (and IndexOutOfShape on bad indices).
AnyTensor tensor_from_json(const Json& j);

// {"shape":[...],"scalar":...,"note":...,"terms":[{"scale":"...","vectors":[[...],...]}]}
Json to_json(const CycDecomposition& d);
Json to_json(const EpsDecomposition& d);
template <class S>
Decomposition<S> decomposition_from_json(const Json& j);

// {"scalar":...,"matrices":[{"rows":r,"cols":c,"entries":[[...],...]}]}
Json to_json(const CycLocalMap& m);
Json to_json(const EpsLocalMap& m);
template <class S>
LocalMap<S> local_map_from_json(const Json& j);

Json to_json(const CycVector& v);
Json to_json(const PersistenceCertificate& c);
PersistenceCertificate persistence_certificate_from_json(const Json& j);
Json to_json(const RankCertificate& c);
Json to_json(const QubitDecision& d);
Json to_json(const ScreenResult& r);
Json to_json(const DegenerationCertificate& c);
Json to_json(const BorderRankCertificate& c);
Json to_json(const RateBound& b);
Json to_json(const RateCertificate& c);
Json to_json(const SchmidtProfile& p);

/// Throws ParseError when the file is missing or not JSON.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace tenrank
