#pragma once
// JSON documents for instances and reports. Scalars are always strings.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gmalie/properness.hpp"

namespace gmalie {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

Json to_json(Field f);
Field field_from_json(const Json& j);

Json to_json(const Vec& v);
Vec vec_from_json(Field f, const Json& j, std::size_t expected, const std::string& where);
Json to_json(const Matrix& m);
Matrix matrix_from_json(Field f, const Json& j, std::size_t rows, std::size_t cols, const std::string& where);

Json to_json(const FinDimAlgebra& a);
FinDimAlgebra algebra_from_json(Field f, const Json& j, const std::string& where);
Json to_json(const Bimodule& m);
Bimodule bimodule_from_json(Field f, const Json& j, std::size_t left_dim, std::size_t right_dim,
                            const std::string& where);

Json to_json(const MoritaContext& ctx);
MoritaContext context_from_json(const Json& doc);

/// A sequence L_1..L_K in the block basis; "kind" is informational ("lhd", "hd", "tau").
Json to_json(const MapSequence& s, const std::string& kind);
MapSequence sequence_from_json(Field f, std::size_t dim, const Json& j);

struct Instance {
  MoritaContext context;
  std::optional<MapSequence> sequence;
  std::string sequence_kind;
  Json fixture;     // {"name": ..., "params": {...}} or null
  Json generator;   // how the embedded sequence was produced, or null
};

/// Parses without building the GMA, so that invalid contexts can still be reported.
Instance instance_from_json(const Json& doc);
Json to_json(const Instance& inst);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

Json to_json(const Witness& w);
Json to_json(const ConditionReport& r);
Json to_json(const PrimeWitness& w);
Json to_json(const Certificate& c);
Json to_json(const Verdict& v);
Json to_json(const SufficiencyReport& r);
Json to_json(const PairingReport& r);

}  // namespace gmalie
