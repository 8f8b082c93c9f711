#pragma once

// JSON serialization for the lab's file formats. Floats are emitted as
// 17-significant-digit decimals so round-trips are bit-exact and reports
// diff cleanly; key order is insertion order throughout.

#include <string>

#include "json.hpp"
#include "osserman/clifford.hpp"
#include "osserman/curvature.hpp"
#include "osserman/numkit.hpp"

namespace oslab::io {

using json = nlohmann::ordered_json;

// Serializer with %.17g doubles (nlohmann's writer is shortest-round-trip,
// which is bit-exact too but not the fixed-width decimal the reports pin).
std::string dump(const json& j, int indent = 2);

json system_to_json(const cliff::CliffordSystem& sys);
cliff::CliffordSystem system_from_json(const json& j);

json tensor_to_json(const curv::CurvTensor& r, const cliff::CliffordSystem* sys = nullptr);
struct TensorFile {
  curv::CurvTensor r;
  std::optional<cliff::CliffordSystem> sys;
};
TensorFile tensor_from_json(const json& j);

json spectrum_to_json(const Spectrum& s);
json osserman_to_json(const curv::OssermanReport& rep);

json parse(const std::string& text);      // throws std::runtime_error with a schema message
std::string read_input(const std::string& path);   // "-" = stdin
void write_output(const std::string& path, const std::string& text);  // "-" = stdout

}  // namespace oslab::io
