#pragma once

#include <string>

#include <json.hpp>

namespace chsh {

/// Fixed significant-digit decimal form; keeps emitted JSON byte-stable
/// across runs. Reports use 12 digits; data files use 17 so doubles
/// round-trip exactly.
std::string fmt_sig(double v, int sig = 12);
inline std::string fmt_sig12(double v) { return fmt_sig(v, 12); }

/// Serializes with insertion-ordered keys and fmt_sig for floating-point
/// values. `indent` < 0 emits a single line.
std::string dump_canonical(const nlohmann::ordered_json& j, int indent = 2, int sig = 12);

using ojson = nlohmann::ordered_json;

}  // namespace chsh
