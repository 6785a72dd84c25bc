#pragma once

#include <string>

#include "magmin/field.hpp"

namespace magmin {

/// Writes a rectangular-mesh OVF 2.0 text segment (valuedim 3, x fastest).
void write_ovf(const std::string& path, const VectorField& v,
               const std::string& title);

/// Reads a file written by write_ovf (or an equivalent single-segment
/// rectangular text OVF). Throws IoError on malformed input.
[[nodiscard]] VectorField read_ovf(const std::string& path);

}  // namespace magmin
