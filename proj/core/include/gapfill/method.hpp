#pragma once

#include <string>
#include <string_view>

#include "gapfill/sparse_inpaint.hpp"

namespace gapfill {

enum class Algorithm { sparse, janssen };
enum class Variant { plain, gradual, tdc };

std::string_view to_string(OffsetVariant offset) noexcept;
OffsetVariant parse_offset(std::string_view name);
std::string_view to_string(Variant variant) noexcept;
Variant parse_variant(std::string_view name);

// One cell of the method matrix.
struct MethodSpec {
  Algorithm algorithm = Algorithm::sparse;
  SparseMethod sparse;
  OffsetVariant offset = OffsetVariant::none;
  Variant variant = Variant::plain;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

// "<model>-<weights>-<offset>-<variant>", e.g. "ana-energy-half-tdc", or
// "janssen".
std::string descriptor(const MethodSpec& method);
// Inverse of descriptor(); the variant may be omitted (plain). Throws
// invalid_config or unsupported_scheme for unknown parts.
MethodSpec parse_method(std::string_view text);

}  // namespace gapfill
