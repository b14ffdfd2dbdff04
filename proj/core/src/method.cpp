#include "gapfill/method.hpp"

#include <vector>

namespace gapfill {

std::string_view to_string(OffsetVariant offset) noexcept {
  switch (offset) {
    case OffsetVariant::none: return "none";
    case OffsetVariant::half: return "half";
    case OffsetVariant::full: return "full";
  }
  return "none";
}

OffsetVariant parse_offset(std::string_view name) {
  if (name == "none") return OffsetVariant::none;
  if (name == "half") return OffsetVariant::half;
  if (name == "full") return OffsetVariant::full;
  throw Error(ErrorKind::invalid_config, "unknown offset '" + std::string(name) + "' (expected none|half|full)");
}

std::string_view to_string(Variant variant) noexcept {
  switch (variant) {
    case Variant::plain: return "plain";
    case Variant::gradual: return "gradual";
    case Variant::tdc: return "tdc";
  }
  return "plain";
}

Variant parse_variant(std::string_view name) {
  if (name == "plain") return Variant::plain;
  if (name == "gradual") return Variant::gradual;
  if (name == "tdc") return Variant::tdc;
  throw Error(ErrorKind::invalid_config,
              "unknown variant '" + std::string(name) + "' (expected plain|gradual|tdc)");
}

std::string descriptor(const MethodSpec& m) {
  if (m.algorithm == Algorithm::janssen) return "janssen";
  std::string out(to_string(m.sparse.model));
  out += '-';
  out += to_string(m.sparse.weights);
  out += '-';
  out += to_string(m.offset);
  out += '-';
  out += to_string(m.variant);
  return out;
}

MethodSpec parse_method(std::string_view text) {
  MethodSpec m;
  if (text == "janssen") {
    m.algorithm = Algorithm::janssen;
    return m;
  }
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t dash = text.find('-', pos);
    parts.push_back(text.substr(pos, dash == std::string_view::npos ? std::string_view::npos : dash - pos));
    if (dash == std::string_view::npos) break;
    pos = dash + 1;
  }
  if (parts.size() < 3 || parts.size() > 4) {
    throw Error(ErrorKind::invalid_config,
                "method '" + std::string(text) + "' is not of the form model-weights-offset[-variant]");
  }
  m.sparse.model = parse_model(parts[0]);
  m.sparse.weights = parse_weight_scheme(parts[1]);
  m.offset = parse_offset(parts[2]);
  if (parts.size() == 4) m.variant = parse_variant(parts[3]);
  return m;
}

}  // namespace gapfill
