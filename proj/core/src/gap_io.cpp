#include "gapfill/gap_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace gapfill {

GapSidecar parse_gap_sidecar(std::string_view json_text) {
  GapSidecar out;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& g : doc.at("gaps")) {
      const auto start = g.at("start").get<std::int64_t>();
      const auto length = g.at("length").get<std::int64_t>();
      if (start < 1 || length < 1) throw Error(ErrorKind::malformed_input, "gap start and length must be positive");
      out.gaps.push_back(GapSpec::from_length(start, length));
    }
    if (doc.contains("sample_rate")) out.sample_rate = doc.at("sample_rate").get<std::uint32_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::malformed_input, std::string("gap sidecar: ") + e.what());
  }
  return out;
}

GapSidecar read_gap_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_gap_sidecar(ss.str());
}

void write_gap_sidecar(const std::filesystem::path& path, const GapSidecar& sidecar) {
  nlohmann::json doc;
  doc["gaps"] = nlohmann::json::array();
  for (const auto& g : sidecar.gaps) doc["gaps"].push_back({{"start", g.start}, {"length", g.length()}});
  if (sidecar.sample_rate) doc["sample_rate"] = *sidecar.sample_rate;
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

GapSpec parse_gap_argument(std::string_view text) {
  const auto colon = text.find(':');
  auto number = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v < 1) {
      throw Error(ErrorKind::invalid_params, "expected start:length with positive integers, got '" +
                                                 std::string(text) + "'");
    }
    return v;
  };
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::invalid_params, "expected start:length, got '" + std::string(text) + "'");
  }
  return GapSpec::from_length(number(text.substr(0, colon)), number(text.substr(colon + 1)));
}

Signal punch_gaps(std::span<const double> signal, std::span<const GapSpec> gaps) {
  Signal out(signal.begin(), signal.end());
  for (const auto& g : gaps) {
    if (g.start < 1 || g.end > static_cast<std::int64_t>(out.size()) || g.start > g.end) {
      throw Error(ErrorKind::invalid_range, "gap outside the signal");
    }
    for (std::int64_t i = g.start; i <= g.end; ++i) out[static_cast<std::size_t>(i - 1)] = 0.0;
  }
  return out;
}

}  // namespace gapfill
