#include "gapfill/summary.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <utility>

#include "gapfill/error.hpp"

namespace gapfill {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

double to_number(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::malformed_input, "line " + std::to_string(line_no) + ": '" + s + "' is not a number");
  }
}

}  // namespace

std::vector<SummaryRow> summarize(std::istream& csv) {
  std::string line;
  if (!std::getline(csv, line)) throw Error(ErrorKind::malformed_input, "empty results file");
  const auto header = split(line);
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw Error(ErrorKind::malformed_input, "missing column '" + name + "'");
  };
  const std::size_t c_len = column("gap_length_ms");
  const std::size_t c_method = column("method");
  const std::size_t c_snr = column("snr_db");
  const std::size_t c_status = column("status");

  std::map<std::pair<double, std::string>, std::pair<double, std::size_t>> groups;
  std::size_t line_no = 1;
  while (std::getline(csv, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::malformed_input, "line " + std::to_string(line_no) + " has " +
                                                  std::to_string(fields.size()) + " fields, expected " +
                                                  std::to_string(header.size()));
    }
    if (fields[c_status] != "ok" || fields[c_snr].empty()) continue;
    auto& g = groups[{to_number(fields[c_len], line_no), fields[c_method]}];
    g.first += to_number(fields[c_snr], line_no);
    ++g.second;
  }
  std::vector<SummaryRow> out;
  for (const auto& [key, acc] : groups) {
    out.push_back({key.first, key.second, acc.first / static_cast<double>(acc.second), acc.second});
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + csv_path.string());
  return summarize(in);
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "gap_length_ms,method,mean_snr_db,count\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%g", r.gap_length_ms);
    out << buf << ',' << r.method << ',';
    std::snprintf(buf, sizeof buf, "%.4f", r.mean_snr_db);
    out << buf << ',' << r.count << '\n';
  }
}

}  // namespace gapfill
