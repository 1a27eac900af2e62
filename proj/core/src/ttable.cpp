#include "bridge/ttable.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "bridge/errors.hpp"

namespace bridge {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::computed:
      return "computed";
    case Provenance::asymptotic:
      return "asymptotic";
    case Provenance::spline:
      return "spline";
  }
  return "computed";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "computed") return Provenance::computed;
  if (s == "asymptotic") return Provenance::asymptotic;
  if (s == "spline") return Provenance::spline;
  throw ParseError("unknown provenance '" + std::string(s) + "'");
}

bool TTable::all_converged() const {
  for (const auto& s : samples) {
    if (!s.converged) return false;
  }
  return true;
}

std::vector<double> TTable::sigmas() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.sigma);
  return out;
}

std::vector<double> TTable::heights() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.T);
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_ttable_csv(std::ostream& os, const TTable& table) {
  os << kTTableHeader << '\n';
  for (const auto& s : table.samples) {
    os << format_double(s.sigma) << ',' << (s.converged ? format_double(s.T) : std::string{}) << ','
       << (s.Tprime ? format_double(*s.Tprime) : std::string{}) << ',' << format_double(s.b_final) << ','
       << (s.n_final > 0 ? std::to_string(s.n_final) : std::string{}) << ',' << format_double(s.newton_residual)
       << ',' << to_string(s.provenance) << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> parse_optional(const std::string& field, std::size_t line_no) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse number '" + field + "'");
  }
  return v;
}

}  // namespace

TTable read_ttable_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty table file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTTableHeader) throw ParseError("unexpected table header '" + line + "'");

  TTable table;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != 7) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                       std::to_string(fields.size()));
    }
    TSample s;
    const auto sigma = parse_optional(fields[0], line_no);
    if (!sigma) throw ParseError("line " + std::to_string(line_no) + ": missing sigma");
    s.sigma = *sigma;
    const auto t = parse_optional(fields[1], line_no);
    s.converged = t.has_value();
    if (t) s.T = *t;
    s.Tprime = parse_optional(fields[2], line_no);
    if (auto b = parse_optional(fields[3], line_no)) s.b_final = *b;
    if (auto n = parse_optional(fields[4], line_no)) s.n_final = static_cast<std::size_t>(*n);
    if (auto r = parse_optional(fields[5], line_no)) s.newton_residual = *r;
    s.provenance = provenance_from_string(fields[6]);
    table.samples.push_back(std::move(s));
  }
  if (!table.samples.empty()) {
    table.grid_meta = {table.samples.front().sigma, table.samples.back().sigma, table.samples.size()};
  }
  return table;
}

}  // namespace bridge
