#include "terrasim/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "terrasim/error.hpp"

namespace terrasim {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string write_field_csv(const Grid& grid, const Field& field) {
  require_on(grid, field);
  std::string out;
  out.reserve(static_cast<std::size_t>(grid.size()) * 80);
  out += kFieldCsvHeader;
  out += '\n';
  for (Index k = 0; k < grid.size(); ++k) {
    const auto& c = grid.cell(k);
    out += std::to_string(c.i);
    out += ',';
    out += std::to_string(c.j);
    out += ',';
    out += format_real(c.center.x());
    out += ',';
    out += format_real(c.center.y());
    out += ',';
    out += format_real(field[k]);
    out += '\n';
  }
  return out;
}

std::vector<FieldCsvRow> parse_field_csv(std::string_view text) {
  std::vector<FieldCsvRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kFieldCsvHeader) {
    throw ValidationError("field csv: missing header \"i,j,x,y,value\"");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    FieldCsvRow r{};
    const char* p = line.c_str();
    char* end = nullptr;
    auto next_sep = [&](bool last) {
      if (end == p || (last ? *end != '\0' : *end != ',')) {
        throw ValidationError("field csv: malformed row at line " + std::to_string(lineno));
      }
      p = end + (last ? 0 : 1);
    };
    r.i = static_cast<int>(std::strtol(p, &end, 10));
    next_sep(false);
    r.j = static_cast<int>(std::strtol(p, &end, 10));
    next_sep(false);
    r.x = std::strtod(p, &end);
    next_sep(false);
    r.y = std::strtod(p, &end);
    next_sep(false);
    r.value = std::strtod(p, &end);
    next_sep(true);
    rows.push_back(r);
  }
  return rows;
}

std::vector<std::uint8_t> write_heatmap_pgm(const Grid& grid, const Field& field) {
  require_on(grid, field);
  const int n = grid.nx();
  const std::string header = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.resize(header.size() + static_cast<std::size_t>(n) * n, 0);

  const double lo = grid.size() > 0 ? field.min() : 0.0;
  const double hi = grid.size() > 0 ? field.max() : 0.0;
  const double range = hi - lo;
  for (Index k = 0; k < grid.size(); ++k) {
    const auto& c = grid.cell(k);
    std::uint8_t px = 255;
    if (range > 0) {
      const double t = (field[k] - lo) / range;
      px = static_cast<std::uint8_t>(1 + std::lround(std::clamp(t, 0.0, 1.0) * 254.0));
    }
    const std::size_t row = static_cast<std::size_t>(n - 1 - c.j);
    out[header.size() + row * n + static_cast<std::size_t>(c.i)] = px;
  }
  return out;
}

std::string write_series_csv(const std::vector<SeriesRow>& rows) {
  std::string out(kSeriesCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.day);
    for (double v : {r.phi, r.mass_p_mid, r.mass_e, r.mass_w, r.mean_i, r.mass_omega}) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                    ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace terrasim
