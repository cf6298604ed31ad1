#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "terrasim/field.hpp"
#include "terrasim/grid.hpp"

namespace terrasim {

struct SeriesRow {
  int day{0};
  double phi{0};
  double mass_p_mid{0};
  double mass_e{0};
  double mass_w{0};
  double mean_i{0};
  double mass_omega{0};
};

inline constexpr std::string_view kFieldCsvHeader = "i,j,x,y,value";
inline constexpr std::string_view kSeriesCsvHeader =
    "day,phi,mass_P_mid,mass_E,mass_W,mean_i,mass_omega";

/// Shortest-safe decimal text: 17 significant digits, exact round trip for
/// IEEE doubles.
std::string format_real(double v);

/// "i,j,x,y,value" header then one row per interior cell in grid order.
std::string write_field_csv(const Grid& grid, const Field& field);

struct FieldCsvRow {
  int i;
  int j;
  double x;
  double y;
  double value;
};

/// Inverse of write_field_csv. Throws ValidationError on malformed input.
std::vector<FieldCsvRow> parse_field_csv(std::string_view text);

/// Binary greyscale P5 image, nx by nx, top row = largest y. Masked cells are
/// 0; interior cells map [min, max] linearly onto [1, 255]; a constant field
/// renders as 255.
std::vector<std::uint8_t> write_heatmap_pgm(const Grid& grid, const Field& field);

std::string write_series_csv(const std::vector<SeriesRow>& rows);

/// Writes bytes to path, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace terrasim
