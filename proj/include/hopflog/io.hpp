#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopflog/harness.hpp"

namespace hopflog {

// File errors; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };
Format format_from_string(const std::string& name);

// Points, 17 significant digits. CSV has a header naming the coordinates
// (x,y,z or a,b,c,d); JSON is {"family", "parameters", "seed", "run", "dim",
// "points": [[...], ...]}.
std::string points_to_string(const AnyConfiguration& cfg, Format format);

// Flat row-major coordinates read back from either format.
struct PointTable {
  int dim = 0;
  std::vector<double> coords;
  std::size_t size() const { return dim ? coords.size() / static_cast<std::size_t>(dim) : 0; }
};
PointTable parse_points(const std::string& text, Format format);

// Rows. CSV header: N,k,param,energy_mean,energy_se,closed_form,n1,n2,wall_time_s
// with an empty closed_form cell for "none"; JSON is an array of objects with
// the same keys and null for "none".
inline constexpr const char* kRowsCsvHeader = "N,k,param,energy_mean,energy_se,closed_form,n1,n2,wall_time_s";
std::string rows_to_string(const std::vector<ResultRow>& rows, Format format);
std::vector<ResultRow> parse_rows(const std::string& text, Format format);

std::string read_file(const std::string& path);
// Writes to path, or to stdout when path is empty or "-".
void write_output(const std::string& text, const std::string& path);

}  // namespace hopflog
