#include "hopflog/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hopflog/errors.hpp"

namespace hopflog {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

double parse_double(const std::string& cell) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + cell + "'");
  }
}

double json_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

template <class Point>
json points_json(const Configuration<Point>& cfg) {
  json j;
  j["family"] = cfg.provenance.family;
  j["parameters"] = cfg.provenance.parameters;
  j["seed"] = cfg.provenance.seed;
  j["run"] = cfg.provenance.run;
  j["dim"] = Point::kDim;
  json pts = json::array();
  for (const auto& p : cfg.points) pts.push_back(p.coords());
  j["points"] = std::move(pts);
  return j;
}

template <class Point>
std::string points_csv(const Configuration<Point>& cfg) {
  std::ostringstream out;
  out << (Point::kDim == 3 ? "x,y,z" : "a,b,c,d") << '\n';
  for (const auto& p : cfg.points) {
    const auto& c = p.coords();
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << fmt(c[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace

Format format_from_string(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ValidationError("unknown format '" + name + "' (expected csv or json)");
}

std::string points_to_string(const AnyConfiguration& cfg, Format format) {
  return std::visit(
      [&](const auto& c) { return format == Format::csv ? points_csv(c) : points_json(c).dump(2) + "\n"; }, cfg);
}

PointTable parse_points(const std::string& text, Format format) {
  PointTable table;
  if (format == Format::json) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ValidationError(std::string("invalid points JSON: ") + e.what());
    }
    const json& pts = j.is_array() ? j : j.at("points");
    for (const auto& p : pts) {
      if (!p.is_array()) throw ValidationError("points JSON: every point must be an array");
      if (table.dim == 0) table.dim = static_cast<int>(p.size());
      if (static_cast<int>(p.size()) != table.dim) throw ValidationError("points JSON: inconsistent dimensions");
      for (const auto& v : p) table.coords.push_back(v.get<double>());
    }
    if (j.is_object() && j.contains("dim") && j["dim"].get<int>() != table.dim && !pts.empty())
      throw ValidationError("points JSON: 'dim' disagrees with the point arrays");
    return table;
  }
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (first) {
      first = false;
      // Header line if the first cell is not numeric.
      bool numeric = true;
      try {
        parse_double(trim(cells[0]));
      } catch (const ValidationError&) {
        numeric = false;
      }
      if (!numeric) {
        table.dim = static_cast<int>(cells.size());
        continue;
      }
    }
    if (table.dim == 0) table.dim = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != table.dim) throw ValidationError("points CSV: inconsistent column count");
    for (const auto& c : cells) table.coords.push_back(parse_double(trim(c)));
  }
  return table;
}

std::string rows_to_string(const std::vector<ResultRow>& rows, Format format) {
  if (format == Format::json) {
    json arr = json::array();
    for (const auto& r : rows) {
      json j;
      j["N"] = r.n;
      j["k"] = r.k;
      j["param"] = r.param;
      j["energy_mean"] = r.energy_mean;
      j["energy_se"] = r.energy_se;
      j["closed_form"] = r.closed_form ? json(*r.closed_form) : json(nullptr);
      j["n1"] = r.n1;
      j["n2"] = r.n2;
      j["wall_time_s"] = r.wall_time_s;
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }
  std::ostringstream out;
  out << kRowsCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << fmt(r.param) << ',' << fmt(r.energy_mean) << ',' << fmt(r.energy_se) << ','
        << (r.closed_form ? fmt(*r.closed_form) : "") << ',' << fmt(r.n1) << ',' << fmt(r.n2) << ','
        << fmt(r.wall_time_s) << '\n';
  }
  return out.str();
}

std::vector<ResultRow> parse_rows(const std::string& text, Format format) {
  std::vector<ResultRow> rows;
  if (format == Format::json) {
    json arr;
    try {
      arr = json::parse(text);
    } catch (const json::exception& e) {
      throw ValidationError(std::string("invalid rows JSON: ") + e.what());
    }
    for (const auto& j : arr) {
      ResultRow r;
      r.n = j.at("N").get<long>();
      r.k = j.at("k").get<int>();
      r.param = json_number(j.at("param"));
      r.energy_mean = json_number(j.at("energy_mean"));
      r.energy_se = json_number(j.at("energy_se"));
      if (!j.at("closed_form").is_null()) r.closed_form = j["closed_form"].get<double>();
      r.n1 = json_number(j.at("n1"));
      r.n2 = json_number(j.at("n2"));
      r.wall_time_s = json_number(j.at("wall_time_s"));
      rows.push_back(r);
    }
    return rows;
  }
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kRowsCsvHeader)
    throw ValidationError(std::string("rows CSV: header must be ") + kRowsCsvHeader);
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto c = split(line, ',');
    if (c.size() != 9) throw ValidationError("rows CSV: expected 9 columns in '" + line + "'");
    ResultRow r;
    r.n = std::stol(c[0]);
    r.k = std::stoi(c[1]);
    r.param = parse_double(c[2]);
    r.energy_mean = parse_double(c[3]);
    r.energy_se = parse_double(c[4]);
    if (!c[5].empty()) r.closed_form = parse_double(c[5]);
    r.n1 = parse_double(c[6]);
    r.n2 = parse_double(c[7]);
    r.wall_time_s = parse_double(c[8]);
    rows.push_back(r);
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return s.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace hopflog
