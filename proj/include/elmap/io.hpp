#pragma once

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "elmap/shapes.hpp"
#include "elmap/trajectory.hpp"
#include "elmap/types.hpp"
#include "elmap/weights.hpp"

namespace elmap {

/// Unreadable or malformed input data, as opposed to an invalid request.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::optional<double> parse_number(std::string_view token) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

inline std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(begin, last - begin + 1));
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(trim(field));
  return fields;
}

/// Shortest round-trip decimal representation.
inline std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace detail

/// Loads one demonstration from CSV: one row per timestep, d numeric
/// columns. A non-numeric first row is treated as a header and skipped;
/// blank lines and '#' comment lines are ignored.
inline Trajectory load_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first_content_line = true;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const std::vector<std::string> fields = detail::split_csv_line(trimmed);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (const std::string& field : fields) {
      const auto value = detail::parse_number(field);
      if (!value) {
        numeric = false;
        break;
      }
      row.push_back(*value);
    }
    if (!numeric) {
      if (first_content_line) {  // header row
        first_content_line = false;
        continue;
      }
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": non-numeric value");
    }
    first_content_line = false;
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": inconsistent column count");
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2)
    throw IoError(path.string() + ": need at least 2 data rows");
  Matrix points(static_cast<Index>(rows.size()),
                static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < points.rows(); ++i)
    for (Index j = 0; j < points.cols(); ++j)
      points(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  try {
    return Trajectory(std::move(points));
  } catch (const std::invalid_argument& err) {
    throw IoError(path.string() + ": " + err.what());
  }
}

/// Resolves one --input token: either a CSV path or a bundled shape
/// reference of the form "shape:<name>".
inline Trajectory load_input(const std::string& token) {
  constexpr std::string_view prefix = "shape:";
  if (token.rfind(prefix, 0) == 0) {
    try {
      return bundled_shape(token.substr(prefix.size()));
    } catch (const std::invalid_argument& err) {
      throw IoError(err.what());
    }
  }
  return load_trajectory_csv(token);
}

/// Loads several demonstrations and aligns them to a common length.
inline DemonstrationSet load_demonstrations(const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw IoError("no input demonstrations given");
  std::vector<Trajectory> demos;
  demos.reserve(inputs.size());
  for (const std::string& token : inputs) demos.push_back(load_input(token));
  try {
    return DemonstrationSet::aligned(std::move(demos));
  } catch (const std::invalid_argument& err) {
    throw IoError(err.what());
  }
}

/// Loads every *.csv file in a directory (sorted by filename) as the
/// demonstrations of one shape — the layout of a LASA-style CSV export.
inline DemonstrationSet load_lasa_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw IoError("not a directory: " + dir.string());
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path().string());
  if (files.empty()) throw IoError("no .csv files in " + dir.string());
  std::sort(files.begin(), files.end());
  return load_demonstrations(files);
}

/// Writes the full content to a temp file and renames it into place, so a
/// failed run never leaves a partial output behind.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing output file: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("failed to move output into place: " + path.string());
  }
}

inline std::string matrix_to_csv(const Matrix& mat,
                                 const std::string& comment = "") {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  for (Index i = 0; i < mat.rows(); ++i) {
    for (Index j = 0; j < mat.cols(); ++j) {
      if (j > 0) out += ',';
      out += detail::format_number(mat(i, j));
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json matrix_to_json(const Matrix& mat) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < mat.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < mat.cols(); ++j) row.push_back(mat(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Parses a JSON list of constraints: [{"position": 0.5, "point": [x, y],
/// "weight": 1e6}, ...]. "position" is fractional progress in [0, 1];
/// "index" may be given instead for an explicit insertion index.
inline std::vector<Constraint> parse_constraints_json(const nlohmann::json& doc) {
  if (!doc.is_array())
    throw std::invalid_argument("constraints: expected a JSON list");
  std::vector<Constraint> constraints;
  for (const nlohmann::json& item : doc) {
    if (!item.is_object() || !item.contains("point"))
      throw std::invalid_argument("constraints: each entry needs a \"point\"");
    const nlohmann::json& pt = item.at("point");
    if (!pt.is_array() || pt.empty())
      throw std::invalid_argument("constraints: \"point\" must be a coordinate list");
    Vector point(static_cast<Index>(pt.size()));
    for (Index i = 0; i < point.size(); ++i)
      point[i] = pt.at(static_cast<size_t>(i)).get<double>();
    std::optional<double> weight;
    if (item.contains("weight")) weight = item.at("weight").get<double>();
    if (item.contains("position") == item.contains("index"))
      throw std::invalid_argument(
          "constraints: give exactly one of \"position\" or \"index\"");
    if (item.contains("position")) {
      constraints.push_back(Constraint::at_fraction(
          item.at("position").get<double>(), std::move(point), weight));
    } else {
      constraints.push_back(Constraint::at_index(
          item.at("index").get<Index>(), std::move(point), weight));
    }
  }
  return constraints;
}

/// Accepts either inline JSON or a path to a JSON file.
inline std::vector<Constraint> parse_constraints_arg(const std::string& arg) {
  std::string text = arg;
  const std::string trimmed = detail::trim(arg);
  if (trimmed.empty()) return {};
  if (trimmed.front() != '[') {
    std::ifstream in(trimmed);
    if (!in) throw IoError("cannot open constraints file: " + trimmed);
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(std::string("constraints: invalid JSON: ") +
                                err.what());
  }
  try {
    return parse_constraints_json(doc);
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("constraints: ") + err.what());
  }
}

}  // namespace elmap
