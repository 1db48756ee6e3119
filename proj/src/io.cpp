#include "scalelab/io.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace scalelab::io {

namespace {

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      // nlohmann::json objects are std::map backed, so iteration is sorted.
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) out += format_double(v);
      else out += '"' + format_double(v) + '"';
      break;
    }
    default:
      out += j.dump();
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_number(std::string_view tok) {
  std::string s(tok);
  if (s == "inf" || s == "+inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
  if (s == "-inf" || s == "-Infinity") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::runtime_error("not a number: '" + s + "'");
  return v;
}

double json_number(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_number(v.get<std::string>());
  throw std::runtime_error("expected a number in JSON input");
}

std::vector<double> split_numbers(std::string_view line) {
  std::vector<double> out;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty()) out.push_back(parse_number(tok));
    tok.clear();
  };
  for (char ch : line) {
    if (ch == ',' || ch == ';' || ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') flush();
    else tok += ch;
  }
  flush();
  return out;
}

bool looks_like_json(std::string_view text) {
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') continue;
    return ch == '[' || ch == '{';
  }
  return false;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

std::vector<double> parse_vector(std::string_view text) {
  if (looks_like_json(text)) {
    const Json j = Json::parse(text);
    if (!j.is_array()) throw std::runtime_error("expected a JSON array");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(json_number(v));
    return out;
  }
  std::vector<double> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    for (double v : split_numbers(line)) out.push_back(v);
  }
  return out;
}

std::vector<double> read_vector(const std::string& path) { return parse_vector(slurp(path)); }

Matrix parse_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  if (looks_like_json(text)) {
    const Json j = Json::parse(text);
    if (!j.is_array()) throw std::runtime_error("expected a JSON array of rows");
    for (const auto& row : j) {
      if (!row.is_array()) throw std::runtime_error("expected a JSON array of rows");
      std::vector<double> r;
      for (const auto& v : row) r.push_back(json_number(v));
      rows.push_back(std::move(r));
    }
  } else {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      auto r = split_numbers(line);
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  if (rows.empty()) throw std::runtime_error("empty matrix");
  try {
    return Matrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

Matrix read_matrix(const std::string& path) { return parse_matrix(slurp(path)); }

Json read_json(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("CsvTable: row width differs from header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

}  // namespace scalelab::io
