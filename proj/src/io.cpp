#include "rpdepth/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rpdepth::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) fail("empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) fail("invalid numeric field: '" + t + "'");
  return v;
}

Mat rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) fail("no data rows");
  const std::size_t width = rows.front().size();
  if (width == 0) fail("empty data row");
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) fail("inconsistent column count in data");
    for (std::size_t j = 0; j < width; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

json parse_json_stream(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(std::string("JSON parse error: ") + e.what());
  }
}

Model model_from_json(const json& j);

MarginalCdf marginal_by_name(const std::string& name) {
  if (name == "gaussian") return gaussian_marginal();
  if (name == "cauchy") return cauchy_marginal();
  fail("unsupported p_symmetric marginal '" + name +
       "' (built-ins: gaussian, cauchy; others must be supplied through the library API)");
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    fail(std::string("model JSON: missing integer field '") + key + "'");
  }
  return j[key].get<int>();
}

Model model_from_json(const json& j) {
  if (!j.is_object()) fail("model JSON must be an object");
  if (j.contains("schema") && j["schema"] != 1) fail("unsupported model schema version");
  if (!j.contains("family") || !j["family"].is_string()) fail("model JSON: missing 'family'");
  const std::string family = j["family"].get<std::string>();

  if (family == "gaussian") return Model::gaussian_std(require_int(j, "d"));
  if (family == "student_t") return Model::student_t(require_int(j, "d"), require_int(j, "nu"));
  if (family == "uniform_ball") return Model::uniform_ball(require_int(j, "d"));
  if (family == "p_symmetric") {
    const int d = require_int(j, "d");
    if (!j.contains("p") || !j["p"].is_number()) fail("model JSON: p_symmetric needs 'p'");
    const double p = j["p"].get<double>();
    std::string marginal;
    if (j.contains("marginal")) {
      marginal = j["marginal"].get<std::string>();
    } else if (p == 2.0) {
      marginal = "gaussian";
    } else if (p == 1.0) {
      marginal = "cauchy";
    } else {
      fail("model JSON: p_symmetric with p not in {1, 2} needs an explicit 'marginal'");
    }
    return Model::p_symmetric(d, p, marginal_by_name(marginal));
  }
  if (family == "elliptical") {
    if (!j.contains("base")) fail("model JSON: elliptical needs 'base'");
    Model base = model_from_json(j["base"]);
    if (!j.contains("mu") || !j["mu"].is_array()) fail("model JSON: elliptical needs 'mu'");
    if (!j.contains("sigma") || !j["sigma"].is_array()) fail("model JSON: elliptical needs 'sigma'");
    Vec mu(base.d);
    if (static_cast<int>(j["mu"].size()) != base.d) fail("model JSON: mu has wrong dimension");
    for (int i = 0; i < base.d; ++i) mu[i] = j["mu"][i].get<double>();
    Mat sigma(base.d, base.d);
    if (static_cast<int>(j["sigma"].size()) != base.d) fail("model JSON: sigma has wrong shape");
    for (int i = 0; i < base.d; ++i) {
      if (static_cast<int>(j["sigma"][i].size()) != base.d) fail("model JSON: sigma has wrong shape");
      for (int k = 0; k < base.d; ++k) sigma(i, k) = j["sigma"][i][k].get<double>();
    }
    return Model::elliptical(std::move(base), std::move(mu), std::move(sigma));
  }
  fail("unknown model family '" + family + "'");
}

}  // namespace

void for_each_csv_row(std::istream& in, bool header,
                      const std::function<void(const std::vector<double>&)>& fn) {
  std::string line;
  std::vector<double> row;
  bool skipped_header = !header;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    row.clear();
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(parse_double(field));
    if (!line.empty() && line.back() == ',') fail("trailing comma in CSV row");
    if (width == 0) width = row.size();
    if (row.empty() || row.size() != width) fail("inconsistent column count in data");
    fn(row);
  }
  if (width == 0) fail("no data rows");
}

Mat read_matrix_csv(std::istream& in, bool header) {
  std::vector<std::vector<double>> rows;
  for_each_csv_row(in, header, [&](const std::vector<double>& row) { rows.push_back(row); });
  return rows_to_matrix(rows);
}

Mat read_matrix_json(std::istream& in) {
  const json j = parse_json_stream(in);
  if (!j.is_array()) fail("dataset JSON must be an array of arrays");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) fail("dataset JSON must be an array of arrays");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) fail("dataset JSON entries must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  return rows_to_matrix(rows);
}

Mat load_matrix(const std::string& path, bool header) {
  if (path == "-") return read_matrix_csv(std::cin, header);  // stdin streams CSV
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  std::ifstream in(path);
  if (!in) fail("cannot open file: " + path);
  return is_json ? read_matrix_json(in) : read_matrix_csv(in, header);
}

Dataset load_dataset(const std::string& path, bool header) {
  return Dataset(load_matrix(path, header));
}

Model parse_model_json(const std::string& text) {
  std::istringstream in(text);
  return model_from_json(parse_json_stream(in));
}

Model load_model(const std::string& path) {
  if (path == "-") return model_from_json(parse_json_stream(std::cin));
  std::ifstream in(path);
  if (!in) fail("cannot open file: " + path);
  return model_from_json(parse_json_stream(in));
}

std::string format_number(double x, int precision) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

// One shared cell formatter so CSV and JSON carry identical digits.
std::string cell_csv(const Cell& cell, int precision) {
  if (const double* d = std::get_if<double>(&cell)) return format_number(*d, precision);
  return csv_escape(std::get<std::string>(cell));
}

std::string cell_json(const Cell& cell, int precision) {
  if (const double* d = std::get_if<double>(&cell)) {
    const std::string s = format_number(*d, precision);
    if (s.empty()) return "null";
    if (s == "inf" || s == "-inf") return json_escape(s);
    return s;
  }
  return json_escape(std::get<std::string>(cell));
}

}  // namespace

void write_csv(std::ostream& out, const Table& table, int precision) {
  for (const auto& [key, value] : table.meta) out << "# " << key << "=" << value << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << csv_escape(table.columns[c]);
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << cell_csv(row[c], precision);
    }
    out << "\n";
  }
}

void write_json(std::ostream& out, const Table& table, int precision) {
  out << "{\n  \"schema\": 1,\n  \"meta\": {";
  for (std::size_t i = 0; i < table.meta.size(); ++i) {
    out << (i ? ", " : "") << json_escape(table.meta[i].first) << ": "
        << json_escape(table.meta[i].second);
  }
  out << "},\n  \"columns\": [";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? ", " : "") << json_escape(table.columns[c]);
  }
  out << "],\n  \"rows\": [\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << "    {";
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      out << (c ? ", " : "") << json_escape(table.columns[c]) << ": "
          << cell_json(table.rows[r][c], precision);
    }
    out << (r + 1 < table.rows.size() ? "},\n" : "}\n");
  }
  out << "  ]\n}\n";
}

Table report_to_table(const SimReport& report) {
  Table t;
  t.meta.emplace_back("protocol", report.protocol);
  t.meta.emplace_back("seed", std::to_string(report.master_seed));
  for (const auto& note : report.notes) t.meta.emplace_back("note", note);
  t.columns = report.data.columns;
  for (const auto& row : report.data.rows) {
    std::vector<Cell> cells;
    cells.reserve(row.size());
    for (double v : row) cells.emplace_back(v);
    t.rows.push_back(std::move(cells));
  }
  return t;
}

}  // namespace rpdepth::io
