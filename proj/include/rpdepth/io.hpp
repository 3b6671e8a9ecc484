#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "rpdepth/models.hpp"
#include "rpdepth/sim.hpp"

namespace rpdepth::io {

// Dataset / query matrix ingestion. CSV: one point per row, comma separated,
// optional single header row. JSON: array of arrays. Path "-" reads stdin;
// *.json selects the JSON reader.
Mat read_matrix_csv(std::istream& in, bool header);
Mat read_matrix_json(std::istream& in);
Mat load_matrix(const std::string& path, bool header);
Dataset load_dataset(const std::string& path, bool header);

// Streams CSV rows one by one (large query files are never materialized).
void for_each_csv_row(std::istream& in, bool header,
                      const std::function<void(const std::vector<double>&)>& fn);

// Model JSON, e.g. {"schema":1,"family":"student_t","d":5,"nu":1} or
// {"family":"elliptical","base":{...},"mu":[...],"sigma":[[...]]}.
// p_symmetric accepts "marginal":"gaussian"|"cauchy" (defaulted from p for
// p = 2 and p = 1); other marginals must be supplied through the library API.
Model parse_model_json(const std::string& text);
Model load_model(const std::string& path);

// Tabular output. Cells are numbers or literal markers ("---"); numbers are
// printed with a shared formatter so CSV and JSON emissions carry identical
// digits at any precision.
using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> meta;  // emitted as comments / fields
};

std::string format_number(double x, int precision);
void write_csv(std::ostream& out, const Table& table, int precision);
void write_json(std::ostream& out, const Table& table, int precision);

Table report_to_table(const SimReport& report);

}  // namespace rpdepth::io
