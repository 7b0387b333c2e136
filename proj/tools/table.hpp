#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mfwr::cli {

using Cell = std::variant<double, std::int64_t, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

// 17 significant digits: exact round trip for binary64
std::string fmt17(double v);
std::string cell_text(const Cell& c);

struct Meta {
  std::string command;
  std::string version;
  std::string generated_at;
  std::vector<std::pair<std::string, std::string>> config;
};

void write_csv(std::ostream& os, const Table& t);

// path "-" sends every table to stdout, separated by "# table <name>" lines.
// Otherwise the first table lands at path and each further table at
// <stem>_<name><ext> next to it. CSV carries no meta block.
void emit_csv(const std::string& path, const std::vector<Table>& tables);

// One object per table under "tables", column-name keys, array values.
// meta == nullptr omits the meta block.
void emit_json(const std::string& path, const std::vector<Table>& tables, const Meta* meta);

std::string now_rfc3339();

}  // namespace mfwr::cli
