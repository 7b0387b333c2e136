#include "table.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace mfwr::cli {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return fmt17(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  return os;
}

// "out.csv" + "spinodal" -> "out_spinodal.csv"
std::string sibling_path(const std::string& path, const std::string& table) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "_" + table;
  return path.substr(0, dot) + "_" + table + path.substr(dot);
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) os << ',';
    os << csv_escape(t.columns[c]);
  }
  os << '\n';
  for (const Row& r : t.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) os << ',';
      os << csv_escape(cell_text(r[c]));
    }
    os << '\n';
  }
}

void emit_csv(const std::string& path, const std::vector<Table>& tables) {
  if (path == "-") {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      std::cout << "# table " << tables[i].name << '\n';
      write_csv(std::cout, tables[i]);
    }
    std::cout.flush();
    return;
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    auto os = open_or_throw(i == 0 ? path : sibling_path(path, tables[i].name));
    write_csv(os, tables[i]);
  }
}

namespace {

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void emit_json(const std::string& path, const std::vector<Table>& tables, const Meta* meta) {
  nlohmann::ordered_json root;
  if (meta) {
    nlohmann::ordered_json m;
    m["command"] = meta->command;
    m["version"] = meta->version;
    m["generated_at"] = meta->generated_at;
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : meta->config) cfg[k] = v;
    m["config"] = std::move(cfg);
    root["meta"] = std::move(m);
  }
  nlohmann::ordered_json tabs;
  for (const Table& t : tables) {
    nlohmann::ordered_json jt;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      nlohmann::ordered_json col = nlohmann::ordered_json::array();
      for (const Row& r : t.rows) col.push_back(json_cell(r[c]));
      jt[t.columns[c]] = std::move(col);
    }
    tabs[t.name] = std::move(jt);
  }
  root["tables"] = std::move(tabs);
  const std::string text = root.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    open_or_throw(path) << text;
  }
}

std::string now_rfc3339() {
  const std::time_t t = std::time(nullptr);
  std::tm g{};
  gmtime_r(&t, &g);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &g);
  return buf;
}

}  // namespace mfwr::cli
