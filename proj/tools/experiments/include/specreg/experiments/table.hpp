#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace specreg::experiments {

// Empty cells (monostate) are written as nothing in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

// Shortest form that round-trips at 17 significant digits, '.' decimal,
// independent of the global locale.
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& table);
std::string to_csv(const Table& table);
nlohmann::json to_json(const Table& table);

}  // namespace specreg::experiments
