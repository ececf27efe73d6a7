#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bext/types.hpp"

namespace bext::cli {

using json = nlohmann::ordered_json;

enum class Format { Csv, Json };

/// Empty cells (std::monostate) mark values that do not exist for a row.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Payload {
  std::string command;
  json config = json::object();
  json result = json::object();
  Table table;
  Format default_format = Format::Json;
};

inline constexpr const char* kVersion = "0.1.0";

json conventions();

/// "%.17g"; non-finite values print as nan, inf, -inf.
std::string format_double(double v);

void write_json(std::ostream& out, const Payload& p);
void write_csv(std::ostream& out, const Payload& p);

json real_array(const std::vector<double>& v);
json complex_matrix(const CMatrix& m);  ///< {"re": [[...]], "im": [[...]]}

}  // namespace bext::cli
