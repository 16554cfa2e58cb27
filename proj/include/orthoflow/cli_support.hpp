#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthoflow/params.hpp"

namespace orthoflow {

/// Parses "1.5", "17/3", "2i", "-i", "1+1i", "0.5-2.25i". Locale independent.
/// Throws InvalidParameters on anything else.
Complex parse_scalar(std::string_view text);

/// parse_scalar restricted to real values.
double parse_real(std::string_view text);

/// Comma separated list of scalars; an entry "v x k" (or "v×k") repeats v k times.
std::vector<double> parse_real_list(std::string_view text);

/// Fixed notation with `digits` decimals; negative zero prints unsigned.
std::string format_fixed(double value, int digits);

/// Shortest representation that reads back to the same double.
std::string format_shortest(double value);

/// Print precision: the explicit flag, else ORTHOFLOW_PRECISION, else 4.
int resolve_precision(std::optional<int> flag);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

}  // namespace orthoflow
