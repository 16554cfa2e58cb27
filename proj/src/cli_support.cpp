#include "orthoflow/cli_support.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "orthoflow/errors.hpp"

namespace orthoflow {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw InvalidParameters("cannot parse number '" + std::string(text) + "'");
}

double parse_decimal(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty() || s.front() == '+') bad_number(whole);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad_number(whole);
  return v;
}

// "p" or "p/q".
double parse_rational(std::string_view s, std::string_view whole) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s, whole);
  const double num = parse_decimal(s.substr(0, slash), whole);
  const double den = parse_decimal(s.substr(slash + 1), whole);
  if (den == 0.0) throw InvalidParameters("zero denominator in '" + std::string(whole) + "'");
  return num / den;
}

// Imaginary coefficient; a bare sign means unit magnitude.
double parse_imaginary(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_rational(s, whole);
}

}  // namespace

Complex parse_scalar(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad_number(text);
  if (s.back() != 'i') return Complex(parse_rational(s, text), 0.0);

  const std::string_view body = s.substr(0, s.size() - 1);
  // The real/imaginary split is the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return Complex(0.0, parse_imaginary(body, text));
  return Complex(parse_rational(body.substr(0, split), text),
                 parse_imaginary(body.substr(split), text));
}

double parse_real(std::string_view text) {
  const Complex z = parse_scalar(text);
  if (z.imag() != 0.0) throw InvalidParameters("expected a real number, got '" + std::string(text) + "'");
  return z.real();
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) throw InvalidParameters("empty entry in list '" + std::string(text) + "'");

    std::size_t sep = item.find("\xC3\x97");  // multiplication sign
    std::size_t sep_len = 2;
    if (sep == std::string_view::npos) {
      sep = item.find('x');
      sep_len = 1;
    }
    if (sep == std::string_view::npos) {
      out.push_back(parse_real(item));
    } else {
      const double value = parse_real(trim(item.substr(0, sep)));
      const std::string_view count_text = trim(item.substr(sep + sep_len));
      unsigned count = 0;
      const auto [ptr, ec] =
          std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
      if (ec != std::errc() || ptr != count_text.data() + count_text.size() || count == 0) {
        throw InvalidParameters("bad repeat count in '" + std::string(item) + "'");
      }
      out.insert(out.end(), count, value);
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_fixed(double value, int digits) {
  if (!std::isfinite(value)) return format_shortest(value);
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  if (ec != std::errc()) return format_shortest(value);
  std::string s(buf, ptr);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_shortest(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

int resolve_precision(std::optional<int> flag) {
  int p = 4;
  if (flag) {
    p = *flag;
  } else if (const char* env = std::getenv("ORTHOFLOW_PRECISION"); env && *env) {
    const std::string_view s = trim(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), p);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw InvalidParameters("ORTHOFLOW_PRECISION must be an integer, got '" + std::string(s) + "'");
    }
  }
  if (p < 0 || p > 17) throw InvalidParameters("print precision must lie in [0, 17]");
  return p;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t k = 0; k < table.header.size(); ++k) {
    out << (k ? "," : "") << table.header[k];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_shortest(row[k]);
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParameters("cannot open '" + path + "' for writing");
  write_csv(out, table);
  if (!out) throw InvalidParameters("write to '" + path + "' failed");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw InvalidParameters("empty CSV input");
  std::istringstream head(line);
  for (std::string field; std::getline(head, field, ',');) table.header.emplace_back(trim(field));
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view field = trim(rest.substr(0, comma));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) bad_number(field);
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (row.size() != table.header.size()) {
      throw InvalidParameters("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                              std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameters("cannot open '" + path + "' for reading");
  return read_csv(in);
}

}  // namespace orthoflow
