#include "qk/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qk {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

char hex_digit(std::uint64_t v) {
  return "0123456789abcdef"[v & 0xf];
}

std::string hex64(std::uint64_t v) {
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[i] = hex_digit(v);
  return out;
}

}  // namespace

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::string& schema,
                     std::uint64_t digest, std::uint64_t seed,
                     const std::vector<std::string>& columns)
    : os_(os), n_columns_(columns.size()) {
  os_ << "# schema=" << schema << " digest=" << hex64(digest)
      << " seed=" << seed << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    os_ << (i ? "," : "") << columns[i];
  os_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_columns_)
    throw std::invalid_argument("CsvWriter: cell count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i)
    os_ << (i ? "," : "") << cells[i];
  os_ << "\n";
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return int(i);
  return -1;
}

double CsvTable::number(std::size_t row, int col) const {
  if (col < 0 || row >= rows.size() ||
      std::size_t(col) >= rows[row].size())
    throw std::out_of_range("CsvTable::number: no such cell");
  return std::stod(rows[row][col]);
}

CsvTable read_csv_text(const std::string& text) {
  CsvTable out;
  std::stringstream ss(text);
  std::string line;
  bool have_columns = false;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream meta(line.substr(1));
      std::string token;
      while (meta >> token) {
        const std::size_t eq = token.find('=');
        if (eq != std::string::npos)
          out.meta[token.substr(0, eq)] = token.substr(eq + 1);
      }
      continue;
    }
    if (!have_columns) {
      out.columns = split(line, ',');
      have_columns = true;
      continue;
    }
    out.rows.push_back(split(line, ','));
  }
  return out;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return read_csv_text(buffer.str());
}

}  // namespace qk
