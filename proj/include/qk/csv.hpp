#pragma once
// Minimal CSV interchange: every file starts with a '#' metadata line
// naming the schema version, the config digest, and the seed base, followed
// by a column-header row and data rows.  Values are plain tokens (no
// quoting); list-valued cells use ';' separators.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace qk {

// Full-precision, locale-independent rendering (round-trips doubles).
std::string csv_double(double v);

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::string& schema,
            std::uint64_t digest, std::uint64_t seed,
            const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
  std::size_t n_columns_;
};

struct CsvTable {
  std::map<std::string, std::string> meta;  // schema, digest, seed
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
  double number(std::size_t row, int col) const;
};

CsvTable read_csv(const std::string& path);
CsvTable read_csv_text(const std::string& text);

}  // namespace qk
