#include "qsdc/csv.hpp"

#include <cstdio>

namespace qsdc {

void CsvWriter::meta(const std::string& key, const std::string& value) {
  out_ << "# " << key << "=" << value << "\n";
}

void CsvWriter::meta(const std::string& key, double value) {
  meta(key, num(value));
}

void CsvWriter::header(const std::vector<std::string>& names) {
  row(names);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ",";
    out_ << cells[i];
  }
  out_ << "\n";
}

std::string CsvWriter::num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qsdc
