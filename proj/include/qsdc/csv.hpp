#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qsdc {

// Deterministic CSV emitter: `# key=value` metadata lines, one header line,
// then data rows. Numbers are printed with %.17g so a rerun is
// byte-identical.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& cells);

  static std::string num(double v);

 private:
  std::ostream& out_;
};

}  // namespace qsdc
