#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptf/hermite.hpp"
#include "ptf/learner.hpp"
#include "ptf/multilinear.hpp"

namespace ptf {

/// Polynomial document, JSON:
///   {"n": 3, "basis": "monomial",
///    "terms": [{"vars": [1,2], "coeff": 0.5}, ...]}
/// Hermite documents use basis "hermite" and key terms by multi-index:
///   {"index": [2,0,1], "coeff": ...}.
/// Canonical form: vars sorted ascending, no duplicate term keys, terms
/// ordered by key.
std::string poly_to_json(const MultilinearPoly& p);
MultilinearPoly poly_from_json(const std::string& text);

std::string expansion_to_json(const HermiteExpansion& p);
HermiteExpansion expansion_from_json(const std::string& text);

/// Model document: the monomial polynomial document plus "degree" and
/// "threshold" fields.
std::string model_to_json(const RegressionModel& m);
RegressionModel model_from_json(const std::string& text);

/// Dataset: delimited text (spaces, tabs or commas), one sample per line,
/// label (+/-1) last.  Lines starting with '#' are skipped.
std::string dataset_to_text(const Dataset& data);
Dataset dataset_from_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Shortest decimal form that round-trips the double bit-exactly.
std::string format_double(double v);

/// Minimal CSV emitter: fixed header, rows of preformatted cells.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  const std::string& text() const { return text_; }
  void save(const std::string& path) const;

 private:
  std::size_t columns_;
  std::string text_;
};

}  // namespace ptf
