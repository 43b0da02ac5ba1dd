#include "ptf/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ptf {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

namespace {

json poly_terms_json(const MultilinearPoly& p) {
  json terms = json::array();
  for (const auto& [s, c] : p.coeffs) {
    if (c == 0.0) continue;
    terms.push_back(json{{"vars", s}, {"coeff", c}});
  }
  return terms;
}

}  // namespace

std::string poly_to_json(const MultilinearPoly& p) {
  json doc{{"n", p.n}, {"basis", "monomial"}, {"terms", poly_terms_json(p)}};
  return doc.dump(2);
}

MultilinearPoly poly_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("basis").get<std::string>() != "monomial")
    throw std::invalid_argument("polynomial document: basis must be monomial");
  MultilinearPoly p(doc.at("n").get<std::uint32_t>());
  for (const json& term : doc.at("terms")) {
    VarSet vars = term.at("vars").get<VarSet>();
    if (p.coeffs.count(vars))
      throw std::invalid_argument("polynomial document: duplicate term key");
    p.add_term(std::move(vars), term.at("coeff").get<double>());
  }
  return p;
}

std::string expansion_to_json(const HermiteExpansion& p) {
  json terms = json::array();
  for (const auto& [s, c] : p.coeffs) {
    if (c == 0.0) continue;
    terms.push_back(json{{"index", s}, {"coeff", c}});
  }
  json doc{{"n", p.n}, {"basis", "hermite"}, {"terms", terms}};
  return doc.dump(2);
}

HermiteExpansion expansion_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("basis").get<std::string>() != "hermite")
    throw std::invalid_argument("expansion document: basis must be hermite");
  HermiteExpansion p(doc.at("n").get<std::uint32_t>());
  for (const json& term : doc.at("terms")) {
    MultiIndex idx = trim_index(term.at("index").get<MultiIndex>());
    if (p.coeffs.count(idx))
      throw std::invalid_argument("expansion document: duplicate term key");
    p.add_term(std::move(idx), term.at("coeff").get<double>());
  }
  return p;
}

std::string model_to_json(const RegressionModel& m) {
  json terms = json::array();
  for (const auto& [s, c] : m.weights)
    terms.push_back(json{{"vars", s}, {"coeff", c}});
  json doc{{"n", m.n},
           {"basis", "monomial"},
           {"degree", m.degree},
           {"threshold", m.threshold},
           {"terms", terms}};
  return doc.dump(2);
}

RegressionModel model_from_json(const std::string& text) {
  const json doc = json::parse(text);
  RegressionModel m;
  m.n = doc.at("n").get<std::uint32_t>();
  m.degree = doc.at("degree").get<std::uint32_t>();
  m.threshold = doc.at("threshold").get<double>();
  for (const json& term : doc.at("terms"))
    m.weights[term.at("vars").get<VarSet>()] =
        term.at("coeff").get<double>();
  return m;
}

std::string dataset_to_text(const Dataset& data) {
  std::ostringstream os;
  for (const LabeledSample& s : data) {
    for (double v : s.x) os << format_double(v) << ' ';
    os << static_cast<int>(s.y) << '\n';
  }
  return os.str();
}

Dataset dataset_from_text(const std::string& text) {
  Dataset data;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line)
      if (ch == ',' || ch == '\t') ch = ' ';
    std::istringstream ls(line);
    std::vector<double> nums;
    double v;
    while (ls >> v) nums.push_back(v);
    if (nums.empty()) continue;
    const double label = nums.back();
    nums.pop_back();
    if (label != 1.0 && label != -1.0)
      throw std::invalid_argument("dataset: label must be +/-1 (last field)");
    if (!data.empty() && nums.size() != data.front().x.size())
      throw std::invalid_argument("dataset: inconsistent dimension");
    data.push_back(LabeledSample{std::move(nums),
                                 static_cast<std::int8_t>(label)});
  }
  return data;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvWriter::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_)
    throw std::invalid_argument("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

void CsvWriter::save(const std::string& path) const {
  write_file(path, text_);
}

}  // namespace ptf
