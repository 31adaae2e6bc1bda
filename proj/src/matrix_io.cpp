#include "simdiag/matrix_io.hpp"

#include <fstream>
#include <string>

#include "simdiag/errors.hpp"

namespace simdiag {

using nlohmann::json;

namespace {

json pair_to_json(const Real& re, const Real& im) { return json::array({re.to_string(), im.to_string()}); }

Complex pair_from_json(const json& j, Precision prec) {
  if (!j.is_array() || j.size() != 2) throw ParseError("entry must be a [re, im] pair");
  auto part = [&](const json& v) {
    if (v.is_string()) return Real::parse(v.get<std::string>(), prec);
    if (v.is_number_integer()) return Real(v.get<std::int64_t>(), prec);
    throw ParseError("entry parts must be decimal strings");
  };
  return {part(j[0]), part(j[1])};
}

Precision precision_from_json(const json& j) {
  if (!j.contains("precision_bits")) throw ParseError("missing precision_bits");
  auto bits = j.at("precision_bits").get<long>();
  if (bits < kMinPrecision) throw ParseError("precision_bits must be at least " + std::to_string(kMinPrecision));
  return static_cast<Precision>(bits);
}

std::size_t dimension_from_json(const json& j) {
  if (!j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<long>() < 1) {
    throw ParseError("n must be a positive integer");
  }
  return j.at("n").get<std::size_t>();
}

}  // namespace

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.n(); ++j) row.push_back(pair_to_json(m.re(i, j), m.im(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.n()},
          {"field", std::string(to_string(m.field()))},
          {"precision_bits", m.precision()},
          {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const json& j) {
  try {
    const std::size_t n = dimension_from_json(j);
    const Precision prec = precision_from_json(j);
    const Field field = parse_field(j.at("field").get<std::string>());
    const json& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != n) throw ParseError("entries must have n rows");
    Matrix out(n, prec, field);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("every row must have n entries");
      for (std::size_t k = 0; k < n; ++k) {
        Complex value = pair_from_json(rows[i][k], prec);
        if (field == Field::real && !value.im.is_zero()) {
          throw ParseError("real matrix has a non-zero imaginary part");
        }
        out.set(i, k, value);
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matrix object: ") + e.what());
  }
}

json to_json(const Spectrum& s) {
  json values = json::array();
  for (const auto& v : s.values()) values.push_back(pair_to_json(v.re, v.im));
  return {{"n", s.size()}, {"precision_bits", s.precision()}, {"values", std::move(values)}};
}

Spectrum spectrum_from_json(const json& j) {
  try {
    if (j.contains("entries")) return Spectrum::diagonal_of(matrix_from_json(j));
    const std::size_t n = dimension_from_json(j);
    const Precision prec = precision_from_json(j);
    const json& values = j.at("values");
    if (!values.is_array() || values.size() != n) throw ParseError("values must have n entries");
    std::vector<Complex> out;
    out.reserve(n);
    for (const auto& v : values) out.push_back(pair_from_json(v, prec));
    return Spectrum(std::move(out));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed spectrum object: ") + e.what());
  }
}

json pencil_to_json(const std::vector<Matrix>& pencil) {
  json out = json::array();
  for (const auto& m : pencil) out.push_back(to_json(m));
  return out;
}

std::vector<Matrix> pencil_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("pencil must be a non-empty array of matrices");
  std::vector<Matrix> out;
  for (const auto& item : j) out.push_back(matrix_from_json(item));
  for (const auto& m : out) {
    if (m.n() != out.front().n()) throw ParseError("pencil matrices must share the same n");
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Matrix read_matrix_file(const std::filesystem::path& path) { return matrix_from_json(read_json_file(path)); }

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) { write_json_file(path, to_json(m)); }

}  // namespace simdiag
