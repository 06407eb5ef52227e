#include "kraw/io.hpp"

#include <fstream>
#include <sstream>

namespace kraw {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(ErrorKind::ParseError, message);
}

Rational rational_from_json(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  parse_fail("exact entries must be rational strings or integers, got " + value.dump());
}

double double_from_json(const json& value) {
  if (!value.is_number()) parse_fail("expected a number, got " + value.dump());
  const double out = value.get<double>();
  require_finite(out, "system file");
  return out;
}

template <typename Scalar, typename Convert>
Matrix<Scalar> matrix_from_json(const json& rows, Convert convert) {
  if (!rows.is_array() || rows.empty()) parse_fail("matrix must be a non-empty array of rows");
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  if (!rows[0].is_array() || rows[0].empty()) parse_fail("matrix rows must be non-empty arrays");
  const auto n_cols = static_cast<Eigen::Index>(rows[0].size());
  Matrix<Scalar> out(n_rows, n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw Error(ErrorKind::ShapeMismatch, "matrix row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index j = 0; j < n_cols; ++j) out(i, j) = convert(row[static_cast<std::size_t>(j)]);
  }
  return out;
}

template <typename Scalar, typename Convert>
Vector<Scalar> vector_from_json(const json& values, Convert convert) {
  if (!values.is_array() || values.empty()) parse_fail("vector must be a non-empty array");
  Vector<Scalar> out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Eigen::Index>(i)) = convert(values[i]);
  return out;
}

void check_declared_d(const json& doc, Eigen::Index size) {
  if (!doc.contains("d")) return;
  if (!doc["d"].is_number_integer()) parse_fail("\"d\" must be an integer");
  const auto d = doc["d"].get<long long>();
  if (d + 1 != size) {
    throw Error(ErrorKind::ShapeMismatch, "\"d\" = " + std::to_string(d) + " but the matrix is " +
                                              std::to_string(size) + "x" + std::to_string(size));
  }
}

}  // namespace

SystemInput parse_system(const json& doc) {
  if (!doc.is_object()) parse_fail("system file must be a JSON object");
  if (doc.contains("A")) {
    if (!doc.contains("p")) parse_fail("exact system file needs \"p\"");
    ExactSystemInput in;
    in.A = matrix_from_json<Rational>(doc["A"], rational_from_json);
    in.p = vector_from_json<Rational>(doc["p"], rational_from_json);
    require_square(in.A, "A");
    check_declared_d(doc, in.A.rows());
    if (in.p.size() != in.A.rows()) {
      throw Error(ErrorKind::ShapeMismatch, "\"p\" length does not match A");
    }
    return in;
  }
  if (doc.contains("orthogonal")) {
    if (!doc.contains("D")) parse_fail("approx system file needs \"D\"");
    ApproxSystemInput in;
    in.orthogonal = matrix_from_json<double>(doc["orthogonal"], double_from_json);
    in.D = vector_from_json<double>(doc["D"], double_from_json);
    require_square(in.orthogonal, "orthogonal");
    check_declared_d(doc, in.orthogonal.rows());
    return in;
  }
  parse_fail("system file needs either \"A\" and \"p\" or \"orthogonal\" and \"D\"");
}

SystemInput load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    parse_fail(path.string() + ": " + e.what());
  }
  return parse_system(doc);
}

AnySystem certify(const SystemInput& input, const Tolerance& tol) {
  if (const auto* exact = std::get_if<ExactSystemInput>(&input)) {
    return build_exact(exact->A, exact->p);
  }
  const auto& approx = std::get<ApproxSystemInput>(input);
  return build_from_orthogonal(approx.orthogonal, approx.D, tol);
}

json matrix_to_json(const MatrixQ& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const MatrixD& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixQ matrix_q_from_json(const json& rows) { return matrix_from_json<Rational>(rows, rational_from_json); }
MatrixD matrix_d_from_json(const json& rows) { return matrix_from_json<double>(rows, double_from_json); }

namespace {

template <typename Scalar, typename Render>
std::string csv_from(const Matrix<Scalar>& m, const LevelBasis& basis, Render render) {
  std::ostringstream out;
  out << "index";
  for (const auto& idx : basis) out << ',' << idx.label();
  out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << basis[static_cast<std::size_t>(i)].label();
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << render(m(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string matrix_to_csv(const MatrixQ& m, const LevelBasis& basis, CsvEntries entries) {
  return csv_from(m, basis, [entries](const Rational& x) {
    return entries == CsvEntries::Rational ? to_string(x) : to_string(to_double(x));
  });
}

std::string matrix_to_csv(const MatrixD& m, const LevelBasis& basis) {
  return csv_from(m, basis, [](double x) { return to_string(x); });
}

MatrixQ matrix_q_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<Rational>> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');  // row label
    std::vector<Rational> row;
    while (std::getline(cells, cell, ',')) row.push_back(parse_rational(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_fail("CSV has no data rows");
  MatrixQ out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw Error(ErrorKind::ShapeMismatch, "ragged CSV");
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return out;
}

json report_to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json entry = {{"name", c.name}, {"status", status_name(c.status)}, {"elapsed_ms", c.elapsed_ms}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    if (c.witness) {
      json w = {{"location", c.witness->location}};
      if (!c.witness->expected.empty()) w["expected"] = c.witness->expected;
      if (!c.witness->actual.empty()) w["actual"] = c.witness->actual;
      if (c.witness->max_residual) w["max_residual"] = *c.witness->max_residual;
      entry["witness"] = std::move(w);
    } else {
      entry["witness"] = nullptr;
    }
    checks.push_back(std::move(entry));
  }
  return {{"status", report.passed() ? "pass" : "fail"}, {"checks", std::move(checks)}};
}

}  // namespace kraw
