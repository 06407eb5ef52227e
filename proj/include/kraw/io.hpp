// System files, matrix serialization (JSON / CSV) and report rendering.
//
// Exact system file:  {"d": 1, "A": [["1","1/2"],["1","-1/2"]], "p": ["1/2","1/2"]}
// Approx system file: {"d": 1, "orthogonal": [[0.8, 0.6], [0.6, -0.8]], "D": [1, 1]}
// Exact matrices travel as rational strings ("3/4"), never as floats.
#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "kraw/matrix.hpp"
#include "kraw/report.hpp"
#include "kraw/system.hpp"

namespace kraw {

struct ExactSystemInput {
  MatrixQ A;
  VectorQ p;
};

struct ApproxSystemInput {
  MatrixD orthogonal;
  VectorD D;
};

using SystemInput = std::variant<ExactSystemInput, ApproxSystemInput>;
using AnySystem = std::variant<ExactSystem, ApproxSystem>;

/// Shape-checks a system document; throws ParseError / ShapeMismatch.
SystemInput parse_system(const nlohmann::json& doc);
SystemInput load_system(const std::filesystem::path& path);

/// Runs the K-condition certification for either flavor.
AnySystem certify(const SystemInput& input, const Tolerance& tol = {});

nlohmann::json matrix_to_json(const MatrixQ& m);
nlohmann::json matrix_to_json(const MatrixD& m);
MatrixQ matrix_q_from_json(const nlohmann::json& rows);
MatrixD matrix_d_from_json(const nlohmann::json& rows);

enum class CsvEntries { Decimal, Rational };

/// Header row "index,<labels...>", then one row per basis element led by its label.
std::string matrix_to_csv(const MatrixQ& m, const LevelBasis& basis, CsvEntries entries);
std::string matrix_to_csv(const MatrixD& m, const LevelBasis& basis);
/// Parses the CSV layout above back into a rational matrix ("a/b" or decimal integers).
MatrixQ matrix_q_from_csv(const std::string& text);

nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace kraw
