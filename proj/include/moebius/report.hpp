#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/reduction.hpp"
#include "moebius/verify.hpp"

namespace moebius {

inline constexpr const char* kReportSchema = "moebius-report/1";

/// {"schema": ..., "command": command}
nlohmann::json report_envelope(const std::string& command);
nlohmann::json error_json(ErrorCode code, const std::string& message);

nlohmann::json to_json(const CatalogEntry& e);
nlohmann::json to_json(const ReductionReport& r);
nlohmann::json to_json(const ClosedFormResidual& r);
nlohmann::json to_json(const DeformationReport& r);
nlohmann::json to_json(const RigidityFit& r);
nlohmann::json to_json(const CheckResult& r);

/// One probe of the invariants dump. On failure only `point` and `error` are set.
struct InvariantRow {
    Vec point;
    double rho = 0.0;
    Vec lambda;  // eigenvalues of B, descending
    double c_norm = 0.0;
    Vec a;       // eigenvalues of A, descending
    double residual = 0.0;  // largest structure-equation residual
    std::optional<Error> error;
};

InvariantRow invariant_row(const Immersion& f, const Vec& p, const RunConfig& cfg = {});
nlohmann::json to_json(const InvariantRow& row, const std::vector<std::string>& coordinates);

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string csv_number(double x);
/// Columns: first coordinate, rho, lambda1..n, c_norm, a1..n, residual, remaining coordinates.
std::string csv_header(const std::vector<std::string>& coordinates);
/// Empty string for failed rows.
std::string csv_row(const InvariantRow& row);

}  // namespace moebius
