#include "moebius/report.hpp"

#include <charconv>
#include <sstream>

#include "moebius/invariants.hpp"

namespace moebius {

using nlohmann::json;

namespace {

json vec_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

}  // namespace

json report_envelope(const std::string& command) { return json{{"schema", kReportSchema}, {"command", command}}; }

json error_json(ErrorCode code, const std::string& message) {
    return json{{"code", std::string(error_code_name(code))}, {"message", message}};
}

json to_json(const CatalogEntry& e) {
    return json{{"id", e.id},
                {"construction", construction_name(e.construction)},
                {"generator", e.generator},
                {"description", e.description},
                {"params", e.params}};
}

json to_json(const ReductionReport& r) {
    json j{{"multiplicity_pattern", r.multiplicity_pattern},
           {"mu_multiplicity", r.mu_multiplicity},
           {"route", r.route},
           {"c_alpha_residual", r.c_alpha_residual},
           {"b_pq_alpha_residual", r.b_pq_alpha_residual},
           {"dphi_residual", r.dphi_residual},
           {"commutator_norm", r.commutator_norm},
           {"q_value", r.q_value ? json(*r.q_value) : json(nullptr)},
           {"q_values", r.q_values},
           {"q_normalized", r.q_normalized},
           {"classification", classification_name(r.classification)},
           {"annotations", r.annotations}};
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

json to_json(const ClosedFormResidual& r) {
    return json{{"dphi_residual", r.dphi_residual}, {"commutator_norm", r.commutator_norm}};
}

json to_json(const DeformationReport& r) {
    return json{{"metric_deviation", r.metric_deviation}, {"eigen_match", r.eigen_match},
                {"eigen_deviation", r.eigen_deviation},   {"sign", r.sign},
                {"direction_angle", r.direction_angle},   {"verdict", verdict_name(r.verdict)}};
}

json to_json(const RigidityFit& r) {
    return json{{"b", r.b},
                {"c", r.c},
                {"residual", r.residual},
                {"flagged", r.flagged},
                {"b_sign_match", r.b_sign_match}};
}

json to_json(const CheckResult& r) {
    json metrics = json::array();
    for (const auto& m : r.metrics)
        metrics.push_back(json{{"name", m.name}, {"value", m.value}, {"tolerance", m.tolerance}, {"passed", m.passed}});
    json j{{"id", r.id}, {"check", r.check}, {"applicable", r.applicable}, {"passed", r.passed}, {"metrics", metrics}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

InvariantRow invariant_row(const Immersion& f, const Vec& p, const RunConfig& cfg) {
    InvariantRow row;
    row.point = p;
    try {
        const PointAnalysis a = analyze(f, p, cfg);
        row.rho = a.moebius.rho;
        row.lambda = a.moebius.moebius_principal;
        row.c_norm = a.moebius.C.norm();
        Eigen::SelfAdjointEigenSolver<Mat> es(a.moebius.A);
        row.a = es.eigenvalues().reverse();
        row.residual = integrability_residuals(InvariantBundle::from(a)).structural();
    } catch (const Error& e) {
        row.error = e;
    }
    return row;
}

json to_json(const InvariantRow& row, const std::vector<std::string>& coordinates) {
    json point = json::object();
    for (int i = 0; i < row.point.size(); ++i)
        point[i < static_cast<int>(coordinates.size()) ? coordinates[i] : "x" + std::to_string(i + 1)] = row.point[i];
    if (row.error) return json{{"point", point}, {"error", error_json(row.error->code(), row.error->what())}};
    return json{{"point", point},   {"rho", row.rho}, {"lambda", vec_json(row.lambda)}, {"c_norm", row.c_norm},
                {"a", vec_json(row.a)}, {"residual", row.residual}};
}

std::string csv_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string csv_header(const std::vector<std::string>& coordinates) {
    const int n = static_cast<int>(coordinates.size());
    std::ostringstream os;
    os << coordinates.at(0) << ",rho";
    for (int i = 1; i <= n; ++i) os << ",lambda" << i;
    os << ",c_norm";
    for (int i = 1; i <= n; ++i) os << ",a" << i;
    os << ",residual";
    for (int i = 1; i < n; ++i) os << "," << coordinates[i];
    return os.str();
}

std::string csv_row(const InvariantRow& row) {
    if (row.error) return {};
    std::ostringstream os;
    os << csv_number(row.point[0]) << "," << csv_number(row.rho);
    for (int i = 0; i < row.lambda.size(); ++i) os << "," << csv_number(row.lambda[i]);
    os << "," << csv_number(row.c_norm);
    for (int i = 0; i < row.a.size(); ++i) os << "," << csv_number(row.a[i]);
    os << "," << csv_number(row.residual);
    for (int i = 1; i < row.point.size(); ++i) os << "," << csv_number(row.point[i]);
    return os.str();
}

}  // namespace moebius
