#pragma once

#include <cstdint>
#include <string>

namespace moebius {

enum class JetBackend { Taylor, FiniteDiff };
enum class OutputFormat { Json, Csv };

/// Tolerances and run parameters shared by the library entry points and the cli.
struct RunConfig {
    double tol_frame = 1e-6;
    double tol_integrability = 1e-4;
    double tol_classification = 1e-4;
    double tol_invariance = 1e-5;
    double q_tol = 1e-3;
    double eps_umbilic = 1e-8;
    int probe_count = 20;
    std::uint64_t seed = 42;
    OutputFormat output_format = OutputFormat::Json;
    JetBackend jet_backend = JetBackend::Taylor;
    double fd_step = 1e-4;

    /// Throws std::invalid_argument if a tolerance is not positive or probe_count < 1.
    void validate() const;
};

}  // namespace moebius
