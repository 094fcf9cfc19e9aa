#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

#include "moebius/immersion.hpp"

namespace moebius {

enum class ExecutionMode { Serial, Parallel };

/// `count` uniform points in the domain shrunk by 10% on every side.
std::vector<Vec> sample_probes(const Box& domain, int count, std::uint64_t seed);

/// Apply fn to every probe. Parallel mode distributes probes over OpenMP
/// threads; results keep probe order. If any call throws, the exception of
/// the lowest failing index is rethrown after all calls finish.
template <class Fn>
auto map_probes(const std::vector<Vec>& probes, Fn&& fn, ExecutionMode mode = ExecutionMode::Parallel)
    -> std::vector<std::invoke_result_t<Fn&, const Vec&>> {
    using T = std::invoke_result_t<Fn&, const Vec&>;
    const long count = static_cast<long>(probes.size());
    std::vector<std::optional<T>> slots(probes.size());
    std::vector<std::exception_ptr> errors(probes.size());
    auto run = [&](long i) {
        try {
            slots[i].emplace(fn(probes[i]));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (mode == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) run(i);
    } else {
        for (long i = 0; i < count; ++i) run(i);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<T> out;
    out.reserve(probes.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace moebius
