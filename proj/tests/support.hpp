#pragma once

#include <initializer_list>
#include <optional>

#include "moebius/errors.hpp"
#include "moebius/immersion.hpp"

namespace test {

/// Code of the moebius::Error thrown by fn, or nullopt if none.
template <class Fn>
std::optional<moebius::ErrorCode> error_of(Fn&& fn) {
    try {
        fn();
    } catch (const moebius::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline moebius::Vec vec(std::initializer_list<double> xs) {
    moebius::Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline moebius::Mat diag(std::initializer_list<double> xs) { return vec(xs).asDiagonal(); }

}  // namespace test
