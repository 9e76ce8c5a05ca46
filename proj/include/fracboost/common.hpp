#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fracboost {

// Missing numeric cells are represented by quiet NaN. One-hot indicator
// cells are never missing (a missing categorical encodes as an all-zero block).
inline constexpr double missing_value() {
    return std::numeric_limits<double>::quiet_NaN();
}

inline bool is_missing(double v) {
    return std::isnan(v);
}

// Execution policy for the data-parallel kernels. The serial path is the
// reference implementation; both paths produce bit-identical results.
enum class Execution { serial, parallel };

// Shortest decimal text that round-trips the exact binary value.
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf.data(), ptr);
}

// Strict full-token parse; throws on trailing garbage or empty input.
inline double parse_double(std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("parse_double: cannot parse '" + std::string(text) + "'");
    }
    return value;
}

inline std::uint64_t parse_uint(std::string_view text) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("parse_uint: cannot parse '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace fracboost
