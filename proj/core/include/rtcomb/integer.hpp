#pragma once

#include <cstddef>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace rtcomb {

// Exact integers for group coordinates. Small values stay in the inline
// limb buffer, so the common case does not allocate.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::size_t hash_integer(const Integer& value) noexcept;

// Throws std::overflow_error when the value does not fit.
std::int64_t to_int64(const Integer& value);

inline void hash_combine(std::size_t& seed, std::size_t value) noexcept {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace rtcomb
