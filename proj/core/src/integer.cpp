#include "rtcomb/integer.hpp"

#include <functional>
#include <limits>
#include <stdexcept>

namespace rtcomb {

std::size_t hash_integer(const Integer& value) noexcept {
  const auto& backend = value.backend();
  std::size_t seed = backend.sign() ? 0x5bd1e995u : 0u;
  const auto* limbs = backend.limbs();
  for (unsigned i = 0; i < backend.size(); ++i) {
    hash_combine(seed, std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(limbs[i])));
  }
  return seed;
}

std::int64_t to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer does not fit in 64 bits: " + value.str());
  }
  return static_cast<std::int64_t>(value);
}

}  // namespace rtcomb
