#include "souvlaki/random.hpp"

#include <limits>

#include "souvlaki/errors.hpp"

namespace souvlaki {

Engine substream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32U),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32U), 0x5eedU};
  return Engine(seq);
}

double uniform01(Engine& rng) { return static_cast<double>(rng() >> 11U) * 0x1.0p-53; }

std::uint64_t uniform_below(Engine& rng, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("uniform_below(0)");
  // Largest multiple of n that fits; values above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

BigInt uniform_below(Engine& rng, const BigInt& n) {
  if (n <= 0) throw InvalidArgument("uniform_below requires a positive bound");
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    return BigInt(uniform_below(rng, n.convert_to<std::uint64_t>()));
  }
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  const BigInt mask = (BigInt(1) << bits) - 1;
  while (true) {
    BigInt x = 0;
    for (unsigned filled = 0; filled < bits; filled += 64) x = (x << 64) | BigInt(rng());
    x &= mask;
    if (x < n) return x;
  }
}

}  // namespace souvlaki
