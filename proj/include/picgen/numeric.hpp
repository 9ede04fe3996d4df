// numeric.hpp -- small exact-integer helpers shared across the library.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace picgen {

// Thrown on violated preconditions (bad p, mismatched fields, malformed input).
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Thrown when a desk-scale resource guard would be exceeded.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool is_prime_trial(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// p^n as u64, hard error past 2^63-1 (no silent wraparound).
inline std::uint64_t checked_pow_u64(std::uint64_t base, int exp) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > static_cast<unsigned __int128>(INT64_MAX))
      throw input_error("cardinality overflow: p^n exceeds 2^63-1");
  }
  return static_cast<std::uint64_t>(acc);
}

// floor(sqrt(x)) by Newton iteration, exact for all u64.
inline std::uint64_t isqrt_u64(std::uint64_t x) {
  if (x < 2) return x;
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r > x / r) --r;
  while ((r + 1) <= x / (r + 1)) ++r;
  return r;
}

// smallest r with r*r >= x
inline std::uint64_t ceil_sqrt_u64(std::uint64_t x) {
  std::uint64_t r = isqrt_u64(x);
  return (r * r == x) ? r : r + 1;
}

inline std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// a^e mod m for word-sized m (m < 2^31 keeps products in range via __int128 anyway)
inline std::int64_t powmod_i64(std::int64_t a, std::uint64_t e, std::int64_t m) {
  unsigned __int128 acc = 1, b = static_cast<std::uint64_t>(mod_pos(a, m));
  while (e) {
    if (e & 1) acc = acc * b % static_cast<std::uint64_t>(m);
    b = b * b % static_cast<std::uint64_t>(m);
    e >>= 1;
  }
  return static_cast<std::int64_t>(acc);
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  // extended Euclid; p prime, a not 0 mod p
  std::int64_t t = 0, newt = 1, r = p, newr = mod_pos(a, p);
  while (newr != 0) {
    std::int64_t qq = r / newr;
    std::int64_t tmp = t - qq * newt;
    t = newt; newt = tmp;
    tmp = r - qq * newr;
    r = newr; newr = tmp;
  }
  if (r != 1) throw input_error("inv_mod: argument not invertible");
  return mod_pos(t, p);
}

}  // namespace picgen
