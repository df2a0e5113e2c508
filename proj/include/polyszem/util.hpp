#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace polyszem {

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}

/// Relative closeness with a tiny absolute floor for near-zero pairs.
inline bool rel_close(double a, double b, double tol, double abs_floor = 1e-12) {
  double diff = std::abs(a - b);
  return diff <= tol * std::max(std::abs(a), std::abs(b)) || diff <= abs_floor;
}

/// Neumaier-compensated sum, used to spot-check plain accumulation.
inline double compensated_sum(const std::vector<double>& xs) {
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  return s + c;
}

/// Deterministic RNG wrapper.  mt19937_64 has a standard-specified sequence
/// and the double conversion below avoids distribution objects, so streams
/// are identical across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  std::complex<double> box() {  // uniform square [-1,1]^2
    return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
  }

 private:
  std::mt19937_64 gen_;
};

/// splitmix64, used for index-addressable random membership decisions.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double splitmix_canonical(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(splitmix64(seed ^ splitmix64(index)) >> 11) * 0x1.0p-53;
}

}  // namespace polyszem
