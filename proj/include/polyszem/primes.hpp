#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "polyszem/errors.hpp"

namespace polyszem::primes {

/// Sieve-backed tables for the von Mangoldt weight, its prime restriction,
/// and the W-trick normalization W = product of primes strictly below w.
struct WTrickTable {
  long long limit = 0;
  int w = 0;
  long long W = 0;
  long long phi_W = 0;
  std::vector<long long> coprime_residues;  // r in [1, W] with gcd(r, W) = 1
  std::vector<double> mangoldt;             // index 0..limit; log p at prime powers
  std::vector<std::uint8_t> is_prime;       // index 0..limit
  std::vector<long long> prime_list;

  long long pi(long long N) const;            // number of primes <= N
  double lambda(long long n) const;           // von Mangoldt
  double lambda_prime(long long n) const;     // restricted to primes
  bool coprime_to_W(long long r) const;
};

/// limit >= w >= 3; throws std::overflow_error if W leaves the int64 range.
WTrickTable build_table(long long limit, int w);

/// (phi(W)/W) * lambda_prime(W n + r); requires W n + r <= limit and
/// gcd(r, W) = 1.
double lambda_w_r(const WTrickTable& t, long long r, long long n);

struct CompareDetail {
  std::complex<double> prime_average;     // (1/pi(N)) sum_{p <= N} a(p)
  std::complex<double> weighted_average;  // (1/N) sum_{n <= N} lambda_prime(n) a(n)
  double difference;                      // | prime_average - weighted_average |
};

CompareDetail compare_prime_average_detail(const WTrickTable& t,
                                           const std::function<std::complex<double>(long long)>& a,
                                           long long N);
double compare_prime_average(const WTrickTable& t,
                             const std::function<std::complex<double>(long long)>& a,
                             long long N);

/// |(1/N) sum_{n <= N} (lambda_w_r(n) - 1)|.
double weight_discrepancy(const WTrickTable& t, long long r, long long N);

struct UniformityProfile {
  int w = 0;
  long long W = 0;
  long long N = 0;
  int d = 0;
  std::vector<std::pair<long long, double>> per_r;  // (r, norm) in residue order
  double max_norm = 0.0;
};

/// For each coprime residue r: the degree-d box norm of
/// (lambda_w_r - 1) restricted to [1, N] and embedded into Z_{dN}.
/// Exact mode covers d <= 3; d >= 4 trips the cost guard.
UniformityProfile uniformity_profile(const WTrickTable& t, long long N, int d, int threads = 1);

}  // namespace polyszem::primes
