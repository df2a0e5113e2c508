#include "polyszem/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "polyszem/errors.hpp"
#include "polyszem/gowers.hpp"
#include "polyszem/parallel.hpp"

namespace polyszem::primes {

long long WTrickTable::pi(long long N) const {
  if (N > limit) throw std::out_of_range("pi query beyond the sieve limit");
  auto it = std::upper_bound(prime_list.begin(), prime_list.end(), N);
  return static_cast<long long>(it - prime_list.begin());
}

double WTrickTable::lambda(long long n) const {
  if (n < 1 || n > limit) throw std::out_of_range("von Mangoldt query beyond the sieve limit");
  return mangoldt[static_cast<size_t>(n)];
}

double WTrickTable::lambda_prime(long long n) const {
  if (n < 1 || n > limit) throw std::out_of_range("von Mangoldt query beyond the sieve limit");
  return is_prime[static_cast<size_t>(n)] ? mangoldt[static_cast<size_t>(n)] : 0.0;
}

bool WTrickTable::coprime_to_W(long long r) const { return std::gcd(r, W) == 1; }

WTrickTable build_table(long long limit, int w) {
  if (w < 3) throw std::invalid_argument("w must be at least 3");
  if (limit < w) throw std::invalid_argument("sieve limit must be at least w");
  WTrickTable t;
  t.limit = limit;
  t.w = w;
  size_t n = static_cast<size_t>(limit) + 1;
  std::vector<std::uint8_t> composite(n, 0);
  t.mangoldt.assign(n, 0.0);
  t.is_prime.assign(n, 0);
  for (long long p = 2; p <= limit; ++p) {
    if (composite[static_cast<size_t>(p)]) continue;
    t.is_prime[static_cast<size_t>(p)] = 1;
    t.prime_list.push_back(p);
    double lp = std::log(static_cast<double>(p));
    for (long long q = p; q <= limit; q *= p) {
      t.mangoldt[static_cast<size_t>(q)] = lp;  // prime powers carry log p
      if (q > limit / p) break;
    }
    for (long long q = p * p; q <= limit; q += p) composite[static_cast<size_t>(q)] = 1;
  }
  t.W = 1;
  for (long long p : t.prime_list) {
    if (p >= w) break;
    if (t.W > std::numeric_limits<long long>::max() / p)
      throw std::overflow_error("W exceeds the integer range");
    t.W *= p;
  }
  t.phi_W = 0;
  for (long long r = 1; r <= t.W; ++r) {
    if (std::gcd(r, t.W) == 1) {
      t.coprime_residues.push_back(r);
      ++t.phi_W;
    }
  }
  return t;
}

double lambda_w_r(const WTrickTable& t, long long r, long long n) {
  if (!t.coprime_to_W(r)) throw std::invalid_argument("residue is not coprime to W");
  if (n < 1) throw std::invalid_argument("index must be positive");
  if (n > (t.limit - r) / t.W) throw std::out_of_range("W n + r exceeds the sieve limit");
  return static_cast<double>(t.phi_W) / static_cast<double>(t.W) * t.lambda_prime(t.W * n + r);
}

CompareDetail compare_prime_average_detail(const WTrickTable& t,
                                           const std::function<std::complex<double>(long long)>& a,
                                           long long N) {
  if (N < 2 || N > t.limit) throw std::invalid_argument("N must lie in [2, limit]");
  std::complex<double> ps{0, 0}, ws{0, 0};
  for (long long p : t.prime_list) {
    if (p > N) break;
    ps += a(p);
  }
  for (long long n = 1; n <= N; ++n) {
    double lp = t.lambda_prime(n);
    if (lp != 0.0) ws += lp * a(n);
  }
  CompareDetail out;
  out.prime_average = ps / static_cast<double>(t.pi(N));
  out.weighted_average = ws / static_cast<double>(N);
  out.difference = std::abs(out.prime_average - out.weighted_average);
  return out;
}

double compare_prime_average(const WTrickTable& t,
                             const std::function<std::complex<double>(long long)>& a,
                             long long N) {
  return compare_prime_average_detail(t, a, N).difference;
}

double weight_discrepancy(const WTrickTable& t, long long r, long long N) {
  double acc = 0.0;
  for (long long n = 1; n <= N; ++n) acc += lambda_w_r(t, r, n) - 1.0;
  return std::abs(acc / static_cast<double>(N));
}

UniformityProfile uniformity_profile(const WTrickTable& t, long long N, int d, int threads) {
  if (d < 1) throw std::invalid_argument("profile degree must be at least 1");
  if (d >= 4) throw CostGuardError("exact profiles stop at d = 3");
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (N > (t.limit - t.W) / t.W) throw std::out_of_range("W N + W exceeds the sieve limit");
  UniformityProfile out;
  out.w = t.w;
  out.W = t.W;
  out.N = N;
  out.d = d;
  out.per_r.resize(t.coprime_residues.size());
  parallel_for(static_cast<long long>(t.coprime_residues.size()), threads, [&](long long k) {
    long long r = t.coprime_residues[static_cast<size_t>(k)];
    gowers::ArithSequence seq;
    seq.values.resize(static_cast<size_t>(N));
    for (long long n = 1; n <= N; ++n)
      seq.values[static_cast<size_t>(n - 1)] = lambda_w_r(t, r, n) - 1.0;
    out.per_r[static_cast<size_t>(k)] = {r, gowers::gowers_norm(gowers::embed(seq, d), d)};
  });
  out.max_norm = 0.0;
  for (const auto& [r, v] : out.per_r) out.max_norm = std::max(out.max_norm, v);
  return out;
}

}  // namespace polyszem::primes
