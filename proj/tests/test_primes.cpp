#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "polyszem/errors.hpp"
#include "polyszem/primes.hpp"
#include "polyszem/util.hpp"

using namespace polyszem;
using namespace polyszem::primes;
using cd = std::complex<double>;

TEST_SUITE_BEGIN("primes");

TEST_CASE("table bookkeeping on small inputs") {
  auto t = build_table(1000, 5);
  CHECK(t.W == 6);
  CHECK(t.phi_W == 2);
  CHECK(t.coprime_residues == std::vector<long long>{1, 5});
  CHECK(t.lambda(8) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(t.lambda_prime(8) == 0.0);
  CHECK(t.lambda_prime(7) == doctest::Approx(std::log(7.0)).epsilon(1e-12));
  CHECK(t.lambda(1) == 0.0);
  CHECK(t.is_prime[2]);
  CHECK_FALSE(t.is_prime[9]);
  CHECK(t.pi(100) == 25);
  // w = 3 keeps only the prime 2; w = 7 multiplies up to 30.
  CHECK(build_table(100, 3).W == 2);
  CHECK(build_table(100, 7).W == 30);
}

TEST_CASE("normalized weight values and support") {
  auto t = build_table(10000, 5);
  CHECK(lambda_w_r(t, 1, 1) == doctest::Approx(std::log(7.0) / 3.0).epsilon(1e-12));
  CHECK(lambda_w_r(t, 5, 1) == doctest::Approx(std::log(11.0) / 3.0).epsilon(1e-12));
  for (long long n = 1; n <= 1000; ++n)
    for (long long r : t.coprime_residues) {
      bool supported = lambda_w_r(t, r, n) != 0.0;
      CHECK(supported == t.is_prime[static_cast<size_t>(t.W * n + r)]);
    }
}

TEST_CASE("table and weight validation") {
  CHECK_THROWS_AS(build_table(2, 3), std::invalid_argument);   // limit below w
  CHECK_THROWS_AS(build_table(1000, 2), std::invalid_argument);  // w below 3
  CHECK_THROWS_AS(build_table(1000, 150), std::overflow_error);  // W overflows
  auto t = build_table(100, 5);
  CHECK_THROWS_AS(lambda_w_r(t, 2, 1), std::invalid_argument);   // r not coprime
  CHECK_THROWS_AS(lambda_w_r(t, 1, 1000), std::out_of_range);  // past the table
}

TEST_CASE("log-weighted prime counts approach their densities") {
  auto t = build_table(1000000, 5);
  double psi = 0;
  for (long long n = 1; n <= 1000000; ++n) psi += t.lambda(n);
  psi /= 1e6;
  CHECK(psi == doctest::Approx(0.999586597495631).epsilon(1e-9));
  CHECK(std::abs(psi - 1.0) < 0.02);
  double mean1 = 0, mean5 = 0;
  long long N = 100000;
  auto tw = build_table(6 * N + 6, 5);
  for (long long n = 1; n <= N; ++n) {
    mean1 += lambda_w_r(tw, 1, n);
    mean5 += lambda_w_r(tw, 5, n);
  }
  CHECK(std::abs(mean1 / static_cast<double>(N) - 1.0) < 0.05);
  CHECK(std::abs(mean5 / static_cast<double>(N) - 1.0) < 0.05);
}

TEST_CASE("prime average versus weighted average") {
  auto t = build_table(100000, 3);
  auto one = [](long long) { return cd(1, 0); };
  auto alt = [](long long n) { return cd(n % 2 == 0 ? 1.0 : -1.0, 0.0); };
  auto zero = [](long long) { return cd(0, 0); };
  CHECK(compare_prime_average(t, zero, 1000) == 0.0);
  double d3 = compare_prime_average(t, one, 1000);
  double d4 = compare_prime_average(t, one, 10000);
  double d5 = compare_prime_average(t, one, 100000);
  CHECK(d3 == doctest::Approx(0.0437547348799411).epsilon(1e-9));
  CHECK(d4 == doctest::Approx(0.0104008620843018).epsilon(1e-9));
  CHECK(d5 == doctest::Approx(0.00314610731387466).epsilon(1e-9));
  CHECK(d5 < d4);
  CHECK(d4 < d3);
  double a3 = compare_prime_average(t, alt, 1000);
  double a5 = compare_prime_average(t, alt, 100000);
  CHECK(a3 == doctest::Approx(0.033236267336299).epsilon(1e-9));
  CHECK(a5 == doctest::Approx(0.00295146316824479).epsilon(1e-9));
  CHECK(a5 < 0.05);
  // Both averages of the alternating sequence sit near -1: all odd primes
  // contribute -1 and only p = 2 breaks the pattern.
  auto detail = compare_prime_average_detail(t, alt, 100000);
  CHECK(std::abs(detail.prime_average - cd(-1, 0)) < 0.01);
  CHECK(std::abs(detail.weighted_average - cd(-1, 0)) < 0.01);
}

TEST_CASE("per-residue weight discrepancy at the reference scale") {
  long long N = 100000;
  auto t = build_table(6 * N + 6, 5);
  CHECK(weight_discrepancy(t, 1, N) == doctest::Approx(0.00207838350063581).epsilon(1e-9));
  CHECK(weight_discrepancy(t, 5, N) == doctest::Approx(0.000491174265330941).epsilon(1e-9));
}

TEST_CASE("uniformity profile: structure and frozen trend points") {
  SUBCASE("degree 1 sanity") {
    auto t = build_table(2 * 10001 + 2, 3);
    auto p = uniformity_profile(t, 10000, 1);
    CHECK(p.max_norm == doctest::Approx(0.00976917614363466).epsilon(1e-9));
    CHECK(p.max_norm < 0.1);
  }
  SUBCASE("max equals the per-residue maximum and is nonnegative") {
    auto t = build_table(6 * 501 + 6, 5);
    auto p = uniformity_profile(t, 500, 2);
    CHECK(static_cast<long long>(p.per_r.size()) == t.phi_W);
    double mx = 0;
    for (auto [r, norm] : p.per_r) {
      CHECK(norm >= 0.0);
      mx = std::max(mx, norm);
    }
    CHECK(p.max_norm == mx);
  }
  SUBCASE("larger w lowers the degree-2 profile at N = 2000") {
    auto t3 = build_table(2 * 2001 + 2, 3);
    auto t7 = build_table(30 * 2001 + 30, 7);
    double at3 = uniformity_profile(t3, 2000, 2).max_norm;
    double at7 = uniformity_profile(t7, 2000, 2).max_norm;
    CHECK(at3 == doctest::Approx(0.329700819844519).epsilon(1e-9));
    CHECK(at7 == doctest::Approx(0.169932076495735).epsilon(1e-9));
    CHECK(at7 <= at3);
  }
  SUBCASE("larger N lowers the degree-2 profile at w = 5") {
    auto t = build_table(6 * 4001 + 6, 5);
    double small = uniformity_profile(t, 1000, 2).max_norm;
    double large = uniformity_profile(t, 4000, 2).max_norm;
    CHECK(small == doctest::Approx(0.214479215887373).epsilon(1e-9));
    CHECK(large == doctest::Approx(0.211667569023926).epsilon(1e-9));
    CHECK(large <= small);
  }
  SUBCASE("degree 4 trips the cost guard") {
    auto t = build_table(6 * 101 + 6, 5);
    CHECK_THROWS_AS(uniformity_profile(t, 100, 4), CostGuardError);
  }
}

TEST_CASE("threaded profile matches the serial one") {
  auto t = build_table(30 * 501 + 30, 7);
  auto serial = uniformity_profile(t, 500, 2, 1);
  auto threaded = uniformity_profile(t, 500, 2, 4);
  REQUIRE(serial.per_r.size() == threaded.per_r.size());
  for (size_t i = 0; i < serial.per_r.size(); ++i) {
    CHECK(serial.per_r[i].first == threaded.per_r[i].first);
    CHECK(serial.per_r[i].second == doctest::Approx(threaded.per_r[i].second).epsilon(1e-12));
  }
}

TEST_SUITE_END();
