// Acceptance gate: eleven end-to-end criteria, one line of output each.
// Every tolerance and runtime budget is pinned here in code.  The process
// exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "polyszem/dynamics.hpp"
#include "polyszem/gowers.hpp"
#include "polyszem/patterns.hpp"
#include "polyszem/pet.hpp"
#include "polyszem/primes.hpp"
#include "polyszem/util.hpp"
#include "test_helpers.hpp"

using namespace polyszem;
using cd = std::complex<double>;
using Clock = std::chrono::steady_clock;
using testutil::family_s;
using testutil::mk;
using testutil::random_family;

namespace {

int failures = 0;

void run(int index, const char* label, double budget_s, const std::function<void()>& body) {
  auto t0 = Clock::now();
  std::string verdict = "PASS";
  std::string detail;
  try {
    body();
  } catch (const std::exception& e) {
    verdict = "FAIL";
    detail = e.what();
  }
  double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  if (verdict == "PASS" && elapsed >= budget_s) {
    verdict = "FAIL";
    detail = "runtime budget exceeded";
  }
  if (verdict == "FAIL") ++failures;
  std::printf("%s %2d. %s (%.2fs / %.0fs budget)%s%s\n", verdict.c_str(), index, label, elapsed,
              budget_s, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

gowers::ArithSequence random_seq(Rng& rng, long long M) {
  gowers::ArithSequence a;
  for (long long n = 0; n < M; ++n) a.values.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
  a.modulus = M;
  return a;
}

}  // namespace

int main() {
  // 1. The quadratic one-tuple family reduces in exactly two differencing
  //    steps and lands at uniformity degree three.
  run(1, "quadratic family: two steps, degree-3 control", 1.0, [] {
    auto tr = pet::pet_reduce(mk(1, 1, {{{0, 0, 1}}}), 2);
    require(tr.steps.size() == 2, "expected exactly 2 steps");
    require(tr.gowers_degree() == 3, "expected uniformity degree 3");
  });

  // 2. Recursive norms match the brute-force cube averages, and the degree-2
  //    norm matches an independent Fourier fourth-moment oracle.
  run(2, "box norms agree with the cube-average oracle", 60.0, [] {
    Rng rng(301);
    for (long long M : {8LL, 16LL, 32LL, 64LL}) {
      for (int d = 1; d <= 3; ++d) {
        for (int rep = 0; rep < 50; ++rep) {
          auto a = random_seq(rng, M);
          double brute = gowers::brute_gowers(a, d);
          double rec = gowers::gowers_norm_recursive(a, d);
          require(rel_close(rec, brute, 1e-9), "recursive/brute mismatch");
          if (d == 2) {
            double sum = 0;
            for (long long x = 0; x < M; ++x) {
              cd hat = 0;
              for (long long n = 0; n < M; ++n)
                hat += a.values[static_cast<size_t>(n)] *
                       std::polar(1.0, -2 * M_PI * static_cast<double>(n * x) /
                                           static_cast<double>(M));
              hat /= static_cast<double>(M);
              sum += std::pow(std::abs(hat), 4.0);
            }
            require(rel_close(brute, std::pow(sum, 0.25), 1e-9), "Fourier identity mismatch");
          }
        }
      }
    }
  });

  // 3. The restricted cyclic cube sum equals the plain truncated sum on the
  //    reference weights (the exact 1/81 bookkeeping).
  run(3, "restricted and truncated cube sums coincide", 30.0, [] {
    gowers::ArithSequence ones;
    ones.values.assign(64, cd(1, 0));
    auto chk = gowers::example_identity_check(ones);
    require(rel_close(chk.restricted, chk.truncated, 1e-9), "all-ones weight mismatch");
    Rng rng(307);
    for (int rep = 0; rep < 20; ++rep) {
      gowers::ArithSequence a;
      for (int n = 0; n < 64; ++n) a.values.emplace_back(rng.range(0, 1) == 0 ? 1.0 : -1.0, 0.0);
      auto c = gowers::example_identity_check(a);
      require(rel_close(c.restricted, c.truncated, 1e-9), "random sign weight mismatch");
    }
    auto table = primes::build_table(2 * 129 + 2, 3);
    gowers::ArithSequence w;
    for (long long n = 1; n <= 128; ++n)
      w.values.emplace_back(primes::lambda_w_r(table, 1, n) - 1.0, 0.0);
    auto c = gowers::example_identity_check(w);
    require(rel_close(c.restricted, c.truncated, 1e-9), "prime weight mismatch");
  });

  // 4. The differencing inequality holds with constant 4 across the random
  //    campaign and on the closed-form constant sequence.
  run(4, "differencing inequality with constant 4", 30.0, [] {
    gowers::VectorSequence u;
    u.dim = 1;
    u.vectors.assign(64, std::vector<cd>{cd(1, 0)});
    auto b = gowers::vdc_inequality(u);
    require(std::abs(b.lhs - 1.0) < 1e-12, "constant case lhs");
    require(std::abs(b.rhs - (1.0 / 64 + 63.0 / 128)) < 1e-12, "constant case rhs");
    require(b.lhs <= 4.0 * b.rhs, "constant case violated");
    Rng rng(311);
    for (int rep = 0; rep < 200; ++rep) {
      gowers::VectorSequence v;
      v.dim = static_cast<int>(rng.range(1, 8));
      long long N = rng.range(2, 512);
      for (long long n = 0; n < N; ++n) {
        std::vector<cd> x;
        for (int k = 0; k < v.dim; ++k) x.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
        v.vectors.push_back(std::move(x));
      }
      auto r = gowers::vdc_inequality(v);
      require(r.lhs <= 4.0 * r.rhs, "random campaign violation");
    }
  });

  // 5. Sieve bookkeeping: log-weight values, the small product W, and unit
  //    mean of the normalized weight.
  run(5, "prime tables and normalized weight mean", 30.0, [] {
    long long N = 100000;
    auto t = primes::build_table(6 * N + 6, 5);
    require(std::abs(t.lambda(8) - std::log(2.0)) < 1e-12, "lambda(8)");
    require(t.lambda_prime(8) == 0.0, "lambda'(8)");
    require(t.W == 6 && t.phi_W == 2, "W or phi(W)");
    require(t.coprime_residues == std::vector<long long>{1, 5}, "coprime residues");
    for (long long r : t.coprime_residues) {
      double mean = 0;
      for (long long n = 1; n <= N; ++n) mean += primes::lambda_w_r(t, r, n);
      mean /= static_cast<double>(N);
      require(std::abs(mean - 1.0) < 0.05, "weight mean off for r=" + std::to_string(r));
    }
  });

  // 6. The prime average and the weighted full average drift together as N
  //    grows, for the constant and the alternating test sequences.
  run(6, "prime vs weighted averages converge together", 30.0, [] {
    auto t = primes::build_table(100000, 3);
    auto one = [](long long) { return cd(1, 0); };
    auto alt = [](long long n) { return cd(n % 2 == 0 ? 1.0 : -1.0, 0.0); };
    for (auto& fn : {std::function<cd(long long)>(one), std::function<cd(long long)>(alt)}) {
      double small = primes::compare_prime_average(t, fn, 1000);
      double large = primes::compare_prime_average(t, fn, 100000);
      require(large < 0.05, "difference too large at N=1e5");
      require(large < small, "difference did not shrink from N=1e3 to N=1e5");
    }
  });

  // 7. The uniformity profile improves with larger w at fixed N, and with
  //    larger N at fixed w.
  run(7, "uniformity profile trends", 300.0, [] {
    auto t3 = primes::build_table(2 * 2001 + 2, 3);
    auto t7 = primes::build_table(30 * 2001 + 30, 7);
    double at3 = primes::uniformity_profile(t3, 2000, 2).max_norm;
    double at7 = primes::uniformity_profile(t7, 2000, 2).max_norm;
    require(at7 <= at3, "w=7 profile above w=3 at N=2000");
    auto t5 = primes::build_table(6 * 4001 + 6, 5);
    double small = primes::uniformity_profile(t5, 1000, 2).max_norm;
    double large = primes::uniformity_profile(t5, 4000, 2).max_norm;
    require(large <= small, "N=4000 profile above N=1000 at w=5");
  });

  // 8. With all observables equal to one, the dynamical discrepancy equals
  //    the scalar weight discrepancy.
  run(8, "scalar reduction of the discrepancy experiment", 60.0, [] {
    long long N = 2000;
    auto t = primes::build_table(6 * (N + 1) + 6, 5);
    auto sys = dynamics::FiniteSystem::cyclic_rotation(101);
    auto fam = mk(1, 1, {{{0, 0, 1}}});
    auto res =
        dynamics::prop_key_experiment(sys, {dynamics::Observable::ones(101)}, fam, t, N);
    for (auto [r, norm] : res.per_r) {
      double scalar = primes::weight_discrepancy(t, r, N);
      require(std::abs(norm - scalar) < 1e-12,
              "mismatch at r=" + std::to_string(r));
    }
  });

  // 9. Prime-weighted return averages are strictly positive on the half
  //    circle, and every odd prime is a return time of the even integers.
  run(9, "recurrence positivity and shifted-prime hits", 60.0, [] {
    auto sys = dynamics::FiniteSystem::cyclic_rotation(32);
    auto A = dynamics::EventSet::first_half(32);
    auto fam = mk(1, 1, {{{0, 1}}});
    auto t = primes::build_table(2 * 513 + 2, 3);
    std::vector<double> w(512);
    for (long long n = 1; n <= 512; ++n)
      w[static_cast<size_t>(n - 1)] = primes::lambda_w_r(t, 1, n);
    double avg = dynamics::recurrence_average(sys, A, fam, w, 512);
    require(avg > 0.0, "weighted return average not positive");

    patterns::Window window;
    window.ranges.push_back({0, 1998});
    std::vector<patterns::Point> pts;
    for (long long x = 0; x <= 1998; x += 2) pts.push_back({x, 0, 0});
    patterns::WindowedSet E(window, pts);
    auto spec = patterns::PatternSpec::parse("n", 1);
    auto table = primes::build_table(1000, 3);
    auto res = patterns::shifted_prime_search(E, spec, table, -1, 1e-12);
    require(res.skipped_window == 0, "windows were skipped");
    std::set<long long> hits;
    for (const auto& h : res.hits) hits.insert(h.prime);
    long long odd_primes = 0;
    for (long long p : table.prime_list) {
      if (p > 1000) break;
      if (p == 2) continue;
      ++odd_primes;
      require(hits.count(p) == 1, "missing odd prime " + std::to_string(p));
    }
    require(static_cast<long long>(hits.size()) == odd_primes, "unexpected extra hits");
  });

  // 10. Partial averages along a quadratic orbit of a single rotation get
  //     closer together as the average length doubles.
  run(10, "partial averages tighten on a single rotation", 120.0, [] {
    auto sys = dynamics::FiniteSystem::cyclic_rotation(64);
    dynamics::Observable f;
    for (int x = 0; x < 64; ++x) f.values.push_back(std::polar(1.0, 2 * M_PI * x / 64.0));
    auto t = primes::build_table(4001, 3);
    auto d = dynamics::cauchy_diagnostic(sys, {f}, mk(1, 1, {{{0, 0, 1}}}), t,
                                         {500, 1000, 2000, 4000});
    require(d.distances[2][3] < d.distances[0][1], "distances did not shrink");
  });

  // 11. Five hundred random families at moderate size all reduce to zero
  //     type with strictly decreasing steps and no selection failures.
  run(11, "five hundred random reductions terminate", 120.0, [] {
    Rng rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
      auto f = random_family(rng, 3, 4);
      auto tr = pet::pet_reduce(f, family_s(f));
      const pet::TypeMatrix* prev = &tr.initial_type;
      for (const auto& st : tr.steps) {
        require(pet::type_less(st.type, *prev), "non-decreasing step");
        prev = &st.type;
      }
      require(prev->is_zero(), "walk ended above zero type");
    }
  });

  if (failures == 0) {
    std::printf("all 11 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", failures);
  return 1;
}
