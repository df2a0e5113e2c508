#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyszem/errors.hpp"
#include "polyszem/intpoly.hpp"
#include "polyszem/pet.hpp"
#include "polyszem/primes.hpp"

namespace polyszem::dynamics {

using cd = std::complex<double>;

struct Observable {
  std::vector<cd> values;

  double sup_bound() const;
  static Observable ones(long long size);
  static Observable indicator(const std::vector<std::uint8_t>& ind);
};

struct EventSet {
  std::vector<std::uint8_t> indicator;

  double measure() const;  // uniform measure of the set
  static EventSet first_half(long long size);
  static EventSet full(long long size);
  static EventSet from_indices(long long size, const std::vector<long long>& idx);
};

/// Finitely many commuting permutations of {0..size-1} under uniform
/// measure.  Commutation is checked at construction.  Powers are applied per
/// cycle, with exponents reduced modulo the cycle length, so polynomial
/// exponents are evaluated modularly and never overflow.
class FiniteSystem {
 public:
  FiniteSystem(long long size, std::vector<std::vector<std::int32_t>> maps,
               std::vector<std::string> labels = {});

  static FiniteSystem cyclic_rotation(long long size);            // single x -> x+1
  static FiniteSystem torus_rotations(std::vector<long long> dims);  // one +1 map per axis

  long long size() const { return size_; }
  int ell() const { return static_cast<int>(maps_.size()); }
  const std::vector<std::vector<std::int32_t>>& maps() const { return maps_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::int32_t apply_power(int map, long long exponent, std::int32_t x) const;

  /// Image array of the composite map prod_i T_i^{q_i(arg)}; qs has one
  /// exponent polynomial per map and out gets resized to size().
  void composite_power(const std::vector<IntPoly>& qs, long long arg,
                       std::vector<std::int32_t>& out) const;

 private:
  long long size_;
  std::vector<std::vector<std::int32_t>> maps_;
  std::vector<std::string> labels_;
  // cycle decomposition per map: id/pos per point plus the cycles themselves
  std::vector<std::vector<std::int32_t>> cycle_id_, cycle_pos_;
  std::vector<std::vector<std::vector<std::int32_t>>> cycles_;
};

double l2_norm(const FiniteSystem& sys, const Observable& f);
double l2_distance(const FiniteSystem& sys, const Observable& f, const Observable& g);

/// g(x) = f((prod_i T_i^{e_i}) x).
Observable iterate(const FiniteSystem& sys, const std::vector<long long>& exponents,
                   const Observable& f);

/// Validates that every entry of the family is h-free and returns the plain
/// integer polynomials entries[i][j].
std::vector<std::vector<IntPoly>> numeric_entries(const pet::PolyFamily& fam);

/// (1/N) sum_n weights[n] prod_j f_j((prod_i T_i^{q_{i,j}(a n + b)}) x).
/// weights empty means all ones; affine (a, b) substitutes n -> a n + b
/// exactly before evaluation.
Observable weighted_multi_average(const FiniteSystem& sys, const std::vector<Observable>& fs,
                                  const pet::PolyFamily& fam, std::span<const double> weights,
                                  long long N, std::pair<long long, long long> affine = {1, 0});

struct PropKeyResult {
  std::vector<std::pair<long long, double>> per_r;  // (r, L2 norm of the discrepancy average)
  double max_norm = 0.0;
};

/// For each coprime residue r: L2 norm of
/// (1/N) sum_n (lambda_w_r(n) - 1) prod_j f_j((prod_i T_i^{q_{i,j}(W n + r)}) x).
PropKeyResult prop_key_experiment(const FiniteSystem& sys, const std::vector<Observable>& fs,
                                  const pet::PolyFamily& fam, const primes::WTrickTable& table,
                                  long long N, int threads = 1);

/// mu(A cap intersection_j (prod_i T_i^{e_{i,j}}) A); tuples[j] lists the
/// exponents of column j.
double joint_return_measure(const FiniteSystem& sys, const EventSet& A,
                            const std::vector<std::vector<long long>>& tuples);

/// (1/N) sum_n weights[n] mu(A cap intersection_j (prod T_i^{q_{i,j}(n)}) A).
/// weights empty means the unweighted average.
double recurrence_average(const FiniteSystem& sys, const EventSet& A, const pet::PolyFamily& fam,
                          std::span<const double> weights, long long N);

struct CauchyDiagnostic {
  std::vector<long long> grid;
  std::vector<std::vector<double>> distances;  // L2 distances between partial averages
};

/// Partial averages A(N_k) = (1/N_k) sum_{n <= N_k} lambda_prime(n) *
/// prod_j f_j(...) at the grid points, and their pairwise L2 distances.
CauchyDiagnostic cauchy_diagnostic(const FiniteSystem& sys, const std::vector<Observable>& fs,
                                   const pet::PolyFamily& fam, const primes::WTrickTable& table,
                                   const std::vector<long long>& grid);

}  // namespace polyszem::dynamics
