#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "polyszem/errors.hpp"
#include "polyszem/intpoly.hpp"
#include "polyszem/primes.hpp"

namespace polyszem::patterns {

/// Axis-aligned box of dimension <= 3 with inclusive integer bounds.
struct Window {
  std::vector<std::pair<long long, long long>> ranges;

  int ell() const { return static_cast<int>(ranges.size()); }
  long long volume() const;
  void validate() const;
};

using Point = std::array<long long, 3>;  // coordinates beyond ell stay 0

/// Finite subset of a window with hashed membership; density is measured
/// against the window volume.
class WindowedSet {
 public:
  WindowedSet(Window window, std::vector<Point> members);

  /// Deterministic density-p random set: point inclusion is decided by a
  /// splitmix64 stream over the point index, so a (window, density, seed)
  /// triple names one set on every platform.
  static WindowedSet random(Window window, double density, std::uint64_t seed);

  const Window& window() const { return window_; }
  int ell() const { return window_.ell(); }
  const std::vector<Point>& members() const { return members_; }
  long long size() const { return static_cast<long long>(members_.size()); }
  bool contains(const Point& p) const;
  double density() const;

  WindowedSet translated(const std::vector<long long>& t) const;

 private:
  Window window_;
  std::vector<Point> members_;
  std::unordered_set<std::uint64_t> keys_;
  std::uint64_t key(const Point& p) const;
  bool in_window(const Point& p) const;
};

/// Largest density over a dyadic sweep of sub-boxes (axis halvings down to a
/// small floor); a second, localized estimate next to the global density.
double dyadic_max_density(const WindowedSet& E, int max_levels = 4);

/// m polynomial shift maps Z -> Z^ell, componentwise integer polynomials
/// with zero constant term.
struct PatternSpec {
  int ell = 0;
  std::vector<std::vector<IntPoly>> polys;  // polys[j][i], j < m, i < ell

  int m() const { return static_cast<int>(polys.size()); }
  void validate() const;
  std::vector<long long> shift_at(int j, long long n) const;

  /// "n^2;n" for ell = 1, components comma-separated for higher ell.
  static PatternSpec parse(const std::string& text, int ell);
};

/// Density of E cap (E - q_1(n)) cap ... on the sub-window where every
/// shifted copy still fits; throws WindowExhausted when that sub-window is
/// empty.
double intersection_density(const WindowedSet& E, const PatternSpec& spec, long long n);

struct SearchHit {
  long long prime;
  long long n;  // prime + shift
  double density;
};

struct SearchResult {
  std::vector<SearchHit> hits;
  long long skipped_window = 0;  // primes dropped because the window was exhausted
};

/// Scans primes p <= table.limit, tests n = p + shift (shift is -1 or +1),
/// and keeps those with intersection density >= threshold.  Window
/// exhaustion skips the prime and counts it.
SearchResult shifted_prime_search(const WindowedSet& E, const PatternSpec& spec,
                                  const primes::WTrickTable& table, int shift, double threshold);

struct CorrespondenceResult {
  double combinatorial;  // truncated intersection density
  double dynamical;      // torus-wrapped joint return measure
  double epsilon;        // window perimeter / volume
  bool within_tolerance; // combinatorial >= dynamical - epsilon
};

/// Compares the windowed intersection density against the same count on the
/// wrap-around torus system built from the window.
CorrespondenceResult correspondence_check(const WindowedSet& E, const PatternSpec& spec,
                                          long long n);

}  // namespace polyszem::patterns
