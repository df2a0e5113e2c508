#pragma once
// Shared fixtures: hand-built polynomial families and the seeded random
// family corpus used by the reduction stress tests.
#include <algorithm>
#include <vector>

#include "polyszem/pet.hpp"
#include "polyszem/util.hpp"

namespace testutil {

// Columns outermost, then one integer-coefficient polynomial (ascending
// powers of n) per level: mk(1, 2, {{{0,0,1}}, {{0,1}}}) is the pair (n^2, n).
inline polyszem::pet::PolyFamily mk(int ell, int m,
                                    std::vector<std::vector<std::vector<long long>>> cols) {
  polyszem::pet::PolyFamily f(ell, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < ell; ++i) {
      polyszem::IntPoly p;
      for (auto c : cols[static_cast<size_t>(j)][static_cast<size_t>(i)])
        p.push_back(polyszem::BigInt(c));
      polyszem::normalize(p);
      f.entries[i][j] = polyszem::pet::ShiftPoly::from_n_coeffs(p);
    }
  return f;
}

// One family drawn from the seeded stream: dimensions uniform in [1, max_lm],
// every entry a polynomial of degree up to max_deg with coefficients in
// [-3, 3].  Consuming families in sequence from one Rng reproduces a corpus.
inline polyszem::pet::PolyFamily random_family(polyszem::Rng& rng, int max_lm, int max_deg) {
  int ell = static_cast<int>(rng.range(1, max_lm));
  int m = static_cast<int>(rng.range(1, max_lm));
  polyszem::pet::PolyFamily f(ell, m);
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < m; ++j) {
      int deg = static_cast<int>(rng.range(0, max_deg));
      polyszem::IntPoly p;
      for (int k = 0; k <= deg; ++k) p.push_back(polyszem::BigInt(rng.range(-3, 3)));
      polyszem::normalize(p);
      f.entries[i][j] = polyszem::pet::ShiftPoly::from_n_coeffs(p);
    }
  return f;
}

inline int family_s(const polyszem::pet::PolyFamily& f) {
  return std::max(1, f.max_degree());
}

}  // namespace testutil
