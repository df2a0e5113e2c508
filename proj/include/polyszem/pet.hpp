#pragma once

#include <optional>
#include <vector>

#include "polyszem/errors.hpp"
#include "polyszem/intpoly.hpp"

namespace polyszem::pet {

/// Polynomial in n with coefficients in Z[h]: coeffs[k] is the h-polynomial
/// multiplying n^k.  Substituting n -> n+h for the formal h stays inside
/// this ring, so one symbolic pass covers every shift at once.
struct ShiftPoly {
  std::vector<IntPoly> coeffs;

  static ShiftPoly zero() { return {}; }
  static ShiftPoly constant(long long c);
  static ShiftPoly h_constant(IntPoly c);          // constant in n, polynomial in h
  static ShiftPoly from_n_coeffs(IntPoly plain);   // h-free polynomial in n

  int degree() const;  // degree in n, -1 for the zero polynomial
  bool is_zero() const { return coeffs.empty(); }
  bool is_constant() const { return degree() <= 0; }
  const IntPoly& leading() const;  // requires degree() >= 0
  void normalize();

  bool operator==(const ShiftPoly&) const = default;
};

ShiftPoly sp_add(const ShiftPoly& a, const ShiftPoly& b);
ShiftPoly sp_sub(const ShiftPoly& a, const ShiftPoly& b);
ShiftPoly sp_neg(const ShiftPoly& a);

/// p(n+h) with h the formal coefficient variable.
ShiftPoly shift_formal(const ShiftPoly& p);
/// p(n+h) for a concrete integer h.
ShiftPoly shift_by(const ShiftPoly& p, long long h);
/// Evaluates the h variable at a concrete value, leaving a polynomial in n.
ShiftPoly substitute_h(const ShiftPoly& p, long long h);
/// p(a*n + b), exact.
ShiftPoly substitute_affine(const ShiftPoly& p, long long a, long long b);

/// Same degree >= 1 in n and identical leading coefficient in Z[h].
/// Two constants count as equivalent.
bool equivalent(const ShiftPoly& p, const ShiftPoly& q);

/// Ordered family of m columns of ell-tuples; entries[i][j] is the exponent
/// polynomial of the i-th transformation in the j-th column.
struct PolyFamily {
  int ell = 0;
  int m = 0;
  std::vector<std::vector<ShiftPoly>> entries;  // [ell][m]

  PolyFamily() = default;
  PolyFamily(int ell_, int m_);
  void validate() const;  // throws std::invalid_argument on shape violations
  int max_degree() const;
  std::vector<ShiftPoly> column(int j) const;

  bool operator==(const PolyFamily&) const = default;
};

PolyFamily substitute_h(const PolyFamily& f, long long h);
PolyFamily substitute_affine(const PolyFamily& f, long long a, long long b);

/// Row i counts equivalence classes among entries whose column is constant in
/// every row above i; within a row, position k counts classes of degree s-k,
/// so columns run from degree s down to degree 1.
struct TypeMatrix {
  int ell = 0;
  int s = 0;
  std::vector<std::vector<int>> w;  // [ell][s]

  TypeMatrix() = default;
  TypeMatrix(int ell_, int s_);
  bool is_zero() const;
  int at_degree(int i, int deg) const { return w[i][s - deg]; }
  int& at_degree(int i, int deg) { return w[i][s - deg]; }

  bool operator==(const TypeMatrix&) const = default;
};

/// Requires s >= max degree of the family.
TypeMatrix family_type(const PolyFamily& f, int s);

/// Row-major lexicographic order, highest degree first within each row.
bool type_less(const TypeMatrix& a, const TypeMatrix& b);

/// Shift-and-difference step for the chosen column: the 2m output columns
/// are (shifted family minus chosen tuple, family minus chosen tuple).
PolyFamily vdc_operation(const PolyFamily& f, int column);               // formal h
PolyFamily vdc_operation(const PolyFamily& f, int column, long long h);  // integer h

/// Drops columns that are constant in n, zeroes constant terms, and merges
/// duplicate columns.  The averages these families model absorb such terms
/// into the nearby functions, the type matrix is unchanged, and the
/// reduction lemma needs the cleanup to guarantee strict descent.
PolyFamily absorb_constants(const PolyFamily& f);

/// Keeps one representative per class of columns that are equivalent in
/// every row (same degree and leading h-coefficient rowwise).  The type
/// matrix only reads (degree, leading) pairs, so it is unchanged; the merge
/// caps the column growth of iterated differencing, which would otherwise
/// double the family each round and make high-degree reductions infeasible.
PolyFamily merge_equivalent_columns(const PolyFamily& f);

/// Picks a column whose formal-h vdc_operation strictly lowers the type.
/// Candidates ordered by descending degree of the first nonconstant entry are
/// probed first (they shorten traces when they verify), then the least-degree
/// column at the deepest level (which provably verifies), then every column.
/// Acceptance always rests on an explicit type comparison, never on the
/// ordering heuristic.  Throws NoReducingTuple if the exhaustive scan fails.
int choose_reducing_tuple(const PolyFamily& f, int s);

struct PetStep {
  int column = 0;                 // index into the normalized family at this step
  std::optional<long long> h;     // empty for the formal variable
  TypeMatrix type;                // type after the step

  bool operator==(const PetStep&) const = default;
};

struct PetTrace {
  TypeMatrix initial_type;
  std::vector<PetStep> steps;

  int degree_d() const { return static_cast<int>(steps.size()); }
  /// After d exhaustion steps the relevant uniformity norm is of degree d+1.
  int gowers_degree() const { return degree_d() + 1; }
};

///// Runs the full exhaustion: absorb constants, pick a reducing column, apply
/// the formal-h vdc_operation, until the type matrix is zero.  Types along
/// the trace are strictly decreasing.
PetTrace pet_reduce(const PolyFamily& f, int s);

}  // namespace polyszem::pet
