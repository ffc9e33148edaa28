// Rational points of the weighted projective stack P(a) over Q: canonical
// a-primitive representatives, class equality, bounded enumeration, and the
// SL_n(Z) weight-splitting matrix.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace wps {

struct Weights {
  std::vector<int> a;  // all >= 1
  long long total = 0;  // |a| = sum a_j
  long long g = 1;      // gcd(a)
  long long L = 1;      // lcm(a)

  explicit Weights(std::vector<int> weights);
  int n() const { return (int)a.size(); }
  friend bool operator==(const Weights&, const Weights&) = default;
};

// Canonical representative of a class in [P(a)(Q)]: a-primitive integer
// coordinates, first nonzero odd-weight coordinate positive. Two points are
// the same class iff their coords are identical.
struct StackPoint {
  std::vector<mpz_class> coords;
  Weights weights;

  friend bool operator==(const StackPoint& x, const StackPoint& y) {
    return x.weights == y.weights && x.coords == y.coords;
  }
};

// Least k with p^k . x integral at p, i.e. sup ceil(-v_p(x_j)/a_j) over
// nonzero coordinates. Satisfies r_p(t.x) = r_p(x) - v_p(t).
long r_p(std::span<const mpq_class> x, const Weights& w, long long p);

// The unique a-primitive, sign-normalized representative of the class of x.
StackPoint canonicalize(std::span<const mpq_class> x, const Weights& w);

bool class_equal(std::span<const mpq_class> x, std::span<const mpq_class> y,
                 const Weights& w);

// Exact per-axis box bound: floor(B^{a_j/d}) decided by the cross-multiplied
// integer comparison t^{dL} * den(B)^{a_j L} <= num(B)^{a_j L}.
mpz_class axis_bound(const mpq_class& B, int a_j, int d, long long L);

// Emits every class with toric height of weighted degree d at most B exactly
// once. Stream order: ascending lexicographic on the reversed coordinate
// tuple (x_n outermost), so outer-coordinate ranges partition the stream.
void enumerate_classes(const Weights& w, int d, const mpq_class& B,
                       const std::function<void(const StackPoint&)>& emit);

// Same stream restricted to x_n in [outer_lo, outer_hi] (for parallel
// counting; the pieces concatenate to the full stream).
void enumerate_classes_range(const Weights& w, int d, const mpq_class& B,
                             const mpz_class& outer_lo, const mpz_class& outer_hi,
                             const std::function<void(const StackPoint&)>& emit);

// n x n integer matrix with determinant exactly 1 whose first column is
// (a_j / gcd(a))_j, built by iterated extended-gcd column completion.
std::vector<std::vector<long long>> weight_splitting_matrix(const Weights& w);

}  // namespace wps
