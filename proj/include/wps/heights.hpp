// Local height factors and global heights on [P(a)(Q)]: toric, toric with
// per-place constant twists, and the inverse local height pairing used by the
// transform oracles.
#pragma once

#include <complex>
#include <map>
#include <span>

#include <gmpxx.h>

#include "wps/stack.hpp"

namespace wps {

enum class HeightKind { toric, toric_twisted, discriminant };

struct HeightFamily {
  Weights weights;
  int degree;
  HeightKind kind = HeightKind::toric;
  // per-place constant twists c_v > 0; key is the prime, 0 for the
  // archimedean place
  std::map<long long, mpq_class> twists;
  int m = 0;  // discriminant kind only (n = 1, degree = m)

  static HeightFamily toric_family(Weights w, int degree);
  static HeightFamily twisted(Weights w, int degree,
                              std::map<long long, mpq_class> twists);
  mpq_class twist_product() const;
};

struct LocalHeightValue {
  long long place = 0;  // prime, or 0 for the archimedean place
  double value = 1.0;
  mpq_class exact;      // exact rational power of p at finite places
  bool exact_valid = false;
};

// f_p(x) = p^{d r_p(x)}; equals 1 iff r_p(x) = 0.
LocalHeightValue toric_local_factor(std::span<const mpq_class> x,
                                    const Weights& w, int d, long long p);

// (max_j |x_j|^{1/a_j})^d
double toric_arch_factor(std::span<const mpq_class> x, const Weights& w, int d);

// Exact comparison (max_j |x_j|^{1/a_j})^d <= B for integer tuples, via the
// cross-multiplied integer powers used by enumerate_classes.
bool arch_factor_leq(std::span<const mpz_class> coords, const Weights& w, int d,
                     const mpq_class& B);

// Global height of the class of x for a toric or twisted family; invariant
// under rescaling by t in Q^x.
double height(std::span<const mpq_class> x, const HeightFamily& family);
double height(const StackPoint& pt, const HeightFamily& family);

// prod_j p^{-e_j s_j}: the reciprocal kernel H_p(s,.)^{-1} on the torus orbit
// with valuation vector e inside the D-range (e >= 0, some e_j < a_j). At
// s = (1,...,1) its reciprocal is the degree-|a| local height of the orbit.
std::complex<double> torus_local_pairing(std::span<const std::complex<double>> s,
                                         std::span<const int> e, const Weights& w,
                                         long long p);

}  // namespace wps
