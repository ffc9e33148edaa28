// Closed-form local Fourier transforms with direct-summation oracles, and
// every predicted leading constant: toric Peyre constants, torsor counting
// constants, the Mobius field-count constant, and exact local volume ratios.
#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "wps/arith.hpp"
#include "wps/stack.hpp"

namespace wps {

// Unramified character of the local torus: z_j = chi^{(j)}(p) on the unit
// circle with prod_j z_j^{a_j} = 1. Ramified characters short-circuit every
// transform to 0.
struct StackCharacter {
  std::vector<std::complex<double>> z;
  bool ramified = false;

  static StackCharacter trivial(int n);
  // validates |z_j| = 1 and the weighted product constraint to 1e-12
  static StackCharacter make(const Weights& w,
                             std::vector<std::complex<double>> z);
  static StackCharacter make_ramified(int n);
};

// chi~(p) = e^{2 pi i k / m}; exact m-torsion.
struct TorsorCharacter {
  int m = 2;
  int k = 0;
  bool ramified = false;
};

// prod_j (1 - z_j p^{-s_j})^{-1} * (1 - p^{-a.s}); 0 for ramified characters.
std::complex<double> toric_transform_closed(const Weights& w, long long p,
                                            std::span<const std::complex<double>> s,
                                            const StackCharacter& chi);

// Direct sum over valuation vectors e in [0, E]^n inside the D-range of
// prod_j (z_j p^{-s_j})^{e_j}; converges to the closed form as E grows.
std::complex<double> toric_transform_brute(const Weights& w, long long p,
                                           std::span<const std::complex<double>> s,
                                           const StackCharacter& chi, int cutoff_E);

// sum_{j=0}^{m-1} p^{-s (m^2 - m gcd(j,m))/alpha(m)} zeta^j for p coprime to
// m; 0 for ramified characters.
std::complex<double> disc_transform_closed(int m, long long p,
                                           std::complex<double> s,
                                           const TorsorCharacter& chi);

// Field data for the closed-form leading constant; over Q all invariants are
// canonical and zeta comes from zeta_euler.
struct FieldInvariants {
  int r1 = 1, r2 = 0;
  double class_number = 1.0;
  double regulator = 1.0;
  int roots_of_unity = 2;
  double abs_disc = 1.0;
  std::function<double(double)> zeta;

  static FieldInvariants rationals(long long prime_bound);
};

// Leading coefficient of N(B) ~ c B for the degree-|a| toric height:
// (h/zeta_F(|a|)) (2^{r1}(2pi)^{r2}/sqrt|disc|)^n |a|^{r1+r2-1} Reg
// |mu_gcd(a)(F)| / w. Twisted families divide by the twist product.
double toric_peyre_constant(const Weights& w, const FieldInvariants& inv);

// tau((f^{*e})_v)/e over Q for e | m with r | e: the coefficient of the
// j^{m/e}-embedded classes in the field-count Mobius combination.
EulerProductResult embedded_constant(int m, int e, long long prime_bound);

// Coefficient of B log(B)^{r-2}: embedded_constant(m, m)/(r-2)!.
EulerProductResult torsor_leading_constant(int m, long long prime_bound);

// sum_{d | m, r | (m/d)} mu(d) embedded_constant(m, m/d) / (r-2)!.
// Unsupported when 4 | m (no closed form over Q).
EulerProductResult field_count_constant(int m, long long prime_bound);

// omega_p-ratio of the subset of D^a_p cut out by a residue condition at
// level p^k: measure{x in D : cond(x mod p^k)} / (1 - p^{-|a|}), exactly.
// The predicate sees residues in [0, p^k)^n.
mpq_class local_volume_ratio(const Weights& w, long long p, int k,
                             const std::function<bool(std::span<const long long>)>& condition);

// (number of allowed sign patterns) / 2^n over patterns in {-1,+1}^n.
mpq_class arch_sign_ratio(int n,
                          const std::function<bool(std::span<const int>)>& allowed);

}  // namespace wps
