// Exact integer/rational arithmetic shared by every module: factorization,
// p-adic valuations, multiplicative functions, truncated Euler products.
#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace wps {

struct PrimePower {
  long long p;
  int e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization of |n|, primes strictly increasing, exponents >= 1.
using Factorization = std::vector<PrimePower>;

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(long long n);

// Trial division up to 10^6, Pollard-Brent fallback. n != 0.
Factorization factor(long long n);
// Same, for bignum inputs that fit the desk-scale envelope (< 2^63).
Factorization factor(const mpz_class& n);

// prod p^e over the factorization.
mpz_class reconstruct(const Factorization& f);

// v_p(q) for q != 0; additive in q.
long padic_valuation(const mpq_class& q, long long p);

int mobius(long long n);

long long smallest_prime_factor(long long n);

// All primes <= bound, ascending. The returned vector is immutable and shared.
const std::vector<long long>& primes_to(long long bound);

struct EulerProductResult {
  double value = 1.0;
  double tail_bound = 0.0;  // relative error bound for the omitted p > prime_bound
  long long prime_bound = 0;
};

// prod_{p <= prime_bound, p not excluded} (1 - p^{-s})^{-1} with a rigorous
// relative tail bound from sum_{n > P} n^{-s} <= P^{1-s}/(s-1). Requires s > 1.
EulerProductResult zeta_euler(double s, long long prime_bound,
                              const std::set<long long>& excluded_primes = {});

}  // namespace wps
