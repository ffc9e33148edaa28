#include "wps/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace wps {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // This witness set is deterministic for all n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == (u64)n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == (u64)n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// Pollard-Brent rho; n odd composite, no factor below the trial bound.
long long pollard_brent(long long n) {
  if (n % 2 == 0) return 2;
  u64 x0 = 2, c = 1;
  while (true) {
    u64 x = x0, y = x0, q = 1, g = 1, ys = 0;
    const int m = 128;
    int r = 1;
    while (g == 1) {
      x = y;
      for (int i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (int k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (int i = 0; i < std::min(m, r - k); ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd<u64>(q, n);
      }
      r <<= 1;
    }
    if (g == (u64)n) {
      g = 1;
      while (g == 1) {
        ys = (mulmod(ys, ys, n) + c) % n;
        g = std::gcd<u64>(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != (u64)n) return (long long)g;
    ++c, ++x0;
  }
}

void factor_rec(long long n, std::map<long long, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  long long d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

constexpr long long kTrialBound = 1000000;

}  // namespace

Factorization factor(long long n) {
  if (n == 0) throw std::domain_error("factor: n = 0");
  unsigned long long m = n < 0 ? -(unsigned long long)n : (unsigned long long)n;
  std::map<long long, int> acc;
  for (long long p : {2LL, 3LL, 5LL}) {
    while (m % p == 0) m /= p, ++acc[p];
  }
  // wheel mod 6
  for (long long p = 7; p <= kTrialBound && (u128)p * p <= m; p += (p % 6 == 1) ? 4 : 2) {
    while (m % p == 0) m /= p, ++acc[p];
  }
  if (m > 1) {
    if ((u128)kTrialBound * kTrialBound > m || is_prime((long long)m))
      ++acc[(long long)m];
    else
      factor_rec((long long)m, acc);
  }
  Factorization f;
  f.reserve(acc.size());
  for (auto& [p, e] : acc) f.push_back({p, e});
  return f;
}

Factorization factor(const mpz_class& n) {
  if (!n.fits_slong_p() && !(-n).fits_slong_p())
    throw std::domain_error("factor: input exceeds the desk-scale envelope");
  return factor((long long)n.get_si());
}

mpz_class reconstruct(const Factorization& f) {
  mpz_class r = 1, pw;
  for (auto& [p, e] : f) {
    mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    r *= pw;
  }
  return r;
}

long padic_valuation(const mpq_class& q, long long p) {
  if (q == 0) throw std::domain_error("padic_valuation: q = 0");
  mpz_class num = q.get_num(), den = q.get_den(), rem;
  long v = 0;
  const mpz_class pz(p);
  while (mpz_divisible_p(num.get_mpz_t(), pz.get_mpz_t())) {
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    ++v;
  }
  while (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t())) {
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    --v;
  }
  return v;
}

int mobius(long long n) {
  if (n < 1) throw std::domain_error("mobius: n < 1");
  if (n == 1) return 1;
  Factorization f = factor(n);
  for (auto& [p, e] : f)
    if (e > 1) return 0;
  return f.size() % 2 == 0 ? 1 : -1;
}

long long smallest_prime_factor(long long n) {
  if (n < 2) throw std::domain_error("smallest_prime_factor: n < 2");
  return factor(n).front().p;
}

const std::vector<long long>& primes_to(long long bound) {
  static std::mutex mu;
  static std::map<long long, std::vector<long long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bound);
  if (it != cache.end()) return it->second;
  std::vector<bool> sieve(bound + 1, true);
  std::vector<long long> primes;
  for (long long i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    primes.push_back(i);
    for (long long j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return cache.emplace(bound, std::move(primes)).first->second;
}

EulerProductResult zeta_euler(double s, long long prime_bound,
                              const std::set<long long>& excluded_primes) {
  if (s <= 1.0) throw std::domain_error("zeta_euler: s <= 1 diverges");
  EulerProductResult r;
  r.prime_bound = prime_bound;
  double log_value = 0.0;
  for (long long p : primes_to(prime_bound)) {
    if (excluded_primes.count(p)) continue;
    log_value -= std::log1p(-std::pow((double)p, -s));
  }
  r.value = std::exp(log_value);
  // sum_{p>P} -log(1-p^{-s}) <= (1/(1-P^{-s})) sum_{n>P} n^{-s}
  //                          <= P^{1-s} / ((s-1)(1-P^{-s}))
  const double P = (double)prime_bound;
  double log_tail = std::pow(P, 1.0 - s) / ((s - 1.0) * (1.0 - std::pow(P, -s)));
  r.tail_bound = std::expm1(log_tail);
  return r;
}

}  // namespace wps
