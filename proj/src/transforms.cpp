#include "wps/transforms.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "wps/torsor.hpp"

namespace wps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_right_half_plane(std::span<const std::complex<double>> s) {
  for (auto& sj : s)
    if (sj.real() <= 0.0)
      throw std::domain_error("transform: Re(s_j) <= 0");
}

}  // namespace

StackCharacter StackCharacter::trivial(int n) {
  return StackCharacter{.z = std::vector<std::complex<double>>(n, 1.0)};
}

StackCharacter StackCharacter::make(const Weights& w,
                                    std::vector<std::complex<double>> z) {
  if ((int)z.size() != w.n())
    throw std::invalid_argument("StackCharacter: size mismatch");
  std::complex<double> prod = 1.0;
  for (int j = 0; j < w.n(); ++j) {
    if (std::abs(std::abs(z[j]) - 1.0) > 1e-12)
      throw std::invalid_argument("StackCharacter: |z_j| != 1");
    for (int k = 0; k < w.a[j]; ++k) prod *= z[j];
  }
  if (std::abs(prod - 1.0) > 1e-12)
    throw std::invalid_argument("StackCharacter: prod z_j^{a_j} != 1");
  return StackCharacter{.z = std::move(z)};
}

StackCharacter StackCharacter::make_ramified(int n) {
  return StackCharacter{.z = std::vector<std::complex<double>>(n, 1.0),
                        .ramified = true};
}

std::complex<double> toric_transform_closed(const Weights& w, long long p,
                                            std::span<const std::complex<double>> s,
                                            const StackCharacter& chi) {
  if ((int)s.size() != w.n())
    throw std::invalid_argument("toric_transform_closed: size mismatch");
  require_right_half_plane(s);
  if (chi.ramified) return 0.0;
  const double logp = std::log((double)p);
  std::complex<double> result = 1.0;
  std::complex<double> as = 0.0;
  for (int j = 0; j < w.n(); ++j) {
    result /= 1.0 - chi.z[j] * std::exp(-logp * s[j]);
    as += (double)w.a[j] * s[j];
  }
  return result * (1.0 - std::exp(-logp * as));
}

std::complex<double> toric_transform_brute(const Weights& w, long long p,
                                           std::span<const std::complex<double>> s,
                                           const StackCharacter& chi, int cutoff_E) {
  if ((int)s.size() != w.n())
    throw std::invalid_argument("toric_transform_brute: size mismatch");
  require_right_half_plane(s);
  if (cutoff_E < 0) throw std::domain_error("toric_transform_brute: E < 0");
  if (chi.ramified) return 0.0;
  const int n = w.n();
  const int E = cutoff_E;
  const double logp = std::log((double)p);

  // power tables w_j^e for the term kernel w_j = z_j p^{-s_j}
  std::vector<std::vector<std::complex<double>>> pw(n);
  for (int j = 0; j < n; ++j) {
    pw[j].resize(E + 1);
    std::complex<double> base = chi.z[j] * std::exp(-logp * s[j]);
    pw[j][0] = 1.0;
    for (int e = 1; e <= E; ++e) pw[j][e] = pw[j][e - 1] * base;
  }

  // accumulate axis-0 row sums once; the D-range drops exactly the rows with
  // every e_j >= a_j
  std::complex<double> row_full = 0.0, row_high = 0.0;
  for (int e = 0; e <= E; ++e) {
    row_full += pw[0][e];
    if (e >= w.a[0]) row_high += pw[0][e];
  }
  if (n == 1) return row_full - row_high;

  // odometer over e_2..e_n
  std::vector<int> e(n, 0);
  std::complex<double> sum = 0.0;
  while (true) {
    std::complex<double> outer = 1.0;
    bool outer_high = true;
    for (int j = 1; j < n; ++j) {
      outer *= pw[j][e[j]];
      if (e[j] < w.a[j]) outer_high = false;
    }
    sum += outer * (outer_high ? row_full - row_high : row_full);
    int k = 1;
    while (k < n && e[k] == E) e[k] = 0, ++k;
    if (k == n) break;
    ++e[k];
  }
  return sum;
}

std::complex<double> disc_transform_closed(int m, long long p,
                                           std::complex<double> s,
                                           const TorsorCharacter& chi) {
  if (m < 2) throw std::domain_error("disc_transform_closed: m < 2");
  if (std::gcd((long long)m, p) != 1)
    throw std::domain_error("disc_transform_closed: p divides m");
  if (s.real() <= 0.0) throw std::domain_error("disc_transform_closed: Re(s) <= 0");
  if (chi.ramified) return 0.0;
  const long long a = alpha(m);
  const double logp = std::log((double)p);
  std::complex<double> sum = 0.0;
  for (int j = 0; j < m; ++j) {
    long long num = (long long)m * m - (long long)m * std::gcd((long long)j, (long long)m);
    std::complex<double> zeta =
        std::polar(1.0, kTwoPi * (double)(((long long)chi.k * j) % m) / (double)m);
    sum += zeta * std::exp(-logp * s * ((double)num / (double)a));
  }
  return sum;
}

FieldInvariants FieldInvariants::rationals(long long prime_bound) {
  FieldInvariants inv;
  inv.zeta = [prime_bound](double s) { return zeta_euler(s, prime_bound).value; };
  return inv;
}

double toric_peyre_constant(const Weights& w, const FieldInvariants& inv) {
  if (w.total < 2)
    throw std::domain_error("toric_peyre_constant: |a| < 2 (zeta diverges)");
  const int n = w.n();
  double zeta_abs = inv.zeta((double)w.total);
  double mu_gcd = (double)std::gcd((long long)w.g, (long long)inv.roots_of_unity);
  double arch = std::pow(std::pow(2.0, inv.r1) * std::pow(kTwoPi, inv.r2) /
                             std::sqrt(inv.abs_disc),
                         (double)n);
  return inv.class_number / zeta_abs * arch *
         std::pow((double)w.total, (double)(inv.r1 + inv.r2 - 1)) *
         inv.regulator * mu_gcd / (double)inv.roots_of_unity;
}

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// exponents of the degree-e discriminant transform at s = 1, scaled by the
// smallest prime r of m: (1 - gcd(eps,e)/e)/(1 - 1/r)
std::vector<double> embedded_exponents(int m, int e) {
  long long r = smallest_prime_factor(m);
  std::vector<double> exps(e);
  for (int eps = 0; eps < e; ++eps) {
    double g = (double)std::gcd((long long)eps, (long long)e);
    exps[eps] = (1.0 - g / (double)e) / (1.0 - 1.0 / (double)r);
  }
  return exps;
}

}  // namespace

EulerProductResult embedded_constant(int m, int e, long long prime_bound) {
  if (m < 2) throw std::domain_error("embedded_constant: m < 2");
  if (e < 1 || m % e != 0)
    throw std::domain_error("embedded_constant: e does not divide m");
  const long long r = smallest_prime_factor(m);
  if (e % r != 0)
    throw std::domain_error("embedded_constant: r does not divide e (pole order drops)");

  std::vector<long long> mprimes;
  for (auto& [p, k] : factor((long long)m)) mprimes.push_back(p);
  const std::vector<double> exps = embedded_exponents(m, e);

  EulerProductResult result;
  result.prime_bound = prime_bound;
  double log_value = (double)mprimes.size() * std::log((double)e);
  if (e % 2 == 0) log_value += std::log(2.0);  // |mu_e(Q)|
  for (long long p : mprimes)
    log_value += (double)(r - 1) * std::log1p(-1.0 / (double)p);

  for (long long p : primes_to(prime_bound)) {
    if (m % p == 0) continue;
    double w = 0.0;
    for (double lam : exps) w += std::pow((double)p, -lam);
    log_value += (double)(r - 1) * std::log1p(-1.0 / (double)p) + std::log(w);
  }
  result.value = std::exp(log_value);

  // Per-factor deviation: (1-x)^{r-1} sum_eps x^{lam_eps} = 1 + sum c_i x^{t_i}
  // with positive exponents t_i; |c| sums bound the tail coefficient, and the
  // smallest positive t bounds the decay.
  {
    // collect the exact finite expansion exponents/coefficients
    std::vector<std::pair<double, double>> terms;  // (exponent, coeff)
    // (1-x)^{r-1} = sum_k binom(r-1,k) (-x)^k
    std::vector<double> binom((size_t)r, 0.0);
    binom[0] = 1.0;
    for (int k = 1; k < (int)r; ++k)
      binom[k] = binom[k - 1] * (double)(r - k) / (double)k;
    for (int k = 0; k < (int)r; ++k) {
      double c = binom[k] * ((k % 2 == 0) ? 1.0 : -1.0);
      for (double lam : exps) terms.emplace_back(lam + k, c);
    }
    double theta = 1e300, coeff_sum = 0.0;
    for (auto& [t, c] : terms) {
      if (t < 1e-9) continue;  // constant term
      theta = std::min(theta, t);
    }
    for (auto& [t, c] : terms)
      if (t >= 1e-9) coeff_sum += std::abs(c);
    // sum over n > P of n^{-theta}; theta > 1 since the s-pole was divided out
    const double P = (double)prime_bound;
    double tail_sum = std::pow(P, 1.0 - theta) / (theta - 1.0);
    double eps_cap = coeff_sum * std::pow(P, -theta);
    double log_tail = coeff_sum * tail_sum / std::max(1e-300, 1.0 - eps_cap);
    result.tail_bound = std::expm1(log_tail);
  }
  return result;
}

EulerProductResult torsor_leading_constant(int m, long long prime_bound) {
  const long long r = smallest_prime_factor(m);
  EulerProductResult c = embedded_constant(m, m, prime_bound);
  c.value /= factorial((int)r - 2);
  return c;
}

EulerProductResult field_count_constant(int m, long long prime_bound) {
  if (m % 4 == 0)
    throw std::domain_error(
        "field_count_constant: unsupported for 4 | m (the closed form over Q "
        "requires 4 coprime to m; use brute-force counting)");
  const long long r = smallest_prime_factor(m);
  EulerProductResult result;
  result.prime_bound = prime_bound;
  result.value = 0.0;
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    int mu = mobius(d);
    if (mu == 0) continue;
    int e = m / d;
    if (e % r != 0) continue;  // pole order drops; no leading contribution
    EulerProductResult emb = embedded_constant(m, e, prime_bound);
    result.value += (double)mu * emb.value;
    result.tail_bound += emb.value * emb.tail_bound;
  }
  result.value /= factorial((int)r - 2);
  result.tail_bound /= factorial((int)r - 2);
  // convert the absolute tail back to a relative one
  if (result.value != 0.0) result.tail_bound /= std::abs(result.value);
  return result;
}

mpq_class local_volume_ratio(const Weights& w, long long p, int k,
                             const std::function<bool(std::span<const long long>)>& condition) {
  if (k < 1) throw std::domain_error("local_volume_ratio: k < 1");
  const int n = w.n();
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)k);
  if (!pk.fits_slong_p())
    throw std::domain_error("local_volume_ratio: p^k exceeds desk scale");
  const long long modulus = pk.get_si();

  // measure{x in Z_p^n : x = c mod p^k} = p^{-kn}; intersecting with the
  // excluded box (v(x_j) >= a_j for all j) contributes p^{-sum max(a_j, k)}
  // when c_j = 0 mod p^{min(a_j, k)} for every j.
  mpq_class total = 0;
  mpq_class cell(1);
  cell /= mpq_class(pk);
  mpq_class cell_n = 1;
  for (int j = 0; j < n; ++j) cell_n *= cell;

  // excluded-box mass within one residue cell
  mpq_class box_mass = 1;
  for (int j = 0; j < n; ++j) {
    long long mx = std::max<long long>(w.a[j], k);
    mpz_class pmx;
    mpz_ui_pow_ui(pmx.get_mpz_t(), (unsigned long)p, (unsigned long)mx);
    box_mass /= mpq_class(pmx);
  }
  std::vector<long long> pmin(n);
  for (int j = 0; j < n; ++j) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), (unsigned long)p,
                  (unsigned long)std::min<long long>(w.a[j], k));
    pmin[j] = t.get_si();
  }

  std::vector<long long> c(n, 0);
  while (true) {
    if (condition(c)) {
      total += cell_n;
      bool in_box_closure = true;
      for (int j = 0; j < n; ++j)
        if (c[j] % pmin[j] != 0) {
          in_box_closure = false;
          break;
        }
      if (in_box_closure) total -= box_mass;
    }
    int j = 0;
    while (j < n && c[j] == modulus - 1) c[j] = 0, ++j;
    if (j == n) break;
    ++c[j];
  }

  mpz_class pabs;
  mpz_ui_pow_ui(pabs.get_mpz_t(), (unsigned long)p, (unsigned long)w.total);
  mpq_class denom = 1 - mpq_class(1) / mpq_class(pabs);
  mpq_class ratio = total / denom;
  ratio.canonicalize();
  return ratio;
}

mpq_class arch_sign_ratio(int n,
                          const std::function<bool(std::span<const int>)>& allowed) {
  if (n < 1) throw std::domain_error("arch_sign_ratio: n < 1");
  std::vector<int> sign(n, -1);
  long long count = 0, totalp = 1LL << n;
  while (true) {
    if (allowed(sign)) ++count;
    int j = 0;
    while (j < n && sign[j] == 1) sign[j] = -1, ++j;
    if (j == n) break;
    sign[j] = 1;
  }
  mpq_class r(count, totalp);
  r.canonicalize();
  return r;
}

}  // namespace wps
