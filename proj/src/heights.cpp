#include "wps/heights.hpp"

#include <cmath>
#include <stdexcept>

namespace wps {

HeightFamily HeightFamily::toric_family(Weights w, int degree) {
  return HeightFamily{.weights = std::move(w), .degree = degree};
}

HeightFamily HeightFamily::twisted(Weights w, int degree,
                                   std::map<long long, mpq_class> twists) {
  for (auto& [p, c] : twists)
    if (c <= 0) throw std::domain_error("HeightFamily: twist c_v <= 0");
  return HeightFamily{.weights = std::move(w),
                      .degree = degree,
                      .kind = HeightKind::toric_twisted,
                      .twists = std::move(twists)};
}

mpq_class HeightFamily::twist_product() const {
  mpq_class c = 1;
  for (auto& [p, cv] : twists) c *= cv;
  return c;
}

LocalHeightValue toric_local_factor(std::span<const mpq_class> x,
                                    const Weights& w, int d, long long p) {
  long r = r_p(x, w, p);  // throws on the zero tuple
  LocalHeightValue v{.place = p};
  long e = (long)d * r;
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)p, (unsigned long)(e > 0 ? e : -e));
  v.exact = e >= 0 ? mpq_class(pw) : mpq_class(1) / mpq_class(pw);
  v.exact_valid = true;
  v.value = v.exact.get_d();
  return v;
}

double toric_arch_factor(std::span<const mpq_class> x, const Weights& w, int d) {
  if ((int)x.size() != w.n())
    throw std::invalid_argument("toric_arch_factor: size mismatch");
  bool nonzero = false;
  double best = 0.0;
  for (int j = 0; j < w.n(); ++j) {
    if (x[j] == 0) continue;
    nonzero = true;
    double t = std::log(std::abs(x[j].get_d())) / w.a[j];
    best = std::max(best, t);
  }
  if (!nonzero) throw std::domain_error("toric_arch_factor: zero tuple");
  return std::exp(best * d);
}

bool arch_factor_leq(std::span<const mpz_class> coords, const Weights& w, int d,
                     const mpq_class& B) {
  if (B <= 0) throw std::domain_error("arch_factor_leq: B <= 0");
  // max_j |x_j|^{d/a_j} <= B  iff  |x_j|^{dL} den^{a_j L} <= num^{a_j L} for all j
  for (int j = 0; j < w.n(); ++j) {
    mpz_class xp, num_pow, den_pow;
    mpz_class ax = abs(coords[j]);
    mpz_pow_ui(xp.get_mpz_t(), ax.get_mpz_t(), (unsigned long)(d * w.L));
    mpz_pow_ui(num_pow.get_mpz_t(), mpz_class(B.get_num()).get_mpz_t(),
               (unsigned long)(w.a[j] * w.L));
    mpz_pow_ui(den_pow.get_mpz_t(), mpz_class(B.get_den()).get_mpz_t(),
               (unsigned long)(w.a[j] * w.L));
    if (xp * den_pow > num_pow) return false;
  }
  return true;
}

double height(const StackPoint& pt, const HeightFamily& family) {
  // canonical representative: every finite toric factor is 1
  const Weights& w = family.weights;
  bool nonzero = false;
  double best = 0.0;
  for (int j = 0; j < w.n(); ++j) {
    if (pt.coords[j] == 0) continue;
    nonzero = true;
    double t = std::log(std::abs(pt.coords[j].get_d())) / w.a[j];
    best = std::max(best, t);
  }
  if (!nonzero) throw std::domain_error("height: zero tuple");
  double h = std::exp(best * family.degree);
  if (family.kind == HeightKind::toric_twisted)
    h *= family.twist_product().get_d();
  return h;
}

double height(std::span<const mpq_class> x, const HeightFamily& family) {
  if (family.kind == HeightKind::discriminant)
    throw std::domain_error("height: discriminant families live on torsors");
  return height(canonicalize(x, family.weights), family);
}

std::complex<double> torus_local_pairing(std::span<const std::complex<double>> s,
                                         std::span<const int> e, const Weights& w,
                                         long long p) {
  if ((int)s.size() != w.n() || (int)e.size() != w.n())
    throw std::invalid_argument("torus_local_pairing: size mismatch");
  bool in_range = false;
  for (int j = 0; j < w.n(); ++j) {
    if (e[j] < 0) throw std::domain_error("torus_local_pairing: e_j < 0");
    if (e[j] < w.a[j]) in_range = true;
  }
  if (!in_range)
    throw std::domain_error("torus_local_pairing: e outside the D-range");
  std::complex<double> exponent = 0.0;
  for (int j = 0; j < w.n(); ++j) exponent += (double)e[j] * s[j];
  return std::exp(-std::log((double)p) * exponent);
}

}  // namespace wps
