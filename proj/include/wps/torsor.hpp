// mu_m-torsors over Q as classes of Q^x/(Q^x)^m: canonical representatives,
// reduced discriminant, quasi-discriminant heights, the field criterion, the
// exact quadratic-discriminant oracle, and bounded enumeration.
#pragma once

#include <functional>
#include <vector>

#include <gmpxx.h>

namespace wps {

// alpha(m) = m^2 - m^2/r with r the smallest prime of m.
long long alpha(int m);

struct TorsorClass {
  int m = 2;
  // canonical representative: every prime exponent in [0, m); positive when
  // m is odd
  mpz_class rep;
  // prod_{p | rep, p coprime to m} p^{m - gcd(v_p(rep), m)}
  mpz_class reduced_disc;

  friend bool operator==(const TorsorClass&, const TorsorClass&) = default;
};

TorsorClass canonicalize_torsor(const mpq_class& q, int m);

// Standard-family height H = reduced_disc^{m/alpha(m)} (local factor 1 at
// p | m and at the archimedean place). H^{m - m/r} = reduced_disc exactly.
double disc_height(const TorsorClass& x);

// Exact comparison disc_height(x) <= B, as reduced_disc <= B^{m - m/r}.
bool disc_height_leq(const TorsorClass& x, const mpq_class& B);

// Discriminant of the etale algebra Q[X]/(X^2 - rep) for m = 2, squarefree
// rep: rep if rep = 1 mod 4, else 4 rep; 1 for the trivial class.
mpz_class exact_quadratic_disc(const TorsorClass& x);

// True iff X^m - rep is irreducible over Q.
bool is_field(const TorsorClass& x);

// Field criterion on raw exponent data: sign in {-1, +1}, exps are the
// exponents of the distinct primes of the representative reduced mod m
// (entries for p | m included), two_exp the exponent of 2 among them (-1 if
// 2 is absent).
bool is_field_exponents(int m, int sign, const std::vector<int>& exps,
                        int two_exp);

// Emits every class with disc_height <= B once, ordered by
// (reduced_disc, |rep|, positive rep first). Requires B >= 1.
void enumerate_torsors(int m, const mpq_class& B,
                       const std::function<void(const TorsorClass&)>& emit);

// One-pass counting over a strictly increasing bound ladder. counts[i] /
// field_counts[i] cover disc_height <= bounds[i].
struct TorsorCounts {
  std::vector<long long> total;
  std::vector<long long> fields;
};
TorsorCounts count_torsors(int m, const std::vector<mpq_class>& bounds);

// Partial Dirichlet sum over classes with reduced_disc <= N of
// disc_height^{-s}; approaches (|mu_m(Q)|/m) * m^{1+#{p|m}} *
// prod_{p coprime to m} disc_transform_closed(m, p, s, trivial) as N grows.
double dirichlet_partial(int m, double s, long long N);

}  // namespace wps
