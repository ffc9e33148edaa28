#include "wps/stack.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wps/arith.hpp"

namespace wps {

Weights::Weights(std::vector<int> weights) : a(std::move(weights)) {
  if (a.empty()) throw std::domain_error("Weights: empty weight vector");
  for (int w : a)
    if (w < 1) throw std::domain_error("Weights: entries must be >= 1");
  total = 0;
  g = 0;
  L = 1;
  for (int w : a) {
    total += w;
    g = std::gcd(g, (long long)w);
    L = std::lcm(L, (long long)w);
  }
}

namespace {

bool all_zero(std::span<const mpq_class> x) {
  for (const auto& q : x)
    if (q != 0) return false;
  return true;
}

long ceil_div(long num, long den) {  // den > 0
  return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

}  // namespace

long r_p(std::span<const mpq_class> x, const Weights& w, long long p) {
  if ((int)x.size() != w.n()) throw std::invalid_argument("r_p: size mismatch");
  if (all_zero(x)) throw std::domain_error("r_p: zero tuple");
  bool first = true;
  long r = 0;
  for (int j = 0; j < w.n(); ++j) {
    if (x[j] == 0) continue;
    long v = padic_valuation(x[j], p);
    long c = ceil_div(-v, w.a[j]);
    if (first || c > r) r = c, first = false;
  }
  return r;
}

StackPoint canonicalize(std::span<const mpq_class> x, const Weights& w) {
  if ((int)x.size() != w.n())
    throw std::invalid_argument("canonicalize: size mismatch");
  if (all_zero(x)) throw std::domain_error("canonicalize: zero tuple");

  // primes appearing in any numerator or denominator
  std::set<long long> primes;
  for (const auto& q : x) {
    if (q == 0) continue;
    for (auto& [p, e] : factor(mpz_class(q.get_num()))) primes.insert(p);
    for (auto& [p, e] : factor(mpz_class(q.get_den()))) primes.insert(p);
  }

  // scale by t = prod p^{r_p(x)}
  mpq_class t = 1;
  for (long long p : primes) {
    long r = r_p(x, w, p);
    if (r == 0) continue;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)p, (unsigned long)(r > 0 ? r : -r));
    if (r > 0)
      t *= mpq_class(pw);
    else
      t /= mpq_class(pw);
  }

  StackPoint pt{.coords = {}, .weights = w};
  pt.coords.reserve(w.n());
  for (int j = 0; j < w.n(); ++j) {
    mpq_class tj;
    mpz_pow_ui(tj.get_num_mpz_t(), t.get_num_mpz_t(), (unsigned long)w.a[j]);
    mpz_pow_ui(tj.get_den_mpz_t(), t.get_den_mpz_t(), (unsigned long)w.a[j]);
    mpq_class y = x[j] * tj;
    y.canonicalize();
    if (y.get_den() != 1)
      throw std::logic_error("canonicalize: scaled coordinate not integral");
    pt.coords.emplace_back(y.get_num());
  }

  // unit action: make the first nonzero odd-weight coordinate positive
  for (int j = 0; j < w.n(); ++j) {
    if (w.a[j] % 2 == 0 || pt.coords[j] == 0) continue;
    if (pt.coords[j] < 0) {
      for (int i = 0; i < w.n(); ++i)
        if (w.a[i] % 2 == 1) pt.coords[i] = -pt.coords[i];
    }
    break;
  }
  return pt;
}

bool class_equal(std::span<const mpq_class> x, std::span<const mpq_class> y,
                 const Weights& w) {
  return canonicalize(x, w) == canonicalize(y, w);
}

mpz_class axis_bound(const mpq_class& B, int a_j, int d, long long L) {
  if (B <= 0) throw std::domain_error("axis_bound: B <= 0");
  const unsigned long de = (unsigned long)d * (unsigned long)L;
  const unsigned long ae = (unsigned long)a_j * (unsigned long)L;
  mpz_class num_pow, den_pow;
  mpz_pow_ui(num_pow.get_mpz_t(), mpz_class(B.get_num()).get_mpz_t(), ae);
  mpz_pow_ui(den_pow.get_mpz_t(), mpz_class(B.get_den()).get_mpz_t(), ae);
  // max t >= 0 with t^{dL} * den(B)^{a_j L} <= num(B)^{a_j L}
  auto fits = [&](const mpz_class& t) {
    if (t < 0) return true;
    mpz_class tp;
    mpz_pow_ui(tp.get_mpz_t(), t.get_mpz_t(), de);
    return tp * den_pow <= num_pow;
  };
  mpz_class ratio = num_pow / den_pow;  // floor
  mpz_class guess;
  mpz_root(guess.get_mpz_t(), ratio.get_mpz_t(), de);
  while (!fits(guess)) --guess;
  while (fits(guess + 1)) ++guess;
  return guess;
}

namespace {

// a-primitivity of an integer tuple: no prime p with p^{a_j} | x_j for every
// j (zero coordinates never obstruct). A violating prime divides every
// nonzero coordinate, hence their gcd; checking primes of the gcd suffices.
bool violates_at(long long p, std::span<const long long> x, const Weights& w) {
  for (int j = 0; j < w.n(); ++j) {
    if (x[j] == 0) continue;
    long long m = x[j] < 0 ? -x[j] : x[j];
    int v = 0;
    while (v < w.a[j] && m % p == 0) m /= p, ++v;
    if (v < w.a[j]) return false;
  }
  return true;
}

bool is_a_primitive(std::span<const long long> x, const Weights& w) {
  long long g = 0;
  for (long long c : x) g = std::gcd(g, c < 0 ? -c : c);
  if (g == 1) return true;
  if (g == 0) return false;  // all-zero tuple, not a point
  for (long long p = 2; p * p <= g; p += (p == 2) ? 1 : 2) {
    if (g % p != 0) continue;
    if (violates_at(p, x, w)) return false;
    while (g % p == 0) g /= p;
  }
  if (g > 1 && violates_at(g, x, w)) return false;
  return true;
}

bool sign_normalized(std::span<const long long> x, const Weights& w) {
  for (int j = 0; j < w.n(); ++j) {
    if (w.a[j] % 2 == 0 || x[j] == 0) continue;
    return x[j] > 0;
  }
  return true;  // no nonzero odd-weight coordinate: the unit acts trivially
}

void scan(const Weights& w, std::span<const long long> bounds, long long lo_n,
          long long hi_n, const std::function<void(const StackPoint&)>& emit) {
  const int n = w.n();
  if (lo_n > hi_n) return;
  std::vector<long long> x(n, 0);
  StackPoint pt{.coords = std::vector<mpz_class>(n), .weights = w};

  auto try_emit = [&] {
    bool zero = true;
    for (long long c : x)
      if (c != 0) {
        zero = false;
        break;
      }
    if (zero || !sign_normalized(x, w) || !is_a_primitive(x, w)) return;
    for (int i = 0; i < n; ++i) pt.coords[i] = x[i];
    emit(pt);
  };

  for (long long xn = lo_n; xn <= hi_n; ++xn) {
    x[n - 1] = xn;
    if (n == 1) {
      try_emit();
      continue;
    }
    for (int i = 0; i + 1 < n; ++i) x[i] = -bounds[i];
    while (true) {
      try_emit();
      // odometer: x_1 fastest, so the stream is ascending lexicographic on
      // the reversed tuple (x_n, ..., x_1)
      int k = 0;
      while (k < n - 1 && x[k] == bounds[k]) x[k] = -bounds[k], ++k;
      if (k == n - 1) break;
      ++x[k];
    }
  }
}

}  // namespace

void enumerate_classes_range(const Weights& w, int d, const mpq_class& B,
                             const mpz_class& outer_lo, const mpz_class& outer_hi,
                             const std::function<void(const StackPoint&)>& emit) {
  if (B <= 0) throw std::domain_error("enumerate_classes: B <= 0");
  if (d < 1) throw std::domain_error("enumerate_classes: degree < 1");
  std::vector<long long> bounds(w.n());
  for (int j = 0; j < w.n(); ++j) {
    mpz_class b = axis_bound(B, w.a[j], d, w.L);
    if (!b.fits_slong_p())
      throw std::domain_error("enumerate_classes: bound exceeds desk scale");
    bounds[j] = b.get_si();
  }
  mpz_class lo = std::max(outer_lo, mpz_class(-bounds[w.n() - 1]));
  mpz_class hi = std::min(outer_hi, mpz_class(bounds[w.n() - 1]));
  if (lo > hi) return;
  scan(w, bounds, lo.get_si(), hi.get_si(), emit);
}

void enumerate_classes(const Weights& w, int d, const mpq_class& B,
                       const std::function<void(const StackPoint&)>& emit) {
  mpz_class b = axis_bound(B, w.a[w.n() - 1], d, w.L);
  enumerate_classes_range(w, d, B, -b, b, emit);
}

namespace {

struct Bezout {
  long long g, u, v;  // u*a + v*b = g >= 0
};

Bezout ext_gcd(long long a, long long b) {
  long long old_r = a, r = b, old_u = 1, u = 0, old_v = 0, v = 1;
  while (r != 0) {
    long long q = old_r / r;
    long long t = old_r - q * r;
    old_r = r, r = t;
    t = old_u - q * u, old_u = u, u = t;
    t = old_v - q * v, old_v = v, v = t;
  }
  if (old_r < 0) old_r = -old_r, old_u = -old_u, old_v = -old_v;
  return {old_r, old_u, old_v};
}

}  // namespace

std::vector<std::vector<long long>> weight_splitting_matrix(const Weights& w) {
  const int n = w.n();
  std::vector<long long> c(n);
  for (int j = 0; j < n; ++j) c[j] = w.a[j] / w.g;

  std::vector<std::vector<long long>> M(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) M[i][i] = 1;
  if (n == 1) return M;  // first column (1), det 1

  // Reduce c to e_1 by extended-gcd SL_2 blocks on rows (0, k); accumulating
  // the inverse blocks on columns of M keeps M * r = c invariant, so the
  // final M has first column c and determinant 1.
  std::vector<long long> r = c;
  for (int k = 1; k < n; ++k) {
    auto [g, u, v] = ext_gcd(r[0], r[k]);
    long long a0 = r[0] / g, b0 = r[k] / g;
    for (int i = 0; i < n; ++i) {
      long long m0 = M[i][0], mk = M[i][k];
      M[i][0] = m0 * a0 + mk * b0;   // column of T^{-1} = [[a0, -v], [b0, u]]
      M[i][k] = -m0 * v + mk * u;
    }
    r[0] = g;
    r[k] = 0;
  }
  return M;
}

}  // namespace wps
