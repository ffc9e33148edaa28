#include "wps/torsor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wps/arith.hpp"

namespace wps {

long long alpha(int m) {
  if (m < 2) throw std::domain_error("alpha: m < 2");
  long long r = smallest_prime_factor(m);
  return (long long)m * m - (long long)m * m / r;
}

namespace {

using u128 = unsigned __int128;

std::vector<long long> primes_of(int m) {
  std::vector<long long> ps;
  for (auto& [p, e] : factor((long long)m)) ps.push_back(p);
  return ps;
}

mpz_class u128_to_mpz(u128 v) {
  mpz_class hi((unsigned long)(v >> 64));
  return (hi << 64) + mpz_class((unsigned long)(v & ~0ull));
}

u128 to_u128(const mpz_class& z) {
  mpz_class hi = z >> 64;
  if (sgn(z) < 0 || hi >> 64 != 0)
    throw std::domain_error("bound exceeds the supported range");
  mpz_class lo = z - (hi << 64);
  return ((u128)hi.get_ui() << 64) | (u128)lo.get_ui();
}

}  // namespace

TorsorClass canonicalize_torsor(const mpq_class& q, int m) {
  if (m < 2) throw std::domain_error("canonicalize_torsor: m < 2");
  if (q == 0) throw std::domain_error("canonicalize_torsor: q = 0");
  std::map<long long, long> exps;
  for (auto& [p, e] : factor(mpz_class(q.get_num()))) exps[p] += e;
  for (auto& [p, e] : factor(mpz_class(q.get_den()))) exps[p] -= e;

  TorsorClass t{.m = m, .rep = 1, .reduced_disc = 1};
  int sign = sgn(q);
  if (m % 2 == 1) sign = 1;  // -1 = (-1)^m is an m-th power
  mpz_class pw;
  for (auto& [p, e] : exps) {
    long r = ((e % m) + m) % m;
    if (r == 0) continue;
    mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)p, (unsigned long)r);
    t.rep *= pw;
    if (m % p != 0) {
      long long d = m - std::gcd((long long)r, (long long)m);
      mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)p, (unsigned long)d);
      t.reduced_disc *= pw;
    }
  }
  if (sign < 0) t.rep = -t.rep;
  return t;
}

double disc_height(const TorsorClass& x) {
  double logd = std::log(x.reduced_disc.get_d());
  return std::exp(logd * (double)x.m / (double)alpha(x.m));
}

bool disc_height_leq(const TorsorClass& x, const mpq_class& B) {
  // H <= B  iff  reduced_disc <= B^{m - m/r}
  long long k = (long long)x.m - x.m / smallest_prime_factor(x.m);
  mpz_class num_pow, den_pow;
  mpz_pow_ui(num_pow.get_mpz_t(), mpz_class(B.get_num()).get_mpz_t(),
             (unsigned long)k);
  mpz_pow_ui(den_pow.get_mpz_t(), mpz_class(B.get_den()).get_mpz_t(),
             (unsigned long)k);
  return x.reduced_disc * den_pow <= num_pow;
}

mpz_class exact_quadratic_disc(const TorsorClass& x) {
  if (x.m != 2) throw std::domain_error("exact_quadratic_disc: m != 2");
  mpz_class d = x.rep;
  if (d == 1) return 1;
  for (auto& [p, e] : factor(d))
    if (e > 1) throw std::logic_error("exact_quadratic_disc: rep not squarefree");
  mpz_class mod4 = ((d % 4) + 4) % 4;
  return mod4 == 1 ? d : mpz_class(4 * d);
}

bool is_field_exponents(int m, int sign, const std::vector<int>& exps,
                        int two_exp) {
  // X^m - rep is reducible iff rep is an l-th power for some prime l | m,
  // or (when 4 | m) rep lies in -4 (Q^x)^4. exps holds the exponents at odd
  // primes; two_exp is v_2(|rep|).
  for (long long l : primes_of(m)) {
    if (l == 2 && sign < 0) continue;  // a negative number is not a square
    bool power = two_exp % l == 0;
    for (int e : exps)
      if (e % l != 0) {
        power = false;
        break;
      }
    if (power) return false;
  }
  if (m % 4 == 0 && sign < 0 && two_exp % 4 == 2) {
    bool others = true;
    for (int e : exps)
      if (e % 4 != 0) {
        others = false;
        break;
      }
    if (others) return false;  // rep = -4 t^4, and X^4 + 4t^4 splits
  }
  return true;
}

bool is_field(const TorsorClass& x) {
  int sign = sgn(x.rep) < 0 ? -1 : 1;
  std::vector<int> exps;
  int two_exp = 0;
  if (x.rep != 1 && x.rep != -1) {
    for (auto& [p, e] : factor(x.rep)) {
      if (p == 2)
        two_exp = e;
      else
        exps.push_back(e);
    }
  }
  return is_field_exponents(x.m, sign, exps, two_exp);
}

namespace {

// Recursive enumeration of "cores": squarefull-free exponent patterns at
// primes coprime to m, with an exact multiplicative budget on reduced_disc.
struct Descent {
  int m;
  std::vector<long long> primes;  // coprime to m, ascending
  std::vector<int> dexp;          // dexp[e] = m - gcd(e, m), e in [1, m)
  int dexp_min;
  u128 budget;
  std::function<void(u128, const std::vector<std::pair<long long, int>>&)> visit;
  std::vector<std::pair<long long, int>> core;

  void run(size_t idx, u128 d) {
    visit(d, core);
    for (size_t i = idx; i < primes.size(); ++i) {
      u128 p = (u128)primes[i];
      u128 pmin = 1;
      for (int k = 0; k < dexp_min; ++k) pmin *= p;
      if (pmin > budget / d) break;
      for (int e = 1; e < m; ++e) {
        u128 pd = 1;
        bool over = false;
        for (int k = 0; k < dexp[e]; ++k) {
          if (pd > budget / p) {
            over = true;
            break;
          }
          pd *= p;
        }
        if (over || pd > budget / d) continue;
        core.emplace_back(primes[i], e);
        run(i + 1, d * pd);
        core.pop_back();
      }
    }
  }
};

Descent make_descent(int m, u128 budget) {
  Descent ctx;
  ctx.m = m;
  ctx.budget = budget;
  ctx.dexp.assign(m, 0);
  ctx.dexp_min = m;
  for (int e = 1; e < m; ++e) {
    ctx.dexp[e] = m - (int)std::gcd((long long)e, (long long)m);
    ctx.dexp_min = std::min(ctx.dexp_min, ctx.dexp[e]);
  }
  mpz_class bz = u128_to_mpz(budget), root;
  mpz_root(root.get_mpz_t(), bz.get_mpz_t(), (unsigned long)ctx.dexp_min);
  long long pmax = root.fits_slong_p() ? root.get_si() : 0;
  if (pmax >= 2)
    for (long long p : primes_to(pmax))
      if (m % p != 0) ctx.primes.push_back(p);
  return ctx;
}

// floor(B^{m - m/r}), the integer cap on reduced_disc
u128 disc_budget(int m, const mpq_class& B) {
  long long k = (long long)m - m / smallest_prime_factor(m);
  mpz_class num_pow, den_pow;
  mpz_pow_ui(num_pow.get_mpz_t(), mpz_class(B.get_num()).get_mpz_t(),
             (unsigned long)k);
  mpz_pow_ui(den_pow.get_mpz_t(), mpz_class(B.get_den()).get_mpz_t(),
             (unsigned long)k);
  return to_u128(num_pow / den_pow);
}

// exponent tuples at the primes dividing m; these leave the height unchanged
struct InvisibleTable {
  std::vector<long long> mprimes;
  std::vector<std::vector<int>> tuples;
  std::vector<mpz_class> multipliers;  // prod p^{e}
};

InvisibleTable invisible_table(int m) {
  InvisibleTable t;
  t.mprimes = primes_of(m);
  std::vector<int> e(t.mprimes.size(), 0);
  while (true) {
    mpz_class mult = 1, pw;
    for (size_t i = 0; i < e.size(); ++i) {
      mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)t.mprimes[i],
                    (unsigned long)e[i]);
      mult *= pw;
    }
    t.tuples.push_back(e);
    t.multipliers.push_back(mult);
    size_t k = 0;
    while (k < e.size() && e[k] == m - 1) e[k] = 0, ++k;
    if (k == e.size()) break;
    ++e[k];
  }
  return t;
}

}  // namespace

void enumerate_torsors(int m, const mpq_class& B,
                       const std::function<void(const TorsorClass&)>& emit) {
  if (m < 2) throw std::domain_error("enumerate_torsors: m < 2");
  if (B < 1) throw std::domain_error("enumerate_torsors: B < 1");
  InvisibleTable inv = invisible_table(m);

  struct Entry {
    mpz_class disc, abs_rep;
    int sign;
  };
  std::vector<Entry> entries;

  Descent ctx = make_descent(m, disc_budget(m, B));
  ctx.visit = [&](u128 d, const std::vector<std::pair<long long, int>>& core) {
    mpz_class disc = u128_to_mpz(d);
    mpz_class core_rep = 1, pw;
    for (auto& [p, e] : core) {
      mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)p, (unsigned long)e);
      core_rep *= pw;
    }
    for (const mpz_class& mult : inv.multipliers) {
      for (int sign : {1, -1}) {
        if (sign < 0 && m % 2 == 1) continue;
        entries.push_back(Entry{disc, core_rep * mult, sign});
      }
    }
  };
  ctx.run(0, 1);

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.disc != b.disc) return a.disc < b.disc;
    if (a.abs_rep != b.abs_rep) return a.abs_rep < b.abs_rep;
    return a.sign > b.sign;
  });
  for (const Entry& e : entries)
    emit(TorsorClass{.m = m,
                     .rep = e.sign > 0 ? e.abs_rep : mpz_class(-e.abs_rep),
                     .reduced_disc = e.disc});
}

TorsorCounts count_torsors(int m, const std::vector<mpq_class>& bounds) {
  if (m < 2) throw std::domain_error("count_torsors: m < 2");
  for (size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] < 1) throw std::domain_error("count_torsors: B < 1");
    if (i > 0 && bounds[i] <= bounds[i - 1])
      throw std::domain_error("count_torsors: ladder not strictly increasing");
  }
  TorsorCounts counts;
  counts.total.assign(bounds.size(), 0);
  counts.fields.assign(bounds.size(), 0);
  if (bounds.empty()) return counts;

  std::vector<u128> budgets;
  for (auto& b : bounds) budgets.push_back(disc_budget(m, b));

  InvisibleTable inv = invisible_table(m);
  const bool even = m % 2 == 0;
  const long long variants = (long long)inv.tuples.size() * (even ? 2 : 1);

  Descent ctx = make_descent(m, budgets.back());
  ctx.visit = [&](u128 d, const std::vector<std::pair<long long, int>>& core) {
    size_t rung = 0;
    while (rung < budgets.size() && d > budgets[rung]) ++rung;
    if (rung == budgets.size()) return;

    std::vector<int> odd_exps;
    odd_exps.reserve(core.size() + inv.mprimes.size());
    int core_two = 0;
    for (auto& [p, e] : core) {
      if (p == 2)
        core_two = e;  // possible when m is odd
      else
        odd_exps.push_back(e);
    }
    long long field_variants = 0;
    const size_t base = odd_exps.size();
    for (const auto& tuple : inv.tuples) {
      odd_exps.resize(base);
      int two_exp = core_two;
      for (size_t k = 0; k < inv.mprimes.size(); ++k) {
        if (inv.mprimes[k] == 2)
          two_exp = tuple[k];
        else if (tuple[k] != 0)
          odd_exps.push_back(tuple[k]);
      }
      for (int sign : {1, -1}) {
        if (sign < 0 && !even) continue;
        if (is_field_exponents(m, sign, odd_exps, two_exp)) ++field_variants;
      }
    }
    for (size_t i = rung; i < budgets.size(); ++i) {
      counts.total[i] += variants;
      counts.fields[i] += field_variants;
    }
  };
  ctx.run(0, 1);
  return counts;
}

double dirichlet_partial(int m, double s, long long N) {
  if (s <= 1.0) throw std::domain_error("dirichlet_partial: s <= 1 diverges");
  if (N < 1) throw std::domain_error("dirichlet_partial: N < 1");
  InvisibleTable inv = invisible_table(m);
  const double variants = (double)inv.tuples.size() * (m % 2 == 0 ? 2.0 : 1.0);
  const double exponent = -s * (double)m / (double)alpha(m);

  double sum = 0.0;
  Descent ctx = make_descent(m, (u128)N);
  ctx.visit = [&](u128 d, const std::vector<std::pair<long long, int>>&) {
    sum += variants * std::exp(exponent * std::log((double)d));
  };
  ctx.run(0, 1);
  return sum;
}

}  // namespace wps
