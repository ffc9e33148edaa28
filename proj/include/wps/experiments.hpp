// Experiment orchestration shared by the CLI and the acceptance suite:
// ladder counting (stacks, torsors, fields), equidistribution fractions,
// transform grids, and prediction assembly.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wps/heights.hpp"
#include "wps/report.hpp"
#include "wps/stack.hpp"
#include "wps/torsor.hpp"
#include "wps/transforms.hpp"

namespace wps {

// residue condition: coordinate `coord` (0-based) lies in `residues` mod p^k
struct CoordCondition {
  int coord = 0;
  long long p = 2;
  int k = 1;
  std::vector<long long> residues;

  long long modulus() const;
  bool matches(const mpz_class& value) const;
};

struct StackLadderCounts {
  std::vector<long long> totals;
  std::vector<long long> in_condition;  // zero-filled without a condition
};

// One enumeration pass at the largest bound; exact per-rung counts. The
// height is the degree-d toric height scaled by `height_scale` (the twist
// product; 1 for the plain toric family).
StackLadderCounts count_stack_ladder(const Weights& w, int d,
                                     const std::vector<mpq_class>& bounds,
                                     const mpq_class& height_scale, int threads,
                                     const std::optional<CoordCondition>& cond);

struct StackCountConfig {
  Weights weights;
  int degree;
  std::vector<mpq_class> bounds;
  std::map<long long, mpq_class> twists;
  int threads = 1;
  long long prime_bound = 1000000;
  double tolerance = 0.02;
};
CountReport run_count_stack(const StackCountConfig& cfg);

struct TorsorCountConfig {
  int m = 2;
  std::vector<mpq_class> bounds;
  bool fields = false;  // count field classes instead of all classes
  long long prime_bound = 1000000;
  double tolerance = 0.02;
};
CountReport run_count_torsors(const TorsorCountConfig& cfg);

// Secondary basis exponent for the r = 2 fit (next singularity of the local
// transform), e.g. 3/4 for m = 6, 1/2 for m = 2.
double secondary_fit_exponent(int m);

struct EquidistributionConfig {
  Weights weights;
  int degree;
  std::vector<mpq_class> bounds;
  CoordCondition condition;
  int threads = 1;
  double tolerance = 0.02;
};
CountReport run_equidistribution(const EquidistributionConfig& cfg);

struct TransformCheckConfig {
  Weights weights;
  std::vector<long long> primes;
  int cutoff = 200;
  int random_characters = 10;
  unsigned seed = 1;
  std::vector<double> s_values = {1.1, 1.5, 2.0, 3.0};
  double tolerance = 1e-9;
};
// max |closed - brute| per prime over the full grid
CountReport run_transform_check(const TransformCheckConfig& cfg);
double transform_grid_max_error(const TransformCheckConfig& cfg, long long p);

struct DirichletConfig {
  int m = 2;
  double s = 2.0;
  std::vector<long long> cutoffs;  // reduced_disc caps
  long long prime_bound = 1000000;
  double tolerance = 1e-3;  // enforced on the final cutoff
};
CountReport run_dirichlet(const DirichletConfig& cfg);
// the truncated Euler-product limit the partial sums approach
double dirichlet_limit(int m, double s, long long prime_bound);

struct PredictConfig {
  std::optional<Weights> weights;
  std::optional<int> m;
  bool field_constant = false;
  long long prime_bound = 1000000;
  FieldInvariants invariants = FieldInvariants::rationals(1000000);
};
CountReport run_predict(const PredictConfig& cfg);

}  // namespace wps
