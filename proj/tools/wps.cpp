// Command-line front end: counting experiments, transform checks,
// equidistribution, constant prediction, and CSV report emission.
//
// Exit codes: 0 all rows pass, 1 tolerance failure, 2 usage error, 3 I/O.

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wps/experiments.hpp"

namespace {

using namespace wps;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Weights parse_weights(const std::string& s) {
  std::vector<int> a;
  for (const std::string& t : split_commas(s)) {
    size_t pos = 0;
    int v = std::stoi(t, &pos);
    if (pos != t.size() || v < 1)
      throw std::invalid_argument("weights: entries must be positive integers");
    a.push_back(v);
  }
  return Weights(a);
}

std::map<long long, mpq_class> parse_twists(const std::string& s) {
  std::map<long long, mpq_class> twists;
  for (const std::string& t : split_commas(s)) {
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("twists: expected p=c entries");
    long long p = std::stoll(t.substr(0, eq));
    mpq_class c = parse_decimal_rational(t.substr(eq + 1));
    if (c <= 0) throw std::invalid_argument("twists: c_v must be > 0");
    twists[p] = c;
  }
  return twists;
}

// coord:p:k:r1|r2|... with coord 1-based
CoordCondition parse_condition(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4)
    throw std::invalid_argument("cond: expected coord:p:k:residues");
  CoordCondition c;
  c.coord = std::stoi(parts[0]) - 1;
  c.p = std::stoll(parts[1]);
  c.k = std::stoi(parts[2]);
  std::stringstream rs(parts[3]);
  while (std::getline(rs, item, '|')) c.residues.push_back(std::stoll(item));
  if (c.residues.empty()) throw std::invalid_argument("cond: no residues");
  return c;
}

int finish(const CountReport& report, const std::string& out_path) {
  if (out_path.empty()) {
    emit_csv(report, std::cout);
  } else {
    int rc = emit_csv_file(report, out_path);
    if (rc != 0) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 3;
    }
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  // merge an optional key=value config file: its tokens are injected right
  // after the subcommand so explicit flags override file values
  try {
    for (size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
        args.erase(args.begin() + i);
      } else {
        continue;
      }
      std::vector<std::string> tokens = config_file_tokens(path);
      size_t at = !args.empty() && args[0][0] != '-' ? 1 : 0;
      args.insert(args.begin() + at, tokens.begin(), tokens.end());
      break;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"weighted projective stack point counts and torsor statistics"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string weights_s, bounds_s, twists_s, cond_s, primes_s, out_path;
  int degree = 0, m = 0, threads = 1, cutoff = 200, chars = 10;
  unsigned seed = 1;
  long long prime_bound = 1000000, N = 10000;
  double tol = 0.02, s_param = 2.0;
  bool field_mode = false;
  int r1 = 1, r2 = 0, roots = 2;
  double class_number = 1.0, regulator = 1.0, abs_disc = 1.0, zeta_value = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--out", out_path, "CSV output path (default: stdout)");
    sub->add_option("--prime-bound", prime_bound, "Euler product truncation");
    sub->add_option("--tol", tol, "relative tolerance for pass/fail");
  };

  CLI::App* cs = app.add_subcommand("count-stack", "count classes of bounded toric height");
  add_common(cs);
  cs->add_option("--weights", weights_s, "weight vector, e.g. 4,6")->required();
  cs->add_option("--degree", degree, "height degree d")->required();
  cs->add_option("--bounds", bounds_s, "bound ladder, e.g. 1e4,1e5,1e6")->required();
  cs->add_option("--twists", twists_s, "constant twists, e.g. 5=2,7=3");
  cs->add_option("--threads", threads, "worker threads");

  CLI::App* ct = app.add_subcommand("count-torsors", "count classes of bounded quasi-discriminant height");
  add_common(ct);
  ct->add_option("--m", m, "torsor order m >= 2")->required();
  ct->add_option("--bounds", bounds_s, "bound ladder")->required();

  CLI::App* cf = app.add_subcommand("count-fields", "count field classes of bounded height");
  add_common(cf);
  cf->add_option("--m", m, "torsor order m >= 2")->required();
  cf->add_option("--bounds", bounds_s, "bound ladder")->required();
  cf->get_option("--tol")->default_val("0.15");

  CLI::App* tc = app.add_subcommand("transform-check", "closed-form transforms vs direct-summation oracles");
  add_common(tc);
  tc->add_option("--weights", weights_s, "weight vector (toric mode)");
  tc->add_option("--primes", primes_s, "primes to test, e.g. 2,3,5");
  tc->add_option("--cutoff", cutoff, "valuation cutoff E for the oracle");
  tc->add_option("--chars", chars, "random characters per weight system");
  tc->add_option("--seed", seed, "character RNG seed");
  tc->add_option("--m", m, "torsor mode: check the disc transform against partial sums");
  tc->add_option("--s", s_param, "torsor mode: real s > 1");
  tc->add_option("--N", N, "torsor mode: partial-sum cutoff");
  tc->get_option("--tol")->default_val("1e-9");

  CLI::App* eq = app.add_subcommand("equidistribution", "empirical fraction in a residue set vs local volume ratio");
  add_common(eq);
  eq->add_option("--weights", weights_s, "weight vector")->required();
  eq->add_option("--degree", degree, "height degree d")->required();
  eq->add_option("--bounds", bounds_s, "bound ladder")->required();
  eq->add_option("--cond", cond_s, "condition coord:p:k:r1|r2|...")->required();
  eq->add_option("--threads", threads, "worker threads");

  CLI::App* pc = app.add_subcommand("predict-constant", "print predicted leading constants with tails");
  add_common(pc);
  pc->add_option("--weights", weights_s, "weight vector (stack constant)");
  pc->add_option("--m", m, "torsor order (torsor constant)");
  pc->add_flag("--field", field_mode, "field-count constant instead of the torsor one");
  pc->add_option("--r1", r1, "number of real places");
  pc->add_option("--r2", r2, "number of complex places");
  pc->add_option("--class-number", class_number, "class number h");
  pc->add_option("--regulator", regulator, "regulator");
  pc->add_option("--roots-of-unity", roots, "number of roots of unity w");
  pc->add_option("--abs-disc", abs_disc, "absolute discriminant");
  pc->add_option("--zeta-value", zeta_value, "zeta_F(|a|) override for F != Q");

  CLI::App* di = app.add_subcommand("dirichlet", "partial Dirichlet sums vs the truncated Euler product");
  add_common(di);
  di->add_option("--m", m, "torsor order m >= 2")->required();
  di->add_option("--s", s_param, "real s > 1");
  di->add_option("--bounds", bounds_s, "reduced-discriminant cutoffs")->required();
  di->get_option("--tol")->default_val("1e-3");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      app.exit(e);
      return 0;
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cs->parsed()) {
      StackCountConfig cfg{.weights = parse_weights(weights_s),
                           .degree = degree,
                           .bounds = parse_bound_ladder(bounds_s),
                           .twists = twists_s.empty()
                                         ? std::map<long long, mpq_class>{}
                                         : parse_twists(twists_s),
                           .threads = threads,
                           .prime_bound = prime_bound,
                           .tolerance = tol};
      if (threads < 1) throw std::invalid_argument("threads must be >= 1");
      return finish(run_count_stack(cfg), out_path);
    }
    if (ct->parsed() || cf->parsed()) {
      TorsorCountConfig cfg{.m = m,
                            .bounds = parse_bound_ladder(bounds_s),
                            .fields = cf->parsed(),
                            .prime_bound = prime_bound,
                            .tolerance = tol};
      return finish(run_count_torsors(cfg), out_path);
    }
    if (tc->parsed()) {
      if (m != 0) {
        DirichletConfig cfg{.m = m,
                            .s = s_param,
                            .cutoffs = {N},
                            .prime_bound = prime_bound,
                            .tolerance = tol};
        return finish(run_dirichlet(cfg), out_path);
      }
      TransformCheckConfig cfg;
      cfg.weights = parse_weights(weights_s);
      cfg.cutoff = cutoff;
      cfg.random_characters = chars;
      cfg.seed = seed;
      cfg.tolerance = tol;
      for (const std::string& t : split_commas(primes_s))
        cfg.primes.push_back(std::stoll(t));
      if (cfg.primes.empty())
        throw std::invalid_argument("transform-check: no primes given");
      return finish(run_transform_check(cfg), out_path);
    }
    if (eq->parsed()) {
      EquidistributionConfig cfg{.weights = parse_weights(weights_s),
                                 .degree = degree,
                                 .bounds = parse_bound_ladder(bounds_s),
                                 .condition = parse_condition(cond_s),
                                 .threads = threads,
                                 .tolerance = tol};
      return finish(run_equidistribution(cfg), out_path);
    }
    if (pc->parsed()) {
      PredictConfig cfg;
      cfg.prime_bound = prime_bound;
      cfg.invariants = FieldInvariants::rationals(prime_bound);
      cfg.invariants.r1 = r1;
      cfg.invariants.r2 = r2;
      cfg.invariants.class_number = class_number;
      cfg.invariants.regulator = regulator;
      cfg.invariants.roots_of_unity = roots;
      cfg.invariants.abs_disc = abs_disc;
      if (zeta_value > 0.0)
        cfg.invariants.zeta = [zeta_value](double) { return zeta_value; };
      if (!weights_s.empty()) cfg.weights = parse_weights(weights_s);
      if (m != 0) cfg.m = m;
      cfg.field_constant = field_mode;
      if (!cfg.weights && !cfg.m)
        throw std::invalid_argument("predict-constant: give --weights or --m");
      return finish(run_predict(cfg), out_path);
    }
    if (di->parsed()) {
      DirichletConfig cfg{.m = m, .s = s_param, .prime_bound = prime_bound,
                          .tolerance = tol};
      for (const mpq_class& b : parse_bound_ladder(bounds_s)) {
        if (b.get_den() != 1)
          throw std::invalid_argument("dirichlet: cutoffs must be integers");
        cfg.cutoffs.push_back((long long)b.get_num().get_si());
      }
      return finish(run_dirichlet(cfg), out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
