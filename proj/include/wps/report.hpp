// Report rows, CSV emission, bound parsing, and the least-squares fits used
// by the counting experiments.
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wps {

struct ReportRow {
  std::string experiment;
  std::string bound;      // B column, already formatted
  std::string observed;   // exact integer for counts, %.12g otherwise
  double predicted = 0.0;
  double ratio = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct CountReport {
  std::vector<ReportRow> rows;
  bool all_pass() const;
};

// Fixed schema: experiment,B,observed,predicted,ratio,tolerance,pass
void emit_csv(const CountReport& report, std::ostream& out);
// Returns 0, or 3 on I/O failure.
int emit_csv_file(const CountReport& report, const std::string& path);

// 12-significant-digit formatting shared by every float column.
std::string format_g12(double v);
// Integral rationals print as integers, others at 12 significant digits.
std::string format_bound(const mpq_class& b);

// Exact rational from a decimal/scientific literal ("1e6", "2.5e3", "0.5").
mpq_class parse_decimal_rational(const std::string& text);
// Comma-separated bounds; must be strictly increasing and positive.
std::vector<mpq_class> parse_bound_ladder(const std::string& text);

// Least squares for N ~ c*f1(B) + c2*f2(B) over a ladder; deterministic
// summation order.
struct FitResult {
  double c = 0.0;
  double c2 = 0.0;
};
FitResult fit_two_basis(const std::vector<double>& b, const std::vector<double>& n,
                        const std::function<double(double)>& f1,
                        const std::function<double(double)>& f2);

// Line-oriented key=value config text (# comments) -> argv-style tokens
// ["--key", "value", ...]; unknown keys surface later as unknown options.
std::vector<std::string> config_file_tokens(const std::string& path);

}  // namespace wps
