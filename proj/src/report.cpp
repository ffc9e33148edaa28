#include "wps/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace wps {

bool CountReport::all_pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_bound(const mpq_class& b) {
  if (b.get_den() == 1) return b.get_num().get_str();
  return format_g12(b.get_d());
}

void emit_csv(const CountReport& report, std::ostream& out) {
  out << "experiment,B,observed,predicted,ratio,tolerance,pass\n";
  for (const auto& r : report.rows) {
    out << r.experiment << ',' << r.bound << ',' << r.observed << ','
        << format_g12(r.predicted) << ',' << format_g12(r.ratio) << ','
        << format_g12(r.tolerance) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

int emit_csv_file(const CountReport& report, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return 3;
  emit_csv(report, f);
  f.flush();
  return f ? 0 : 3;
}

mpq_class parse_decimal_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty numeric literal");
  size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  std::string digits;
  long frac_len = 0, exp10 = 0;
  bool any = false;
  for (; i < text.size() && isdigit((unsigned char)text[i]); ++i)
    digits += text[i], any = true;
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && isdigit((unsigned char)text[i]); ++i)
      digits += text[i], ++frac_len, any = true;
  }
  if (!any) throw std::invalid_argument("malformed numeric literal: " + text);
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-'))
      eneg = text[i++] == '-';
    if (i == text.size()) throw std::invalid_argument("malformed exponent: " + text);
    long e = 0;
    for (; i < text.size() && isdigit((unsigned char)text[i]); ++i) {
      e = e * 10 + (text[i] - '0');
      if (e > 1000000) throw std::invalid_argument("exponent out of range: " + text);
    }
    exp10 = eneg ? -e : e;
  }
  if (i != text.size())
    throw std::invalid_argument("malformed numeric literal: " + text);

  mpz_class mantissa(digits.empty() ? "0" : digits);
  mpq_class value(mantissa);
  long net = exp10 - frac_len;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, (unsigned long)(net >= 0 ? net : -net));
  if (net >= 0)
    value *= mpq_class(pow10);
  else
    value /= mpq_class(pow10);
  value.canonicalize();
  return neg ? mpq_class(-value) : value;
}

std::vector<mpq_class> parse_bound_ladder(const std::string& text) {
  std::vector<mpq_class> bounds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    bounds.push_back(parse_decimal_rational(item));
  }
  if (bounds.empty()) throw std::invalid_argument("bounds: empty ladder");
  for (size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] <= 0) throw std::invalid_argument("bounds: entries must be > 0");
    if (i > 0 && bounds[i] <= bounds[i - 1])
      throw std::invalid_argument("bounds: ladder must be strictly increasing");
  }
  return bounds;
}

FitResult fit_two_basis(const std::vector<double>& b, const std::vector<double>& n,
                        const std::function<double(double)>& f1,
                        const std::function<double(double)>& f2) {
  if (b.size() != n.size() || b.size() < 2)
    throw std::invalid_argument("fit_two_basis: need >= 2 points");
  double a11 = 0, a12 = 0, a22 = 0, y1 = 0, y2 = 0;
  for (size_t i = 0; i < b.size(); ++i) {
    double u = f1(b[i]), v = f2(b[i]);
    a11 += u * u;
    a12 += u * v;
    a22 += v * v;
    y1 += u * n[i];
    y2 += v * n[i];
  }
  double det = a11 * a22 - a12 * a12;
  if (det == 0) throw std::runtime_error("fit_two_basis: singular system");
  return FitResult{.c = (y1 * a22 - y2 * a12) / det,
                   .c2 = (a11 * y2 - a12 * y1) / det};
}

std::vector<std::string> config_file_tokens(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(f, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got '" + line + "'");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto strip = [](std::string s) {
      size_t x = s.find_first_not_of(" \t");
      size_t y = s.find_last_not_of(" \t");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    key = strip(key);
    value = strip(value);
    if (key.empty())
      throw std::invalid_argument("config: empty key in '" + line + "'");
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

}  // namespace wps
