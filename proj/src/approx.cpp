#include "sigprice/approx.hpp"

#include <cmath>
#include <istream>
#include <limits>

#include "sigprice/errors.hpp"
#include "sigprice/util.hpp"

namespace sigprice {

void MultiIndexPolynomial::add_term(const std::vector<int>& m, double coef) {
  if (n_vars < 1) throw InputError("polynomial needs at least one variable");
  if (static_cast<int>(m.size()) != n_vars)
    throw InputError("multi-index length " + std::to_string(m.size()) +
                     " does not match variable count " + std::to_string(n_vars));
  for (int e : m)
    if (e < 0) throw InputError("multi-index exponents must be non-negative");
  if (!std::isfinite(coef)) throw InputError("polynomial coefficient must be finite");
  auto [it, inserted] = terms.try_emplace(m, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0.0) terms.erase(it);
  } else if (coef == 0.0) {
    terms.erase(it);
  }
}

double eval_poly(const MultiIndexPolynomial& poly, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != poly.n_vars)
    throw InputError("point dimension " + std::to_string(x.size()) +
                     " does not match polynomial variable count " +
                     std::to_string(poly.n_vars));
  double sum = 0.0;
  for (const auto& [m, coef] : poly.terms) {
    double term = coef;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) term *= x[i];
    sum += term;
  }
  return sum;
}

std::string polynomial_to_csv(const MultiIndexPolynomial& poly) {
  std::string out;
  for (int i = 1; i <= poly.n_vars; ++i) out += "m" + std::to_string(i) + ",";
  out += "alpha\n";
  for (const auto& [m, coef] : poly.terms) {
    for (int e : m) out += std::to_string(e) + ",";
    out += format_double(coef) + "\n";
  }
  return out;
}

MultiIndexPolynomial polynomial_from_csv(std::istream& in) {
  std::string line;
  MultiIndexPolynomial poly;
  bool have_n = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() < 2)
      throw InputError("polynomial csv line " + std::to_string(lineno) +
                       " needs at least one exponent and a coefficient");
    if (lineno == 1 && fields[0].size() > 1 && fields[0][0] == 'm') {
      poly.n_vars = static_cast<int>(fields.size()) - 1;
      have_n = true;
      continue;
    }
    if (!have_n) {
      poly.n_vars = static_cast<int>(fields.size()) - 1;
      have_n = true;
    }
    if (static_cast<int>(fields.size()) != poly.n_vars + 1)
      throw InputError("polynomial csv line " + std::to_string(lineno) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(poly.n_vars + 1));
    std::vector<int> m(static_cast<std::size_t>(poly.n_vars));
    for (int i = 0; i < poly.n_vars; ++i)
      m[static_cast<std::size_t>(i)] = static_cast<int>(
          parse_long(fields[static_cast<std::size_t>(i)], "polynomial csv exponent"));
    poly.add_term(m, parse_double(fields.back(), "polynomial csv coefficient"));
  }
  if (!have_n) throw InputError("polynomial csv contains no data rows");
  return poly;
}

MultiIndexPolynomial taylor_series(const std::string& fn_id, int order) {
  if (order < 0) throw InputError("taylor order must be >= 0");
  if (fn_id == "exp") {
    MultiIndexPolynomial poly;
    double coef = 1.0;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) coef /= k;
      poly.add_term({k}, coef);
    }
    return poly;
  }
  if (fn_id == "sigmoid_smoothmax") {
    MultiIndexPolynomial poly;
    if (order >= 1) poly = smoothmax_series(1.0, order - 1).poly;
    return poly;
  }
  throw InputError("unknown taylor catalog function '" + fn_id +
                   "' (expected exp or sigmoid_smoothmax)");
}

std::optional<double> taylor_remainder_bound(const std::string& fn_id, int order, double x) {
  if (order < 0) throw InputError("taylor order must be >= 0");
  if (fn_id == "exp") {
    // |R_k(x)| <= e^{|x|} |x|^{k+1} / (k+1)!
    double term = 1.0;
    for (int j = 1; j <= order + 1; ++j) term *= std::abs(x) / j;
    return std::exp(std::abs(x)) * term;
  }
  if (fn_id == "sigmoid_smoothmax") return std::nullopt;
  throw InputError("unknown taylor catalog function '" + fn_id +
                   "' (expected exp or sigmoid_smoothmax)");
}

double hermite_e(int n, double x) {
  if (n < 0) throw InputError("hermite index must be >= 0");
  // e_{n+1} = (x e_n - sqrt(n) e_{n-1}) / sqrt(n+1)
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                        std::sqrt(static_cast<double>(k + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& g, double a, double m, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth,
                        bool& converged) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    converged = false;
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(g, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, converged) +
         adaptive_simpson(g, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, converged);
}

double integrate(const std::function<double(double)>& g, double a, double b) {
  if (!(b > a)) return 0.0;
  // coarse pass sets the absolute tolerance scale; refining each coarse cell
  // separately keeps sharply localized mass from slipping past the probes
  double coarse = 0.0;
  const int n0 = 64;
  const double h = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    const double xa = a + i * h;
    coarse += simpson(xa, xa + h, g(xa), g(xa + 0.5 * h), g(xa + h));
  }
  const double tol = 1e-13 * std::max(1.0, std::abs(coarse)) / n0;
  bool converged = true;
  double value = 0.0;
  for (int i = 0; i < n0; ++i) {
    const double xa = a + i * h;
    const double xb = i + 1 == n0 ? b : xa + h;
    const double m = 0.5 * (xa + xb);
    const double fa = g(xa);
    const double fm = g(m);
    const double fb = g(xb);
    const double whole = simpson(xa, xb, fa, fm, fb);
    value += adaptive_simpson(g, xa, m, xb, fa, fm, fb, whole, tol, 42, converged);
  }
  if (!converged)
    throw NumericalError("quadrature did not converge to the requested tolerance");
  return value;
}

}  // namespace

std::vector<double> hermite_project(const std::function<double(double)>& f, int order,
                                    double lo, double hi) {
  if (order < 0) throw InputError("hermite order must be >= 0");
  if (!(hi > lo)) throw InputError("hermite projection needs hi > lo");
  const double inv_sqrt_2pi = 0.3989422804014326779;
  std::vector<double> coeffs(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) {
    auto integrand = [&](double x) {
      return f(x) * hermite_e(n, x) * inv_sqrt_2pi * std::exp(-0.5 * x * x);
    };
    coeffs[static_cast<std::size_t>(n)] = integrate(integrand, lo, hi);
  }
  return coeffs;
}

std::vector<double> hermite_coeffs(double k_strike, int order) {
  // integrand vanishes below the strike and the weight kills the far tail
  const double hi = std::max(k_strike, 0.0) + 30.0;
  return hermite_project([k_strike](double x) { return x - k_strike; }, order, k_strike, hi);
}

double hermite_eval(const std::vector<double>& coeffs, int order, double x) {
  if (order < 0) throw InputError("hermite order must be >= 0");
  if (coeffs.size() < static_cast<std::size_t>(order) + 1)
    throw InputError("hermite coefficient vector shorter than order + 1");
  double sum = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  for (int n = 0; n <= order; ++n) {
    sum += coeffs[static_cast<std::size_t>(n)] * cur;
    const double next = (x * cur - std::sqrt(static_cast<double>(n)) * prev) /
                        std::sqrt(static_cast<double>(n + 1));
    prev = cur;
    cur = next;
  }
  return sum;
}

double bernstein_approx(const std::vector<double>& f_samples, double x) {
  if (f_samples.size() < 2) throw InputError("bernstein approximation needs n >= 1");
  if (!(x >= 0.0 && x <= 1.0))
    throw InputError("bernstein approximation requires x in [0, 1], got " + format_double(x));
  const int n = static_cast<int>(f_samples.size()) - 1;
  if (x == 0.0) return f_samples.front();
  if (x == 1.0) return f_samples.back();
  // walk binom(n,k) x^k (1-x)^{n-k} multiplicatively outward from its mode,
  // where the weight is order one; starting the walk at k = 0 underflows to
  // zero for large n with x near 1 and wipes out the whole sum
  const int mode = std::min(n, static_cast<int>((n + 1) * x));
  const double log_peak = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) -
                          std::lgamma(n - mode + 1.0) + mode * std::log(x) +
                          (n - mode) * std::log1p(-x);
  const double peak = std::exp(log_peak);
  const double ratio = x / (1.0 - x);
  double sum = f_samples[static_cast<std::size_t>(mode)] * peak;
  double basis = peak;
  for (int k = mode + 1; k <= n; ++k) {
    basis *= ratio * (static_cast<double>(n - k + 1) / k);
    sum += f_samples[static_cast<std::size_t>(k)] * basis;
  }
  basis = peak;
  for (int k = mode - 1; k >= 0; --k) {
    basis *= (static_cast<double>(k + 1) / (n - k)) / ratio;
    sum += f_samples[static_cast<std::size_t>(k)] * basis;
  }
  return sum;
}

std::vector<double> euler_zero_values(int count) {
  if (count < 0) throw InputError("euler value count must be >= 0");
  // bernoulli numbers B_0..B_count via the defining recurrence
  std::vector<double> b(static_cast<std::size_t>(count) + 1);
  std::vector<double> binom(b.size() + 1);
  for (int m = 0; m <= count; ++m) {
    if (m == 0) {
      b[0] = 1.0;
      continue;
    }
    // row m+1 of pascal's triangle
    binom[0] = 1.0;
    for (int j = 1; j <= m + 1; ++j)
      binom[static_cast<std::size_t>(j)] =
          binom[static_cast<std::size_t>(j - 1)] * (m + 2 - j) / j;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += binom[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(m)] = -acc / (m + 1);
  }
  std::vector<double> e(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    if (n == 0) {
      e[0] = 1.0;
      continue;
    }
    // even-index values vanish identically; skipping the formula keeps them
    // exact instead of leaving rounding residue from the bernoulli recurrence
    if (n % 2 == 0) {
      e[static_cast<std::size_t>(n)] = 0.0;
      continue;
    }
    e[static_cast<std::size_t>(n)] = 2.0 * (1.0 - std::ldexp(1.0, n + 1)) *
                                     b[static_cast<std::size_t>(n + 1)] / (n + 1);
  }
  return e;
}

SmoothMaxSeries smoothmax_series(double n_sharp, int order) {
  if (!(n_sharp > 0.0)) throw InputError("smoothmax sharpness must be positive");
  if (order < 0) throw InputError("smoothmax order must be >= 0");
  const auto e = euler_zero_values(order + 1);
  MultiIndexPolynomial poly;
  double n_pow_over_fact = 1.0;  // n_sharp^n / n!
  for (int n = 0; n <= order; ++n) {
    if (n > 0) n_pow_over_fact *= n_sharp / n;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double coef = sign * e[static_cast<std::size_t>(n)] * n_pow_over_fact / 2.0;
    if (coef != 0.0) poly.add_term({n + 1}, coef);
  }
  return {std::move(poly), M_PI / n_sharp};
}

bool coefficient_condition(const MultiIndexPolynomial& poly, const BoundParams& params) {
  if (!(params.c > 0.0)) throw InputError("growth constant c must be positive");
  if (!(params.p >= 1.0)) throw InputError("variation order p must be >= 1");
  if (!(params.k_norm > 0.0)) throw InputError("signature growth constant must be positive");
  if (static_cast<int>(params.word_data.size()) != poly.n_vars)
    throw InputError("word data covers " + std::to_string(params.word_data.size()) +
                     " variables, polynomial has " + std::to_string(poly.n_vars));
  // per-variable factor sum_j |kappa_ij| (|w_ij|/p)! / k^{|w_ij|}
  std::vector<double> factor(params.word_data.size());
  for (std::size_t i = 0; i < params.word_data.size(); ++i) {
    double s = 0.0;
    for (const auto& wd : params.word_data[i]) {
      if (wd.length < 0) throw InputError("word lengths must be >= 0");
      s += std::abs(wd.kappa) * std::tgamma(wd.length / params.p + 1.0) /
           std::pow(params.k_norm, wd.length);
    }
    factor[i] = s;
  }
  for (const auto& [m, alpha] : poly.terms) {
    double bound = 1.0;
    int total = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      total += m[i];
      for (int e = 0; e < m[i]; ++e) bound *= factor[i] / (e + 1);  // folds in 1/m_i!
    }
    for (int j = 0; j < total; ++j) bound *= params.c;
    if (std::abs(alpha) > bound * (1.0 + 1e-12)) return false;
  }
  return true;
}

double remainder_bound(const BoundParams& params, int n_vars, int card_n) {
  if (!(params.c > 0.0)) throw InputError("growth constant c must be positive");
  if (n_vars < 1) throw InputError("variable count must be >= 1");
  if (card_n < n_vars + 1)
    throw InputError("index set size " + std::to_string(card_n) +
                     " must be at least n + 1 = " + std::to_string(n_vars + 1));
  double value = std::exp(params.c);
  for (int j = 0; j <= card_n; ++j) value *= params.c;
  for (int j = 2; j <= n_vars - 1; ++j) value /= j;
  for (int j = 2; j <= card_n - n_vars - 1; ++j) value /= j;
  return value;
}

}  // namespace sigprice
