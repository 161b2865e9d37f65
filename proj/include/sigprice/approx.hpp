#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sigprice {

// sparse multivariate polynomial sum_m alpha_m x^m over multi-indices m in N^n
struct MultiIndexPolynomial {
  int n_vars = 1;
  std::map<std::vector<int>, double> terms;

  // accumulates; validates index length, non-negative exponents, finite coef
  void add_term(const std::vector<int>& m, double coef);
};

double eval_poly(const MultiIndexPolynomial& poly, const std::vector<double>& x);

// csv rows "m1,...,mn,alpha" with a header line
std::string polynomial_to_csv(const MultiIndexPolynomial& poly);
MultiIndexPolynomial polynomial_from_csv(std::istream& in);

// maclaurin polynomial of a catalog function: "exp" or "sigmoid_smoothmax"
// (the unit-sharpness smoothed max x*sigmoid(x)); degree `order`.
MultiIndexPolynomial taylor_series(const std::string& fn_id, int order);

// lagrange remainder bound at x when a derivative bound is available,
// nullopt otherwise (sigmoid_smoothmax has no convenient closed bound)
std::optional<double> taylor_remainder_bound(const std::string& fn_id, int order, double x);

// orthonormal probabilists' hermite function e_n = xi_n / sqrt(n!) where
// xi_{n+1}(x) = x xi_n(x) - n xi_{n-1}(x)
double hermite_e(int n, double x);

// coefficients <f, e_n> for n = 0..order under the standard gaussian weight,
// by adaptive quadrature over [lo, hi] (choose bounds covering the support
// of f times the weight). throws NumericalError if refinement stalls.
std::vector<double> hermite_project(const std::function<double(double)>& f, int order,
                                    double lo, double hi);

// specialization to the call payoff f(x) = max(x - k_strike, 0)
std::vector<double> hermite_coeffs(double k_strike, int order);

double hermite_eval(const std::vector<double>& coeffs, int order, double x);

// bernstein value sum_{k=0..n} f(k/n) binom(n,k) x^k (1-x)^{n-k};
// f_samples holds f(k/n) for k = 0..n
double bernstein_approx(const std::vector<double>& f_samples, double x);

// euler polynomial values E_0(0)..E_count-1(0) from bernoulli numbers
std::vector<double> euler_zero_values(int count);

// maclaurin series of x*sigmoid(n_sharp*x) up to x^{order+1}:
// coefficient of x^{n+1} is (-1)^n E_n(0) n_sharp^n / (2 n!).
// converges for |x| < pi/n_sharp only; the radius is reported alongside.
struct SmoothMaxSeries {
  MultiIndexPolynomial poly;
  double radius;
};
SmoothMaxSeries smoothmax_series(double n_sharp, int order);

// growth data entering the coefficient condition and remainder bound
struct WordTermData {
  double kappa;  // coefficient magnitude weight
  int length;    // word length
};
struct BoundParams {
  double c = 1.0;  // growth constant, > 0
  double p = 1.0;  // variation order, >= 1
  std::vector<std::vector<WordTermData>> word_data;  // per polynomial variable
  double k_norm = 1.0;  // signature growth constant, > 0
};

// true iff every |alpha_m| <= (c^{|m|}/m!) prod_i (sum_j |kappa_ij| (|w_ij|/p)! / k^{|w_ij|})^{m_i}
bool coefficient_condition(const MultiIndexPolynomial& poly, const BoundParams& params);

// scalar tail bound exp(c) c^{|N|+1} / ((n-1)! (|N|-n-1)!), needs |N| >= n+1
double remainder_bound(const BoundParams& params, int n_vars, int card_n);

}  // namespace sigprice
