#include "sigprice/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sigprice/errors.hpp"
#include "sigprice/util.hpp"

namespace sigprice {

namespace {

WeightedWord single(int alphabet, Word w, double coef) {
  return WeightedWord(alphabet, std::move(w), coef);
}

int words_depth(const std::vector<WeightedWord>& words) {
  int depth = 1;
  for (const auto& w : words) depth = std::max(depth, w.max_word_length());
  return depth;
}

double int_pow(double x, int e) {
  double v = 1.0;
  for (int i = 0; i < e; ++i) v *= x;
  return v;
}

// univariate series terms as (exponent, coefficient) pairs
std::vector<std::pair<int, double>> series_terms(const MultiIndexPolynomial& poly) {
  std::vector<std::pair<int, double>> out;
  out.reserve(poly.terms.size());
  for (const auto& [m, c] : poly.terms) out.emplace_back(m[0], c);
  return out;
}

double series_value(const std::vector<std::pair<int, double>>& terms, double x) {
  double v = 0.0;
  for (const auto& [e, c] : terms) v += c * int_pow(x, e);
  return v;
}

}  // namespace

std::string payoff_name(const PayoffSpec& spec) {
  if (std::holds_alternative<AsianCallSpec>(spec.variant)) return "asian_call";
  if (std::holds_alternative<SpreadSpec>(spec.variant)) return "spread";
  if (std::holds_alternative<QuantoSpec>(spec.variant)) return "quanto_put_call";
  return "quality_factor";
}

std::vector<WeightedWord> payoff_words(const PayoffSpec& spec,
                                       const std::vector<double>& initial, double horizon) {
  const int d = static_cast<int>(initial.size());
  if (d < 1) throw InputError("payoff words need the process initial values");
  for (double v : initial)
    if (!std::isfinite(v)) throw InputError("initial values must be finite");
  if (!(horizon > 0.0)) throw InputError("payoff words need a positive horizon");
  const int a = d + 1;  // time-enhanced alphabet

  if (std::holds_alternative<AsianCallSpec>(spec.variant)) {
    // time average of component 1: the starting level plus the scaled
    // integral of its increments
    WeightedWord avg = single(a, {2, 1}, 1.0 / horizon);
    avg += single(a, {}, initial[0]);
    return {avg};
  }
  if (const auto* spread = std::get_if<SpreadSpec>(&spec.variant)) {
    if (d < 2) throw InputError("spread payoff needs a process with at least 2 components");
    // pairings yield increments; the empty-word term restores absolute prices
    WeightedWord pi = single(a, {2}, 1.0);
    pi += single(a, {3}, -spread->conversion);
    pi += single(a, {}, initial[0] - spread->conversion * initial[1]);
    return {pi};
  }
  if (std::holds_alternative<QuantoSpec>(spec.variant)) {
    if (d < 2) throw InputError("quanto payoff needs a process with at least 2 components");
    WeightedWord w2 = single(a, {2, 1}, 1.0);
    w2 += single(a, {1}, initial[0]);
    WeightedWord w3 = single(a, {3, 1}, -1.0);
    w3 += single(a, {1}, -initial[1]);
    return {w2, w3};
  }
  if (d < 2)
    throw InputError("quality factor needs a process with at least 2 components");
  const double c0 = initial[0];
  const double s0 = initial[1];
  // revenue word: int C_s S_s ds expanded around the starting point, using the
  // shuffle identity for the cross term (geometric lifts only)
  WeightedWord pi1 = concat(shuffle(single(a, {2}, 1.0), single(a, {3}, 1.0)),
                            single(a, {1}, 1.0));
  pi1 += single(a, {3, 1}, c0);
  pi1 += single(a, {2, 1}, s0);
  pi1 += single(a, {1}, c0 * s0);
  WeightedWord pi2 = single(a, {2, 1}, 1.0);
  pi2 += single(a, {1}, c0 - 1.0);
  WeightedWord pi3 = single(a, {3, 1}, 1.0);
  pi3 += single(a, {1}, s0 - 1.0);
  return {pi1, pi2, pi3};
}

namespace {

PriceReport asian_expansion(const AsianCallSpec& asian, const PayoffSpec& spec,
                            const ProcessSpec& process, const SimulationGrid& grid,
                            LiftKind lift, long n_paths, std::uint64_t seed,
                            const McOptions& opts) {
  auto words = payoff_words(spec, process.initial_values(), grid.horizon);
  WeightedWord shifted = words[0];
  shifted += WeightedWord(shifted.alphabet_size(), Word{}, -asian.strike);
  const auto series = smoothmax_series(asian.smoothing, asian.order);
  const auto terms = series_terms(series.poly);

  std::vector<std::function<double(const std::vector<double>&)>> fns;
  fns.reserve(terms.size() + 1);
  for (const auto& [e, c] : terms) {
    (void)c;
    const int exponent = e;
    fns.emplace_back(
        [exponent](const std::vector<double>& p) { return int_pow(p[0], exponent); });
  }
  // pathwise series error; its mean dominates |expansion - direct| by jensen
  fns.emplace_back([terms](const std::vector<double>& p) {
    return std::abs(series_value(terms, p[0]) - std::max(p[0], 0.0));
  });

  const auto res = estimate_path_functionals(process, grid, {shifted}, lift,
                                             words_depth({shifted}), fns, n_paths, seed, opts);
  PriceReport rep;
  rep.method = "correlator_expansion";
  rep.n_paths = res.n_paths;
  rep.terms_used = static_cast<long>(terms.size());
  for (std::size_t j = 0; j < terms.size(); ++j) {
    rep.price += terms[j].second * res.means[j];
    rep.std_error += std::abs(terms[j].second) * res.std_errors[j];
  }
  rep.tail_bound = res.means.back();
  rep.truncation = "smoothing=" + format_double(asian.smoothing) +
                   "; order=" + std::to_string(asian.order) +
                   "; radius=" + format_double(series.radius);
  if (res.max_abs_pairing[0] >= series.radius)
    rep.warnings.push_back("series sampled at |x| up to " +
                           format_double(res.max_abs_pairing[0]) +
                           " beyond its convergence radius " +
                           format_double(series.radius) +
                           "; treat the expansion as asymptotic and trust the tail bound");
  return rep;
}

PriceReport quanto_expansion(const QuantoSpec& quanto, const PayoffSpec& spec,
                             const ProcessSpec& process, const SimulationGrid& grid,
                             LiftKind lift, long n_paths, std::uint64_t seed,
                             const McOptions& opts) {
  auto words = payoff_words(spec, process.initial_values(), grid.horizon);
  const int a = words[0].alphabet_size();
  WeightedWord u = words[0];
  u += WeightedWord(a, Word{}, -quanto.volume_strike);
  WeightedWord v = words[1];
  v += WeightedWord(a, Word{}, quanto.price_strike);
  const auto series = smoothmax_series(quanto.smoothing, quanto.order);
  const auto terms = series_terms(series.poly);

  std::vector<std::function<double(const std::vector<double>&)>> fns;
  fns.reserve(terms.size() * terms.size() + 1);
  for (const auto& [ei, ci] : terms) {
    (void)ci;
    for (const auto& [ej, cj] : terms) {
      (void)cj;
      const int e1 = ei;
      const int e2 = ej;
      fns.emplace_back([e1, e2](const std::vector<double>& p) {
        return int_pow(p[0], e1) * int_pow(p[1], e2);
      });
    }
  }
  fns.emplace_back([terms](const std::vector<double>& p) {
    const double approx = series_value(terms, p[0]) * series_value(terms, p[1]);
    const double exact = std::max(p[0], 0.0) * std::max(p[1], 0.0);
    return std::abs(approx - exact);
  });

  const auto res = estimate_path_functionals(process, grid, {u, v}, lift,
                                             words_depth({u, v}), fns, n_paths, seed, opts);
  PriceReport rep;
  rep.method = "correlator_expansion";
  rep.n_paths = res.n_paths;
  rep.terms_used = static_cast<long>(terms.size() * terms.size());
  std::size_t j = 0;
  for (const auto& [ei, ci] : terms) {
    (void)ei;
    for (const auto& [ej, cj] : terms) {
      (void)ej;
      rep.price += ci * cj * res.means[j];
      rep.std_error += std::abs(ci * cj) * res.std_errors[j];
      ++j;
    }
  }
  rep.tail_bound = res.means.back();
  rep.truncation = "smoothing=" + format_double(quanto.smoothing) +
                   "; order=" + std::to_string(quanto.order) +
                   "; radius=" + format_double(series.radius);
  for (std::size_t i = 0; i < 2; ++i) {
    if (res.max_abs_pairing[i] >= series.radius)
      rep.warnings.push_back("factor " + std::to_string(i + 1) + " sampled at |x| up to " +
                             format_double(res.max_abs_pairing[i]) +
                             " beyond its convergence radius " +
                             format_double(series.radius) +
                             "; treat the expansion as asymptotic and trust the tail bound");
  }
  return rep;
}

}  // namespace

PriceReport quality_factor_expectation(const ProcessSpec& process, const SimulationGrid& grid,
                                       int m_order, int n_order, long n_paths,
                                       std::uint64_t seed, const McOptions& opts) {
  if (m_order < 0 || n_order < 0)
    throw InputError("quality factor truncation orders must be >= 0");
  PayoffSpec qf{QualityFactorSpec{m_order, n_order}};
  auto words = payoff_words(qf, process.initial_values(), grid.horizon);
  const double t = grid.horizon;

  std::vector<std::function<double(const std::vector<double>&)>> fns;
  fns.reserve(static_cast<std::size_t>(m_order + 1) * static_cast<std::size_t>(n_order + 1));
  for (int m = 0; m <= m_order; ++m)
    for (int n = 0; n <= n_order; ++n)
      fns.emplace_back([m, n](const std::vector<double>& p) {
        return p[0] * int_pow(p[1], m) * int_pow(p[2], n);
      });

  const auto res = estimate_path_functionals(process, grid, words, LiftKind::Stratonovich,
                                             words_depth(words), fns, n_paths, seed, opts);
  PriceReport rep;
  rep.method = "correlator_expansion";
  rep.n_paths = res.n_paths;
  rep.terms_used = static_cast<long>(m_order + 1) * (n_order + 1);
  std::size_t j = 0;
  for (int m = 0; m <= m_order; ++m) {
    for (int n = 0; n <= n_order; ++n) {
      const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
      const double weight = sign / (t * int_pow(t, m + n));
      rep.price += weight * res.means[j];
      rep.std_error += std::abs(weight) * res.std_errors[j];
      ++j;
    }
  }
  // geometric tail from the empirical pairing ranges
  const double big_a = res.max_abs_pairing[0] / t;
  const double r2 = res.max_abs_pairing[1] / t;
  const double r3 = res.max_abs_pairing[2] / t;
  if (r2 < 1.0 && r3 < 1.0) {
    rep.tail_bound = big_a * (int_pow(r2, m_order + 1) + int_pow(r3, n_order + 1)) /
                     ((1.0 - r2) * (1.0 - r3));
  } else {
    rep.tail_bound = std::numeric_limits<double>::infinity();
    rep.warnings.push_back(
        "expansion sampled outside its geometric convergence region (average capacity or "
        "price ratio strayed by 100% or more); the truncated sum is unreliable");
  }
  rep.truncation = "m_order=" + std::to_string(m_order) +
                   "; n_order=" + std::to_string(n_order) +
                   "; depth=" + std::to_string(words_depth(words));
  return rep;
}

PriceReport price_via_correlators(const PayoffSpec& spec, const ProcessSpec& process,
                                  const SimulationGrid& grid, LiftKind lift, long n_paths,
                                  std::uint64_t seed, const McOptions& opts) {
  if (const auto* asian = std::get_if<AsianCallSpec>(&spec.variant))
    return asian_expansion(*asian, spec, process, grid, lift, n_paths, seed, opts);
  if (std::holds_alternative<SpreadSpec>(spec.variant))
    throw InputError(
        "the spread payoff has no polynomial expansion route here; supported expansions "
        "are asian_call, quanto_put_call and quality_factor (use direct mc for spreads)");
  if (const auto* quanto = std::get_if<QuantoSpec>(&spec.variant))
    return quanto_expansion(*quanto, spec, process, grid, lift, n_paths, seed, opts);
  const auto& qf = std::get<QualityFactorSpec>(spec.variant);
  if (lift == LiftKind::Ito)
    throw InputError(
        "the quality factor expansion pairs a shuffle-product word, which represents the "
        "revenue integral only on geometric (stratonovich) lifts");
  return quality_factor_expectation(process, grid, qf.m_order, qf.n_order, n_paths, seed,
                                    opts);
}

PriceReport price_direct_mc(const PayoffSpec& spec, const ProcessSpec& process,
                            const SimulationGrid& grid, LiftKind lift, long n_paths,
                            std::uint64_t seed, const McOptions& opts) {
  auto words = payoff_words(spec, process.initial_values(), grid.horizon);
  const double t = grid.horizon;
  std::function<double(const std::vector<double>&)> payoff;
  if (const auto* asian = std::get_if<AsianCallSpec>(&spec.variant)) {
    const double k = asian->strike;
    payoff = [k](const std::vector<double>& p) { return std::max(p[0] - k, 0.0); };
  } else if (std::holds_alternative<SpreadSpec>(spec.variant)) {
    payoff = [](const std::vector<double>& p) { return std::max(p[0], 0.0); };
  } else if (const auto* quanto = std::get_if<QuantoSpec>(&spec.variant)) {
    const double k = quanto->volume_strike;
    const double l = quanto->price_strike;
    payoff = [k, l](const std::vector<double>& p) {
      return std::max(p[0] - k, 0.0) * std::max(p[1] + l, 0.0);
    };
  } else {
    payoff = [t](const std::vector<double>& p) {
      const double q = (p[0] / t) / ((1.0 + p[1] / t) * (1.0 + p[2] / t));
      if (!std::isfinite(q))
        throw NumericalError("quality factor denominator vanished on a sample path");
      return q;
    };
  }
  const auto res = estimate_path_functionals(process, grid, words, lift, words_depth(words),
                                             {payoff}, n_paths, seed, opts);
  PriceReport rep;
  rep.price = res.means[0];
  rep.std_error = res.std_errors[0];
  rep.method = "direct_mc";
  rep.n_paths = res.n_paths;
  rep.terms_used = 0;
  rep.truncation = "none";
  rep.tail_bound = 0.0;
  return rep;
}

namespace {

// growth-condition bound: smallest grid C whose coefficient condition holds,
// fed into the closed-form remainder; nan when no grid C qualifies or the
// retained index set is too small for the formula
double growth_bound(const MultiIndexPolynomial& poly,
                    const std::vector<WeightedWord>& var_words) {
  BoundParams params;
  params.p = 1.0;
  params.k_norm = 1.0;
  params.word_data.reserve(var_words.size());
  for (const auto& w : var_words) {
    std::vector<WordTermData> data;
    data.reserve(w.terms().size());
    for (const auto& [word, coef] : w.terms())
      data.push_back({std::abs(coef), static_cast<int>(word.size())});
    params.word_data.push_back(std::move(data));
  }
  const int card_n = static_cast<int>(poly.terms.size());
  if (card_n < poly.n_vars + 1) return std::numeric_limits<double>::quiet_NaN();
  for (double c : {0.0625, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
    params.c = c;
    if (coefficient_condition(poly, params))
      return remainder_bound(params, poly.n_vars, card_n);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::vector<ConvergenceRow> convergence_report(const PayoffSpec& spec,
                                               const ProcessSpec& process,
                                               const SimulationGrid& grid,
                                               const std::vector<int>& orders, long n_paths,
                                               std::uint64_t seed, const McOptions& opts) {
  if (orders.empty()) throw InputError("convergence report needs at least one order");
  if (std::holds_alternative<SpreadSpec>(spec.variant))
    throw InputError(
        "the spread payoff has no polynomial expansion route here; supported expansions "
        "are asian_call, quanto_put_call and quality_factor (use direct mc for spreads)");
  const auto direct =
      price_direct_mc(spec, process, grid, LiftKind::Stratonovich, n_paths, seed, opts);
  const auto initial = process.initial_values();
  std::vector<ConvergenceRow> rows;
  rows.reserve(orders.size());
  for (int order : orders) {
    if (order < 0) throw InputError("convergence orders must be >= 0");
    PayoffSpec varied = spec;
    MultiIndexPolynomial poly;
    std::vector<WeightedWord> var_words;
    if (auto* asian = std::get_if<AsianCallSpec>(&varied.variant)) {
      asian->order = order;
      poly = smoothmax_series(asian->smoothing, order).poly;
      auto words = payoff_words(varied, initial, grid.horizon);
      WeightedWord shifted = words[0];
      shifted += WeightedWord(shifted.alphabet_size(), Word{}, -asian->strike);
      var_words = {shifted};
    } else if (auto* quanto = std::get_if<QuantoSpec>(&varied.variant)) {
      quanto->order = order;
      const auto terms = series_terms(smoothmax_series(quanto->smoothing, order).poly);
      poly.n_vars = 2;
      for (const auto& [ei, ci] : terms)
        for (const auto& [ej, cj] : terms) poly.add_term({ei, ej}, ci * cj);
      auto words = payoff_words(varied, initial, grid.horizon);
      const int a = words[0].alphabet_size();
      WeightedWord u = words[0];
      u += WeightedWord(a, Word{}, -quanto->volume_strike);
      WeightedWord v = words[1];
      v += WeightedWord(a, Word{}, quanto->price_strike);
      var_words = {u, v};
    } else {
      auto* qf = std::get_if<QualityFactorSpec>(&varied.variant);
      qf->m_order = order;
      qf->n_order = order;
      poly.n_vars = 3;
      const double t = grid.horizon;
      for (int m = 0; m <= order; ++m)
        for (int n = 0; n <= order; ++n) {
          const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
          poly.add_term({1, m, n}, sign / (t * int_pow(t, m + n)));
        }
      var_words = payoff_words(varied, initial, grid.horizon);
    }
    const auto exp_rep =
        price_via_correlators(varied, process, grid, LiftKind::Stratonovich, n_paths, seed, opts);
    ConvergenceRow row;
    row.order = order;
    row.expansion_price = exp_rep.price;
    row.expansion_se = exp_rep.std_error;
    row.direct_price = direct.price;
    row.direct_se = direct.std_error;
    row.abs_gap = std::abs(exp_rep.price - direct.price);
    row.tail_bound = exp_rep.tail_bound;
    row.theorem_bound = growth_bound(poly, var_words);
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string price_report_row(const PriceReport& report) {
  std::string warnings;
  for (std::size_t i = 0; i < report.warnings.size(); ++i) {
    if (i > 0) warnings += " | ";
    warnings += report.warnings[i];
  }
  return report.method + "," + format_double(report.price) + "," +
         format_double(report.std_error) + "," + std::to_string(report.n_paths) + "," +
         std::to_string(report.terms_used) + "," + format_double(report.tail_bound) + "," +
         report.truncation + "," + warnings + "\n";
}

}  // namespace

std::string price_report_to_csv(const PriceReport& report) {
  return price_reports_to_csv({report});
}

std::string price_reports_to_csv(const std::vector<PriceReport>& reports) {
  std::string out = "method,price,std_error,n_paths,terms_used,tail_bound,truncation,warnings\n";
  for (const auto& r : reports) out += price_report_row(r);
  return out;
}

std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out =
      "order,expansion_price,expansion_se,direct_price,direct_se,abs_gap,tail_bound,"
      "theorem_bound\n";
  for (const auto& r : rows) {
    out += std::to_string(r.order) + "," + format_double(r.expansion_price) + "," +
           format_double(r.expansion_se) + "," + format_double(r.direct_price) + "," +
           format_double(r.direct_se) + "," + format_double(r.abs_gap) + "," +
           format_double(r.tail_bound) + "," + format_double(r.theorem_bound) + "\n";
  }
  return out;
}

}  // namespace sigprice
