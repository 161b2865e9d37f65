#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sigprice/approx.hpp"
#include "sigprice/correlator.hpp"
#include "sigprice/signature.hpp"
#include "sigprice/stochastic.hpp"
#include "sigprice/words.hpp"

namespace sigprice {

// payoff catalog; all pairings run against the time-enhanced path, letter 1
// is time and letters 2.. are the process components

// max(average of component 1 minus strike, 0), average over [0, T]
struct AsianCallSpec {
  double strike = 0.0;
  double smoothing = 2.5;  // sigmoid sharpness of the smoothed max
  int order = 6;           // series truncation
};

// max(terminal spread X1 - c X2, 0)
struct SpreadSpec {
  double conversion = 1.0;
};

// max(integrated volume - K, 0) * max(L - integrated price, 0)
struct QuantoSpec {
  double volume_strike = 0.0;
  double price_strike = 0.0;
  double smoothing = 2.5;
  int order = 6;
};

// expected quality factor (revenue over capacity-times-price normalization)
struct QualityFactorSpec {
  int m_order = 4;
  int n_order = 4;
};

using PayoffVariant =
    std::variant<AsianCallSpec, SpreadSpec, QuantoSpec, QualityFactorSpec>;

struct PayoffSpec {
  PayoffVariant variant;
};

std::string payoff_name(const PayoffSpec& spec);

struct PriceReport {
  double price = 0.0;
  double std_error = 0.0;
  std::string method;  // "correlator_expansion" or "direct_mc"
  long n_paths = 0;
  long terms_used = 0;
  std::string truncation;   // human-readable truncation metadata
  double tail_bound = 0.0;  // documented truncation-error estimate
  std::vector<std::string> warnings;
};

// the weighted words the payoff pairs against; initial values are the
// process starting point (after any transform), needed where words carry
// constant offsets, and the horizon enters where a word averages over [0, T]
std::vector<WeightedWord> payoff_words(const PayoffSpec& spec,
                                       const std::vector<double>& initial, double horizon);

// expansion price: sum over retained multi-indices of alpha_m * rho_m with
// std errors combined as sum |alpha_m| SE_m and an empirical tail estimate
PriceReport price_via_correlators(const PayoffSpec& spec, const ProcessSpec& process,
                                  const SimulationGrid& grid, LiftKind lift, long n_paths,
                                  std::uint64_t seed, const McOptions& opts = {});

// oracle route: the exact payoff functional applied path-wise to the pairings
PriceReport price_direct_mc(const PayoffSpec& spec, const ProcessSpec& process,
                            const SimulationGrid& grid, LiftKind lift, long n_paths,
                            std::uint64_t seed, const McOptions& opts = {});

// truncated double expansion of E[Q]; geometric lifts only (the revenue word
// uses the shuffle identity)
PriceReport quality_factor_expectation(const ProcessSpec& process, const SimulationGrid& grid,
                                       int m_order, int n_order, long n_paths,
                                       std::uint64_t seed, const McOptions& opts = {});

// expansion vs direct-mc gap per truncation order, shared seed
struct ConvergenceRow {
  int order = 0;
  double expansion_price = 0.0;
  double expansion_se = 0.0;
  double direct_price = 0.0;
  double direct_se = 0.0;
  double abs_gap = 0.0;
  double tail_bound = 0.0;
  double theorem_bound = 0.0;  // growth-condition bound when it applies, else nan
};
std::vector<ConvergenceRow> convergence_report(const PayoffSpec& spec,
                                               const ProcessSpec& process,
                                               const SimulationGrid& grid,
                                               const std::vector<int>& orders, long n_paths,
                                               std::uint64_t seed, const McOptions& opts = {});

std::string price_report_to_csv(const PriceReport& report);
std::string price_reports_to_csv(const std::vector<PriceReport>& reports);
std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace sigprice
