#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigprice/correlator.hpp"
#include "sigprice/pricing.hpp"
#include "sigprice/signature.hpp"
#include "sigprice/stochastic.hpp"

namespace sigprice {

// one named correlator request from a scenario file; words in text grammar
struct CorrelatorRequestSpec {
  std::string id;
  std::vector<std::string> words;
  std::vector<int> multi_index;
};

// a fully parsed scenario file (schema "sigprice/1")
struct Scenario {
  ProcessSpec process;
  SimulationGrid grid;
  LiftKind lift = LiftKind::Stratonovich;
  long n_paths = 10000;
  std::uint64_t seed = 0;

  // simulate section
  long paths_out = 1;
  std::string path_prefix = "path";

  // sig section
  std::string sig_input;  // path csv; empty means simulate path index 0
  std::optional<LiftKind> sig_lift;
  int sig_depth = 3;
  std::string sig_output = "signature.csv";

  // correlators section
  int correlator_depth = 0;  // 0 means unset
  int correlator_alphabet = 0;  // 0 means process dimension + 1
  std::vector<CorrelatorRequestSpec> requests;
  std::string correlators_output = "correlators.csv";

  // price section
  std::optional<PayoffSpec> payoff;
  std::string price_method = "both";  // expansion | direct | both
  std::vector<int> convergence_orders;
  std::string price_output = "price.csv";
  std::string convergence_output = "convergence.csv";
};

Scenario load_scenario(const std::string& file);
Scenario parse_scenario(const std::string& json_text);

// runtime knobs layered over the file by the command line
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> n_paths;
  int threads = 1;
};

void run_simulate(const Scenario& scenario, const RunOverrides& overrides,
                  const std::string& out_dir);
void run_sig(const Scenario& scenario, const RunOverrides& overrides,
             const std::string& out_dir);
void run_correlators(const Scenario& scenario, const RunOverrides& overrides,
                     const std::string& out_dir);
// returns the human-readable summary lines
std::vector<std::string> run_price(const Scenario& scenario, const RunOverrides& overrides,
                                   const std::string& out_dir);

}  // namespace sigprice
