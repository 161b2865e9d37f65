#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sigprice/signature.hpp"
#include "sigprice/stochastic.hpp"
#include "sigprice/words.hpp"

namespace sigprice {

// moment request E[prod_i <pi_i, sig>^{m_i}]
struct CorrelatorRequest {
  std::vector<WeightedWord> words;
  std::vector<int> multi_index;
  LiftKind lift = LiftKind::Stratonovich;
  int depth = 1;
};

struct CorrelatorEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n_paths = 0;
};

struct McOptions {
  int threads = 1;
};

// generic per-path monte carlo: simulate, lift, pair the words, then feed the
// pairing vector to each functional. returns one (mean, std error) pair per
// functional plus the largest absolute pairing seen per word (for radius
// checks). time enhancement is inferred: word alphabet equal to the process
// dimension pairs against the raw path, process dimension + 1 against the
// time-enhanced path; anything else is an error.
struct FunctionalBatchResult {
  std::vector<double> means;
  std::vector<double> std_errors;
  long n_paths = 0;
  std::vector<double> max_abs_pairing;
};
FunctionalBatchResult estimate_path_functionals(
    const ProcessSpec& process, const SimulationGrid& grid,
    const std::vector<WeightedWord>& words, LiftKind lift, int depth,
    const std::vector<std::function<double(const std::vector<double>&)>>& functionals,
    long n_paths, std::uint64_t seed, const McOptions& opts);

// several multi-indices over one shared word set and path sample
struct CorrelatorBatch {
  std::vector<WeightedWord> words;
  std::vector<std::vector<int>> multi_indices;
  LiftKind lift = LiftKind::Stratonovich;
  int depth = 1;
};
std::vector<CorrelatorEstimate> estimate_correlator_batch(const ProcessSpec& process,
                                                          const SimulationGrid& grid,
                                                          const CorrelatorBatch& batch,
                                                          long n_paths, std::uint64_t seed,
                                                          const McOptions& opts = {});

CorrelatorEstimate estimate_correlator(const ProcessSpec& process, const SimulationGrid& grid,
                                       const CorrelatorRequest& request, long n_paths,
                                       std::uint64_t seed, const McOptions& opts = {});

// single functional phi = shuffle-product over i of shuffle_power(pi_i, m_i),
// so <phi, sig> equals the monomial prod <pi_i, sig>^{m_i} on geometric
// (stratonovich) lifts; refuses ito lifts, where the shuffle identity fails
WeightedWord shuffle_linearize(const CorrelatorRequest& request);

// depth and measured runtime of the linearized route against plain powers
struct CostReport {
  int linearized_depth = 0;
  int direct_depth = 0;
  double linearized_seconds = 0.0;
  double direct_seconds = 0.0;
  double linearized_value = 0.0;
  double direct_value = 0.0;
};
CostReport cost_report(const CorrelatorRequest& request);

// csv rows "request_id,value,std_error,n_paths"
std::string correlators_to_csv(const std::vector<std::string>& ids,
                               const std::vector<CorrelatorEstimate>& estimates);

}  // namespace sigprice
