#include "sigprice/correlator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "sigprice/errors.hpp"
#include "sigprice/rng.hpp"
#include "sigprice/util.hpp"

namespace sigprice {

namespace {

// neumaier-compensated accumulator; keeps the serial reduction stable at 1e5+ terms
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

FunctionalBatchResult estimate_path_functionals(
    const ProcessSpec& process, const SimulationGrid& grid,
    const std::vector<WeightedWord>& words, LiftKind lift, int depth,
    const std::vector<std::function<double(const std::vector<double>&)>>& functionals,
    long n_paths, std::uint64_t seed, const McOptions& opts) {
  validate(process);
  validate(grid);
  if (n_paths < 2) throw InputError("monte carlo needs at least 2 paths");
  if (words.empty()) throw InputError("at least one word is required");
  if (functionals.empty()) throw InputError("at least one functional is required");
  const int alphabet = words.front().alphabet_size();
  for (const auto& w : words)
    if (w.alphabet_size() != alphabet)
      throw InputError("all words in a batch must share one alphabet");
  const int d_proc = process.dim();
  bool enhance;
  if (alphabet == d_proc)
    enhance = false;
  else if (alphabet == d_proc + 1)
    enhance = true;
  else
    throw InputError("word alphabet size " + std::to_string(alphabet) +
                     " matches neither the process dimension " + std::to_string(d_proc) +
                     " nor its time-enhanced dimension " + std::to_string(d_proc + 1));

  // resolve words up front so depth problems surface before any simulation
  std::vector<CompiledPairing> compiled;
  compiled.reserve(words.size());
  for (const auto& w : words) compiled.push_back(compile_pairing(w, alphabet, depth));

  const auto n = static_cast<std::size_t>(n_paths);
  const std::size_t n_words = words.size();
  const std::size_t n_fn = functionals.size();
  // per-path values, written by disjoint ranges, reduced serially afterwards
  std::vector<std::vector<double>> storage(n_fn, std::vector<double>(n));

  int n_threads = opts.threads < 1 ? 1 : opts.threads;
  if (static_cast<long>(n_threads) > n_paths) n_threads = static_cast<int>(n_paths);
  std::vector<std::vector<double>> thread_max(
      static_cast<std::size_t>(n_threads), std::vector<double>(n_words, 0.0));

  auto worker = [&](std::size_t lo, std::size_t hi, std::size_t slot) {
    std::vector<double> pairings(n_words);
    auto& local_max = thread_max[slot];
    for (std::size_t k = lo; k < hi; ++k) {
      PathRng rng(seed, k);
      SampledPath path = simulate_process(process, grid, rng);
      if (enhance) path = time_enhance(path);
      const TruncatedSignature sig = lift_path(path, lift, depth);
      for (std::size_t i = 0; i < n_words; ++i) {
        pairings[i] = pair(compiled[i], sig);
        local_max[i] = std::max(local_max[i], std::abs(pairings[i]));
      }
      for (std::size_t j = 0; j < n_fn; ++j) storage[j][k] = functionals[j](pairings);
    }
  };

  if (n_threads <= 1) {
    worker(0, n, 0);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
    threads.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
      const std::size_t lo = n * static_cast<std::size_t>(t) / static_cast<std::size_t>(n_threads);
      const std::size_t hi =
          n * static_cast<std::size_t>(t + 1) / static_cast<std::size_t>(n_threads);
      threads.emplace_back([&, lo, hi, t] {
        try {
          worker(lo, hi, static_cast<std::size_t>(t));
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : threads) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  FunctionalBatchResult out;
  out.n_paths = n_paths;
  out.means.resize(n_fn);
  out.std_errors.resize(n_fn);
  out.max_abs_pairing.assign(n_words, 0.0);
  for (const auto& local : thread_max)
    for (std::size_t i = 0; i < n_words; ++i)
      out.max_abs_pairing[i] = std::max(out.max_abs_pairing[i], local[i]);
  // fixed-order two-pass reduction: identical result for any thread count
  for (std::size_t j = 0; j < n_fn; ++j) {
    CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k) acc.add(storage[j][k]);
    const double mean = acc.value() / static_cast<double>(n_paths);
    CompensatedSum sq;
    for (std::size_t k = 0; k < n; ++k) {
      const double dev = storage[j][k] - mean;
      sq.add(dev * dev);
    }
    const double var = sq.value() / static_cast<double>(n_paths - 1);
    out.means[j] = mean;
    out.std_errors[j] = std::sqrt(std::max(0.0, var) / static_cast<double>(n_paths));
  }
  return out;
}

namespace {

void check_multi_index(const std::vector<int>& m, std::size_t n_words) {
  if (m.size() != n_words)
    throw InputError("multi-index length " + std::to_string(m.size()) +
                     " does not match word count " + std::to_string(n_words));
  for (int mi : m)
    if (mi < 0) throw InputError("multi-index entries must be >= 0");
}

double monomial(const std::vector<double>& pairings, const std::vector<int>& m) {
  double prod = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int e = 0; e < m[i]; ++e) prod *= pairings[i];
  return prod;
}

}  // namespace

std::vector<CorrelatorEstimate> estimate_correlator_batch(const ProcessSpec& process,
                                                          const SimulationGrid& grid,
                                                          const CorrelatorBatch& batch,
                                                          long n_paths, std::uint64_t seed,
                                                          const McOptions& opts) {
  if (batch.words.empty()) throw InputError("correlator request needs at least one word");
  if (batch.multi_indices.empty())
    throw InputError("correlator batch needs at least one multi-index");
  std::vector<std::function<double(const std::vector<double>&)>> functionals;
  functionals.reserve(batch.multi_indices.size());
  for (const auto& m : batch.multi_indices) {
    check_multi_index(m, batch.words.size());
    functionals.emplace_back(
        [&m](const std::vector<double>& pairings) { return monomial(pairings, m); });
  }
  const auto res = estimate_path_functionals(process, grid, batch.words, batch.lift,
                                             batch.depth, functionals, n_paths, seed, opts);
  std::vector<CorrelatorEstimate> out(batch.multi_indices.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = {res.means[j], res.std_errors[j], res.n_paths};
  return out;
}

CorrelatorEstimate estimate_correlator(const ProcessSpec& process, const SimulationGrid& grid,
                                       const CorrelatorRequest& request, long n_paths,
                                       std::uint64_t seed, const McOptions& opts) {
  CorrelatorBatch batch{request.words, {request.multi_index}, request.lift, request.depth};
  return estimate_correlator_batch(process, grid, batch, n_paths, seed, opts).front();
}

WeightedWord shuffle_linearize(const CorrelatorRequest& request) {
  if (request.words.empty()) throw InputError("correlator request needs at least one word");
  if (request.lift == LiftKind::Ito)
    throw InputError(
        "shuffle linearization relies on the shuffle identity, which holds for "
        "geometric (stratonovich) lifts only; the ito lift is not geometric");
  check_multi_index(request.multi_index, request.words.size());
  const int alphabet = request.words.front().alphabet_size();
  WeightedWord phi(alphabet, Word{}, 1.0);
  for (std::size_t i = 0; i < request.words.size(); ++i)
    phi = shuffle(phi, shuffle_power(request.words[i], request.multi_index[i]));
  return phi;
}

CostReport cost_report(const CorrelatorRequest& request) {
  if (request.words.empty()) throw InputError("correlator request needs at least one word");
  check_multi_index(request.multi_index, request.words.size());
  CostReport rep;
  for (std::size_t i = 0; i < request.words.size(); ++i) {
    const int len = request.words[i].max_word_length();
    rep.linearized_depth += request.multi_index[i] * len;
    rep.direct_depth = std::max(rep.direct_depth, len);
  }

  // fixed synthetic path; the comparison always runs the geometric route,
  // since the linearized functional only exists there
  const int alphabet = request.words.front().alphabet_size();
  BrownianSpec bm;
  bm.dim = alphabet;
  bm.correlation.assign(static_cast<std::size_t>(alphabet) * static_cast<std::size_t>(alphabet),
                        0.0);
  for (int i = 0; i < alphabet; ++i)
    bm.correlation[static_cast<std::size_t>(i) * static_cast<std::size_t>(alphabet) +
                   static_cast<std::size_t>(i)] = 1.0;
  bm.initial.assign(static_cast<std::size_t>(alphabet), 0.0);
  PathRng rng(12345, 0);
  const SampledPath path = simulate_bm(bm, SimulationGrid{1.0, 64}, rng);

  WeightedWord phi(alphabet, Word{}, 1.0);
  for (std::size_t i = 0; i < request.words.size(); ++i)
    phi = shuffle(phi, shuffle_power(request.words[i], request.multi_index[i]));

  const int reps = 200;
  using clock = std::chrono::steady_clock;

  const auto t0 = clock::now();
  double direct_value = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto sig = stratonovich_lift(path, std::max(1, rep.direct_depth));
    std::vector<double> pairings;
    pairings.reserve(request.words.size());
    for (const auto& w : request.words) pairings.push_back(pair(w, sig));
    direct_value = monomial(pairings, request.multi_index);
  }
  const auto t1 = clock::now();
  double linearized_value = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto sig = stratonovich_lift(path, std::max(1, rep.linearized_depth));
    linearized_value = pair(phi, sig);
  }
  const auto t2 = clock::now();

  rep.direct_seconds = std::chrono::duration<double>(t1 - t0).count() / reps;
  rep.linearized_seconds = std::chrono::duration<double>(t2 - t1).count() / reps;
  rep.direct_value = direct_value;
  rep.linearized_value = linearized_value;
  return rep;
}

std::string correlators_to_csv(const std::vector<std::string>& ids,
                               const std::vector<CorrelatorEstimate>& estimates) {
  if (ids.size() != estimates.size())
    throw InputError("correlator csv needs one id per estimate");
  std::string out = "request_id,value,std_error,n_paths\n";
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    out += ids[i] + "," + format_double(estimates[i].value) + "," +
           format_double(estimates[i].std_error) + "," +
           std::to_string(estimates[i].n_paths) + "\n";
  }
  return out;
}

}  // namespace sigprice
