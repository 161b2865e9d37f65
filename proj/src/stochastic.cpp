#include "sigprice/stochastic.hpp"

#include <cmath>

#include "sigprice/errors.hpp"
#include "sigprice/util.hpp"

namespace sigprice {

double PathRng::gaussian() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_gaussian_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  cached_gaussian_ = r * std::sin(theta);
  have_cached_ = true;
  return r * std::cos(theta);
}

void validate(const BrownianSpec& spec) {
  if (spec.dim < 1) throw InputError("brownian dimension must be >= 1");
  const auto d = static_cast<std::size_t>(spec.dim);
  if (spec.correlation.size() != d * d)
    throw InputError("correlation matrix must have dim*dim entries");
  if (spec.initial.size() != d)
    throw InputError("brownian initial point must have dim entries");
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(spec.correlation[i * d + i] - 1.0) > 1e-12)
      throw InputError("correlation matrix must have unit diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(spec.correlation[i * d + j] - spec.correlation[j * d + i]) > 1e-12)
        throw InputError("correlation matrix must be symmetric");
  }
  for (double v : spec.initial)
    if (!std::isfinite(v)) throw InputError("brownian initial point must be finite");
  cholesky_factor(spec.correlation, spec.dim);
}

void validate(const OUSpec& spec) {
  if (!(spec.a1 > 0.0) || !(spec.a2 > 0.0))
    throw InputError("ou mean reversion speeds must be positive");
  if (spec.sigma1 < 0.0 || spec.sigma2 < 0.0)
    throw InputError("ou volatilities must be non-negative");
  if (!(spec.rho >= -1.0 && spec.rho <= 1.0))
    throw InputError("ou correlation must lie in [-1, 1]");
  if (!std::isfinite(spec.y0_1) || !std::isfinite(spec.y0_2))
    throw InputError("ou initial values must be finite");
}

void validate(const SimulationGrid& grid) {
  if (!(grid.horizon > 0.0) || !std::isfinite(grid.horizon))
    throw InputError("grid horizon must be positive and finite");
  if (grid.steps < 1) throw InputError("grid needs at least one step");
}

std::vector<double> cholesky_factor(const std::vector<double>& matrix, int dim) {
  const auto d = static_cast<std::size_t>(dim);
  if (matrix.size() != d * d) throw InputError("matrix must have dim*dim entries");
  std::vector<double> l(d * d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = matrix[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= l[j * d + k] * l[j * d + k];
    const double tol = 1e-12 * std::max(1.0, std::abs(matrix[j * d + j]));
    if (diag < -tol)
      throw InputError("correlation matrix is not positive semidefinite");
    const double pivot = diag > tol ? std::sqrt(diag) : 0.0;
    l[j * d + j] = pivot;
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = matrix[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i * d + k] * l[j * d + k];
      if (pivot > 0.0) {
        l[i * d + j] = s / pivot;
      } else if (std::abs(s) <= tol) {
        l[i * d + j] = 0.0;
      } else {
        throw InputError("correlation matrix is not positive semidefinite");
      }
    }
  }
  return l;
}

SampledPath simulate_bm(const BrownianSpec& spec, const SimulationGrid& grid, PathRng& rng) {
  validate(spec);
  validate(grid);
  const auto d = static_cast<std::size_t>(spec.dim);
  const auto chol = cholesky_factor(spec.correlation, spec.dim);
  const auto n_steps = static_cast<std::size_t>(grid.steps);
  const double dt = grid.horizon / static_cast<double>(grid.steps);
  const double sqrt_dt = std::sqrt(dt);
  std::vector<double> times(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i)
    times[i] = grid.horizon * static_cast<double>(i) / static_cast<double>(grid.steps);
  std::vector<double> values((n_steps + 1) * d);
  for (std::size_t c = 0; c < d; ++c) values[c] = spec.initial[c];
  std::vector<double> xi(d);
  for (std::size_t i = 0; i < n_steps; ++i) {
    for (std::size_t c = 0; c < d; ++c) xi[c] = rng.gaussian();
    for (std::size_t c = 0; c < d; ++c) {
      double inc = 0.0;
      for (std::size_t k = 0; k <= c; ++k) inc += chol[c * d + k] * xi[k];
      values[(i + 1) * d + c] = values[i * d + c] + sqrt_dt * inc;
    }
  }
  return SampledPath(std::move(times), std::move(values), spec.dim);
}

SampledPath simulate_bm(const BrownianSpec& spec, const SimulationGrid& grid,
                        std::uint64_t seed) {
  PathRng rng(seed, 0);
  return simulate_bm(spec, grid, rng);
}

SampledPath simulate_ou(const OUSpec& spec, const SimulationGrid& grid, PathRng& rng) {
  validate(spec);
  validate(grid);
  const auto n_steps = static_cast<std::size_t>(grid.steps);
  const double dt = grid.horizon / static_cast<double>(grid.steps);
  const double decay1 = std::exp(-spec.a1 * dt);
  const double decay2 = std::exp(-spec.a2 * dt);
  // conditional standard deviations of the exact transition
  const double s1 = spec.sigma1 * std::sqrt((1.0 - decay1 * decay1) / (2.0 * spec.a1));
  const double s2 = spec.sigma2 * std::sqrt((1.0 - decay2 * decay2) / (2.0 * spec.a2));
  // correlation of the two integrated noises over one step
  double r = 0.0;
  if (s1 > 0.0 && s2 > 0.0) {
    const double cov = spec.rho * spec.sigma1 * spec.sigma2 *
                       (1.0 - std::exp(-(spec.a1 + spec.a2) * dt)) / (spec.a1 + spec.a2);
    r = cov / (s1 * s2);
    // snap roundoff at the perfectly (anti)correlated ends so rho = 1 with
    // equal parameters reproduces identical innovations exactly
    if (r > 1.0 - 1e-12) r = 1.0;
    if (r < -1.0 + 1e-12) r = -1.0;
  }
  const double r_ortho = std::sqrt(std::max(0.0, 1.0 - r * r));
  std::vector<double> times(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i)
    times[i] = grid.horizon * static_cast<double>(i) / static_cast<double>(grid.steps);
  std::vector<double> values((n_steps + 1) * 2);
  values[0] = spec.y0_1;
  values[1] = spec.y0_2;
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double eta1 = rng.gaussian();
    const double eta2 = rng.gaussian();
    const double xi2 = r * eta1 + r_ortho * eta2;
    values[(i + 1) * 2] = values[i * 2] * decay1 + s1 * eta1;
    values[(i + 1) * 2 + 1] = values[i * 2 + 1] * decay2 + s2 * xi2;
  }
  return SampledPath(std::move(times), std::move(values), 2);
}

SampledPath simulate_ou(const OUSpec& spec, const SimulationGrid& grid, std::uint64_t seed) {
  PathRng rng(seed, 0);
  return simulate_ou(spec, grid, rng);
}

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double logit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("logit argument must lie in (0, 1)");
  return std::log(p / (1.0 - p));
}

SampledPath logistic_map(const SampledPath& path) {
  std::vector<double> values = path.values();
  for (double& v : values) v = logistic(v);
  return SampledPath(path.times(), std::move(values), path.dim());
}

int ProcessSpec::dim() const { return kind == ProcessKind::Brownian ? bm.dim : 2; }

std::vector<double> ProcessSpec::initial_values() const {
  switch (kind) {
    case ProcessKind::Brownian:
      return bm.initial;
    case ProcessKind::Ou:
      return {ou.y0_1, ou.y0_2};
    case ProcessKind::LogisticOu:
      return {logistic(ou.y0_1), logistic(ou.y0_2)};
  }
  throw InputError("unknown process kind");
}

void validate(const ProcessSpec& spec) {
  if (spec.kind == ProcessKind::Brownian)
    validate(spec.bm);
  else
    validate(spec.ou);
}

SampledPath simulate_process(const ProcessSpec& spec, const SimulationGrid& grid,
                             PathRng& rng) {
  switch (spec.kind) {
    case ProcessKind::Brownian:
      return simulate_bm(spec.bm, grid, rng);
    case ProcessKind::Ou:
      return simulate_ou(spec.ou, grid, rng);
    case ProcessKind::LogisticOu:
      return logistic_map(simulate_ou(spec.ou, grid, rng));
  }
  throw InputError("unknown process kind");
}

double bm_integral_moment(double t, int n) {
  if (n < 0) throw InputError("moment order must be >= 0");
  if (!(t >= 0.0)) throw InputError("horizon must be >= 0");
  if (n % 2 == 1) return 0.0;
  const double var = (2.0 / 3.0) * t * t * t;
  double value = 1.0;
  for (int k = 0; k < n / 2; ++k) value *= var;
  for (int k = n - 1; k >= 2; k -= 2) value *= k;  // (n-1)!!
  return value;
}

double expected_bm_signature_word(const Word& w, double t) {
  for (Letter a : w) {
    if (a == 1)
      throw InputError("expected signature formula covers brownian letters only, "
                       "not the time letter");
    if (a < 1) throw InputError("word letters must be >= 1");
  }
  const std::size_t n = w.size();
  if (n % 2 == 1) return 0.0;
  // remap to bm components and pair consecutive letters from the end
  for (std::size_t k = 0; k + 1 < n; k += 2)
    if (w[n - 1 - k] - 1 != w[n - 2 - k] - 1) return 0.0;
  double value = 1.0;
  for (std::size_t k = 1; k <= n / 2; ++k) value *= (t / 2.0) / static_cast<double>(k);
  return value;
}

double gaussian_moment(double mu, double sigma, int n) {
  if (n < 0) throw InputError("moment order must be >= 0");
  if (sigma < 0.0) throw InputError("standard deviation must be non-negative");
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 1; k <= n; ++k) {
    const double next = mu * cur + (k - 1) * sigma * sigma * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

OuZStats ou_z_stats(const OUSpec& spec, double t) {
  validate(spec);
  if (!(t > 0.0)) throw InputError("time must be positive");
  const auto decay_integral = [t](double a) {
    // int_0^t (1 - e^{-a(t-u)})^2 du
    return t - 2.0 * (1.0 - std::exp(-a * t)) / a +
           (1.0 - std::exp(-2.0 * a * t)) / (2.0 * a);
  };
  const auto cross_integral = [t](double a, double b) {
    // int_0^t (1 - e^{-a(t-u)})(1 - e^{-b(t-u)}) du
    return t - (1.0 - std::exp(-a * t)) / a - (1.0 - std::exp(-b * t)) / b +
           (1.0 - std::exp(-(a + b) * t)) / (a + b);
  };
  OuZStats out;
  out.mu = (spec.y0_1 / spec.a1) * (1.0 - std::exp(-spec.a1 * t)) -
           (spec.y0_2 / spec.a2) * (1.0 - std::exp(-spec.a2 * t));
  const double v1 = spec.sigma1 / spec.a1;
  const double v2 = spec.sigma2 / spec.a2;
  out.sigma_sq = v1 * v1 * decay_integral(spec.a1) + v2 * v2 * decay_integral(spec.a2) -
                 2.0 * spec.rho * v1 * v2 * cross_integral(spec.a1, spec.a2);
  return out;
}

}  // namespace sigprice
