#pragma once

#include <cstdint>
#include <vector>

#include "sigprice/rng.hpp"
#include "sigprice/signature.hpp"
#include "sigprice/words.hpp"

namespace sigprice {

// correlated brownian motion: dim, row-major correlation with unit diagonal
// (cholesky must succeed), starting point
struct BrownianSpec {
  int dim = 1;
  std::vector<double> correlation;  // dim*dim, row-major
  std::vector<double> initial;      // dim entries
};

// two correlated ornstein-uhlenbeck components
// dY^i = -a_i Y^i dt + sigma_i dB^i with corr(dB^1, dB^2) = rho dt
struct OUSpec {
  double a1 = 1.0, a2 = 1.0;
  double sigma1 = 0.0, sigma2 = 0.0;
  double rho = 0.0;
  double y0_1 = 0.0, y0_2 = 0.0;
};

// uniform grid on [0, horizon] with `steps` increments (steps+1 points)
struct SimulationGrid {
  double horizon = 1.0;
  long steps = 1;
};

void validate(const BrownianSpec& spec);
void validate(const OUSpec& spec);
void validate(const SimulationGrid& grid);

// lower-triangular cholesky factor of a symmetric psd matrix (row-major);
// throws InputError when the matrix is not psd
std::vector<double> cholesky_factor(const std::vector<double>& matrix, int dim);

// exact gaussian increments with covariance dt * correlation; one path per rng
SampledPath simulate_bm(const BrownianSpec& spec, const SimulationGrid& grid, PathRng& rng);
SampledPath simulate_bm(const BrownianSpec& spec, const SimulationGrid& grid,
                        std::uint64_t seed);

// exact ou transition sampling per step with the cross-correlation of the
// integrated noise reproduced exactly
SampledPath simulate_ou(const OUSpec& spec, const SimulationGrid& grid, PathRng& rng);
SampledPath simulate_ou(const OUSpec& spec, const SimulationGrid& grid, std::uint64_t seed);

// componentwise u -> 1/(1+e^{-u}); maps ou paths into (0,1)
SampledPath logistic_map(const SampledPath& path);
double logistic(double u);
double logit(double p);

// driving process menu for the pricing scenarios
enum class ProcessKind { Brownian, Ou, LogisticOu };

struct ProcessSpec {
  ProcessKind kind = ProcessKind::Brownian;
  BrownianSpec bm;  // used when kind == Brownian
  OUSpec ou;        // used otherwise
  int dim() const;
  std::vector<double> initial_values() const;  // after any transform
};

void validate(const ProcessSpec& spec);
SampledPath simulate_process(const ProcessSpec& spec, const SimulationGrid& grid,
                             PathRng& rng);

// n-th moment of int_0^t (B^1_s - B^2_s) ds for independent components:
// ((2/3) t^3)^{n/2} (n-1)!! for even n, 0 for odd n
double bm_integral_moment(double t, int n);

// expected stratonovich signature entry of time-enhanced brownian motion for a
// word over the bm letters (>= 2; the time letter 1 is rejected): 0 for odd
// length, else (t/2)^{n/2}/(n/2)! when consecutive disjoint pairs carry equal
// letters, 0 otherwise
double expected_bm_signature_word(const Word& w, double t);

// E[Z^n] for Z ~ Normal(mu, sigma^2) via M_n = mu M_{n-1} + (n-1) sigma^2 M_{n-2}
double gaussian_moment(double mu, double sigma, int n);

// mean and variance of Z_t = int_0^t (Y^1_s - Y^2_s) ds under the ou pair
struct OuZStats {
  double mu;
  double sigma_sq;
};
OuZStats ou_z_stats(const OUSpec& spec, double t);

}  // namespace sigprice
