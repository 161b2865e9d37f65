#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sigprice/errors.hpp"
#include "sigprice/scenario.hpp"

namespace {

struct CommonArgs {
  std::string scenario_file;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<long> n_paths;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-s,--scenario", args.scenario_file, "scenario json file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", args.out_dir, "output directory (created if missing)");
  cmd->add_option("--seed", args.seed, "override the scenario seed");
  cmd->add_option("--paths", args.n_paths, "override the scenario path count");
  cmd->add_option("--threads", args.threads,
                  "worker threads (default: SIGPRICE_THREADS or 1)");
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SIGPRICE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signature based monte carlo pricing of path dependent payoffs"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* sim = app.add_subcommand("simulate", "sample process paths to csv files");
  CLI::App* sig = app.add_subcommand("sig", "compute a truncated path signature");
  CLI::App* cor = app.add_subcommand("correlators", "estimate signature correlators");
  CLI::App* price = app.add_subcommand("price", "price the scenario payoff");
  for (CLI::App* cmd : {sim, sig, cor, price}) add_common(cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const sigprice::Scenario scenario = sigprice::load_scenario(args.scenario_file);
    sigprice::RunOverrides overrides;
    overrides.seed = args.seed;
    overrides.n_paths = args.n_paths;
    overrides.threads = resolve_threads(args.threads);
    if (sim->parsed()) {
      sigprice::run_simulate(scenario, overrides, args.out_dir);
    } else if (sig->parsed()) {
      sigprice::run_sig(scenario, overrides, args.out_dir);
    } else if (cor->parsed()) {
      sigprice::run_correlators(scenario, overrides, args.out_dir);
    } else if (price->parsed()) {
      for (const auto& line : sigprice::run_price(scenario, overrides, args.out_dir))
        std::cout << line << "\n";
    }
    return 0;
  } catch (const sigprice::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const sigprice::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
