#include "sigprice/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sigprice/errors.hpp"
#include "sigprice/util.hpp"

namespace sigprice {

namespace {

using nlohmann::json;

ProcessSpec parse_process(const json& j) {
  ProcessSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "brownian") {
    spec.kind = ProcessKind::Brownian;
    auto& bm = spec.bm;
    bm.dim = j.at("dim").get<int>();
    if (bm.dim < 1) throw InputError("process dim must be >= 1");
    const auto d = static_cast<std::size_t>(bm.dim);
    if (j.contains("correlation")) {
      const auto& rows = j.at("correlation");
      if (rows.size() != d) throw InputError("correlation needs dim rows");
      for (const auto& row : rows) {
        if (row.size() != d) throw InputError("correlation rows need dim entries");
        for (const auto& x : row) bm.correlation.push_back(x.get<double>());
      }
    } else {
      bm.correlation.assign(d * d, 0.0);
      for (std::size_t i = 0; i < d; ++i) bm.correlation[i * d + i] = 1.0;
    }
    if (j.contains("initial")) {
      for (const auto& x : j.at("initial")) bm.initial.push_back(x.get<double>());
    } else {
      bm.initial.assign(d, 0.0);
    }
    return spec;
  }
  if (kind == "ou" || kind == "logistic_ou") {
    spec.kind = kind == "ou" ? ProcessKind::Ou : ProcessKind::LogisticOu;
    auto& ou = spec.ou;
    const auto& a = j.at("a");
    const auto& sigma = j.at("sigma");
    if (a.size() != 2 || sigma.size() != 2)
      throw InputError("ou processes need two mean-reversion speeds and two volatilities");
    ou.a1 = a[0].get<double>();
    ou.a2 = a[1].get<double>();
    ou.sigma1 = sigma[0].get<double>();
    ou.sigma2 = sigma[1].get<double>();
    ou.rho = j.value("rho", 0.0);
    const bool have_y0 = j.contains("y0");
    const bool have_levels = j.contains("start_levels");
    if (have_y0 && have_levels)
      throw InputError("give either y0 or start_levels, not both");
    if (have_y0) {
      const auto& y0 = j.at("y0");
      if (y0.size() != 2) throw InputError("y0 needs two entries");
      ou.y0_1 = y0[0].get<double>();
      ou.y0_2 = y0[1].get<double>();
    } else if (have_levels) {
      if (spec.kind != ProcessKind::LogisticOu)
        throw InputError("start_levels applies to logistic_ou processes only");
      const auto& lv = j.at("start_levels");
      if (lv.size() != 2) throw InputError("start_levels needs two entries");
      ou.y0_1 = logit(lv[0].get<double>());
      ou.y0_2 = logit(lv[1].get<double>());
    } else {
      throw InputError("ou processes need y0 (or start_levels for logistic_ou)");
    }
    return spec;
  }
  throw InputError("unknown process kind '" + kind +
                   "' (expected brownian, ou or logistic_ou)");
}

PayoffSpec parse_payoff(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "asian_call") {
    AsianCallSpec s;
    s.strike = j.value("strike", 0.0);
    s.smoothing = j.value("smoothing", 2.5);
    s.order = j.value("order", 6);
    return PayoffSpec{s};
  }
  if (variant == "spread") {
    SpreadSpec s;
    s.conversion = j.value("conversion", 1.0);
    return PayoffSpec{s};
  }
  if (variant == "quanto_put_call") {
    QuantoSpec s;
    s.volume_strike = j.value("volume_strike", 0.0);
    s.price_strike = j.value("price_strike", 0.0);
    s.smoothing = j.value("smoothing", 2.5);
    s.order = j.value("order", 6);
    return PayoffSpec{s};
  }
  if (variant == "quality_factor") {
    QualityFactorSpec s;
    s.m_order = j.value("m_order", 4);
    s.n_order = j.value("n_order", 4);
    return PayoffSpec{s};
  }
  throw InputError("unknown payoff variant '" + variant +
                   "' (expected asian_call, spread, quanto_put_call or quality_factor)");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw InputError("failed while writing '" + path.string() + "'");
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

struct Effective {
  long n_paths;
  std::uint64_t seed;
  McOptions mc;
};

Effective effective(const Scenario& scenario, const RunOverrides& overrides) {
  Effective e;
  e.n_paths = overrides.n_paths.value_or(scenario.n_paths);
  e.seed = overrides.seed.value_or(scenario.seed);
  e.mc.threads = overrides.threads < 1 ? 1 : overrides.threads;
  return e;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("scenario json is malformed: ") + e.what());
  }
  try {
    Scenario s;
    const std::string schema = j.at("schema").get<std::string>();
    if (schema != "sigprice/1")
      throw InputError("unsupported scenario schema '" + schema + "' (expected sigprice/1)");
    s.process = parse_process(j.at("process"));
    validate(s.process);
    s.grid.horizon = j.at("grid").at("horizon").get<double>();
    s.grid.steps = j.at("grid").at("steps").get<long>();
    validate(s.grid);
    s.lift = parse_lift_kind(j.value("lift", std::string("stratonovich")));
    s.n_paths = j.value("n_paths", 10000L);
    s.seed = j.value("seed", static_cast<std::uint64_t>(0));

    if (j.contains("simulate")) {
      const auto& sim = j.at("simulate");
      s.paths_out = sim.value("paths_out", 1L);
      s.path_prefix = sim.value("file_prefix", std::string("path"));
      if (s.paths_out < 1) throw InputError("simulate.paths_out must be >= 1");
    }
    if (j.contains("sig")) {
      const auto& sig = j.at("sig");
      s.sig_input = sig.value("input", std::string());
      if (sig.contains("lift"))
        s.sig_lift = parse_lift_kind(sig.at("lift").get<std::string>());
      s.sig_depth = sig.value("depth", 3);
      s.sig_output = sig.value("output", std::string("signature.csv"));
    }
    if (j.contains("correlators")) {
      const auto& cor = j.at("correlators");
      s.correlator_depth = cor.at("depth").get<int>();
      s.correlator_alphabet = cor.value("alphabet", 0);
      s.correlators_output = cor.value("output", std::string("correlators.csv"));
      for (const auto& r : cor.at("requests")) {
        CorrelatorRequestSpec req;
        req.id = r.value("id", std::string());
        for (const auto& w : r.at("words")) req.words.push_back(w.get<std::string>());
        for (const auto& m : r.at("multi_index")) req.multi_index.push_back(m.get<int>());
        s.requests.push_back(std::move(req));
      }
    }
    if (j.contains("payoff")) s.payoff = parse_payoff(j.at("payoff"));
    if (j.contains("price")) {
      const auto& pr = j.at("price");
      s.price_method = pr.value("method", std::string("both"));
      if (s.price_method != "expansion" && s.price_method != "direct" &&
          s.price_method != "both")
        throw InputError("price.method must be expansion, direct or both");
      if (pr.contains("convergence_orders"))
        for (const auto& o : pr.at("convergence_orders"))
          s.convergence_orders.push_back(o.get<int>());
      s.price_output = pr.value("output", std::string("price.csv"));
      s.convergence_output = pr.value("convergence_output", std::string("convergence.csv"));
    }
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("scenario json is invalid: ") + e.what());
  }
}

Scenario load_scenario(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot open scenario file '" + file + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void run_simulate(const Scenario& scenario, const RunOverrides& overrides,
                  const std::string& out_dir) {
  const auto dir = prepare_out_dir(out_dir);
  const auto eff = effective(scenario, overrides);
  for (long k = 0; k < scenario.paths_out; ++k) {
    PathRng rng(eff.seed, static_cast<std::uint64_t>(k));
    const SampledPath path = simulate_process(scenario.process, scenario.grid, rng);
    write_file(dir / (scenario.path_prefix + "_" + std::to_string(k) + ".csv"),
               path_to_csv(path));
  }
}

void run_sig(const Scenario& scenario, const RunOverrides& overrides,
             const std::string& out_dir) {
  const auto dir = prepare_out_dir(out_dir);
  const auto eff = effective(scenario, overrides);
  SampledPath path = [&] {
    if (!scenario.sig_input.empty()) {
      std::ifstream in(scenario.sig_input, std::ios::binary);
      if (!in) throw InputError("cannot open path csv '" + scenario.sig_input + "'");
      return path_from_csv(in);
    }
    PathRng rng(eff.seed, 0);
    return simulate_process(scenario.process, scenario.grid, rng);
  }();
  const LiftKind lift = scenario.sig_lift.value_or(scenario.lift);
  const TruncatedSignature sig = lift_path(path, lift, scenario.sig_depth);
  write_file(dir / scenario.sig_output, signature_to_csv(sig));
}

void run_correlators(const Scenario& scenario, const RunOverrides& overrides,
                     const std::string& out_dir) {
  if (scenario.requests.empty())
    throw InputError("scenario has no correlator requests");
  if (scenario.correlator_depth < 1)
    throw InputError("correlators.depth must be >= 1");
  const auto dir = prepare_out_dir(out_dir);
  const auto eff = effective(scenario, overrides);
  const int alphabet = scenario.correlator_alphabet > 0 ? scenario.correlator_alphabet
                                                        : scenario.process.dim() + 1;
  std::vector<std::string> ids;
  std::vector<CorrelatorEstimate> estimates;
  for (std::size_t i = 0; i < scenario.requests.size(); ++i) {
    const auto& req_spec = scenario.requests[i];
    CorrelatorRequest req;
    req.lift = scenario.lift;
    req.depth = scenario.correlator_depth;
    for (const auto& text : req_spec.words)
      req.words.push_back(parse_weighted_word(text, alphabet));
    req.multi_index = req_spec.multi_index;
    ids.push_back(req_spec.id.empty() ? std::to_string(i) : req_spec.id);
    estimates.push_back(estimate_correlator(scenario.process, scenario.grid, req,
                                            eff.n_paths, eff.seed, eff.mc));
  }
  write_file(dir / scenario.correlators_output, correlators_to_csv(ids, estimates));
}

std::vector<std::string> run_price(const Scenario& scenario, const RunOverrides& overrides,
                                   const std::string& out_dir) {
  if (!scenario.payoff) throw InputError("scenario has no payoff section");
  const auto dir = prepare_out_dir(out_dir);
  const auto eff = effective(scenario, overrides);
  const auto& spec = *scenario.payoff;
  std::vector<PriceReport> reports;
  std::vector<std::string> summary;
  const bool want_expansion =
      scenario.price_method == "expansion" || scenario.price_method == "both";
  const bool want_direct =
      scenario.price_method == "direct" || scenario.price_method == "both";
  if (want_expansion) {
    if (scenario.price_method == "both" && std::holds_alternative<SpreadSpec>(spec.variant)) {
      summary.push_back("expansion unavailable for spread payoffs; reporting direct mc only");
    } else {
      reports.push_back(price_via_correlators(spec, scenario.process, scenario.grid,
                                              scenario.lift, eff.n_paths, eff.seed, eff.mc));
    }
  }
  if (want_direct) {
    reports.push_back(price_direct_mc(spec, scenario.process, scenario.grid, scenario.lift,
                                      eff.n_paths, eff.seed, eff.mc));
  }
  for (const auto& rep : reports) {
    std::string line = payoff_name(spec) + " " + rep.method + " price " +
                       format_double(rep.price) + " +/- " + format_double(rep.std_error) +
                       " (" + std::to_string(rep.n_paths) + " paths";
    if (rep.method == "correlator_expansion")
      line += "; tail bound " + format_double(rep.tail_bound);
    line += ")";
    summary.push_back(line);
    for (const auto& w : rep.warnings) summary.push_back("warning: " + w);
  }
  write_file(dir / scenario.price_output, price_reports_to_csv(reports));
  if (!scenario.convergence_orders.empty()) {
    const auto rows =
        convergence_report(spec, scenario.process, scenario.grid,
                           scenario.convergence_orders, eff.n_paths, eff.seed, eff.mc);
    write_file(dir / scenario.convergence_output, convergence_to_csv(rows));
    summary.push_back("convergence table written for " +
                      std::to_string(rows.size()) + " truncation orders");
  }
  return summary;
}

}  // namespace sigprice
