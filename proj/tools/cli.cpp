#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qnblp/bounds.hpp"
#include "qnblp/circuit_text.hpp"
#include "qnblp/errors.hpp"
#include "qnblp/gate_synth.hpp"
#include "qnblp/pipeline.hpp"
#include "qnblp/qram.hpp"
#include "qnblp/samples.hpp"

namespace qnblp::cli {
namespace {

using nlohmann::json;

// Derivation lanes off the master seed; episode e of trial t draws from
// path {t, e}, matching solve().
constexpr std::uint64_t kSampleLane = 0;
constexpr std::uint64_t kSecretLane = 1;
constexpr std::uint64_t kRealizationLane = ~0ull;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Config files hold key=value lines ('#'/';' comments). They are expanded
// into --key=value tokens before the real parse rather than handed to the
// argument parser's own config hook, which skips subcommand-level files.
// Keys already present as explicit flags are dropped, so flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;

  const auto trim = [](std::string text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = text.find_last_not_of(" \t\r");
    text = text.substr(first, last - first + 1);
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
      text = text.substr(1, text.size() - 2);
    }
    return text;
  };

  std::istringstream file(read_file(path));
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(file, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error("config line is not key=value: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error("config line has no key: " + line);
    const std::string flag = "--" + key;
    const bool given =
        std::any_of(args.begin(), args.end(), [&](const std::string& arg) {
          return arg == flag || arg.rfind(flag + "=", 0) == 0;
        });
    if (!given) extra.push_back(flag + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

void deliver(const std::string& content, const std::string& path,
             std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  file << content;
  if (!file) throw Error("short write to " + path);
}

json metrics_to_json(const ResourceMetrics& m) {
  json j;
  j["width"] = m.width;
  j["total_depth"] = m.total_depth;
  j["t_count"] = m.t_count ? json(*m.t_count) : json(nullptr);
  j["t_depth"] = m.t_depth ? json(*m.t_depth) : json(nullptr);
  json histogram = json::object();
  std::int64_t gates = 0;
  for (const auto& [kind, count] : m.gate_histogram) {
    histogram[to_string(kind)] = count;
    gates += count;
  }
  j["gate_count"] = gates;
  j["gate_histogram"] = histogram;
  return j;
}

BitString parse_or_draw_secret(const std::string& given, int n,
                               std::uint64_t seed) {
  if (!given.empty()) {
    BitString secret = BitString::from_string(given);
    if (secret.size() != static_cast<std::size_t>(n)) {
      throw LengthMismatch("secret length must equal n");
    }
    return secret;
  }
  RngStream stream(seed, {kSecretLane});
  BitString secret(static_cast<std::size_t>(n));
  for (int bit = 0; bit < n; ++bit) {
    secret.set(static_cast<std::size_t>(bit), stream.bernoulli(0.5));
  }
  return secret;
}

struct SynthParams {
  std::string kind;
  int l = 0;
  int beta = 0;
  int n = -1;
  int q = 0;
  std::string memory_path;
  std::string column;
  bool reuse_coupling = false;
  double c_rz = 3.0;
  double rz_precision = 0.0;
  double delta_target = 0.0;
  std::string out_path;
};

void run_synth(const SynthParams& p, std::ostream& out) {
  Circuit circuit(1);
  json extra = json::object();

  if (p.kind == "toffoli") {
    circuit = decompose_toffoli(0, 1, 2);
  } else if (p.kind == "qft" || p.kind == "aqft") {
    if (p.l < 1) throw Error("synth " + p.kind + " needs --l >= 1");
    if (p.kind == "qft") {
      circuit = synth_qft(static_cast<QubitIndex>(p.l));
      extra["crk_count"] = qft_crk_count(static_cast<QubitIndex>(p.l));
    } else {
      AqftSpec spec;
      spec.l = static_cast<QubitIndex>(p.l);
      spec.beta = static_cast<QubitIndex>(p.beta);
      spec.delta_target = p.delta_target;
      circuit = synth_aqft(spec);
      extra["crk_count"] = aqft_crk_count(spec.l, spec.beta);
      extra["error_bound"] = aqft_error_bound(spec.l, spec.beta);
      RotationCostModel model;
      model.c_rz = p.c_rz;
      model.rz_precision = p.rz_precision;
      if (p.rz_precision > 0.0 || p.delta_target > 0.0) {
        extra["t_count_estimate"] = aqft_t_count_estimate(spec, model);
      }
    }
  } else if (p.kind == "bv") {
    if (p.n < 1) throw Error("synth bv needs --n >= 1");
    circuit = synth_bv_kernel(static_cast<QubitIndex>(p.n));
  } else if (p.kind == "coupling") {
    circuit = synth_coupling(p.q);
  } else if (p.kind == "query") {
    circuit = synth_query(p.q, BitString::from_string(p.column));
  } else if (p.kind == "qram") {
    MemoryTable memory;
    if (!p.memory_path.empty()) {
      memory = memory_from_json(read_file(p.memory_path));
    } else {
      // Default dense memory: every word all ones.
      if (p.n < 0 || p.q < 1) throw Error("synth qram needs --n and --q");
      memory.n = p.n;
      memory.q = p.q;
      BitString ones(static_cast<std::size_t>(p.n) + 1);
      for (std::size_t bit = 0; bit < ones.size(); ++bit) ones.set(bit, true);
      memory.cells.assign(1ull << p.q, ones);
    }
    QramOptions options;
    options.reuse_coupling = p.reuse_coupling;
    QramSynthInfo info;
    circuit = synth_qram(memory, options, &info);
    const ResourceMetrics predicted =
        predicted_qram_metrics(memory.n, memory.q, options);
    extra["predicted_width"] = predicted.width;
    extra["predicted_t_count"] = *predicted.t_count;
    extra["predicted_t_depth"] = *predicted.t_depth;
    extra["query_gates_raw"] = info.query_gates_raw;
    extra["query_gates_emitted"] = info.query_gates_emitted;
    extra["switch_units"] = info.switch_units;
  } else {
    throw Error("unknown synth kind: " + p.kind);
  }

  json report = metrics_to_json(metrics(circuit));
  report["kind"] = p.kind;
  for (auto& [key, value] : extra.items()) report[key] = value;
  if (!p.out_path.empty()) {
    deliver(export_text(circuit), p.out_path, out);
    report["circuit_file"] = p.out_path;
  }
  out << report.dump(2) << "\n";
}

struct SimulateParams {
  int n = 0;
  int q = 0;
  double eta = 0.0;
  std::string secret;
  std::uint64_t seed = 0;
  std::int64_t shots = 1000;
  std::int64_t trials = 1;
  std::string prep = "fast";
  bool fixed_errors = false;
  bool omit_episodes = false;
  double t = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  bool have_bounds_trio = false;
  std::string out_path;
};

PrepMode parse_prep(const std::string& name) {
  if (name == "ideal") return PrepMode::Ideal;
  if (name == "qram") return PrepMode::Qram;
  if (name == "fast") return PrepMode::Fast;
  throw Error("unknown prep mode: " + name);
}

json tally_to_json(const std::map<BitString, std::int64_t>& tally) {
  json j = json::object();
  for (const auto& [candidate, count] : tally) j[candidate.str()] = count;
  return j;
}

void run_simulate(const SimulateParams& p, std::ostream& out) {
  ProblemInstance instance;
  instance.n = p.n;
  instance.eta = p.eta;
  instance.master_seed = p.seed;
  instance.secret = parse_or_draw_secret(p.secret, p.n, p.seed);
  instance.validate();
  const PrepMode prep = parse_prep(p.prep);

  json report;
  report["command"] = "simulate";
  report["n"] = p.n;
  report["q"] = p.q;
  report["eta"] = p.eta;
  report["secret"] = instance.secret.str();
  report["seed"] = p.seed;
  report["prep"] = p.prep;
  report["fixed_errors"] = p.fixed_errors;

  std::optional<std::int64_t> m_target;
  if (p.have_bounds_trio) {
    BoundsConfig bounds;
    bounds.n = p.n;
    bounds.q = p.q;
    bounds.eta = p.eta;
    bounds.t = p.t;
    bounds.epsilon = p.epsilon;
    bounds.delta = p.delta;
    check_feasible(bounds);
    m_target = chernoff_m(p.epsilon * ps_lower(bounds), p.delta,
                          ChernoffVariant::Loose);
    report["t"] = p.t;
    report["epsilon"] = p.epsilon;
    report["delta"] = p.delta;
    report["m_target"] = *m_target;
  } else {
    report["m_target"] = nullptr;
  }

  if (p.trials > 1) {
    if (!p.have_bounds_trio) {
      throw Error("--trials > 1 needs --t, --epsilon and --delta");
    }
    SolveConfig config;
    config.t = p.t;
    config.epsilon = p.epsilon;
    config.delta = p.delta;
    config.prep = prep;
    config.regenerate = !p.fixed_errors;
    report["trials"] = p.trials;
    json per_trial = json::array();
    std::int64_t success_count = 0;
    for (std::int64_t trial = 0; trial < p.trials; ++trial) {
      const SolveResult result =
          solve(instance, p.q, config, static_cast<std::uint64_t>(trial));
      success_count += result.success ? 1 : 0;
      per_trial.push_back({{"trial", trial},
                           {"estimate", result.estimate.str()},
                           {"success", result.success},
                           {"episodes_total", result.episodes_total},
                           {"s_budget", result.s_budget}});
    }
    report["success_count"] = success_count;
    report["per_trial"] = per_trial;
    deliver(report.dump(2) + "\n", p.out_path, out);
    return;
  }

  report["shots"] = p.shots;
  std::optional<SampleSet> fixed;
  if (p.fixed_errors) {
    RngStream stream(p.seed, {0, kRealizationLane});
    fixed = generate_samples(instance, p.q, stream);
  }

  std::vector<EpisodeOutcome> outcomes;
  std::int64_t successes = 0;
  std::int64_t hits = 0;
  for (std::int64_t episode = 0; episode < p.shots; ++episode) {
    RngStream stream(p.seed, {0, static_cast<std::uint64_t>(episode)});
    EpisodeOutcome outcome;
    if (fixed) {
      outcome = run_episode(*fixed, prep, stream);
    } else {
      const SampleSet samples = generate_samples(instance, p.q, stream);
      outcome = run_episode(samples, prep, stream);
    }
    if (outcome.k_star == 1) {
      ++successes;
      if (outcome.k && *outcome.k == instance.secret) ++hits;
    }
    outcomes.push_back(std::move(outcome));
  }

  json empirical;
  empirical["successes"] = successes;
  empirical["p_kstar_one"] =
      static_cast<double>(successes) / static_cast<double>(p.shots);
  empirical["conditional_success"] =
      successes > 0
          ? json(static_cast<double>(hits) / static_cast<double>(successes))
          : json(nullptr);
  report["empirical"] = empirical;

  if (fixed) {
    const std::vector<double> dist = episode_distribution(*fixed);
    const std::uint64_t s_idx = instance.secret.to_index();
    double p_one = 0.0;
    double pf_max = 0.0;
    for (std::size_t k = 0; k < dist.size() / 2; ++k) {
      p_one += dist[(k << 1) | 1];
      if (k != s_idx) pf_max = std::max(pf_max, dist[(k << 1) | 1]);
    }
    json exact;
    exact["ps"] = dist[(s_idx << 1) | 1];
    exact["ps_direct"] = exact_ps(*fixed);
    exact["pf_max"] = pf_max;
    exact["p_kstar_one"] = p_one;
    report["exact"] = exact;
  } else {
    report["exact"] = nullptr;
  }

  const std::int64_t vote_target = m_target ? *m_target : successes;
  if (vote_target > 0) {
    const VoteResult vote = majority_vote(outcomes, vote_target);
    json vote_json;
    vote_json["estimate"] = vote.estimate.str();
    vote_json["success"] = vote.estimate == instance.secret;
    vote_json["m_used"] = vote.m_used;
    vote_json["tally"] = tally_to_json(vote.tally);
    report["vote"] = vote_json;
  } else {
    report["vote"] = nullptr;
  }

  if (!p.omit_episodes) {
    json episodes = json::array();
    for (const EpisodeOutcome& outcome : outcomes) {
      json e;
      e["k_star"] = outcome.k_star;
      if (outcome.k) e["k"] = outcome.k->str();
      episodes.push_back(std::move(e));
    }
    report["episodes"] = episodes;
  }
  deliver(report.dump(2) + "\n", p.out_path, out);
}

struct EstimateParams {
  BoundsConfig config;
  std::string out_path;
};

struct SweepParams {
  int n_min = 0;
  int n_max = 0;
  int q_min = 1;
  int q_max = 0;  // 0 means "up to n"
  double eta = 0.0;
  double t = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::string out_path;
};

void run_sweep(const SweepParams& p, std::ostream& out) {
  if (p.n_min < 1 || p.n_max < p.n_min) {
    throw Error("sweep needs 1 <= n-min <= n-max");
  }
  std::vector<BoundsReport> reports;
  for (int n = p.n_min; n <= p.n_max; ++n) {
    const int q_hi = p.q_max > 0 ? std::min(p.q_max, n) : n;
    for (int q = p.q_min; q <= q_hi; ++q) {
      BoundsConfig config;
      config.n = n;
      config.q = q;
      config.eta = p.eta;
      config.t = p.t;
      config.epsilon = p.epsilon;
      config.delta = p.delta;
      reports.push_back(tradeoff_report(config));
    }
  }
  deliver(sweep_to_csv(reports), p.out_path, out);
}

struct SamplesGenerateParams {
  int n = 0;
  int q = 0;
  double eta = 0.0;
  std::string secret;
  std::uint64_t seed = 0;
  std::string out_path;
};

void run_samples_generate(const SamplesGenerateParams& p, std::ostream& out) {
  ProblemInstance instance;
  instance.n = p.n;
  instance.eta = p.eta;
  instance.master_seed = p.seed;
  instance.secret = parse_or_draw_secret(p.secret, p.n, p.seed);
  RngStream stream(p.seed, {kSampleLane});
  const SampleSet samples = generate_samples(instance, p.q, stream);
  deliver(samples_to_json(samples), p.out_path, out);
}

void run_samples_inspect(const std::string& in_path, std::ostream& out) {
  const SampleSet samples = samples_from_json(read_file(in_path));
  std::int64_t errors = 0;
  double sum = 0.0;
  for (const SampleEntry& entry : samples.entries) {
    errors += entry.e ? 1 : 0;
    sum += entry.e ? -1.0 : 1.0;
  }
  json j;
  j["n"] = samples.n;
  j["q"] = samples.q;
  j["eta"] = samples.eta;
  j["secret"] = samples.secret.str();
  j["entries"] = samples.entries.size();
  j["error_count"] = errors;
  j["error_rate"] =
      static_cast<double>(errors) / static_cast<double>(samples.entries.size());
  j["ubar"] = std::ldexp(sum, -samples.q);
  j["exact_ps"] = exact_ps(samples);
  out << j.dump(2) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Clifford+T circuit toolkit for noisy binary linear problems"};
  app.require_subcommand(1);
  std::string config_path;

  SynthParams synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Synthesize a circuit and report metrics");
  synth_cmd->add_option("--config", config_path,
                  "key=value config file; explicit flags win");
  synth_cmd
      ->add_option("kind", synth.kind,
                   "toffoli | qft | aqft | bv | coupling | query | qram")
      ->required();
  synth_cmd->add_option("--l", synth.l, "Fourier register length");
  synth_cmd->add_option("--beta", synth.beta, "rotation cutoff");
  synth_cmd->add_option("--n", synth.n, "payload/secret length");
  synth_cmd->add_option("--q", synth.q, "address register length");
  synth_cmd->add_option("--memory", synth.memory_path, "memory JSON file");
  synth_cmd->add_option("--column", synth.column,
                        "memory column bits (cell 0 first)");
  synth_cmd->add_flag("--reuse-coupling", synth.reuse_coupling,
                      "fan out once for all data bits");
  synth_cmd->add_option("--c-rz", synth.c_rz, "T cost per rotation digit");
  synth_cmd->add_option("--rz-precision", synth.rz_precision,
                        "per-rotation precision for the T estimate");
  synth_cmd->add_option("--delta-target", synth.delta_target,
                        "overall approximation budget");
  synth_cmd->add_option("--out", synth.out_path, "circuit text output file");
  synth_cmd->callback([&] { run_synth(synth, out); });

  SimulateParams sim;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Run algorithm episodes and vote");
  sim_cmd->add_option("--config", config_path,
                  "key=value config file; explicit flags win");
  sim_cmd->add_option("--n", sim.n, "secret length")->required();
  sim_cmd->add_option("--q", sim.q, "log2 sample count")->required();
  sim_cmd->add_option("--eta", sim.eta, "noise bias in (0, 1/2]")->required();
  sim_cmd->add_option("--secret", sim.secret,
                      "secret bits (drawn from the seed when omitted)");
  sim_cmd->add_option("--seed", sim.seed, "master seed")->required();
  sim_cmd->add_option("--shots", sim.shots, "episodes to run")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--trials", sim.trials, "independent solve trials")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--prep", sim.prep, "ideal | qram | fast");
  sim_cmd->add_flag("--fixed-errors", sim.fixed_errors,
                    "one sample realization for all episodes");
  sim_cmd->add_flag("--omit-episodes", sim.omit_episodes,
                    "drop the per-episode list from the report");
  CLI::Option* sim_t = sim_cmd->add_option("--t", sim.t, "deviation tolerance");
  CLI::Option* sim_eps =
      sim_cmd->add_option("--epsilon", sim.epsilon, "relative error");
  CLI::Option* sim_delta =
      sim_cmd->add_option("--delta", sim.delta, "confidence parameter");
  sim_cmd->add_option("--out", sim.out_path, "report output file");
  sim_cmd->callback([&, sim_t, sim_eps, sim_delta] {
    const int given = (sim_t->count() ? 1 : 0) + (sim_eps->count() ? 1 : 0) +
                      (sim_delta->count() ? 1 : 0);
    if (given != 0 && given != 3) {
      throw Error("--t, --epsilon and --delta must be given together");
    }
    sim.have_bounds_trio = given == 3;
    run_simulate(sim, out);
  });

  EstimateParams est;
  CLI::App* est_cmd =
      app.add_subcommand("estimate", "Evaluate bounds and resource formulas");
  est_cmd->add_option("--config", config_path,
                  "key=value config file; explicit flags win");
  est_cmd->add_option("--n", est.config.n, "secret length")->required();
  est_cmd->add_option("--q", est.config.q, "log2 sample count")->required();
  est_cmd->add_option("--eta", est.config.eta, "noise bias")->required();
  est_cmd->add_option("--t", est.config.t, "deviation tolerance")->required();
  est_cmd->add_option("--epsilon", est.config.epsilon, "relative error")
      ->required();
  est_cmd->add_option("--delta", est.config.delta, "confidence parameter")
      ->required();
  est_cmd->add_option("--out", est.out_path, "report output file");
  est_cmd->callback(
      [&] { deliver(report_to_json(tradeoff_report(est.config)), est.out_path, out); });

  SweepParams sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Bounds reports over an (n, q) grid as CSV");
  sweep_cmd->add_option("--config", config_path,
                  "key=value config file; explicit flags win");
  sweep_cmd->add_option("--n-min", sweep.n_min, "first n")->required();
  sweep_cmd->add_option("--n-max", sweep.n_max, "last n");
  sweep_cmd->add_option("--q-min", sweep.q_min, "first q (default 1)");
  sweep_cmd->add_option("--q-max", sweep.q_max, "last q (default n)");
  sweep_cmd->add_option("--eta", sweep.eta, "noise bias")->required();
  sweep_cmd->add_option("--t", sweep.t, "deviation tolerance")->required();
  sweep_cmd->add_option("--epsilon", sweep.epsilon, "relative error")
      ->required();
  sweep_cmd->add_option("--delta", sweep.delta, "confidence parameter")
      ->required();
  sweep_cmd->add_option("--out", sweep.out_path, "CSV output file");
  sweep_cmd->callback([&] {
    if (sweep.n_max == 0) sweep.n_max = sweep.n_min;
    run_sweep(sweep, out);
  });

  CLI::App* samples_cmd =
      app.add_subcommand("samples", "Generate or inspect sample-set files");
  samples_cmd->require_subcommand(1);

  SamplesGenerateParams gen;
  CLI::App* gen_cmd =
      samples_cmd->add_subcommand("generate", "Draw a sample set");
  gen_cmd->add_option("--config", config_path,
                  "key=value config file; explicit flags win");
  gen_cmd->add_option("--n", gen.n, "secret length")->required();
  gen_cmd->add_option("--q", gen.q, "log2 sample count")->required();
  gen_cmd->add_option("--eta", gen.eta, "noise bias")->required();
  gen_cmd->add_option("--secret", gen.secret,
                      "secret bits (drawn from the seed when omitted)");
  gen_cmd->add_option("--seed", gen.seed, "master seed")->required();
  gen_cmd->add_option("--out", gen.out_path, "sample JSON output file");
  gen_cmd->callback([&] { run_samples_generate(gen, out); });

  std::string inspect_path;
  CLI::App* inspect_cmd =
      samples_cmd->add_subcommand("inspect", "Summarize a sample-set file");
  inspect_cmd->add_option("--in", inspect_path, "sample JSON input file")
      ->required();
  inspect_cmd->callback([&] { run_samples_inspect(inspect_path, out); });

  try {
    const std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const ConditionViolated& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace qnblp::cli
