#include "qnblp/pipeline.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "qnblp/bounds.hpp"
#include "qnblp/gate_synth.hpp"

namespace qnblp {

MemoryTable memory_from_samples(const SampleSet& samples) {
  samples.validate();
  MemoryTable memory;
  memory.q = samples.q;
  memory.n = samples.n;
  for (const SampleEntry& entry : samples.entries) {
    BitString word(static_cast<std::size_t>(samples.n) + 1);
    for (int bit = 0; bit < samples.n; ++bit) {
      word.set(static_cast<std::size_t>(bit), entry.a[static_cast<std::size_t>(bit)]);
    }
    word.set(static_cast<std::size_t>(samples.n), entry.b != 0);
    memory.cells.push_back(std::move(word));
  }
  memory.validate();
  return memory;
}

StateVector prepare_sample_state_ideal(const SampleSet& samples) {
  samples.validate();
  const int width = samples.n + 1;
  if (width > static_cast<int>(kMaxSimWidth)) {
    throw WidthCapExceeded("ideal preparation needs n + 1 <= " +
                           std::to_string(kMaxSimWidth) + ", got " +
                           std::to_string(width));
  }
  std::vector<std::complex<double>> amps(1ull << width, 0.0);
  const double amp = std::pow(0.5, 0.5 * samples.q);
  for (const SampleEntry& entry : samples.entries) {
    amps[(entry.a.to_index() << 1) | static_cast<std::uint64_t>(entry.b)] = amp;
  }
  return StateVector::from_amplitudes(static_cast<QubitIndex>(width),
                                      std::move(amps));
}

StateVector prepare_sample_state_qram(const SampleSet& samples) {
  samples.validate();
  const MemoryTable memory = memory_from_samples(samples);
  const QramLayout layout(samples.n, samples.q);
  if (layout.width() > static_cast<int>(kMaxSimWidth)) {
    throw WidthCapExceeded("loader layout needs " +
                           std::to_string(layout.width()) +
                           " qubits, cap is " + std::to_string(kMaxSimWidth));
  }
  StateVector state(static_cast<QubitIndex>(layout.width()));
  for (int bit = 0; bit < samples.q; ++bit) {
    apply_gate(state, Gate::h(layout.address(bit)));
  }
  apply_circuit(state, synth_qram(memory));

  // Keep only routing = 0, helpers = 0; anything else is unrestored ancilla.
  const int q = samples.q;
  const int data_bits = samples.n + 1;
  const int extra_bits = data_bits * (1 << (q - 1));
  const int addr_shift = layout.width() - q;
  const auto& amps = state.amplitudes();
  std::vector<std::complex<double>> joint(1ull << (q + data_bits), 0.0);
  double kept = 0.0;
  for (std::uint64_t gamma = 0; gamma < (1ull << q); ++gamma) {
    for (std::uint64_t word = 0; word < (1ull << data_bits); ++word) {
      const std::uint64_t idx = (gamma << addr_shift) | (word << extra_bits);
      joint[(gamma << data_bits) | word] = amps[idx];
      kept += std::norm(amps[idx]);
    }
  }
  if (1.0 - kept > 1e-9) {
    throw AncillaNotRestored("probability " + std::to_string(1.0 - kept) +
                             " left on routing or helper qubits");
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : joint) a *= scale;
  return StateVector::from_amplitudes(static_cast<QubitIndex>(q + data_bits),
                                      std::move(joint));
}

StateVector strip_address_register(const StateVector& state,
                                   const SampleSet& samples,
                                   double tolerance) {
  samples.validate();
  const int data_bits = samples.n + 1;
  const int expected = samples.q + data_bits;
  if (static_cast<int>(state.width()) != expected) {
    throw WidthMismatch("address stripping expects " +
                        std::to_string(expected) + " qubits, got " +
                        std::to_string(state.width()));
  }
  const auto& in = state.amplitudes();
  std::vector<std::complex<double>> out(1ull << data_bits, 0.0);
  double kept = 0.0;
  for (std::size_t gamma = 0; gamma < samples.entries.size(); ++gamma) {
    const std::uint64_t a_idx = samples.entries[gamma].a.to_index();
    for (std::uint64_t b = 0; b < 2; ++b) {
      const std::uint64_t word = (a_idx << 1) | b;
      const std::uint64_t idx =
          (static_cast<std::uint64_t>(gamma) << data_bits) | word;
      out[word] = in[idx];
      kept += std::norm(in[idx]);
    }
  }
  if (1.0 - kept > tolerance) {
    throw AncillaNotRestored("probability " + std::to_string(1.0 - kept) +
                             " off the address allocation support");
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : out) a *= scale;
  return StateVector::from_amplitudes(static_cast<QubitIndex>(data_bits),
                                      std::move(out));
}

namespace {

void walsh_hadamard(std::vector<double>& values) {
  for (std::size_t half = 1; half < values.size(); half <<= 1) {
    for (std::size_t block = 0; block < values.size(); block += half << 1) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double x = values[i];
        const double y = values[i + half];
        values[i] = x + y;
        values[i + half] = x - y;
      }
    }
  }
}

EpisodeOutcome sample_outcome(const std::vector<double>& dist, int n,
                              RngStream& rng) {
  double p_one = 0.0;
  for (std::size_t i = 1; i < dist.size(); i += 2) p_one += dist[i];
  EpisodeOutcome outcome;
  outcome.k_star = rng.bernoulli(p_one) ? 1 : 0;
  if (outcome.k_star == 1) {
    std::vector<double> weights(dist.size() / 2);
    for (std::size_t k = 0; k < weights.size(); ++k) {
      weights[k] = dist[(k << 1) | 1];
    }
    outcome.k = BitString::from_index(rng.categorical(weights),
                                      static_cast<std::size_t>(n));
  }
  return outcome;
}

}  // namespace

std::vector<double> episode_distribution(const SampleSet& samples) {
  samples.validate();
  if (samples.n > 20) {
    throw NTooLarge("closed-form distribution needs n <= 20, got " +
                    std::to_string(samples.n));
  }
  const std::size_t dim = 1ull << samples.n;
  std::vector<double> signed_ind(dim, 0.0);
  std::vector<double> plain_ind(dim, 0.0);
  for (const SampleEntry& entry : samples.entries) {
    const std::uint64_t a = entry.a.to_index();
    signed_ind[a] = entry.b ? -1.0 : 1.0;
    plain_ind[a] = 1.0;
  }
  walsh_hadamard(signed_ind);
  walsh_hadamard(plain_ind);
  const double scale = std::ldexp(1.0, -(samples.n + samples.q + 1));
  std::vector<double> dist(dim << 1);
  for (std::size_t k = 0; k < dim; ++k) {
    dist[(k << 1) | 1] = signed_ind[k] * signed_ind[k] * scale;
    dist[k << 1] = plain_ind[k] * plain_ind[k] * scale;
  }
  return dist;
}

EpisodeOutcome run_episode(const SampleSet& samples, PrepMode mode,
                           RngStream& rng) {
  if (mode == PrepMode::Fast) {
    return sample_outcome(episode_distribution(samples), samples.n, rng);
  }
  StateVector psi =
      mode == PrepMode::Qram
          ? strip_address_register(prepare_sample_state_qram(samples), samples)
          : prepare_sample_state_ideal(samples);
  apply_circuit(psi, synth_bv_kernel(samples.n));
  const MeasurementRecord label =
      measure(psi, static_cast<QubitIndex>(samples.n), rng);
  EpisodeOutcome outcome;
  outcome.k_star = label.outcome;
  if (label.outcome == 1) {
    std::vector<QubitIndex> k_register(static_cast<std::size_t>(samples.n));
    for (int i = 0; i < samples.n; ++i) {
      k_register[static_cast<std::size_t>(i)] = static_cast<QubitIndex>(i);
    }
    const std::vector<double> weights = distribution(psi, k_register);
    outcome.k = BitString::from_index(rng.categorical(weights),
                                      static_cast<std::size_t>(samples.n));
  }
  return outcome;
}

VoteResult majority_vote(const std::vector<EpisodeOutcome>& outcomes,
                         std::int64_t m_target) {
  if (m_target < 1) {
    throw std::invalid_argument("vote needs a positive success target");
  }
  VoteResult result;
  for (const EpisodeOutcome& outcome : outcomes) {
    if (result.m_used == m_target) break;
    if (outcome.k_star != 1 || !outcome.k) continue;
    ++result.tally[*outcome.k];
    ++result.m_used;
  }
  if (result.m_used < m_target) {
    throw InsufficientSuccesses("collected " + std::to_string(result.m_used) +
                                " successful episodes, need " +
                                std::to_string(m_target));
  }
  std::int64_t best = -1;
  for (const auto& [candidate, count] : result.tally) {
    if (count > best) {
      best = count;
      result.estimate = candidate;
    }
  }
  return result;
}

SolveResult solve(const ProblemInstance& instance, int q,
                  const SolveConfig& config, std::uint64_t trial) {
  instance.validate();
  if (q < 0 || q > instance.n) {
    throw QOutOfRange("log sample count must lie in [0, n]");
  }
  BoundsConfig bounds;
  bounds.n = instance.n;
  bounds.q = q;
  bounds.eta = instance.eta;
  bounds.t = config.t;
  bounds.epsilon = config.epsilon;
  bounds.delta = config.delta;
  bounds.validate();
  check_feasible(bounds);
  const std::int64_t m_target = chernoff_m(
      config.epsilon * ps_lower(bounds), config.delta, ChernoffVariant::Loose);

  SolveResult result;
  result.m_target = m_target;
  result.s_budget = 2 * m_target;

  // The fixed realization draws from a lane no episode index reaches.
  constexpr std::uint64_t kRealizationLane = ~0ull;
  std::optional<SampleSet> fixed;
  std::vector<double> fixed_dist;
  if (!config.regenerate) {
    RngStream stream(instance.master_seed, {trial, kRealizationLane});
    fixed = generate_samples(instance, q, stream);
    if (config.prep == PrepMode::Fast) fixed_dist = episode_distribution(*fixed);
  }

  std::vector<EpisodeOutcome> outcomes;
  std::int64_t successes = 0;
  const std::int64_t cap =
      static_cast<std::int64_t>(config.max_episode_factor) * m_target;
  for (std::int64_t episode = 0; successes < m_target; ++episode) {
    if (episode >= cap) {
      throw InsufficientSuccesses(
          "episode cap " + std::to_string(cap) + " reached with " +
          std::to_string(successes) + " of " + std::to_string(m_target) +
          " successes");
    }
    RngStream stream(instance.master_seed,
                     {trial, static_cast<std::uint64_t>(episode)});
    EpisodeOutcome outcome;
    if (!config.regenerate && config.prep == PrepMode::Fast) {
      outcome = sample_outcome(fixed_dist, instance.n, stream);
    } else if (config.regenerate) {
      const SampleSet samples = generate_samples(instance, q, stream);
      outcome = run_episode(samples, config.prep, stream);
    } else {
      outcome = run_episode(*fixed, config.prep, stream);
    }
    if (outcome.k_star == 1) ++successes;
    outcomes.push_back(std::move(outcome));
  }
  result.episodes_total = static_cast<std::int64_t>(outcomes.size());

  VoteResult vote = majority_vote(outcomes, m_target);
  result.estimate = vote.estimate;
  result.tally = std::move(vote.tally);
  result.success = result.estimate == instance.secret;
  result.fixed_samples = std::move(fixed);
  return result;
}

BitString brute_force_solver(const SampleSet& samples) {
  samples.validate();
  if (samples.n > 14) {
    throw NTooLarge("exhaustive decoding needs n <= 14, got " +
                    std::to_string(samples.n));
  }
  std::vector<std::uint64_t> inputs;
  std::vector<std::uint64_t> labels;
  inputs.reserve(samples.entries.size());
  for (const SampleEntry& entry : samples.entries) {
    inputs.push_back(entry.a.to_index());
    labels.push_back(static_cast<std::uint64_t>(entry.b));
  }
  std::int64_t best_agree = -1;
  std::uint64_t best = 0;
  for (std::uint64_t cand = 0; cand < (1ull << samples.n); ++cand) {
    std::int64_t agree = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      agree += ((std::popcount(inputs[i] & cand) & 1ull) == labels[i]) ? 1 : 0;
    }
    if (agree > best_agree) {
      best_agree = agree;
      best = cand;
    }
  }
  return BitString::from_index(best, static_cast<std::size_t>(samples.n));
}

}  // namespace qnblp
