#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qnblp/bitstring.hpp"
#include "qnblp/qram.hpp"
#include "qnblp/rng.hpp"
#include "qnblp/samples.hpp"
#include "qnblp/statevec.hpp"

namespace qnblp {

/// Memory image of a sample set: cell gamma holds a_gamma || b_gamma.
MemoryTable memory_from_samples(const SampleSet& samples);

/// The superposed sample state on n+1 qubits: amplitude 2^{-q/2} on
/// |a>|b_a> for each entry, qubit n carrying the label bit.
StateVector prepare_sample_state_ideal(const SampleSet& samples);

/// Loads the sample state through the synthesized memory circuit: Hadamards
/// on the address register, then synth_qram, then verification that routing
/// and query helpers returned to |0>. Returns the joint address+data state
/// (q + n + 1 qubits): amplitude 2^{-q/2} on |gamma>|a_gamma, b_gamma>.
StateVector prepare_sample_state_qram(const SampleSet& samples);

/// Removes the address register from a prepare_sample_state_qram state by
/// uncomputing it through the allocation bijection (gamma ^= alloc(a), plain
/// data-to-address CNOTs when the allocation is the identity), then dropping
/// the zeroed register. Throws AncillaNotRestored if more than `tolerance`
/// probability sits off the allocation support.
StateVector strip_address_register(const StateVector& state,
                                   const SampleSet& samples,
                                   double tolerance = 1e-9);

/// Exact outcome distribution of one algorithm repetition on this sample
/// set, indexed by (k << 1) | kstar over the n+1 measured bits. Computed in
/// closed form with a Walsh-Hadamard transform of the signed sample
/// indicator; P(kstar = 1) is exactly 1/2 for every realization.
std::vector<double> episode_distribution(const SampleSet& samples);

enum class PrepMode {
  /// Write the sample state directly, then simulate the kernel.
  Ideal,
  /// Load through the synthesized memory circuit, then simulate the kernel.
  Qram,
  /// Draw from the closed-form outcome distribution (no state vector).
  Fast,
};

/// One repetition: prepare, apply the Hadamard kernel, measure the label
/// qubit (kstar), and measure the k register only when kstar = 1.
struct EpisodeOutcome {
  int k_star = 0;
  std::optional<BitString> k;
};

EpisodeOutcome run_episode(const SampleSet& samples, PrepMode mode,
                           RngStream& rng);

/// Majority vote over the first m_target successful episodes (kstar = 1).
/// Ties break to the lexicographically smallest candidate. Throws
/// InsufficientSuccesses if fewer than m_target successes are present.
struct VoteResult {
  BitString estimate;
  std::map<BitString, std::int64_t> tally;
  std::int64_t m_used = 0;
};

VoteResult majority_vote(const std::vector<EpisodeOutcome>& outcomes,
                         std::int64_t m_target);

struct SolveConfig {
  double t = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  PrepMode prep = PrepMode::Fast;
  /// Fresh sample set per episode when true (the default); one fixed
  /// realization for all episodes when false.
  bool regenerate = true;
  /// Abort (InsufficientSuccesses) after max_episode_factor * M episodes.
  int max_episode_factor = 20;
};

struct SolveResult {
  BitString estimate;
  bool success = false;
  std::map<BitString, std::int64_t> tally;
  std::int64_t episodes_total = 0;
  std::int64_t m_target = 0;
  std::int64_t s_budget = 0;
  /// The one realization used by every episode when regenerate is false.
  std::optional<SampleSet> fixed_samples;
};

/// Full run: checks the feasibility inequalities, sizes the vote with the
/// concentration bound (M successes, S = 2M expected episodes), runs
/// episodes until M successes, and majority-votes. Episode e of trial
/// `trial` draws from stream (instance.master_seed, trial, e).
SolveResult solve(const ProblemInstance& instance, int q,
                  const SolveConfig& config, std::uint64_t trial = 0);

/// Exhaustive maximum-agreement decoder over all 2^n candidates; ties break
/// lexicographically smallest. Throws NTooLarge above n = 14.
BitString brute_force_solver(const SampleSet& samples);

}  // namespace qnblp
