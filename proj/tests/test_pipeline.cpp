#include <doctest.h>

#include <qnblp/bounds.hpp>
#include <qnblp/errors.hpp>
#include <qnblp/gate_synth.hpp>
#include <qnblp/pipeline.hpp>
#include <qnblp/rng.hpp>
#include <qnblp/samples.hpp>
#include <qnblp/statevec.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <vector>

using namespace qnblp;

namespace {

ProblemInstance instance(int n, const std::string& secret, double eta,
                         std::uint64_t seed = 0) {
  return ProblemInstance{n, BitString::from_string(secret), eta, seed};
}

// Direct double-sum evaluation of the post-kernel outcome probabilities,
// independent of the transform used by episode_distribution.
std::vector<double> naive_distribution(const SampleSet& samples) {
  const int n = samples.n;
  std::vector<double> out(1ull << (n + 1), 0.0);
  const double scale = std::ldexp(1.0, -(n + samples.q + 1));
  for (std::uint64_t k = 0; k < (1ull << n); ++k) {
    const BitString kb = BitString::from_index(k, static_cast<std::size_t>(n));
    for (int k_star = 0; k_star < 2; ++k_star) {
      double sum = 0.0;
      for (const SampleEntry& entry : samples.entries) {
        const int sign = entry.a.dot(kb) ^ (entry.b & k_star);
        sum += sign ? -1.0 : 1.0;
      }
      out[(k << 1) | static_cast<std::uint64_t>(k_star)] = scale * sum * sum;
    }
  }
  return out;
}

std::vector<double> simulated_distribution(const SampleSet& samples) {
  StateVector state = prepare_sample_state_ideal(samples);
  apply_circuit(state, synth_bv_kernel(samples.n));
  std::vector<QubitIndex> qubits;
  for (int i = 0; i <= samples.n; ++i)
    qubits.push_back(static_cast<QubitIndex>(i));
  return distribution(state, qubits);
}

}  // namespace

TEST_CASE("noiseless generation labels every input by the parity") {
  RngStream rng(5);
  SampleSet ss = generate_samples(instance(3, "101", 0.5), 3, rng);
  REQUIRE(ss.entries.size() == 8);
  std::set<std::uint64_t> seen;
  for (const SampleEntry& entry : ss.entries) {
    CHECK(entry.e == 0);
    CHECK(entry.b == entry.a.dot(ss.secret));
    seen.insert(entry.a.to_index());
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("subset generation draws distinct inputs") {
  RngStream rng(17);
  SampleSet ss = generate_samples(instance(6, "110100", 0.25), 3, rng);
  REQUIRE(ss.entries.size() == 8);
  std::set<std::uint64_t> seen;
  for (const SampleEntry& entry : ss.entries) {
    CHECK(entry.a.size() == 6);
    CHECK(entry.b == (entry.a.dot(ss.secret) ^ entry.e));
    seen.insert(entry.a.to_index());
  }
  CHECK(seen.size() == 8);
  ss.validate();
}

TEST_CASE("generation rejects out-of-range superposition sizes") {
  RngStream rng(1);
  CHECK_THROWS_AS(generate_samples(instance(3, "101", 0.25), 4, rng),
                  QOutOfRange);
  CHECK_THROWS_AS(generate_samples(instance(3, "101", 0.25), -1, rng),
                  QOutOfRange);
}

TEST_CASE("generation is reproducible per stream") {
  auto draw = [] {
    RngStream rng(42, {0});
    return generate_samples(instance(5, "10110", 0.25), 3, rng);
  };
  SampleSet a = draw();
  SampleSet b = draw();
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].a == b.entries[i].a);
    CHECK(a.entries[i].e == b.entries[i].e);
  }
}

TEST_CASE("realized error rate concentrates at 1/2 - eta") {
  const double eta = 0.25;
  std::int64_t errors = 0;
  std::int64_t total = 0;
  for (std::uint64_t rep = 0; rep < 100000; ++rep) {
    RngStream rng(1234, {rep});
    SampleSet ss = generate_samples(instance(8, "10110100", eta), 4, rng);
    for (const SampleEntry& entry : ss.entries) errors += entry.e;
    total += static_cast<std::int64_t>(ss.entries.size());
  }
  const double p = 0.5 - eta;
  const double mean = double(errors) / double(total);
  const double sigma = std::sqrt(p * (1.0 - p) / double(total));
  CHECK(std::abs(mean - p) <= 3.0 * sigma);
}

TEST_CASE("ideal preparation of a single sample is a basis state") {
  SampleSet ss;
  ss.n = 3;
  ss.q = 0;
  ss.eta = 0.25;
  ss.secret = BitString::from_string("011");
  ss.entries = {{BitString::from_string("110"), 1, 0}};
  StateVector state = prepare_sample_state_ideal(ss);
  CHECK(state.width() == 4);
  // |110>|0> is index 1100.
  CHECK(std::abs(state.amplitudes()[0b1100] - 1.0) < 1e-12);
}

TEST_CASE("ideal preparation spreads 2^q equal amplitudes") {
  RngStream rng(3);
  SampleSet ss = generate_samples(instance(2, "11", 0.5), 2, rng);
  StateVector state = prepare_sample_state_ideal(ss);
  CHECK(state.norm() == 1.0);
  int support = 0;
  for (const auto& amp : state.amplitudes()) {
    if (std::abs(amp) == 0.0) continue;
    CHECK(std::abs(amp - 0.5) < 1e-12);
    ++support;
  }
  CHECK(support == 4);
}

TEST_CASE("loader preparation equals ideal preparation") {
  struct Case {
    int n;
    int q;
  };
  for (Case c : {Case{1, 1}, Case{2, 1}, Case{2, 2}}) {
    RngStream rng(7, {static_cast<std::uint64_t>(c.n)});
    ProblemInstance inst{
        c.n, BitString::from_index(0b10 % (1 << c.n), c.n), 0.25, 0};
    SampleSet ss = generate_samples(inst, c.q, rng);

    StateVector via_loader = prepare_sample_state_qram(ss);
    StateVector stripped = strip_address_register(via_loader, ss);
    StateVector ideal = prepare_sample_state_ideal(ss);
    REQUIRE(stripped.width() == ideal.width());
    for (std::size_t i = 0; i < ideal.amplitudes().size(); ++i) {
      CHECK(std::abs(stripped.amplitudes()[i] - ideal.amplitudes()[i]) <
            1e-10);
    }
  }
}

TEST_CASE("loader preparation enforces the simulable width cap") {
  RngStream rng(9);
  SampleSet ss = generate_samples(instance(3, "101", 0.25), 3, rng);
  CHECK_THROWS_AS(prepare_sample_state_qram(ss), WidthCapExceeded);
}

TEST_CASE("episode distribution equals the direct double sum") {
  RngStream picker(2024);
  int checked = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int q = 0; q <= n; ++q) {
      for (double eta : {0.1, 0.5}) {
        BitString secret = BitString::from_index(
            picker.next_u64() & ((1ull << n) - 1), static_cast<std::size_t>(n));
        ProblemInstance inst{n, secret, eta, 0};
        RngStream rng(31, {static_cast<std::uint64_t>(checked)});
        SampleSet ss = generate_samples(inst, q, rng);
        std::vector<double> fast = episode_distribution(ss);
        std::vector<double> direct = naive_distribution(ss);
        REQUIRE(fast.size() == direct.size());
        double total = 0.0;
        for (std::size_t i = 0; i < fast.size(); ++i) {
          CHECK(std::abs(fast[i] - direct[i]) < 1e-10);
          total += fast[i];
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
        ++checked;
      }
    }
  }
  CHECK(checked == 54);
}

TEST_CASE("episode distribution matches the state-vector simulation") {
  for (std::uint64_t trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(trial % 4);
    RngStream rng(77, {trial});
    BitString secret =
        BitString::from_index(rng.next_u64() & ((1ull << n) - 1),
                              static_cast<std::size_t>(n));
    SampleSet ss = generate_samples(ProblemInstance{n, secret, 0.25, 0},
                                    n - 1, rng);
    std::vector<double> fast = episode_distribution(ss);
    std::vector<double> slow = simulated_distribution(ss);
    for (std::size_t i = 0; i < fast.size(); ++i)
      CHECK(std::abs(fast[i] - slow[i]) < 1e-10);
  }
}

TEST_CASE("noiseless full-support episodes always return the secret") {
  RngStream gen(11);
  SampleSet ss = generate_samples(instance(3, "110", 0.5), 3, gen);
  int successes = 0;
  for (std::uint64_t e = 0; e < 64; ++e) {
    RngStream rng(50, {e});
    EpisodeOutcome outcome = run_episode(ss, PrepMode::Fast, rng);
    if (outcome.k_star == 1) {
      ++successes;
      REQUIRE(outcome.k.has_value());
      CHECK(*outcome.k == ss.secret);
    } else {
      CHECK_FALSE(outcome.k.has_value());
    }
  }
  // P(k* = 1) = 1/2: 3 sigma around 32 of 64.
  CHECK(successes > 20);
  CHECK(successes < 44);
}

TEST_CASE("prep modes draw identical outcomes from one stream") {
  RngStream gen(13);
  SampleSet ss = generate_samples(instance(2, "10", 0.25), 2, gen);
  for (std::uint64_t e = 0; e < 50; ++e) {
    RngStream fast_rng(91, {e});
    RngStream ideal_rng(91, {e});
    RngStream qram_rng(91, {e});
    EpisodeOutcome fast = run_episode(ss, PrepMode::Fast, fast_rng);
    EpisodeOutcome ideal = run_episode(ss, PrepMode::Ideal, ideal_rng);
    EpisodeOutcome qram = run_episode(ss, PrepMode::Qram, qram_rng);
    CHECK(fast.k_star == ideal.k_star);
    CHECK(fast.k_star == qram.k_star);
    CHECK(fast.k == ideal.k);
    CHECK(fast.k == qram.k);
  }
}

TEST_CASE("failure branch is independent of the secret") {
  RngStream rng(19);
  SampleSet one = generate_samples(instance(3, "111", 0.25), 2, rng);
  SampleSet two = one;
  two.secret = BitString::from_string("010");
  for (SampleEntry& entry : two.entries)
    entry.b = entry.a.dot(two.secret) ^ entry.e;
  std::vector<double> d1 = episode_distribution(one);
  std::vector<double> d2 = episode_distribution(two);
  for (std::size_t i = 0; i < d1.size(); i += 2) {
    CHECK(std::abs(d1[i] - d2[i]) < 1e-12);
  }
}

TEST_CASE("flipping every error bit leaves the distribution unchanged") {
  RngStream rng(23);
  SampleSet ss = generate_samples(instance(4, "1001", 0.25), 3, rng);
  SampleSet flipped = ss;
  for (SampleEntry& entry : flipped.entries) {
    entry.e ^= 1;
    entry.b ^= 1;
  }
  std::vector<double> base = episode_distribution(ss);
  std::vector<double> alt = episode_distribution(flipped);
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(std::abs(base[i] - alt[i]) < 1e-12);
  CHECK(exact_ps(ss) == exact_ps(flipped));
}

TEST_CASE("majority vote picks the strict mode") {
  std::vector<EpisodeOutcome> outcomes;
  for (int i = 0; i < 5; ++i)
    outcomes.push_back({1, BitString::from_string("101")});
  for (int i = 0; i < 3; ++i)
    outcomes.push_back({1, BitString::from_string("110")});
  outcomes.push_back({0, std::nullopt});
  VoteResult vote = majority_vote(outcomes, 8);
  CHECK(vote.estimate == BitString::from_string("101"));
  CHECK(vote.m_used == 8);
  CHECK(vote.tally.at(BitString::from_string("101")) == 5);
}

TEST_CASE("majority vote breaks ties toward the smaller string") {
  std::vector<EpisodeOutcome> outcomes;
  for (int i = 0; i < 4; ++i)
    outcomes.push_back({1, BitString::from_string("10")});
  for (int i = 0; i < 4; ++i)
    outcomes.push_back({1, BitString::from_string("01")});
  VoteResult vote = majority_vote(outcomes, 8);
  CHECK(vote.estimate == BitString::from_string("01"));
}

TEST_CASE("majority vote uses only the first m_target successes") {
  std::vector<EpisodeOutcome> outcomes;
  for (int i = 0; i < 3; ++i) {
    outcomes.push_back({1, BitString::from_string("11")});
    outcomes.push_back({0, std::nullopt});
  }
  outcomes.push_back({1, BitString::from_string("00")});
  outcomes.push_back({1, BitString::from_string("00")});
  VoteResult vote = majority_vote(outcomes, 3);
  CHECK(vote.estimate == BitString::from_string("11"));
  CHECK(vote.tally.size() == 1);
  CHECK_THROWS_AS(majority_vote(outcomes, 6), InsufficientSuccesses);
}

TEST_CASE("noiseless solve recovers the secret") {
  ProblemInstance inst = instance(3, "101", 0.5, 99);
  SolveConfig config{.t = 0.1, .epsilon = 0.5, .delta = 0.05};
  SolveResult result = solve(inst, 3, config);
  CHECK(result.estimate == inst.secret);
  CHECK(result.success);
  CHECK(result.episodes_total >= result.m_target);
  CHECK(result.s_budget == 2 * result.m_target);
  CHECK_FALSE(result.fixed_samples.has_value());
}

TEST_CASE("solve rejects an infeasible tolerance") {
  ProblemInstance inst = instance(3, "101", 0.25, 1);
  SolveConfig config{.t = 0.3, .epsilon = 0.5, .delta = 0.05};
  CHECK_THROWS_AS(solve(inst, 3, config), ConditionViolated);
}

TEST_CASE("solve is deterministic per master seed and trial") {
  ProblemInstance inst = instance(4, "1011", 0.25, 7);
  SolveConfig config{.t = 0.1, .epsilon = 0.5, .delta = 0.2};
  SolveResult a = solve(inst, 4, config, 3);
  SolveResult b = solve(inst, 4, config, 3);
  CHECK(a.estimate == b.estimate);
  CHECK(a.tally == b.tally);
  CHECK(a.episodes_total == b.episodes_total);
}

TEST_CASE("solve can pin one realization for the whole run") {
  ProblemInstance inst = instance(4, "0110", 0.25, 21);
  SolveConfig config{
      .t = 0.1, .epsilon = 0.5, .delta = 0.2, .regenerate = false};
  SolveResult result = solve(inst, 4, config);
  REQUIRE(result.fixed_samples.has_value());
  result.fixed_samples->validate();
  CHECK(result.fixed_samples->secret == inst.secret);
  SolveResult again = solve(inst, 4, config);
  CHECK(result.estimate == again.estimate);
  CHECK(result.episodes_total == again.episodes_total);
}

TEST_CASE("brute force on the noiseless full set is exact") {
  RngStream rng(4);
  SampleSet ss = generate_samples(instance(4, "1010", 0.5), 4, rng);
  CHECK(brute_force_solver(ss) == ss.secret);
}

TEST_CASE("brute force breaks degeneracy toward the smaller string") {
  SampleSet ss;
  ss.n = 2;
  ss.q = 0;
  ss.eta = 0.5;
  ss.secret = BitString::from_string("11");
  ss.entries = {{BitString::from_string("11"), 0, 0}};
  CHECK(brute_force_solver(ss) == BitString::from_string("00"));
}

TEST_CASE("brute force refuses oversized secrets") {
  SampleSet ss;
  ss.n = 15;
  ss.q = 0;
  ss.eta = 0.5;
  ss.secret = BitString(15);
  ss.entries = {{BitString(15), 0, 0}};
  CHECK_THROWS_AS(brute_force_solver(ss), NTooLarge);
}

TEST_CASE("memory cells mirror the sample entries") {
  RngStream rng(6);
  SampleSet ss = generate_samples(instance(2, "10", 0.25), 2, rng);
  MemoryTable memory = memory_from_samples(ss);
  CHECK(memory.q == 2);
  CHECK(memory.n == 2);
  REQUIRE(memory.cells.size() == ss.entries.size());
  for (std::size_t gamma = 0; gamma < ss.entries.size(); ++gamma) {
    const BitString& word = memory.cells[gamma];
    for (int bit = 0; bit < 2; ++bit)
      CHECK(word[static_cast<std::size_t>(bit)] ==
            ss.entries[gamma].a[static_cast<std::size_t>(bit)]);
    CHECK(word[2] == ss.entries[gamma].b);
  }
}

TEST_CASE("sample set json round trip") {
  RngStream rng(8);
  SampleSet ss = generate_samples(instance(3, "011", 0.25), 2, rng);
  SampleSet back = samples_from_json(samples_to_json(ss));
  back.validate();
  CHECK(back.n == ss.n);
  CHECK(back.q == ss.q);
  CHECK(back.secret == ss.secret);
  REQUIRE(back.entries.size() == ss.entries.size());
  for (std::size_t i = 0; i < ss.entries.size(); ++i) {
    CHECK(back.entries[i].a == ss.entries[i].a);
    CHECK(back.entries[i].e == ss.entries[i].e);
    CHECK(back.entries[i].b == ss.entries[i].b);
  }
  CHECK_THROWS_AS(samples_from_json("{}"), ParseError);
}

TEST_CASE("sample sets validate the label equation") {
  RngStream rng(10);
  SampleSet ss = generate_samples(instance(3, "111", 0.25), 2, rng);
  ss.entries[0].b ^= 1;
  CHECK_THROWS_AS(ss.validate(), LengthMismatch);
}
