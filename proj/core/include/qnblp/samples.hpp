#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnblp/bitstring.hpp"
#include "qnblp/rng.hpp"

namespace qnblp {

/// Secret-recovery instance: n-bit secret s, noise bias eta in (0, 1/2].
/// A label bit is b = a.s xor e with P(e = 0) = 1/2 + eta. The master seed
/// roots every random stream a run of this instance consumes.
struct ProblemInstance {
  int n = 0;
  BitString secret;
  double eta = 0.0;
  std::uint64_t master_seed = 0;

  void validate() const;
};

struct SampleEntry {
  BitString a;
  int e = 0;
  int b = 0;
};

/// 2^q labeled inputs; entry order is the address allocation (entry gamma sits
/// in memory cell gamma).
struct SampleSet {
  int n = 0;
  int q = 0;
  double eta = 0.0;
  BitString secret;
  std::vector<SampleEntry> entries;

  void validate() const;
};

/// Draws 2^q distinct inputs: every input exactly once (in index order) when
/// q = n, a uniform distinct subset in draw order when q < n. Errors are
/// independent Bernoulli with P(e = 1) = 1/2 - eta.
SampleSet generate_samples(const ProblemInstance& instance, int q,
                           RngStream& rng);

std::string samples_to_json(const SampleSet& samples);
SampleSet samples_from_json(const std::string& text);

}  // namespace qnblp
