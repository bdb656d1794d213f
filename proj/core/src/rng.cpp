#include "qnblp/rng.hpp"

#include <stdexcept>

namespace qnblp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::span<const std::uint64_t> path) {
  std::uint64_t state = splitmix64(master_seed);
  for (std::uint64_t word : path) {
    state = splitmix64(state ^ splitmix64(word));
  }
  return state;
}

RngStream::RngStream(std::uint64_t master_seed)
    : engine_(derive_seed(master_seed, {})) {}

RngStream::RngStream(std::uint64_t master_seed,
                     std::initializer_list<std::uint64_t> path)
    : engine_(derive_seed(master_seed, {path.begin(), path.size()})) {}

RngStream::RngStream(std::uint64_t master_seed,
                     std::span<const std::uint64_t> path)
    : engine_(derive_seed(master_seed, path)) {}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p_one) {
  return uniform() < p_one;
}

std::size_t RngStream::categorical(std::span<const double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("categorical draw needs at least one weight");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) {
      throw std::invalid_argument("categorical weights must be nonnegative");
    }
    total += w;
  }
  if (total <= 0.0) {
    throw std::invalid_argument("categorical weights must not all be zero");
  }
  const double target = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  return weights.size() - 1;
}

}  // namespace qnblp
