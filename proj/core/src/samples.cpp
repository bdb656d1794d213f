#include "qnblp/samples.hpp"

#include <nlohmann/json.hpp>

#include "qnblp/errors.hpp"
#include <set>
#include <stdexcept>
#include <string>

namespace qnblp {

void ProblemInstance::validate() const {
  if (n < 1) throw std::invalid_argument("secret length must be at least 1");
  if (secret.size() != static_cast<std::size_t>(n)) {
    throw LengthMismatch("secret length must equal n");
  }
  if (!(eta > 0.0) || eta > 0.5) {
    throw std::invalid_argument("noise bias must lie in (0, 1/2]");
  }
}

void SampleSet::validate() const {
  if (n < 1) throw std::invalid_argument("secret length must be at least 1");
  if (q < 0 || q > n) throw QOutOfRange("log sample count must lie in [0, n]");
  if (secret.size() != static_cast<std::size_t>(n)) {
    throw LengthMismatch("secret length must equal n");
  }
  if (!(eta > 0.0) || eta > 0.5) {
    throw std::invalid_argument("noise bias must lie in (0, 1/2]");
  }
  if (n <= 62 && entries.size() > (1ull << n)) {
    throw LengthMismatch("more samples than distinct inputs");
  }
  std::set<BitString> seen;
  for (const SampleEntry& entry : entries) {
    if (entry.a.size() != static_cast<std::size_t>(n)) {
      throw LengthMismatch("sample input length must equal n");
    }
    if (!seen.insert(entry.a).second) {
      throw LengthMismatch("sample inputs must be distinct");
    }
    if (entry.b != (entry.a.dot(secret) ^ entry.e)) {
      throw LengthMismatch("sample label must equal a.s xor e");
    }
  }
  if (entries.size() != (1ull << q)) {
    throw LengthMismatch("sample set must hold exactly 2^q entries");
  }
}

SampleSet generate_samples(const ProblemInstance& instance, int q,
                           RngStream& rng) {
  instance.validate();
  if (q < 0 || q > instance.n) {
    throw QOutOfRange("log sample count must lie in [0, n]");
  }

  SampleSet set;
  set.n = instance.n;
  set.q = q;
  set.eta = instance.eta;
  set.secret = instance.secret;

  std::vector<BitString> inputs;
  const std::size_t count = 1ull << q;
  if (q == instance.n) {
    if (q > 24) throw QOutOfRange("exhaustive input listing needs q <= 24");
    for (std::size_t value = 0; value < count; ++value) {
      inputs.push_back(BitString::from_index(value, instance.n));
    }
  } else {
    // Uniform distinct draws; dedup keeps first-draw order.
    std::set<BitString> seen;
    while (inputs.size() < count) {
      BitString a(instance.n);
      for (int bit = 0; bit < instance.n; ++bit) {
        a.set(bit, rng.bernoulli(0.5));
      }
      if (seen.insert(a).second) inputs.push_back(a);
    }
  }

  for (const BitString& a : inputs) {
    SampleEntry entry;
    entry.a = a;
    entry.e = rng.bernoulli(0.5 - instance.eta);
    entry.b = a.dot(instance.secret) ^ entry.e;
    set.entries.push_back(entry);
  }
  set.validate();
  return set;
}

std::string samples_to_json(const SampleSet& set) {
  set.validate();
  nlohmann::json j;
  j["n"] = set.n;
  j["q"] = set.q;
  j["eta"] = set.eta;
  j["secret"] = set.secret.str();
  auto& entries = j["entries"] = nlohmann::json::array();
  for (const SampleEntry& entry : set.entries) {
    entries.push_back({{"a", entry.a.str()},
                       {"e", entry.e ? 1 : 0},
                       {"b", entry.b ? 1 : 0}});
  }
  return j.dump(2) + "\n";
}

SampleSet samples_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("sample JSON: ") + e.what(), 1);
  }
  SampleSet set;
  try {
    set.n = j.at("n").get<int>();
    set.q = j.at("q").get<int>();
    set.eta = j.at("eta").get<double>();
    set.secret = BitString::from_string(j.at("secret").get<std::string>());
    for (const auto& item : j.at("entries")) {
      SampleEntry entry;
      entry.a = BitString::from_string(item.at("a").get<std::string>());
      entry.e = item.at("e").get<int>() != 0;
      entry.b = item.at("b").get<int>() != 0;
      set.entries.push_back(entry);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sample JSON: ") + e.what(), 1);
  }
  set.validate();
  return set;
}

}  // namespace qnblp
