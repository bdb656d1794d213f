#include "qnblp/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qnblp/qram.hpp"

namespace qnblp {

void BoundsConfig::validate() const {
  if (n < 1) throw std::invalid_argument("secret length must be at least 1");
  if (q < 0 || q > n) throw QOutOfRange("log sample count must lie in [0, n]");
  if (!(eta > 0.0) || eta > 0.5) {
    throw std::invalid_argument("noise bias must lie in (0, 1/2]");
  }
  if (!(t > 0.0)) throw std::invalid_argument("deviation tolerance must be positive");
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("relative error must lie in (0, 1)");
  }
  if (!(delta > 0.0) || delta > 1.0) {
    throw DeltaOutOfRange("confidence parameter must lie in (0, 1]");
  }
}

double exact_ps(const SampleSet& samples) {
  samples.validate();
  double sum = 0.0;
  for (const SampleEntry& entry : samples.entries) {
    sum += entry.e ? -1.0 : 1.0;
  }
  const double ubar = std::ldexp(sum, -samples.q);
  return std::ldexp(ubar * ubar, samples.q - samples.n - 1);
}

double exact_pf(const SampleSet& samples, const BitString& phi) {
  samples.validate();
  if (phi.size() != static_cast<std::size_t>(samples.n)) {
    throw LengthMismatch("offset length must equal n");
  }
  if (!phi.any()) {
    throw PhiZero("the zero offset is the success outcome, not a failure");
  }
  double sum = 0.0;
  for (const SampleEntry& entry : samples.entries) {
    sum += (entry.a.dot(phi) ^ entry.e) ? -1.0 : 1.0;
  }
  const double ubar = std::ldexp(sum, -samples.q);
  return std::ldexp(ubar * ubar, samples.q - samples.n - 1);
}

double ps_lower(const BoundsConfig& config) {
  config.validate();
  const double gap = 2.0 * config.eta - config.t;
  return std::ldexp(gap * gap, config.q - config.n - 1);
}

double pf_upper(const BoundsConfig& config) {
  config.validate();
  return std::ldexp(config.t * config.t, config.q - config.n - 1);
}

double ch_tail_bound(int q, double t) {
  if (q < 0) throw QOutOfRange("log sample count must be nonnegative");
  if (!(t > 0.0)) {
    throw std::invalid_argument("deviation tolerance must be positive");
  }
  return 2.0 * std::exp(-0.5 * std::ldexp(1.0, q) * t * t);
}

double chernoff_m_raw(double eps_prime, double delta, ChernoffVariant variant) {
  if (!(eps_prime > 0.0)) {
    throw std::invalid_argument("relative error must be positive");
  }
  if (!(delta > 0.0) || delta > 1.0) {
    throw DeltaOutOfRange("confidence parameter must lie in (0, 1]");
  }
  const double factor =
      variant == ChernoffVariant::Loose ? 3.0 : 2.0 + eps_prime;
  return factor / (eps_prime * eps_prime) * std::log(2.0 / delta);
}

std::int64_t chernoff_m(double eps_prime, double delta,
                        ChernoffVariant variant) {
  const double raw = chernoff_m_raw(eps_prime, delta, variant);
  if (raw >= 9.2e18) {
    throw std::overflow_error("repetition count exceeds the integer range");
  }
  return static_cast<std::int64_t>(std::ceil(raw));
}

void check_feasible(const BoundsConfig& config) {
  config.validate();
  if (!(config.t < config.eta)) {
    throw ConditionViolated(
        "majority-voting condition t < eta violated: t = " +
        std::to_string(config.t) + ", eta = " + std::to_string(config.eta));
  }
  const double limit = 1.0 - pf_upper(config) / ps_lower(config);
  if (!(config.epsilon < limit)) {
    throw ConditionViolated(
        "sampling condition epsilon < 1 - P_F,sup / P_S,inf violated: "
        "epsilon = " +
        std::to_string(config.epsilon) + ", bound = " + std::to_string(limit));
  }
}

std::int64_t repetitions_s(const BoundsConfig& config) {
  check_feasible(config);
  const std::int64_t m = chernoff_m(config.epsilon * ps_lower(config),
                                    config.delta, ChernoffVariant::Loose);
  return 2 * m;
}

double repetitions_s_raw(const BoundsConfig& config) {
  check_feasible(config);
  return 2.0 * chernoff_m_raw(config.epsilon * ps_lower(config), config.delta,
                              ChernoffVariant::Loose);
}

std::int64_t cost_c(std::int64_t tdepth_prep, std::int64_t tdepth_kernel,
                    std::int64_t s) {
  if (tdepth_prep < 0 || tdepth_kernel < 0 || s < 0) {
    throw std::invalid_argument("cost inputs must be nonnegative");
  }
  return (tdepth_prep + tdepth_kernel) * s;
}

BoundsReport tradeoff_report(const BoundsConfig& config) {
  check_feasible(config);
  BoundsReport report;
  report.config = config;
  report.ps_inf = ps_lower(config);
  report.pf_sup = pf_upper(config);
  report.eps_prime = config.epsilon * report.ps_inf;
  report.m = chernoff_m(report.eps_prime, config.delta, ChernoffVariant::Loose);
  report.s = 2 * report.m;
  report.s_raw = 2.0 * chernoff_m_raw(report.eps_prime, config.delta,
                                      ChernoffVariant::Loose);

  const ResourceMetrics loader = predicted_qram_metrics(config.n, config.q);
  report.width = loader.width;
  report.tdepth_prep = loader.t_depth.value();
  // The Hadamard kernel contributes zero T-depth.
  report.cost = static_cast<double>(cost_c(report.tdepth_prep, 0, report.s));
  report.ws2 = static_cast<double>(report.width) *
               static_cast<double>(report.width) *
               static_cast<double>(report.s);
  const double reference = std::ldexp(1.0, 2 * config.n) *
                           static_cast<double>(config.n) *
                           static_cast<double>(config.n);
  report.ws2_ratio = report.ws2 / reference;
  return report;
}

std::string report_to_json(const BoundsReport& report) {
  nlohmann::json j;
  j["n"] = report.config.n;
  j["q"] = report.config.q;
  j["eta"] = report.config.eta;
  j["t"] = report.config.t;
  j["epsilon"] = report.config.epsilon;
  j["delta"] = report.config.delta;
  j["ps_inf"] = report.ps_inf;
  j["pf_sup"] = report.pf_sup;
  j["eps_prime"] = report.eps_prime;
  j["m"] = report.m;
  j["s"] = report.s;
  j["s_raw"] = report.s_raw;
  j["width"] = report.width;
  j["tdepth_prep"] = report.tdepth_prep;
  j["cost"] = report.cost;
  j["ws2"] = report.ws2;
  j["ws2_ratio"] = report.ws2_ratio;
  return j.dump(2) + "\n";
}

namespace {

std::string csv_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

std::string sweep_to_csv(const std::vector<BoundsReport>& reports) {
  std::string out =
      "n,q,eta,t,epsilon,delta,ps_inf,pf_sup,eps_prime,m,s,s_raw,width,"
      "tdepth_prep,cost,ws2,ws2_ratio\n";
  for (const BoundsReport& r : reports) {
    out += std::to_string(r.config.n) + ',' + std::to_string(r.config.q) +
           ',' + csv_double(r.config.eta) + ',' + csv_double(r.config.t) +
           ',' + csv_double(r.config.epsilon) + ',' +
           csv_double(r.config.delta) + ',' + csv_double(r.ps_inf) + ',' +
           csv_double(r.pf_sup) + ',' + csv_double(r.eps_prime) + ',' +
           std::to_string(r.m) + ',' + std::to_string(r.s) + ',' +
           csv_double(r.s_raw) + ',' + std::to_string(r.width) + ',' +
           std::to_string(r.tdepth_prep) + ',' + csv_double(r.cost) + ',' +
           csv_double(r.ws2) + ',' + csv_double(r.ws2_ratio) + '\n';
  }
  return out;
}

}  // namespace qnblp
