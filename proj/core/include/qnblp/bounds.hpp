#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnblp/bitstring.hpp"
#include "qnblp/samples.hpp"

namespace qnblp {

/// Analysis constants. t is the deviation tolerance of the empirical noise
/// average, epsilon the relative estimation error, delta the confidence.
struct BoundsConfig {
  int n = 0;
  int q = 0;
  double eta = 0.0;
  double t = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;

  void validate() const;
};

/// Success probability of one repetition for this realization:
/// (1/2^{n-q+1}) * Ubar^2 with Ubar = 2^{-q} * sum over entries of (-1)^e.
double exact_ps(const SampleSet& samples);

/// Failure probability onto the candidate s xor phi, phi != 0:
/// (1/2^{n-q+1}) * (2^{-q} * sum of (-1)^{a.phi + e})^2. Throws PhiZero for
/// the zero offset.
double exact_pf(const SampleSet& samples, const BitString& phi);

/// Worst-case lower bound on exact_ps when |Ubar - 2*eta| <= t:
/// (2*eta - t)^2 / 2^{n-q+1}.
double ps_lower(const BoundsConfig& config);

/// Matching upper bound on any single exact_pf: t^2 / 2^{n-q+1}.
double pf_upper(const BoundsConfig& config);

/// Two-sided concentration tail for the empirical noise average deviating
/// from 2*eta by at least t over 2^q draws: 2 * exp(-2^q * t^2 / 2).
double ch_tail_bound(int q, double t);

enum class ChernoffVariant {
  /// M = ceil(3/eps'^2 * ln(2/delta)); valid for relative error eps' <= 1.
  Loose,
  /// M = ceil((2 + eps')/eps'^2 * ln(2/delta)); tight multiplicative form.
  Tight,
};

std::int64_t chernoff_m(double eps_prime, double delta,
                        ChernoffVariant variant = ChernoffVariant::Loose);
double chernoff_m_raw(double eps_prime, double delta,
                      ChernoffVariant variant = ChernoffVariant::Loose);

/// Throws ConditionViolated naming the first failing inequality among
/// "t < eta" and "epsilon < 1 - P_F,sup / P_S,inf".
void check_feasible(const BoundsConfig& config);

/// Normative repetition budget: S = 2 * M with M = chernoff_m(eps * ps_lower,
/// delta, Loose); the factor 2 pays for the half of episodes lost to the
/// unfocused branch. Checks feasibility first.
std::int64_t repetitions_s(const BoundsConfig& config);

/// The same quantity before integer rounding. Consecutive-q ratios of this
/// value are exactly 4.0 in double precision (only exact powers of two
/// differ), which the rounded integer cannot promise.
double repetitions_s_raw(const BoundsConfig& config);

/// Total cost: (T-depth of preparation + T-depth of kernel) * repetitions.
std::int64_t cost_c(std::int64_t tdepth_prep, std::int64_t tdepth_kernel,
                    std::int64_t s);

struct BoundsReport {
  BoundsConfig config;
  double ps_inf = 0.0;
  double pf_sup = 0.0;
  double eps_prime = 0.0;
  std::int64_t m = 0;
  std::int64_t s = 0;
  double s_raw = 0.0;
  std::int64_t width = 0;
  std::int64_t tdepth_prep = 0;
  double cost = 0.0;
  /// Width-repetition trade-off W^2 * S and its ratio to 4^{n + log2 n}.
  double ws2 = 0.0;
  double ws2_ratio = 0.0;
};

/// Assembles the full report for one (n, q) point: probability bounds,
/// repetition budget, predicted loader width/T-depth, cost, and the
/// W^2 * S trade-off against the 4^{n + log2 n} reference.
BoundsReport tradeoff_report(const BoundsConfig& config);

std::string report_to_json(const BoundsReport& report);
/// One CSV row per report, stable header and column order.
std::string sweep_to_csv(const std::vector<BoundsReport>& reports);

}  // namespace qnblp
