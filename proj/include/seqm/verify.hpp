#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqm/correlation.hpp"
#include "seqm/sequence.hpp"

namespace seqm {

enum class Inequality { eq1, thm1, thm1_bounded_lags, prime_m };

std::string_view to_string(Inequality inequality);
Inequality parse_inequality(std::string_view text);

/// Both sides of one inequality check.
///
///   eq1:                L >= N - max_{k<=L+1} C_k
///   thm1:               M >= N - 2^{M+1} max_{k<=M+1} C_k
///   thm1_bounded_lags:  as thm1 with every lag tuple restricted to d_k <= M
///   prime_m:            M >= N - 2 m^M max_{k<=M+1} C_k   (m-ary, m prime)
///
/// The k-range is clamped to N when L+1 or M+1 exceeds it.
struct BoundReport {
    Inequality inequality = Inequality::thm1;
    std::size_t n = 0;
    unsigned alphabet = 2;
    std::size_t left_value = 0;
    std::size_t k_max = 0;
    bool k_range_clamped = false;
    std::optional<std::size_t> lag_bound;
    std::map<std::size_t, MeasureResult> per_k;
    double max_correlation = 0;
    std::optional<std::int64_t> max_correlation_squared_norm;
    /// Decimal right-hand side when it is an integer (always for binary checks).
    std::optional<std::string> right_value_exact;
    /// Nearest double; -inf when the exact value is beyond double range.
    double right_value = 0;
    bool holds = false;
    /// Digits of the checked prefix (m <= 10), so the report can be recomputed.
    std::string sequence;
    /// Annotations: k-range clamping, the M = 1 convention for an all-zero prefix.
    std::vector<std::string> notes;
};

struct RightSide {
    double value = 0;
    std::optional<std::string> exact;
    bool holds = false;
};

/// Right side and verdict from the stored components alone. Uses exact
/// integer arithmetic whenever the correlation is an integer or its squared
/// norm is known; otherwise long double with a 1e-12 relative margin.
RightSide evaluate_bound(Inequality inequality, std::size_t n, std::size_t left_value, unsigned alphabet,
                         double max_correlation, std::optional<std::int64_t> max_squared_norm);

BoundReport check_eq1(const Sequence& seq, std::size_t n, const SearchOptions& options = {});
BoundReport check_thm1(const Sequence& seq, std::size_t n, bool restrict_lags, const SearchOptions& options = {});
BoundReport check_prime_m(const Sequence& seq, std::size_t n, const SearchOptions& options = {});
BoundReport check_inequality(Inequality inequality, const Sequence& seq, std::size_t n,
                             const SearchOptions& options = {});

/// Right side and verdict recomputed from the stored fields agree with the
/// stored ones, and max_correlation is the maximum of per_k.
bool is_self_consistent(const BoundReport& report);

struct Statistic {
    std::size_t count = 0;
    double mean = 0;
    double min = 0;
    double max = 0;
    double q10 = 0;
    double median = 0;
    double q90 = 0;
};

/// Quantiles by linear interpolation between order statistics.
Statistic summarize(std::vector<double> values);

struct SlackWitness {
    std::string sequence;
    double slack = 0;
    std::optional<std::string> slack_exact;
    BoundReport report;
};

struct RandomTrial {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t max_order = 0;
    double c2 = 0;
    bool c2_exact = true;
    double scale_log_n = 0;
    double scale_sqrt = 0;
};

struct ExperimentSummary {
    std::string kind;
    std::string generator;
    unsigned alphabet = 2;
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::optional<Inequality> inequality;
    std::map<std::string, Statistic> statistics;
    /// "log2_N" for the maximum-order complexity, "sqrt_2N_lnN" for C_2.
    std::map<std::string, double> reference_scales;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    /// Binary sweeps only: sequences with M > L, all-zero ones excluded.
    std::uint64_t order_violations = 0;
    /// All-zero sequences, where L = 0 and M = 1 by convention.
    std::uint64_t order_exempt = 0;
    std::optional<SlackWitness> min_slack;
    std::vector<RandomTrial> rows;
};

/// Runs the check on every sequence over {0..m-1} of every length 1..n_max.
ExperimentSummary exhaustive_sweep(unsigned m, std::size_t n_max, Inequality inequality,
                                   const SearchOptions& options = {});

struct RandomStatsOptions {
    /// Exact C_2 up to this N, sampled beyond.
    std::size_t exact_c2_limit = 1024;
    std::uint64_t c2_samples = 10000;
};

ExperimentSummary random_stats(unsigned m, std::size_t n, std::size_t trials, std::uint64_t seed,
                               const SearchOptions& options = {}, const RandomStatsOptions& stats = {});

struct LegendreReport {
    std::uint64_t p = 0;
    std::size_t n = 0;
    std::string sequence;
    std::map<std::size_t, MeasureResult> per_k;
    /// C_k / (k sqrt(p) ln p)
    std::map<std::size_t, double> ratio_to_scale;
    std::size_t max_order = 0;
    /// log2(min(N, p) / sqrt(p)); published alongside M, not asserted.
    double lower_bound_reference = 0;
};

struct LegendreOptions {
    std::size_t max_k = 4;
    /// Orders above this use sampled search.
    std::size_t exact_max_k = 2;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
};

LegendreReport legendre_report(std::uint64_t p, std::size_t n, const SearchOptions& options = {},
                               const LegendreOptions& legendre = {});

struct TwoPrimeReport {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::size_t period = 0;
    std::size_t safe_indices = 0;
    std::size_t safe_satisfied = 0;
    double identity_rate = 0;
    /// Same count over every i with gcd(i, pq) = 1 (informational).
    std::size_t coprime_indices = 0;
    std::size_t coprime_satisfied = 0;
    double coprime_rate = 0;
    /// |sum| at D = (0, p, q, p+q), U = pq - p - q.
    std::int64_t c4_structured_sum = 0;
    std::size_t c4_structured_u = 0;
    double c4_structured = 0;
    std::size_t max_lag = 0;
    std::map<std::size_t, MeasureResult> bounded;
};

/// Bounded-lag results use d_k <= max_lag (default p - 1).
TwoPrimeReport two_prime_report(std::uint64_t p, std::uint64_t q, std::optional<std::size_t> max_lag = std::nullopt,
                                const SearchOptions& options = {});

}  // namespace seqm
