#include "seqm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "seqm/complexity.hpp"
#include "seqm/error.hpp"
#include "seqm/generators.hpp"
#include "seqm/number_theory.hpp"
#include "seqm/parallel.hpp"

namespace seqm {

namespace {

using Wide = boost::multiprecision::cpp_int;

constexpr long double kRelativeMargin = 1e-12L;

Wide bound_factor(Inequality inequality, std::size_t left_value, unsigned alphabet) {
    switch (inequality) {
        case Inequality::eq1: return Wide(1);
        case Inequality::thm1:
        case Inequality::thm1_bounded_lags: return Wide(1) << (left_value + 1);
        case Inequality::prime_m: return 2 * boost::multiprecision::pow(Wide(alphabet), static_cast<unsigned>(left_value));
    }
    return Wide(1);
}

long double to_long_double(const Wide& value) {
    if (boost::multiprecision::msb(boost::multiprecision::abs(value) + 1) > 16000) {
        return value < 0 ? -std::numeric_limits<long double>::infinity()
                         : std::numeric_limits<long double>::infinity();
    }
    return value.convert_to<long double>();
}

double to_double(const Wide& value) {
    if (value != 0 && boost::multiprecision::msb(boost::multiprecision::abs(value)) > 1020) {
        return value < 0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    }
    return value.convert_to<double>();
}

std::optional<std::int64_t> integer_correlation(unsigned alphabet, double max_correlation,
                                                std::optional<std::int64_t> squared_norm) {
    if (squared_norm) {
        auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(*squared_norm))));
        while (root * root > *squared_norm) --root;
        while ((root + 1) * (root + 1) <= *squared_norm) ++root;
        if (root * root == *squared_norm) return root;
        return std::nullopt;
    }
    if (alphabet == 2 && std::floor(max_correlation) == max_correlation) {
        return static_cast<std::int64_t>(max_correlation);
    }
    return std::nullopt;
}

void fill_maximum(BoundReport& report) {
    report.max_correlation = 0;
    report.max_correlation_squared_norm.reset();
    bool all_exact = !report.per_k.empty();
    std::int64_t max_norm = -1;
    for (const auto& [k, result] : report.per_k) {
        report.max_correlation = std::max(report.max_correlation, result.value);
        if (result.squared_norm) {
            max_norm = std::max(max_norm, *result.squared_norm);
        } else {
            all_exact = false;
        }
    }
    if (all_exact) report.max_correlation_squared_norm = max_norm;
}

void finish_report(BoundReport& report, const Sequence& seq) {
    fill_maximum(report);
    const RightSide right = evaluate_bound(report.inequality, report.n, report.left_value, report.alphabet,
                                           report.max_correlation, report.max_correlation_squared_norm);
    report.right_value = right.value;
    report.right_value_exact = right.exact;
    report.holds = right.holds;
    if (seq.alphabet() <= 10) report.sequence = seq.prefix(report.n).to_string();
    if (report.k_range_clamped) report.notes.emplace_back("k-range clamped to N");
    const auto prefix = seq.symbols().first(report.n);
    if (report.inequality != Inequality::eq1 && std::all_of(prefix.begin(), prefix.end(), [](Symbol s) { return s == 0; })) {
        report.notes.emplace_back("all-zero prefix: M = 1 by convention");
    }
}

void set_k_range(BoundReport& report) {
    const std::size_t wanted = report.left_value + 1;
    report.k_max = std::min(wanted, report.n);
    report.k_range_clamped = wanted > report.n;
}

}  // namespace

std::string_view to_string(Inequality inequality) {
    switch (inequality) {
        case Inequality::eq1: return "eq1";
        case Inequality::thm1: return "thm1";
        case Inequality::thm1_bounded_lags: return "thm1_bounded_lags";
        case Inequality::prime_m: return "prime_m";
    }
    return "thm1";
}

Inequality parse_inequality(std::string_view text) {
    if (text == "eq1") return Inequality::eq1;
    if (text == "thm1") return Inequality::thm1;
    if (text == "thm1_bounded_lags") return Inequality::thm1_bounded_lags;
    if (text == "prime_m") return Inequality::prime_m;
    fail(ErrorCode::invalid_argument, "unknown inequality '" + std::string(text) + "'");
}

RightSide evaluate_bound(Inequality inequality, std::size_t n, std::size_t left_value, unsigned alphabet,
                         double max_correlation, std::optional<std::int64_t> max_squared_norm) {
    const Wide factor = bound_factor(inequality, left_value, alphabet);
    RightSide out;
    if (auto c = integer_correlation(alphabet, max_correlation, max_squared_norm)) {
        const Wide right = Wide(n) - factor * Wide(*c);
        out.exact = right.str();
        out.value = to_double(right);
        out.holds = Wide(left_value) >= right;
        return out;
    }
    const long double scaled = to_long_double(factor) * static_cast<long double>(max_correlation);
    out.value = static_cast<double>(static_cast<long double>(n) - scaled);
    if (left_value >= n) {
        out.holds = true;
    } else if (max_squared_norm) {
        // M >= N - F C  <=>  F^2 |S|^2 >= (N - M)^2 when N > M.
        const Wide gap(n - left_value);
        out.holds = factor * factor * Wide(*max_squared_norm) >= gap * gap;
    } else {
        const long double gap = static_cast<long double>(n - left_value);
        out.holds = scaled >= gap * (1 - kRelativeMargin);
    }
    return out;
}

BoundReport check_eq1(const Sequence& seq, std::size_t n, const SearchOptions& options) {
    require_binary_prefix(seq, n);
    BoundReport report;
    report.inequality = Inequality::eq1;
    report.n = n;
    report.left_value = linear_complexity(seq, n);
    set_k_range(report);
    report.per_k = correlation_all(seq, n, report.k_max, std::nullopt, options);
    finish_report(report, seq);
    return report;
}

BoundReport check_thm1(const Sequence& seq, std::size_t n, bool restrict_lags, const SearchOptions& options) {
    require_binary_prefix(seq, n);
    BoundReport report;
    report.inequality = restrict_lags ? Inequality::thm1_bounded_lags : Inequality::thm1;
    report.n = n;
    report.left_value = max_order_complexity(seq, n);
    set_k_range(report);
    if (restrict_lags) report.lag_bound = std::min(report.left_value, n - 1);
    report.per_k = correlation_all(seq, n, report.k_max, report.lag_bound, options);
    finish_report(report, seq);
    return report;
}

BoundReport check_prime_m(const Sequence& seq, std::size_t n, const SearchOptions& options) {
    if (!is_prime(seq.alphabet())) {
        fail(ErrorCode::unsupported, "composite m=" + std::to_string(seq.alphabet()) +
                                         " needs the power correlation measure, which is not implemented");
    }
    require_prefix(seq, n);
    BoundReport report;
    report.inequality = Inequality::prime_m;
    report.n = n;
    report.alphabet = seq.alphabet();
    report.left_value = max_order_complexity(seq, n);
    set_k_range(report);
    for (std::size_t k = 1; k <= report.k_max; ++k) {
        report.per_k.emplace(k, mary_correlation(seq, n, k, true, std::nullopt, options));
    }
    finish_report(report, seq);
    return report;
}

BoundReport check_inequality(Inequality inequality, const Sequence& seq, std::size_t n,
                             const SearchOptions& options) {
    switch (inequality) {
        case Inequality::eq1: return check_eq1(seq, n, options);
        case Inequality::thm1: return check_thm1(seq, n, false, options);
        case Inequality::thm1_bounded_lags: return check_thm1(seq, n, true, options);
        case Inequality::prime_m: return check_prime_m(seq, n, options);
    }
    fail(ErrorCode::invalid_argument, "unknown inequality");
}

bool is_self_consistent(const BoundReport& report) {
    if (report.per_k.size() != report.k_max) return false;
    if (report.k_max != std::min(report.left_value + 1, report.n)) return false;
    BoundReport copy = report;
    fill_maximum(copy);
    if (copy.max_correlation != report.max_correlation ||
        copy.max_correlation_squared_norm != report.max_correlation_squared_norm) {
        return false;
    }
    const RightSide right = evaluate_bound(report.inequality, report.n, report.left_value, report.alphabet,
                                           report.max_correlation, report.max_correlation_squared_norm);
    if (right.exact != report.right_value_exact || right.holds != report.holds) return false;
    return right.value == report.right_value || (std::isnan(right.value) && std::isnan(report.right_value));
}

Statistic summarize(std::vector<double> values) {
    Statistic out;
    out.count = values.size();
    if (values.empty()) return out;
    std::sort(values.begin(), values.end());
    out.min = values.front();
    out.max = values.back();
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    auto quantile = [&](double q) {
        const double h = (static_cast<double>(values.size()) - 1) * q;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    out.q10 = quantile(0.1);
    out.median = quantile(0.5);
    out.q90 = quantile(0.9);
    return out;
}

namespace {

Sequence sweep_sequence(unsigned m, std::size_t length, std::uint64_t index) {
    std::vector<Symbol> symbols(length);
    for (std::size_t i = length; i-- > 0;) {
        symbols[i] = static_cast<Symbol>(index % m);
        index /= m;
    }
    return Sequence(std::move(symbols), m);
}

struct SweepOutcome {
    bool holds = true;
    bool order_ok = true;
    bool order_exempt = false;
    long double slack = 0;
};

}  // namespace

ExperimentSummary exhaustive_sweep(unsigned m, std::size_t n_max, Inequality inequality,
                                   const SearchOptions& options) {
    if (n_max < 1) fail(ErrorCode::invalid_argument, "n_max must be positive");
    const bool binary_check = inequality != Inequality::prime_m;
    if (binary_check && m != 2) fail(ErrorCode::invalid_argument, "eq1 and thm1 sweeps are binary (m = 2)");
    if (!binary_check && !is_prime(m)) fail(ErrorCode::unsupported, "prime_m sweep needs a prime alphabet size");

    // Worst case per sequence: every order k up to N, with (m-1)^k multipliers.
    double cost = 0;
    std::vector<std::uint64_t> counts;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double sequences = std::pow(static_cast<double>(m), static_cast<double>(n));
        const double per_sequence = static_cast<double>(n) * std::pow(binary_check ? 2.0 : m, static_cast<double>(n));
        cost += sequences * per_sequence;
        if (sequences > 1e12) fail(ErrorCode::budget_exceeded, "sweep enumerates too many sequences");
        counts.push_back(static_cast<std::uint64_t>(sequences));
    }
    if (cost > options.budget) {
        fail(ErrorCode::budget_exceeded, "exhaustive sweep needs ~" + std::to_string(cost) +
                                             " steps, budget is " + std::to_string(options.budget));
    }

    std::vector<std::pair<std::size_t, std::uint64_t>> jobs;  // (length, index)
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::uint64_t i = 0; i < counts[n - 1]; ++i) jobs.emplace_back(n, i);
    }
    std::vector<SweepOutcome> outcomes(jobs.size());
    SearchOptions inner = options;
    inner.workers = 1;
    constexpr std::size_t kChunk = 64;
    const std::size_t chunks = (jobs.size() + kChunk - 1) / kChunk;
    parallel_for(chunks, options.workers, [&](std::size_t chunk) {
        const std::size_t end = std::min(jobs.size(), (chunk + 1) * kChunk);
        for (std::size_t j = chunk * kChunk; j < end; ++j) {
            const auto [length, index] = jobs[j];
            const Sequence seq = sweep_sequence(m, length, index);
            const BoundReport report = check_inequality(inequality, seq, length, inner);
            SweepOutcome& outcome = outcomes[j];
            outcome.holds = report.holds;
            outcome.slack = static_cast<long double>(report.left_value) - static_cast<long double>(report.right_value);
            if (binary_check) {
                const std::size_t l = linear_complexity(seq, length);
                outcome.order_exempt = l == 0;
                outcome.order_ok = outcome.order_exempt || max_order_complexity(seq, length) <= l;
            }
        }
    });

    ExperimentSummary summary;
    summary.kind = "exhaustive_sweep";
    summary.generator = "exhaustive";
    summary.alphabet = m;
    summary.n = n_max;
    summary.trials = jobs.size();
    summary.inequality = inequality;
    std::size_t witness = 0;
    std::vector<double> slacks;
    slacks.reserve(jobs.size());
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        ++summary.checked;
        if (!outcomes[j].holds) ++summary.violations;
        if (!outcomes[j].order_ok) ++summary.order_violations;
        if (outcomes[j].order_exempt) ++summary.order_exempt;
        if (outcomes[j].slack < outcomes[witness].slack) witness = j;
        slacks.push_back(static_cast<double>(outcomes[j].slack));
    }
    summary.statistics["slack"] = summarize(std::move(slacks));

    const auto [length, index] = jobs[witness];
    const Sequence seq = sweep_sequence(m, length, index);
    SlackWitness min_slack;
    min_slack.report = check_inequality(inequality, seq, length, inner);
    min_slack.sequence = seq.to_string();
    min_slack.slack = static_cast<double>(outcomes[witness].slack);
    if (min_slack.report.right_value_exact) {
        min_slack.slack_exact = (Wide(min_slack.report.left_value) - Wide(*min_slack.report.right_value_exact)).str();
    }
    summary.min_slack = std::move(min_slack);
    return summary;
}

ExperimentSummary random_stats(unsigned m, std::size_t n, std::size_t trials, std::uint64_t seed,
                               const SearchOptions& options, const RandomStatsOptions& stats) {
    if (trials < 1) fail(ErrorCode::invalid_argument, "trials must be at least 1");
    if (n < 2) fail(ErrorCode::invalid_argument, "N must be at least 2 for C_2");
    const bool exact_c2 = n <= stats.exact_c2_limit;
    if (m != 2 && !exact_c2) {
        fail(ErrorCode::unsupported, "sampled C_2 is binary only; lower N or raise the exact limit");
    }
    const double scale_log = std::log2(static_cast<double>(n));
    const double scale_sqrt = std::sqrt(2.0 * static_cast<double>(n) * std::log(static_cast<double>(n)));

    std::vector<RandomTrial> rows(trials);
    SearchOptions inner = options;
    inner.workers = 1;
    parallel_for(trials, options.workers, [&](std::size_t t) {
        RandomTrial& row = rows[t];
        row.trial = t;
        row.seed = mix_seed(seed, t);
        row.n = n;
        const Sequence seq = gen_random(m, n, row.seed);
        row.max_order = max_order_complexity(seq, n);
        if (m == 2) {
            row.c2 = exact_c2 ? correlation(seq, n, 2, std::nullopt, inner).value
                              : sampled_correlation(seq, n, 2, stats.c2_samples, row.seed, inner).value;
        } else {
            row.c2 = mary_correlation(seq, n, 2, true, std::nullopt, inner).value;
        }
        row.c2_exact = exact_c2;
        row.scale_log_n = scale_log;
        row.scale_sqrt = scale_sqrt;
    });

    ExperimentSummary summary;
    summary.kind = "random_stats";
    summary.generator = "random";
    summary.alphabet = m;
    summary.n = n;
    summary.trials = trials;
    summary.seed = seed;
    std::vector<double> ms, c2s;
    for (const auto& row : rows) {
        ms.push_back(static_cast<double>(row.max_order));
        c2s.push_back(row.c2);
    }
    summary.statistics["M"] = summarize(std::move(ms));
    summary.statistics["C2"] = summarize(std::move(c2s));
    summary.reference_scales["log2_N"] = scale_log;
    summary.reference_scales["sqrt_2N_lnN"] = scale_sqrt;
    summary.rows = std::move(rows);
    return summary;
}

LegendreReport legendre_report(std::uint64_t p, std::size_t n, const SearchOptions& options,
                               const LegendreOptions& legendre) {
    const OddPrime prime(p);
    if (n < 1 || n > p) fail(ErrorCode::invalid_argument, "Legendre report needs 1 <= N <= p");
    const Sequence seq = gen_legendre(p, n);

    LegendreReport report;
    report.p = p;
    report.n = n;
    report.sequence = seq.to_string();
    const double scale = std::sqrt(static_cast<double>(p)) * std::log(static_cast<double>(p));
    const std::size_t max_k = std::min(legendre.max_k, n);
    for (std::size_t k = 1; k <= max_k; ++k) {
        MeasureResult result = k <= legendre.exact_max_k
                                   ? correlation(seq, n, k, std::nullopt, options)
                                   : sampled_correlation(seq, n, k, legendre.samples, legendre.seed, options);
        report.ratio_to_scale[k] = result.value / (static_cast<double>(k) * scale);
        report.per_k.emplace(k, std::move(result));
    }
    report.max_order = max_order_complexity(seq, n);
    report.lower_bound_reference =
        std::log2(static_cast<double>(std::min<std::uint64_t>(n, p)) / std::sqrt(static_cast<double>(p)));
    return report;
}

TwoPrimeReport two_prime_report(std::uint64_t p, std::uint64_t q, std::optional<std::size_t> max_lag,
                                const SearchOptions& options) {
    const PrimePair pair(p, q);
    const std::size_t period = p * q;
    const Sequence seq = gen_two_prime(p, q, period);

    TwoPrimeReport report;
    report.p = p;
    report.q = q;
    report.period = period;
    auto at = [&](std::size_t i) { return seq[i % period]; };
    for (std::size_t i = 0; i < period; ++i) {
        const bool relation = ((at(i) + at(i + p) + at(i + q) + at(i + p + q)) & 1) == 0;
        if (std::gcd<std::uint64_t>(i, period) == 1) {
            ++report.coprime_indices;
            if (relation) ++report.coprime_satisfied;
        }
        if (two_prime_identity_index_is_safe(i, p, q)) {
            ++report.safe_indices;
            if (relation) ++report.safe_satisfied;
        }
    }
    report.identity_rate = report.safe_indices ? static_cast<double>(report.safe_satisfied) / report.safe_indices : 0;
    report.coprime_rate =
        report.coprime_indices ? static_cast<double>(report.coprime_satisfied) / report.coprime_indices : 0;

    report.c4_structured_u = period - p - q;
    report.c4_structured_sum =
        correlation_sum(seq, LagTuple({0, static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                       static_cast<std::size_t>(p + q)}),
                        report.c4_structured_u);
    report.c4_structured = static_cast<double>(std::abs(report.c4_structured_sum));

    report.max_lag = max_lag.value_or(p - 1);
    const std::size_t max_k = std::min<std::size_t>(4, report.max_lag + 1);
    for (std::size_t k = 1; k <= max_k; ++k) {
        report.bounded.emplace(k, correlation(seq, period, k, report.max_lag, options));
    }
    return report;
}

}  // namespace seqm
