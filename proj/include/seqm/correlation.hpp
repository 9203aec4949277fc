#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seqm/sequence.hpp"

namespace seqm {

/// Strictly increasing non-negative lags d_1 < ... < d_k.
class LagTuple {
public:
    LagTuple() = default;
    explicit LagTuple(std::vector<std::size_t> lags);

    std::span<const std::size_t> lags() const noexcept { return lags_; }
    std::size_t order() const noexcept { return lags_.size(); }
    std::size_t largest() const noexcept { return lags_.empty() ? 0 : lags_.back(); }
    std::size_t operator[](std::size_t i) const { return lags_[i]; }

    /// Enumeration order: largest lag first, then lexicographic.
    friend std::strong_ordering operator<=>(const LagTuple& a, const LagTuple& b);
    friend bool operator==(const LagTuple&, const LagTuple&) = default;

private:
    std::vector<std::size_t> lags_;
};

enum class CorrelationMode { exact, bounded, sampled };

std::string_view to_string(CorrelationMode mode);

/// Correlation value with the (D, U[, H]) that attains it.
///
/// Among maximizers the witness has the smallest d_k, then the
/// lexicographically smallest D, then the smallest U, then (m-ary with
/// multipliers) the lexicographically smallest H.
struct MeasureResult {
    double value = 0;
    /// Exact |sum|^2 whenever the arithmetic was exact (binary, m in {3, 4, 6}).
    std::optional<std::int64_t> squared_norm;
    std::size_t k = 0;
    std::size_t n = 0;
    LagTuple witness_lags;
    std::size_t witness_u = 0;
    std::vector<unsigned> witness_multipliers;
    CorrelationMode mode = CorrelationMode::exact;
    std::optional<std::size_t> max_lag;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    unsigned alphabet = 2;
    bool multipliers = false;
};

enum class CorrelationKernel { bit_parallel, scalar };

struct SearchOptions {
    unsigned workers = 0;
    /// Ceiling on C(B+1, k) * N (times (m-1)^k with multipliers).
    double budget = 1e10;
    CorrelationKernel kernel = CorrelationKernel::bit_parallel;
};

/// C(B+1, k) * N elementary steps, the quantity compared against the budget.
double correlation_cost(std::size_t n, std::size_t k, std::size_t max_lag, unsigned multiplier_choices = 1);

/// Exact C_k(S, N), or the bounded-lag variant (d_k <= max_lag) when given.
MeasureResult correlation(const Sequence& seq, std::size_t n, std::size_t k,
                          std::optional<std::size_t> max_lag = std::nullopt, const SearchOptions& options = {});

/// correlation() for every k in [1, max_k].
std::map<std::size_t, MeasureResult> correlation_all(const Sequence& seq, std::size_t n, std::size_t max_k,
                                                     std::optional<std::size_t> max_lag = std::nullopt,
                                                     const SearchOptions& options = {});

/// Maximum over `n_samples` uniformly drawn lag tuples, each scanned exactly
/// over U. A lower bound on C_k; exhaustive when n_samples covers every tuple.
MeasureResult sampled_correlation(const Sequence& seq, std::size_t n, std::size_t k, std::uint64_t n_samples,
                                  std::uint64_t seed, const SearchOptions& options = {});

/// max |sum_{i<U} xi^{h_1 s_{i+d_1} + ... + h_k s_{i+d_k}}| with xi = exp(2 pi i / m).
/// Without multipliers every h_j is 1.
MeasureResult mary_correlation(const Sequence& seq, std::size_t n, std::size_t k, bool use_multipliers,
                               std::optional<std::size_t> max_lag = std::nullopt, const SearchOptions& options = {});

/// Signed single sum sum_{i<U} (-1)^{s_{i+d_1}+...+s_{i+d_k}}.
std::int64_t correlation_sum(const Sequence& seq, const LagTuple& lags, std::size_t u);

std::complex<double> mary_correlation_sum(const Sequence& seq, const LagTuple& lags,
                                          std::span<const unsigned> multipliers, std::size_t u);

/// Exact |sum|^2 for m in {2, 3, 4, 6}; nullopt otherwise.
std::optional<std::int64_t> mary_correlation_squared_norm(const Sequence& seq, const LagTuple& lags,
                                                          std::span<const unsigned> multipliers, std::size_t u);

/// Re-evaluates the single sum at the witness and compares with `value`
/// (exactly where arithmetic is exact, else within 1e-9).
bool witness_reproduces(const Sequence& seq, const MeasureResult& result);

}  // namespace seqm
