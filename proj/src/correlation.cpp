#include "seqm/correlation.hpp"

#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "bitpack.hpp"
#include "seqm/error.hpp"
#include "seqm/generators.hpp"
#include "seqm/parallel.hpp"

namespace seqm {

namespace {

constexpr double kTolerance = 1e-9;
// Below this many elementary steps a search runs on the calling thread.
constexpr double kParallelThreshold = 1 << 20;

// ---------------------------------------------------------------------------
// Binary kernels

struct ByteSummary {
    std::int8_t sum;
    std::int8_t max;
    std::int8_t min;
    std::uint8_t max_pos;  // first prefix length (1..8) reaching max
    std::uint8_t min_pos;
};

// A set bit is a -1 term. Prefix sums over 1..8 terms of each byte value.
constexpr std::array<ByteSummary, 256> make_byte_table() {
    std::array<ByteSummary, 256> table{};
    for (unsigned b = 0; b < 256; ++b) {
        int running = 0;
        ByteSummary s{0, -9, 9, 0, 0};
        for (unsigned j = 0; j < 8; ++j) {
            running += ((b >> j) & 1) ? -1 : 1;
            if (running > s.max) {
                s.max = static_cast<std::int8_t>(running);
                s.max_pos = static_cast<std::uint8_t>(j + 1);
            }
            if (running < s.min) {
                s.min = static_cast<std::int8_t>(running);
                s.min_pos = static_cast<std::uint8_t>(j + 1);
            }
        }
        s.sum = static_cast<std::int8_t>(running);
        table[b] = s;
    }
    return table;
}

constexpr auto kByteTable = make_byte_table();

struct BinaryCandidate {
    std::int64_t value = -1;
    std::size_t u = 0;
};

bool better(const BinaryCandidate& a, const BinaryCandidate& b) { return a.value > b.value; }

// max_{1<=U<=u_max} |sum_{i<U} (-1)^{s_{i+d_1}+...}|, earliest U on ties.
BinaryCandidate scan_scalar(std::span<const Symbol> s, std::span<const std::size_t> lags, std::size_t u_max) {
    BinaryCandidate best;
    std::int64_t running = 0;
    for (std::size_t i = 0; i < u_max; ++i) {
        unsigned parity = 0;
        for (std::size_t d : lags) parity ^= s[i + d];
        running += parity ? -1 : 1;
        const std::int64_t magnitude = running < 0 ? -running : running;
        if (magnitude > best.value) {
            best.value = magnitude;
            best.u = i + 1;
        }
    }
    return best;
}

BinaryCandidate scan_packed(const detail::PackedBits& bits, std::span<const std::size_t> lags, std::size_t u_max) {
    BinaryCandidate best;
    std::int64_t running = 0;
    for (std::size_t base = 0; base < u_max; base += 64) {
        std::uint64_t terms = 0;
        for (std::size_t d : lags) terms ^= bits.extract(d + base);
        const std::size_t count = std::min<std::size_t>(64, u_max - base);
        const std::size_t full_bytes = count / 8;
        for (std::size_t j = 0; j < full_bytes; ++j) {
            const ByteSummary& b = kByteTable[(terms >> (8 * j)) & 0xFF];
            const std::int64_t hi = running + b.max;
            const std::int64_t lo = running + b.min;
            const std::int64_t hi_abs = hi < 0 ? -hi : hi;
            const std::int64_t lo_abs = lo < 0 ? -lo : lo;
            // |x| is maximized at an endpoint of [lo, hi]; take the earlier on ties.
            std::int64_t magnitude;
            std::size_t pos;
            if (hi_abs > lo_abs || (hi_abs == lo_abs && b.max_pos <= b.min_pos)) {
                magnitude = hi_abs;
                pos = b.max_pos;
            } else {
                magnitude = lo_abs;
                pos = b.min_pos;
            }
            if (magnitude > best.value) {
                best.value = magnitude;
                best.u = base + 8 * j + pos;
            }
            running += b.sum;
        }
        for (std::size_t i = full_bytes * 8; i < count; ++i) {
            running += ((terms >> i) & 1) ? -1 : 1;
            const std::int64_t magnitude = running < 0 ? -running : running;
            if (magnitude > best.value) {
                best.value = magnitude;
                best.u = base + i + 1;
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Roots of unity, exact where the ring of cyclotomic integers is two-dimensional

enum class RingForm { generic, integer, gaussian, eisenstein };

struct RootTable {
    unsigned m = 2;
    RingForm form = RingForm::generic;
    std::vector<std::array<std::int64_t, 2>> exact;  // xi^j = a + b * (i or omega)
    std::vector<std::complex<double>> approx;

    explicit RootTable(unsigned modulus) : m(modulus) {
        approx.resize(m);
        for (unsigned j = 0; j < m; ++j) {
            approx[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
        }
        switch (m) {
            case 2:
                form = RingForm::integer;
                exact = {{1, 0}, {-1, 0}};
                break;
            case 4:
                form = RingForm::gaussian;
                exact = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                break;
            case 3:
                form = RingForm::eisenstein;
                exact = {{1, 0}, {0, 1}, {-1, -1}};
                break;
            case 6:
                // xi_6 = 1 + omega with omega = exp(2 pi i / 3)
                form = RingForm::eisenstein;
                exact = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
                break;
            default:
                break;
        }
    }

    bool is_exact() const { return form != RingForm::generic; }

    std::int64_t norm(std::int64_t a, std::int64_t b) const {
        switch (form) {
            case RingForm::integer: return a * a;
            case RingForm::gaussian: return a * a + b * b;
            case RingForm::eisenstein: return a * a - a * b + b * b;
            case RingForm::generic: break;
        }
        return 0;
    }
};

struct MaryCandidate {
    std::int64_t norm = -1;  // exact rings
    double modulus = -1;
    std::size_t u = 0;
    std::vector<unsigned> multipliers;
};

bool mary_greater(const RootTable& roots, const MaryCandidate& a, const MaryCandidate& b) {
    if (roots.is_exact()) return a.norm > b.norm;
    return a.modulus > b.modulus + kTolerance;
}

bool mary_equal(const RootTable& roots, const MaryCandidate& a, const MaryCandidate& b) {
    if (roots.is_exact()) return a.norm == b.norm;
    return std::abs(a.modulus - b.modulus) <= kTolerance;
}

MaryCandidate scan_mary(const RootTable& roots, std::span<const Symbol> s, std::span<const std::size_t> lags,
                        std::span<const unsigned> multipliers, std::size_t u_max) {
    MaryCandidate best;
    const std::size_t k = lags.size();
    if (roots.is_exact()) {
        std::int64_t a = 0, b = 0;
        for (std::size_t i = 0; i < u_max; ++i) {
            unsigned e = 0;
            for (std::size_t j = 0; j < k; ++j) e += multipliers[j] * s[i + lags[j]];
            const auto& root = roots.exact[e % roots.m];
            a += root[0];
            b += root[1];
            const std::int64_t norm = roots.norm(a, b);
            if (norm > best.norm) {
                best.norm = norm;
                best.u = i + 1;
            }
        }
        best.modulus = std::sqrt(static_cast<double>(best.norm));
    } else {
        std::complex<double> acc = 0;
        for (std::size_t i = 0; i < u_max; ++i) {
            unsigned e = 0;
            for (std::size_t j = 0; j < k; ++j) e += multipliers[j] * s[i + lags[j]];
            acc += roots.approx[e % roots.m];
            const double modulus = std::abs(acc);
            if (modulus > best.modulus + kTolerance) {
                best.modulus = modulus;
                best.u = i + 1;
            }
        }
    }
    best.multipliers.assign(multipliers.begin(), multipliers.end());
    return best;
}

// ---------------------------------------------------------------------------
// Deterministic enumeration of lag tuples

// Calls visit(lags) for every tuple with largest lag `largest`, lexicographically.
template <typename Visit>
void for_each_tuple_with_largest(std::size_t largest, std::size_t k, Visit&& visit) {
    std::vector<std::size_t> lags(k);
    const std::size_t free = k - 1;
    for (std::size_t i = 0; i < free; ++i) lags[i] = i;
    lags[free] = largest;
    while (true) {
        visit(std::span<const std::size_t>(lags));
        if (free == 0) return;
        std::size_t i = free;
        while (i > 0 && lags[i - 1] == largest - free + (i - 1)) --i;
        if (i == 0) return;
        ++lags[i - 1];
        for (std::size_t j = i; j < free; ++j) lags[j] = lags[j - 1] + 1;
    }
}

template <typename Candidate>
struct TupleBest {
    Candidate candidate;
    std::vector<std::size_t> lags;
    bool found = false;
};

// Partitions the enumeration by largest lag; each partition keeps its first
// strictly-best tuple and partitions merge in ascending order, which realizes
// the (d_k, D, U, H) tie-break independent of scheduling.
template <typename Candidate, typename Evaluate, typename Greater>
TupleBest<Candidate> search_tuples(std::size_t n, std::size_t k, std::size_t bound, unsigned workers, double cost,
                                   Evaluate&& evaluate, Greater&& greater) {
    const std::size_t partitions = bound - (k - 1) + 1;
    std::vector<TupleBest<Candidate>> per_partition(partitions);
    const unsigned effective = cost < kParallelThreshold ? 1u : workers;
    parallel_for(partitions, effective, [&](std::size_t index) {
        const std::size_t largest = k - 1 + index;
        auto& best = per_partition[index];
        for_each_tuple_with_largest(largest, k, [&](std::span<const std::size_t> lags) {
            Candidate candidate = evaluate(lags, n - largest);
            if (!best.found || greater(candidate, best.candidate)) {
                best.candidate = std::move(candidate);
                best.lags.assign(lags.begin(), lags.end());
                best.found = true;
            }
        });
    });
    TupleBest<Candidate> overall;
    for (auto& best : per_partition) {
        if (best.found && (!overall.found || greater(best.candidate, overall.candidate))) overall = std::move(best);
    }
    return overall;
}

// ---------------------------------------------------------------------------
// Validation

void validate_order(std::size_t n, std::size_t k) {
    if (k < 1) fail(ErrorCode::invalid_argument, "order k must be at least 1");
    if (k > n) fail(ErrorCode::invalid_argument, "order k=" + std::to_string(k) + " exceeds N=" + std::to_string(n));
}

std::size_t resolve_bound(std::size_t n, std::size_t k, std::optional<std::size_t> max_lag) {
    if (!max_lag) return n - 1;
    if (*max_lag + 1 < k) {
        fail(ErrorCode::invalid_argument,
             "lag bound B=" + std::to_string(*max_lag) + " admits no tuple of order " + std::to_string(k));
    }
    return std::min(*max_lag, n - 1);
}

void check_budget(double cost, const SearchOptions& options) {
    if (cost > options.budget) {
        fail(ErrorCode::budget_exceeded, "exact search needs ~" + std::to_string(cost) + " steps, budget is " +
                                             std::to_string(options.budget) +
                                             "; use a lag bound or sampled mode");
    }
}

unsigned power_count(unsigned base, std::size_t exponent) {
    double v = std::pow(static_cast<double>(base), static_cast<double>(exponent));
    return v > 4e9 ? 0xFFFFFFFFu : static_cast<unsigned>(v);
}

MeasureResult binary_result(const TupleBest<BinaryCandidate>& best, std::size_t n, std::size_t k) {
    MeasureResult out;
    out.value = static_cast<double>(best.candidate.value);
    out.squared_norm = best.candidate.value * best.candidate.value;
    out.k = k;
    out.n = n;
    out.witness_lags = LagTuple(best.lags);
    out.witness_u = best.candidate.u;
    return out;
}

// Uniform integer in [0, bound] from a SplitMix64 stream.
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t uniform(std::uint64_t bound) {
        const std::uint64_t range = bound + 1;
        if (range == 0) return next();
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % range;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % range;
    }

private:
    std::uint64_t state_;
};

// Floyd's algorithm: uniform k-subset of {0, ..., n-1}, sorted.
std::vector<std::size_t> sample_tuple(std::size_t n, std::size_t k, SampleStream& stream) {
    std::set<std::size_t> chosen;
    for (std::size_t j = n - k; j < n; ++j) {
        const std::size_t t = stream.uniform(j);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

}  // namespace

// ---------------------------------------------------------------------------

LagTuple::LagTuple(std::vector<std::size_t> lags) : lags_(std::move(lags)) {
    for (std::size_t i = 1; i < lags_.size(); ++i) {
        if (lags_[i] <= lags_[i - 1]) fail(ErrorCode::invalid_argument, "lags must be strictly increasing");
    }
}

std::strong_ordering operator<=>(const LagTuple& a, const LagTuple& b) {
    if (auto c = a.largest() <=> b.largest(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.lags_.begin(), a.lags_.end(), b.lags_.begin(), b.lags_.end());
}

std::string_view to_string(CorrelationMode mode) {
    switch (mode) {
        case CorrelationMode::exact: return "exact";
        case CorrelationMode::bounded: return "bounded";
        case CorrelationMode::sampled: return "sampled";
    }
    return "exact";
}

double correlation_cost(std::size_t n, std::size_t k, std::size_t max_lag, unsigned multiplier_choices) {
    // C(B+1, k) computed in floating point; only the magnitude matters.
    double tuples = 1;
    const double pool = static_cast<double>(max_lag + 1);
    for (std::size_t i = 0; i < k; ++i) tuples = tuples * (pool - static_cast<double>(i)) / static_cast<double>(i + 1);
    return tuples * static_cast<double>(n) * std::pow(static_cast<double>(multiplier_choices), static_cast<double>(k));
}

MeasureResult correlation(const Sequence& seq, std::size_t n, std::size_t k, std::optional<std::size_t> max_lag,
                          const SearchOptions& options) {
    require_binary_prefix(seq, n);
    validate_order(n, k);
    const std::size_t bound = resolve_bound(n, k, max_lag);
    const double cost = correlation_cost(n, k, bound);
    check_budget(cost, options);

    const auto symbols = seq.symbols().first(n);
    TupleBest<BinaryCandidate> best;
    if (options.kernel == CorrelationKernel::scalar) {
        best = search_tuples<BinaryCandidate>(
            n, k, bound, options.workers, cost,
            [&](std::span<const std::size_t> lags, std::size_t u_max) { return scan_scalar(symbols, lags, u_max); },
            better);
    } else {
        const auto bits = detail::PackedBits::from_symbols(symbols);
        best = search_tuples<BinaryCandidate>(
            n, k, bound, options.workers, cost,
            [&](std::span<const std::size_t> lags, std::size_t u_max) { return scan_packed(bits, lags, u_max); },
            better);
    }
    MeasureResult out = binary_result(best, n, k);
    if (max_lag) {
        out.mode = CorrelationMode::bounded;
        out.max_lag = *max_lag;
    }
    return out;
}

std::map<std::size_t, MeasureResult> correlation_all(const Sequence& seq, std::size_t n, std::size_t max_k,
                                                     std::optional<std::size_t> max_lag,
                                                     const SearchOptions& options) {
    require_binary_prefix(seq, n);
    validate_order(n, max_k);
    std::map<std::size_t, MeasureResult> out;
    for (std::size_t k = 1; k <= max_k; ++k) out.emplace(k, correlation(seq, n, k, max_lag, options));
    return out;
}

MeasureResult sampled_correlation(const Sequence& seq, std::size_t n, std::size_t k, std::uint64_t n_samples,
                                  std::uint64_t seed, const SearchOptions& options) {
    require_binary_prefix(seq, n);
    validate_order(n, k);
    if (n_samples < 1) fail(ErrorCode::invalid_argument, "n_samples must be at least 1");

    const double total_tuples = correlation_cost(1, k, n - 1);
    MeasureResult out;
    if (static_cast<double>(n_samples) >= total_tuples) {
        // The sample would cover every tuple anyway.
        SearchOptions unlimited = options;
        unlimited.budget = std::numeric_limits<double>::infinity();
        out = correlation(seq, n, k, std::nullopt, unlimited);
    } else {
        const auto symbols = seq.symbols().first(n);
        const auto bits = detail::PackedBits::from_symbols(symbols);
        std::vector<TupleBest<BinaryCandidate>> results(n_samples);
        const double cost = static_cast<double>(n_samples) * static_cast<double>(n);
        parallel_for(n_samples, cost < kParallelThreshold ? 1u : options.workers, [&](std::size_t t) {
            SampleStream stream(mix_seed(seed, t));
            auto lags = sample_tuple(n, k, stream);
            const std::size_t u_max = n - lags.back();
            results[t].candidate = options.kernel == CorrelationKernel::scalar ? scan_scalar(symbols, lags, u_max)
                                                                               : scan_packed(bits, lags, u_max);
            results[t].lags = std::move(lags);
            results[t].found = true;
        });
        // Same witness order as the exhaustive search: value, then tuple order, then U.
        std::size_t chosen = 0;
        for (std::size_t t = 1; t < results.size(); ++t) {
            const auto& a = results[t];
            const auto& b = results[chosen];
            if (a.candidate.value != b.candidate.value) {
                if (a.candidate.value > b.candidate.value) chosen = t;
                continue;
            }
            const LagTuple la(a.lags), lb(b.lags);
            if (la < lb || (la == lb && a.candidate.u < b.candidate.u)) chosen = t;
        }
        out = binary_result(results[chosen], n, k);
    }
    out.mode = CorrelationMode::sampled;
    out.max_lag.reset();
    out.n_samples = n_samples;
    out.seed = seed;
    return out;
}

MeasureResult mary_correlation(const Sequence& seq, std::size_t n, std::size_t k, bool use_multipliers,
                               std::optional<std::size_t> max_lag, const SearchOptions& options) {
    require_prefix(seq, n);
    validate_order(n, k);
    const unsigned m = seq.alphabet();
    const std::size_t bound = resolve_bound(n, k, max_lag);
    const double cost = correlation_cost(n, k, bound, use_multipliers ? m - 1 : 1);
    check_budget(cost, options);

    const RootTable roots(m);
    const auto symbols = seq.symbols().first(n);
    const std::size_t choices = use_multipliers ? power_count(m - 1, k) : 1;

    auto evaluate = [&](std::span<const std::size_t> lags, std::size_t u_max) {
        std::vector<unsigned> h(k, 1);
        MaryCandidate best;
        for (std::size_t c = 0; c < choices; ++c) {
            MaryCandidate candidate = scan_mary(roots, symbols, lags, h, u_max);
            if (best.u == 0 || mary_greater(roots, candidate, best) ||
                (mary_equal(roots, candidate, best) && candidate.u < best.u)) {
                best = std::move(candidate);
            }
            // Lexicographic odometer over [1, m-1]^k.
            for (std::size_t j = k; j-- > 0;) {
                if (++h[j] < m) break;
                h[j] = 1;
            }
        }
        return best;
    };
    auto greater = [&](const MaryCandidate& a, const MaryCandidate& b) { return mary_greater(roots, a, b); };
    auto best = search_tuples<MaryCandidate>(n, k, bound, options.workers, cost, evaluate, greater);

    MeasureResult out;
    out.value = best.candidate.modulus;
    if (roots.is_exact()) out.squared_norm = best.candidate.norm;
    out.k = k;
    out.n = n;
    out.witness_lags = LagTuple(best.lags);
    out.witness_u = best.candidate.u;
    out.witness_multipliers = best.candidate.multipliers;
    out.alphabet = m;
    out.multipliers = use_multipliers;
    if (max_lag) {
        out.mode = CorrelationMode::bounded;
        out.max_lag = *max_lag;
    }
    return out;
}

namespace {

void validate_single_sum(const Sequence& seq, const LagTuple& lags, std::size_t u) {
    if (lags.order() == 0) fail(ErrorCode::invalid_argument, "lag tuple is empty");
    if (u + lags.largest() > seq.size()) fail(ErrorCode::invalid_argument, "U + d_k exceeds the sequence length");
}

void validate_multipliers(const Sequence& seq, const LagTuple& lags, std::span<const unsigned> multipliers) {
    if (multipliers.size() != lags.order()) fail(ErrorCode::invalid_argument, "one multiplier per lag is required");
    for (unsigned h : multipliers) {
        if (h < 1 || h >= seq.alphabet()) fail(ErrorCode::invalid_argument, "multipliers must lie in [1, m-1]");
    }
}

}  // namespace

std::int64_t correlation_sum(const Sequence& seq, const LagTuple& lags, std::size_t u) {
    if (!seq.is_binary()) fail(ErrorCode::invalid_argument, "binary sum needs a binary sequence");
    validate_single_sum(seq, lags, u);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < u; ++i) {
        unsigned parity = 0;
        for (std::size_t d : lags.lags()) parity ^= seq[i + d];
        sum += parity ? -1 : 1;
    }
    return sum;
}

std::complex<double> mary_correlation_sum(const Sequence& seq, const LagTuple& lags,
                                          std::span<const unsigned> multipliers, std::size_t u) {
    validate_single_sum(seq, lags, u);
    validate_multipliers(seq, lags, multipliers);
    const RootTable roots(seq.alphabet());
    std::complex<double> sum = 0;
    for (std::size_t i = 0; i < u; ++i) {
        unsigned e = 0;
        for (std::size_t j = 0; j < lags.order(); ++j) e += multipliers[j] * seq[i + lags[j]];
        sum += roots.approx[e % roots.m];
    }
    return sum;
}

std::optional<std::int64_t> mary_correlation_squared_norm(const Sequence& seq, const LagTuple& lags,
                                                          std::span<const unsigned> multipliers, std::size_t u) {
    validate_single_sum(seq, lags, u);
    validate_multipliers(seq, lags, multipliers);
    const RootTable roots(seq.alphabet());
    if (!roots.is_exact()) return std::nullopt;
    std::int64_t a = 0, b = 0;
    for (std::size_t i = 0; i < u; ++i) {
        unsigned e = 0;
        for (std::size_t j = 0; j < lags.order(); ++j) e += multipliers[j] * seq[i + lags[j]];
        a += roots.exact[e % roots.m][0];
        b += roots.exact[e % roots.m][1];
    }
    return roots.norm(a, b);
}

bool witness_reproduces(const Sequence& seq, const MeasureResult& result) {
    if (result.witness_u < 1 || result.witness_lags.order() != result.k) return false;
    if (result.witness_u + result.witness_lags.largest() > result.n || result.n > seq.size()) return false;
    if (result.witness_multipliers.empty()) {
        const std::int64_t sum = correlation_sum(seq, result.witness_lags, result.witness_u);
        return static_cast<double>(sum < 0 ? -sum : sum) == result.value;
    }
    if (result.squared_norm) {
        const auto norm = mary_correlation_squared_norm(seq, result.witness_lags, result.witness_multipliers,
                                                        result.witness_u);
        return norm && *norm == *result.squared_norm;
    }
    const auto sum = mary_correlation_sum(seq, result.witness_lags, result.witness_multipliers, result.witness_u);
    return std::abs(std::abs(sum) - result.value) <= kTolerance;
}

}  // namespace seqm
