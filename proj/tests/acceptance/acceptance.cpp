// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance              run every criterion
//   acceptance --only 3 7   run the listed criteria
//   acceptance --skip 7     run all but the listed criteria
//
// Exit status is 0 iff every criterion that ran passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "seqm/cli.hpp"
#include "seqm/complexity.hpp"
#include "seqm/correlation.hpp"
#include "seqm/error.hpp"
#include "seqm/generators.hpp"
#include "seqm/report_json.hpp"
#include "seqm/sequence_io.hpp"
#include "seqm/verify.hpp"

using namespace seqm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void require(bool condition, const std::string& what) {
        if (condition) return;
        pass = false;
        if (failures.size() < 10) failures.push_back(what);
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Sequence from_bits(std::uint64_t bits, std::size_t n) {
    std::vector<Symbol> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1u;
    return Sequence(std::move(s));
}

std::string fmt(double v) { return format_number(v); }

std::string lags_text(const LagTuple& lags) {
    std::string out = "(";
    for (std::size_t i = 0; i < lags.order(); ++i) out += (i ? "," : "") + std::to_string(lags[i]);
    return out + ")";
}

bool same_result(const MeasureResult& a, const MeasureResult& b) {
    return a.value == b.value && a.squared_norm == b.squared_norm && a.witness_lags == b.witness_lags &&
           a.witness_u == b.witness_u && a.witness_multipliers == b.witness_multipliers;
}

Outcome exhaustive_certification() {
    Outcome o;
    const auto start = Clock::now();
    std::ostringstream detail;
    for (auto ineq : {Inequality::thm1, Inequality::thm1_bounded_lags, Inequality::eq1}) {
        const auto summary = exhaustive_sweep(2, 10, ineq);
        const std::string name(to_string(ineq));
        o.require(summary.checked == 2046, name + ": checked " + std::to_string(summary.checked));
        o.require(summary.violations == 0, name + ": " + std::to_string(summary.violations) + " violations");
        o.require(summary.order_violations == 0,
                  name + ": " + std::to_string(summary.order_violations) + " sequences with M > L");
        if (summary.violations && summary.min_slack) {
            o.require(false, name + ": witness " + summary.min_slack->sequence);
        }
        detail << name << " checked=" << summary.checked << " violations=" << summary.violations
               << " M>L=" << summary.order_violations << " (all-zero exempt=" << summary.order_exempt << "); ";
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed <= 120, "runtime " + fmt(elapsed) + " s exceeds 120 s");
    detail << fmt(std::round(elapsed * 10) / 10) << " s";
    o.detail = detail.str();
    return o;
}

Outcome max_order_oracle() {
    Outcome o;
    const auto start = Clock::now();
    std::size_t compared = 0;
    for (std::size_t n = 1; n <= 14; ++n) {
        for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
            const auto s = from_bits(bits, n);
            const auto fast = max_order_complexity(s, n), slow = oracle::max_order(s, n);
            o.require(fast == slow, s.to_string() + ": " + std::to_string(fast) + " vs oracle " + std::to_string(slow));
            ++compared;
        }
    }
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const auto s = gen_random(2, 1000, mix_seed(2, t));
        const auto fast = max_order_complexity(s, 1000), slow = oracle::max_order(s, 1000);
        o.require(fast == slow, "random seed " + std::to_string(mix_seed(2, t)) + ": " + std::to_string(fast) +
                                    " vs oracle " + std::to_string(slow));
        ++compared;
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed <= 120, "runtime " + fmt(elapsed) + " s exceeds 120 s");
    o.detail = std::to_string(compared) + " sequences, " + fmt(std::round(elapsed * 10) / 10) + " s";
    return o;
}

Outcome linear_oracle() {
    Outcome o;
    std::size_t compared = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        const std::uint64_t seed = mix_seed(3, t);
        const std::size_t n = 1 + seed % 20;
        const auto s = gen_random(2, n, seed);
        const auto fast = linear_complexity(s, n), slow = oracle::linear_complexity(s, n);
        o.require(fast == slow, s.to_string() + ": " + std::to_string(fast) + " vs oracle " + std::to_string(slow));
        o.require(berlekamp_massey(s, n).generates(s.symbols(), n), s.to_string() + ": recurrence does not generate");
        ++compared;
    }
    for (std::size_t n = 1; n <= 20; ++n) {
        const auto zeros = Sequence(std::vector<Symbol>(n, 0));
        o.require(linear_complexity(zeros, n) == 0 && oracle::linear_complexity(zeros, n) == 0,
                  "all-zero N=" + std::to_string(n));
        std::vector<Symbol> last(n, 0);
        last.back() = 1;
        const auto spike = Sequence(last);
        o.require(linear_complexity(spike, n) == n && oracle::linear_complexity(spike, n) == n,
                  "0...01 N=" + std::to_string(n));
        compared += 2;
    }
    o.detail = std::to_string(compared) + " sequences";
    return o;
}

Outcome correlation_engine() {
    Outcome o;
    const auto start = Clock::now();
    SearchOptions fast, scalar;
    fast.workers = scalar.workers = 1;
    scalar.kernel = CorrelationKernel::scalar;
    std::size_t instances = 0;
    for (std::size_t n = 1; n <= 16; ++n) {
        for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
            const auto s = from_bits(bits, n);
            for (std::size_t k = 1; k <= std::min<std::size_t>(4, n); ++k) {
                const auto a = correlation(s, n, k, std::nullopt, fast);
                const auto b = correlation(s, n, k, std::nullopt, scalar);
                const auto c = correlation(s, n, k, n - 1, fast);
                const std::string id = s.to_string() + " k=" + std::to_string(k);
                o.require(same_result(a, b), id + ": bit-parallel " + fmt(a.value) + " vs scalar " + fmt(b.value));
                o.require(same_result(a, c), id + ": bounded B=N-1 differs from exact");
                o.require(witness_reproduces(s, a), id + ": witness does not reproduce");
                ++instances;
            }
        }
    }
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const std::uint64_t seed = mix_seed(4, t);
        const auto s = gen_random(2, 256, seed);
        const std::size_t k = 1 + t % 4;
        const std::size_t bound = 12 + seed % 12;
        const auto a = correlation(s, 256, k, bound, fast);
        const auto b = correlation(s, 256, k, bound, scalar);
        const std::string id = "seed " + std::to_string(seed) + " k=" + std::to_string(k);
        o.require(same_result(a, b), id + ": bit-parallel " + fmt(a.value) + " vs scalar " + fmt(b.value));
        o.require(witness_reproduces(s, a), id + ": witness " + lags_text(a.witness_lags) + " does not reproduce");
        if (t < 40) {
            const auto full = correlation(s, 256, std::min<std::size_t>(k, 2), std::nullopt, fast);
            const auto full_b = correlation(s, 256, std::min<std::size_t>(k, 2), 255, fast);
            o.require(same_result(full, full_b), id + ": bounded B=N-1 differs from exact");
        }
        ++instances;
    }
    o.detail = std::to_string(instances) + " instances, " + fmt(std::round(seconds_since(start) * 10) / 10) + " s";
    return o;
}

Outcome prime_m_extension() {
    Outcome o;
    const auto start = Clock::now();
    const auto summary = exhaustive_sweep(3, 7, Inequality::prime_m);
    o.require(summary.violations == 0, std::to_string(summary.violations) + " ternary violations");
    if (summary.violations && summary.min_slack) o.require(false, "witness " + summary.min_slack->sequence);
    std::size_t exact_reports = 0;
    for (std::uint64_t index = 0; index < 2187; index += 97) {
        std::vector<Symbol> s(7);
        std::uint64_t x = index;
        for (auto& v : s) v = x % 3, x /= 3;
        const auto r = check_prime_m(Sequence(s, 3), 7);
        o.require(r.max_correlation_squared_norm.has_value(), "inexact arithmetic on a ternary sequence");
        exact_reports += r.max_correlation_squared_norm.has_value();
    }
    std::size_t agree = 0;
    for (std::uint64_t t = 0; t < 500; ++t) {
        const std::uint64_t seed = mix_seed(5, t);
        const std::size_t n = 8 + seed % 13;
        const auto s = gen_random(2, n, seed);
        const auto pm = check_prime_m(s, n), t1 = check_thm1(s, n, false);
        const bool same = pm.right_value_exact == t1.right_value_exact && pm.right_value == t1.right_value &&
                          pm.holds == t1.holds;
        o.require(same, s.to_string() + ": prime_m right " + pm.right_value_exact.value_or("?") + " vs thm1 " +
                            t1.right_value_exact.value_or("?"));
        agree += same;
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed <= 300, "runtime " + fmt(elapsed) + " s exceeds 300 s");
    o.detail = "ternary checked=" + std::to_string(summary.checked) +
               " (length 7: 2187) violations=" + std::to_string(summary.violations) +
               ", exact-norm spot checks=" + std::to_string(exact_reports) + ", m=2 agreement " +
               std::to_string(agree) + "/500, " + fmt(std::round(elapsed * 10) / 10) + " s";
    return o;
}

Outcome legendre() {
    Outcome o;
    const auto l7 = gen_legendre(7, 7);
    o.require(l7.to_string() == "0001011", "gen_legendre(7) = " + l7.to_string());

    LegendreOptions opts;
    opts.max_k = 2;
    const auto r = legendre_report(1009, 1009, {}, opts);
    const auto& c2 = r.per_k.at(2);
    const double scale = std::sqrt(1009.0) * std::log(1009.0);
    o.require(c2.mode == CorrelationMode::exact, "C_2 not exact");
    o.require(c2.value <= 8 * scale, "C_2 = " + fmt(c2.value) + " exceeds " + fmt(8 * scale));
    std::ostringstream detail;
    detail << "p=1009 C_2=" << c2.value << " at D=" << lags_text(c2.witness_lags) << " U=" << c2.witness_u
           << ", C_2/(8 sqrt(p) ln p)=" << fmt(std::round(c2.value / (8 * scale) * 10000) / 10000) << "; M:";
    for (std::uint64_t p : {101ull, 257ull, 1009ull}) {
        const auto s = gen_legendre(p, p);
        const auto m = max_order_complexity(s, p);
        const double floor = std::log2(std::sqrt(static_cast<double>(p))) - 2;
        o.require(m >= floor, "p=" + std::to_string(p) + ": M=" + std::to_string(m) + " < " + fmt(floor) +
                                  " sequence " + s.to_string());
        detail << " p=" << p << " M=" << m << " (>= " << fmt(std::round(floor * 100) / 100) << ")";
    }
    o.detail = detail.str();
    return o;
}

std::string two_prime_line(const TwoPrimeReport& r) {
    std::ostringstream out;
    out << "(p,q)=(" << r.p << "," << r.q << ") identity_rate=" << fmt(r.identity_rate) << " over "
        << r.safe_indices << " safe indices, C4_structured=" << fmt(r.c4_structured)
        << " vs 0.5(pq-p-q)=" << fmt(0.5 * static_cast<double>(r.c4_structured_u))
        << ", bounded C_4(d_4<p)=" << (r.bounded.count(4) ? fmt(r.bounded.at(4).value) : std::string("n/a"));
    return out.str();
}

Outcome two_prime() {
    Outcome o;
    const auto r = two_prime_report(5, 7);
    o.require(r.identity_rate == 1.0, "identity_rate " + fmt(r.identity_rate));
    const double threshold = 0.5 * static_cast<double>(r.c4_structured_u);
    o.require(r.c4_structured >= threshold,
              "C4_structured " + fmt(r.c4_structured) + " < " + fmt(threshold));
    o.require(r.bounded.count(4) && r.bounded.at(4).value < r.c4_structured,
              "bounded C_4 " + (r.bounded.count(4) ? fmt(r.bounded.at(4).value) : std::string("n/a")) +
                  " not below C4_structured " + fmt(r.c4_structured));
    o.detail = two_prime_line(r) + "; reference " + two_prime_line(two_prime_report(11, 13));
    return o;
}

Outcome random_ensembles() {
    Outcome o;
    auto start = Clock::now();
    const auto big = random_stats(2, 4096, 200, 8);
    const double elapsed_a = seconds_since(start);
    const double mean_m = big.statistics.at("M").mean, log_n = std::log2(4096.0);
    o.require(mean_m >= log_n && mean_m <= 3 * log_n,
              "mean M " + fmt(mean_m) + " outside [" + fmt(log_n) + ", " + fmt(3 * log_n) + "]");
    o.require(elapsed_a <= 300, "part (a) runtime " + fmt(elapsed_a) + " s exceeds 300 s");

    start = Clock::now();
    const auto small = random_stats(2, 512, 50, 8);
    const double elapsed_b = seconds_since(start);
    const double median_c2 = small.statistics.at("C2").median;
    const double scale = std::sqrt(2 * 512.0 * std::log(512.0));
    o.require(std::all_of(small.rows.begin(), small.rows.end(), [](const RandomTrial& t) { return t.c2_exact; }),
              "C_2 not exact at N=512");
    o.require(median_c2 >= 0.3 * scale && median_c2 <= 3 * scale,
              "median C_2 " + fmt(median_c2) + " outside [" + fmt(0.3 * scale) + ", " + fmt(3 * scale) + "]");
    o.require(elapsed_b <= 300, "part (b) runtime " + fmt(elapsed_b) + " s exceeds 300 s");

    std::ostringstream detail;
    detail << "(a) N=4096 mean M=" << fmt(mean_m) << " in [12, 36], " << fmt(std::round(elapsed_a * 10) / 10)
           << " s; (b) N=512 median C_2=" << fmt(median_c2) << " = " << fmt(std::round(median_c2 / scale * 1000) / 1000)
           << " x sqrt(2N ln N), " << fmt(std::round(elapsed_b * 10) / 10) << " s";
    o.detail = detail.str();
    return o;
}

std::string strip_run_meta(const std::string& text) {
    try {
        auto doc = Json::parse(text);
        doc.erase("run_meta");
        return doc.dump();
    } catch (const nlohmann::json::exception&) {
    }
    std::istringstream in(text);
    std::string line, out;
    const std::string tag = "# summary: ";
    while (std::getline(in, line)) {
        if (line.rfind(tag, 0) == 0) {
            auto doc = Json::parse(line.substr(tag.size()));
            doc.erase("run_meta");
            line = tag + doc.dump();
        }
        out += line + '\n';
    }
    return out;
}

Outcome reproducibility() {
    Outcome o;
    const std::string path = (std::filesystem::temp_directory_path() / "seqm_acceptance_seq.txt").string();
    write_sequence(gen_random(2, 400, 9), path);
    const std::vector<std::vector<std::string>> commands = {
        {"measure", path, "--measure", "correlation", "--k", "2"},
        {"measure", path, "--measure", "correlation", "--k", "3", "--samples", "2000", "--seed", "1"},
        {"measure", path, "--measure", "maxorder", "--profile"},
        {"verify", path, "--ineq", "thm1_bounded_lags", "--n", "80"},
        {"verify", "--exhaustive", "--n-max", "7", "--ineq", "thm1"},
        {"experiment", "randomstats", "--n", "256", "--trials", "16", "--seed", "3"},
        {"--format", "json", "experiment", "legendre", "--p", "257"},
        {"experiment", "twoprime", "--p", "11", "--q", "13"},
    };
    std::size_t identical = 0;
    for (const auto& command : commands) {
        std::string reference;
        bool first = true;
        for (const char* workers : {"1", "1", "2", "4"}) {
            auto args = command;
            args.insert(args.begin(), {"--workers", workers});
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            o.require(code == exit_ok, command[0] + ": exit " + std::to_string(code) + " " + err.str());
            const auto stripped = strip_run_meta(out.str());
            if (first) {
                reference = stripped;
                first = false;
            } else {
                const bool same = stripped == reference;
                o.require(same, "'" + command[0] + " " + command[1] + "' differs with --workers " + workers);
                identical += same;
            }
        }
    }
    std::filesystem::remove(path);
    o.detail = std::to_string(commands.size()) + " commands x 4 runs (workers 1,1,2,4), " + std::to_string(identical) +
               "/" + std::to_string(commands.size() * 3) + " byte-identical repeats after removing run_meta";
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "exhaustive certification N <= 10", exhaustive_certification},
        {2, "maximum-order complexity vs oracle", max_order_oracle},
        {3, "linear complexity vs oracle", linear_oracle},
        {4, "correlation engine correctness", correlation_engine},
        {5, "prime-m extension", prime_m_extension},
        {6, "Legendre sequences", legendre},
        {7, "two-prime structured correlation", two_prime},
        {8, "random ensembles", random_ensembles},
        {9, "reproducibility across runs and worker counts", reproducibility},
    };

    std::set<int> only, skip;
    std::set<int>* target = nullptr;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only") {
            target = &only;
        } else if (arg == "--skip") {
            target = &skip;
        } else if (target) {
            target->insert(std::stoi(arg));
        } else {
            std::cerr << "usage: acceptance [--only N...] [--skip N...]\n";
            return 2;
        }
    }

    bool all_pass = true;
    for (const auto& c : criteria) {
        if ((!only.empty() && !only.count(c.id)) || skip.count(c.id)) continue;
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.failures.push_back(std::string("exception: ") + e.what());
        }
        all_pass = all_pass && outcome.pass;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title;
        if (!outcome.detail.empty()) std::cout << " -- " << outcome.detail;
        std::cout << '\n';
        for (const auto& f : outcome.failures) std::cout << "    " << f << '\n';
        std::cout.flush();
    }
    return all_pass ? 0 : 1;
}
