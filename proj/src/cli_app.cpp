#include "seqm/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "seqm/complexity.hpp"
#include "seqm/correlation.hpp"
#include "seqm/error.hpp"
#include "seqm/generators.hpp"
#include "seqm/parallel.hpp"
#include "seqm/report_json.hpp"
#include "seqm/sequence_io.hpp"
#include "seqm/verify.hpp"

namespace seqm {

namespace {

struct GlobalOptions {
    unsigned workers = 0;
    double budget = 1e10;
    std::string format;
    std::string out_path;
};

struct GenerateOptions {
    std::string kind;
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    unsigned m = 2;
    std::size_t length = 0;
    std::uint64_t seed = 0;
};

struct MeasureOptions {
    std::string path;
    std::string measure;
    std::optional<std::size_t> n;
    std::size_t k = 1;
    std::optional<std::size_t> max_lag;
    bool profile = false;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    bool mary = false;
    bool multipliers = false;
    std::optional<unsigned> alphabet;
};

struct VerifyOptions {
    std::string path;
    std::string inequality = "thm1";
    std::optional<std::size_t> n;
    bool exhaustive = false;
    std::size_t n_max = 10;
    unsigned m = 2;
    std::string recheck;
    std::optional<unsigned> alphabet;
};

struct ExperimentOptions {
    std::string kind;
    std::size_t n = 4096;
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    unsigned m = 2;
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::optional<std::size_t> legendre_n;
    std::optional<std::size_t> max_lag;
    std::size_t max_k = 4;
    std::uint64_t samples = 10000;
};

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

template <typename T>
Json optional_json(const std::optional<T>& value) {
    return value ? Json(*value) : Json(nullptr);
}

// Everything that determines the output lives in "config"; run_meta holds
// the timestamp and the worker count, neither of which affects results.
void attach_envelope(Json& doc, const std::string& command, Json parameters, std::uint64_t seed,
                     const GlobalOptions& global, const std::string& format) {
    doc["config"] = Json{{"command", command},
                         {"parameters", std::move(parameters)},
                         {"seed", seed},
                         {"budget", global.budget},
                         {"format", format}};
    doc["version"] = kToolVersion;
    doc["run_meta"] = Json{{"timestamp", utc_timestamp()}, {"worker_count", resolve_workers(global.workers)}};
}

std::string render_text(const Json& doc) {
    std::string out;
    for (const auto& [key, value] : doc.items()) {
        out += key;
        out += ": ";
        out += value.is_string() ? value.get<std::string>() : value.dump();
        out += '\n';
    }
    return out;
}

std::string render(const Json& doc, const std::string& format) {
    if (format == "text") return render_text(doc);
    return doc.dump(2) + "\n";
}

void emit(const std::string& payload, const GlobalOptions& global, std::ostream& out) {
    if (global.out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(global.out_path, std::ios::binary | std::ios::trunc);
    if (!file) fail(ErrorCode::io_error, "cannot open '" + global.out_path + "' for writing");
    file << payload;
}

SearchOptions search_options(const GlobalOptions& global) {
    SearchOptions options;
    options.workers = global.workers;
    options.budget = global.budget;
    return options;
}

int run_generate(const GenerateOptions& o, const GlobalOptions& global, std::ostream& out) {
    Sequence seq;
    if (o.kind == "legendre") {
        seq = gen_legendre(o.p, o.length);
    } else if (o.kind == "twoprime") {
        seq = gen_two_prime(o.p, o.q, o.length);
    } else {
        seq = gen_random(o.m, o.length, o.seed);
    }
    Provenance provenance = seq.provenance();
    provenance["tool"] = kToolVersion;
    provenance["command"] = "generate";
    emit(format_sequence_text(seq.with_provenance(std::move(provenance))), global, out);
    return exit_ok;
}

int run_measure(const MeasureOptions& o, const GlobalOptions& global, std::ostream& out) {
    const Sequence seq = read_sequence(o.path, o.alphabet);
    const std::size_t n = o.n.value_or(seq.size());
    const SearchOptions search = search_options(global);

    Json doc;
    doc["measure"] = o.measure;
    doc["N"] = n;
    if (o.measure == "linear") {
        const LinearRecurrence recurrence = berlekamp_massey(seq, n);
        if (n == 0) fail(ErrorCode::invalid_argument, "N must be positive");
        doc["value"] = recurrence.length;
        doc["recurrence_coefficients"] = recurrence.coefficients;
        if (o.profile) doc["profile"] = to_json(linear_complexity_profile(seq, n));
    } else if (o.measure == "maxorder") {
        doc["value"] = max_order_complexity(seq, n);
        if (o.profile) doc["profile"] = to_json(max_order_profile(seq, n));
    } else {
        MeasureResult result;
        if (o.mary || !seq.is_binary()) {
            result = mary_correlation(seq, n, o.k, o.multipliers, o.max_lag, search);
        } else if (o.samples) {
            result = sampled_correlation(seq, n, o.k, *o.samples, o.seed, search);
        } else {
            result = correlation(seq, n, o.k, o.max_lag, search);
        }
        doc["k"] = result.k;
        doc["value"] = result.value;
        doc["witness_lags"] = to_json(result).at("witness_lags");
        doc["witness_U"] = result.witness_u;
        doc["result"] = to_json(result);
    }
    doc["sequence_provenance"] = seq.provenance();

    const std::string format = global.format.empty() ? "json" : global.format;
    attach_envelope(doc, "measure",
                    Json{{"input", o.path},
                         {"measure", o.measure},
                         {"N", n},
                         {"k", o.k},
                         {"max_lag", optional_json(o.max_lag)},
                         {"profile", o.profile},
                         {"samples", optional_json(o.samples)},
                         {"mary", o.mary},
                         {"multipliers", o.multipliers},
                         {"alphabet", seq.alphabet()}},
                    o.seed, global, format);
    emit(render(doc, format), global, out);
    return exit_ok;
}

int run_recheck(const VerifyOptions& o, const GlobalOptions& global, std::ostream& out) {
    std::ifstream file(o.recheck);
    if (!file) fail(ErrorCode::io_error, "cannot open '" + o.recheck + "'");
    Json input;
    try {
        input = Json::parse(file);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse_error, std::string("report is not valid JSON: ") + e.what());
    }
    std::vector<Json> raw;
    if (input.is_object() && input.contains("reports")) {
        for (const auto& r : input["reports"]) raw.push_back(r);
    } else if (input.is_array()) {
        for (const auto& r : input) raw.push_back(r);
    } else {
        raw.push_back(input);
    }

    const SearchOptions search = search_options(global);
    bool all_ok = true;
    Json results = Json::array();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const BoundReport report = bound_report_from_json(raw[i]);
        const bool consistent = is_self_consistent(report);
        Json entry{{"index", i}, {"inequality", std::string(to_string(report.inequality))}, {"consistent", consistent}};
        bool recomputed_ok = true;
        if (!report.sequence.empty()) {
            const Sequence seq = Sequence::from_string(report.sequence, report.alphabet);
            const BoundReport fresh = check_inequality(report.inequality, seq, report.n, search);
            recomputed_ok = fresh.left_value == report.left_value && fresh.holds == report.holds &&
                            fresh.max_correlation == report.max_correlation &&
                            fresh.right_value_exact == report.right_value_exact;
            entry["recomputed_match"] = recomputed_ok;
        }
        entry["holds"] = report.holds;
        all_ok = all_ok && consistent && recomputed_ok && report.holds;
        results.push_back(std::move(entry));
    }
    Json doc{{"command", "verify --recheck"}, {"recheck", std::move(results)}, {"all_valid", all_ok}};
    const std::string format = global.format.empty() ? "json" : global.format;
    attach_envelope(doc, "verify", Json{{"recheck", o.recheck}}, 0, global, format);
    emit(render(doc, format), global, out);
    return all_ok ? exit_ok : exit_violation;
}

int run_verify(const VerifyOptions& o, const GlobalOptions& global, std::ostream& out) {
    if (!o.recheck.empty()) return run_recheck(o, global, out);
    const Inequality inequality = parse_inequality(o.inequality);
    const SearchOptions search = search_options(global);
    const std::string format = global.format.empty() ? "json" : global.format;

    Json doc;
    doc["command"] = "verify";
    bool ok = true;
    Json parameters{{"inequality", o.inequality}};
    if (o.exhaustive) {
        const ExperimentSummary summary = exhaustive_sweep(o.m, o.n_max, inequality, search);
        ok = summary.violations == 0 && summary.order_violations == 0;
        doc["summary"] = to_json(summary);
        doc["violations"] = summary.violations;
        doc["holds"] = ok;
        parameters["exhaustive"] = true;
        parameters["n_max"] = o.n_max;
        parameters["m"] = o.m;
    } else {
        if (o.path.empty()) fail(ErrorCode::invalid_argument, "verify needs a sequence file, --exhaustive or --recheck");
        const Sequence seq = read_sequence(o.path, o.alphabet);
        const std::size_t n = o.n.value_or(seq.size());
        const BoundReport report = check_inequality(inequality, seq, n, search);
        ok = report.holds;
        doc["reports"] = Json::array({to_json(report)});
        doc["holds"] = ok;
        parameters["input"] = o.path;
        parameters["N"] = n;
        parameters["alphabet"] = seq.alphabet();
    }
    attach_envelope(doc, "verify", std::move(parameters), 0, global, format);
    emit(render(doc, format), global, out);
    return ok ? exit_ok : exit_violation;
}

int run_experiment(const ExperimentOptions& o, const GlobalOptions& global, std::ostream& out) {
    const SearchOptions search = search_options(global);
    const std::string format = global.format.empty() ? "csv" : global.format;
    Json doc;
    Json parameters;
    std::string table;
    if (o.kind == "randomstats") {
        const ExperimentSummary summary = random_stats(o.m, o.n, o.trials, o.seed, search);
        table = random_stats_csv(summary);
        doc = to_json(summary, format != "csv");
        parameters = Json{{"kind", o.kind}, {"m", o.m}, {"N", o.n}, {"trials", o.trials}};
    } else if (o.kind == "legendre") {
        LegendreOptions legendre;
        legendre.max_k = o.max_k;
        legendre.samples = o.samples;
        legendre.seed = o.seed;
        const std::size_t n = o.legendre_n.value_or(o.p);
        const LegendreReport report = legendre_report(o.p, n, search, legendre);
        table = legendre_csv(report);
        doc = to_json(report);
        parameters = Json{{"kind", o.kind}, {"p", o.p}, {"N", n}, {"max_k", o.max_k}, {"samples", o.samples}};
    } else {
        const TwoPrimeReport report = two_prime_report(o.p, o.q, o.max_lag, search);
        table = two_prime_csv(report);
        doc = to_json(report);
        parameters = Json{{"kind", o.kind}, {"p", o.p}, {"q", o.q}, {"max_lag", optional_json(o.max_lag)}};
    }
    attach_envelope(doc, "experiment", std::move(parameters), o.seed, global, format);
    if (format == "csv") {
        emit(table + "# summary: " + doc.dump() + "\n", global, out);
    } else {
        emit(render(doc, format), global, out);
    }
    return exit_ok;
}

template <typename T>
std::optional<T> env_value(const char* name) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    std::istringstream in(raw);
    T value{};
    if (!(in >> value) || !in.eof()) {
        fail(ErrorCode::invalid_argument, std::string("environment variable ") + name + " is malformed");
    }
    return value;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear complexity, maximum-order complexity and correlation measures of sequences", "seqm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    GlobalOptions global;
    try {
        if (auto budget = env_value<double>("SEQM_BUDGET")) global.budget = *budget;
        if (auto workers = env_value<unsigned>("SEQM_WORKERS")) global.workers = *workers;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_validation;
    }
    app.add_option("--workers", global.workers, "Worker threads (0 = hardware concurrency)");
    app.add_option("--budget", global.budget, "Step ceiling for exact searches")->check(CLI::PositiveNumber);
    app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("-o,--out", global.out_path, "Write the report to this file");

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Write a sequence file");
    generate->add_option("kind", gen.kind)->required()->check(CLI::IsMember({"legendre", "twoprime", "random"}));
    generate->add_option("--p", gen.p, "Odd prime p");
    generate->add_option("--q", gen.q, "Odd prime q > p (twoprime)");
    generate->add_option("--m", gen.m, "Alphabet size (random)");
    generate->add_option("--len", gen.length, "Sequence length")->required();
    generate->add_option("--seed", gen.seed, "Seed (random)");

    MeasureOptions meas;
    auto* measure = app.add_subcommand("measure", "Compute L, M or C_k of a sequence file");
    measure->add_option("file", meas.path)->required();
    measure->add_option("--measure", meas.measure)->required()->check(CLI::IsMember({"linear", "maxorder", "correlation"}));
    measure->add_option("--n", meas.n, "Prefix length N (default: whole file)");
    measure->add_option("--k", meas.k, "Correlation order");
    measure->add_option("--max-lag", meas.max_lag, "Bound on d_k");
    measure->add_flag("--profile", meas.profile, "Emit the per-prefix profile");
    measure->add_option("--samples", meas.samples, "Sampled mode with this many lag tuples");
    measure->add_option("--seed", meas.seed, "Seed for sampled mode");
    measure->add_flag("--mary", meas.mary, "Use the m-ary root-of-unity form");
    measure->add_flag("--multipliers", meas.multipliers, "Maximize over multipliers h_j (m-ary)");
    measure->add_option("--alphabet", meas.alphabet, "Override the alphabet size from the file header");

    VerifyOptions ver;
    auto* verify = app.add_subcommand("verify", "Check an inequality on a file, exhaustively, or recheck a report");
    verify->add_option("file", ver.path);
    verify->add_option("--ineq", ver.inequality)
        ->check(CLI::IsMember({"eq1", "thm1", "thm1_bounded_lags", "prime_m"}));
    verify->add_option("--n", ver.n, "Prefix length N");
    verify->add_flag("--exhaustive", ver.exhaustive, "Check every sequence of every length <= n-max");
    verify->add_option("--n-max", ver.n_max, "Longest length in the exhaustive sweep");
    verify->add_option("--m", ver.m, "Alphabet size for the exhaustive sweep");
    verify->add_option("--recheck", ver.recheck, "Re-validate a JSON report");
    verify->add_option("--alphabet", ver.alphabet, "Override the alphabet size from the file header");

    ExperimentOptions exp;
    auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo or generator experiment");
    experiment->add_option("kind", exp.kind)->required()->check(CLI::IsMember({"randomstats", "legendre", "twoprime"}));
    experiment->add_option("--n", exp.n, "Sequence length (randomstats)");
    experiment->add_option("--trials", exp.trials, "Number of seeds (randomstats)");
    experiment->add_option("--seed", exp.seed, "Base seed");
    experiment->add_option("--m", exp.m, "Alphabet size (randomstats)");
    experiment->add_option("--p", exp.p, "Odd prime p");
    experiment->add_option("--q", exp.q, "Odd prime q (twoprime)");
    experiment->add_option("--len", exp.legendre_n, "Prefix length N (legendre, default p)");
    experiment->add_option("--max-lag", exp.max_lag, "Lag bound (twoprime, default p-1)");
    experiment->add_option("--max-k", exp.max_k, "Largest order k (legendre)");
    experiment->add_option("--samples", exp.samples, "Sampled tuples for orders above 2 (legendre)");

    for (auto* sub : {generate, measure, verify, experiment}) sub->fallthrough();

    std::vector<const char*> argv{"seqm"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kToolVersion) + "\n" : app.help());
            return exit_ok;
        }
        err << "seqm: " << e.what() << '\n';
        return exit_validation;
    }

    try {
        if (*generate) return run_generate(gen, global, out);
        if (*measure) return run_measure(meas, global, out);
        if (*verify) return run_verify(ver, global, out);
        return run_experiment(exp, global, out);
    } catch (const Error& e) {
        err << "seqm: " << e.what() << '\n';
        return e.code() == ErrorCode::budget_exceeded ? exit_budget : exit_validation;
    } catch (const std::exception& e) {
        err << "seqm: " << e.what() << '\n';
        return exit_validation;
    }
}

}  // namespace seqm
