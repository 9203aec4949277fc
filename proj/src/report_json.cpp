#include "seqm/report_json.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "seqm/error.hpp"

namespace seqm {

namespace {

Json number_or_null(double value) {
    if (std::isfinite(value)) return value;
    return nullptr;
}

Json lags_json(const LagTuple& lags) {
    Json out = Json::array();
    for (std::size_t d : lags.lags()) out.push_back(d);
    return out;
}

std::string join_lags(const LagTuple& lags) {
    std::string out;
    for (std::size_t i = 0; i < lags.order(); ++i) {
        if (i) out += ' ';
        out += std::to_string(lags[i]);
    }
    return out;
}

Json statistic_json(const Statistic& s) {
    return Json{{"count", s.count}, {"mean", s.mean}, {"min", s.min},       {"max", s.max},
                {"q10", s.q10},     {"median", s.median}, {"q90", s.q90}};
}

CorrelationMode parse_mode(const std::string& text) {
    if (text == "exact") return CorrelationMode::exact;
    if (text == "bounded") return CorrelationMode::bounded;
    if (text == "sampled") return CorrelationMode::sampled;
    fail(ErrorCode::parse_error, "unknown correlation mode '" + text + "'");
}

template <typename T>
T required(const Json& json, const char* key) {
    if (!json.contains(key)) fail(ErrorCode::parse_error, std::string("report is missing field '") + key + "'");
    try {
        return json.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse_error, std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

Json to_json(const MeasureResult& result) {
    Json out;
    out["k"] = result.k;
    out["N"] = result.n;
    out["value"] = result.value;
    out["squared_norm"] = result.squared_norm ? Json(*result.squared_norm) : Json(nullptr);
    out["witness_lags"] = lags_json(result.witness_lags);
    out["witness_U"] = result.witness_u;
    if (!result.witness_multipliers.empty()) out["witness_multipliers"] = result.witness_multipliers;
    out["mode"] = std::string(to_string(result.mode));
    out["max_lag"] = result.max_lag ? Json(*result.max_lag) : Json(nullptr);
    if (result.mode == CorrelationMode::sampled) {
        out["n_samples"] = result.n_samples;
        out["seed"] = result.seed;
    }
    out["alphabet"] = result.alphabet;
    out["multipliers"] = result.multipliers;
    return out;
}

MeasureResult measure_result_from_json(const Json& json) {
    MeasureResult out;
    out.k = required<std::size_t>(json, "k");
    out.n = required<std::size_t>(json, "N");
    out.value = required<double>(json, "value");
    if (json.contains("squared_norm") && !json["squared_norm"].is_null()) {
        out.squared_norm = json["squared_norm"].get<std::int64_t>();
    }
    out.witness_lags = LagTuple(required<std::vector<std::size_t>>(json, "witness_lags"));
    out.witness_u = required<std::size_t>(json, "witness_U");
    if (json.contains("witness_multipliers")) {
        out.witness_multipliers = json["witness_multipliers"].get<std::vector<unsigned>>();
    }
    out.mode = parse_mode(required<std::string>(json, "mode"));
    if (json.contains("max_lag") && !json["max_lag"].is_null()) out.max_lag = json["max_lag"].get<std::size_t>();
    out.n_samples = json.value("n_samples", std::uint64_t{0});
    out.seed = json.value("seed", std::uint64_t{0});
    out.alphabet = json.value("alphabet", 2u);
    out.multipliers = json.value("multipliers", false);
    return out;
}

Json to_json(const ComplexityProfile& profile) {
    return Json{{"kind", std::string(to_string(profile.kind))}, {"values", profile.values}};
}

Json to_json(const BoundReport& report) {
    Json out;
    out["inequality"] = std::string(to_string(report.inequality));
    out["N"] = report.n;
    out["alphabet"] = report.alphabet;
    out["left_value"] = report.left_value;
    out["k_max"] = report.k_max;
    out["k_range_clamped"] = report.k_range_clamped;
    out["lag_bound"] = report.lag_bound ? Json(*report.lag_bound) : Json(nullptr);
    Json per_k = Json::array();
    for (const auto& [k, result] : report.per_k) per_k.push_back(to_json(result));
    out["per_k"] = std::move(per_k);
    out["max_correlation"] = report.max_correlation;
    out["max_correlation_squared_norm"] =
        report.max_correlation_squared_norm ? Json(*report.max_correlation_squared_norm) : Json(nullptr);
    out["right_value"] = number_or_null(report.right_value);
    out["right_value_exact"] = report.right_value_exact ? Json(*report.right_value_exact) : Json(nullptr);
    out["holds"] = report.holds;
    out["sequence"] = report.sequence;
    out["notes"] = report.notes;
    return out;
}

BoundReport bound_report_from_json(const Json& json) {
    if (!json.is_object()) fail(ErrorCode::parse_error, "bound report must be a JSON object");
    BoundReport out;
    out.inequality = parse_inequality(required<std::string>(json, "inequality"));
    out.n = required<std::size_t>(json, "N");
    out.alphabet = required<unsigned>(json, "alphabet");
    out.left_value = required<std::size_t>(json, "left_value");
    out.k_max = required<std::size_t>(json, "k_max");
    out.k_range_clamped = required<bool>(json, "k_range_clamped");
    if (json.contains("lag_bound") && !json["lag_bound"].is_null()) out.lag_bound = json["lag_bound"].get<std::size_t>();
    if (!json.contains("per_k") || !json["per_k"].is_array()) fail(ErrorCode::parse_error, "per_k must be an array");
    for (const auto& entry : json["per_k"]) {
        MeasureResult result = measure_result_from_json(entry);
        out.per_k.emplace(result.k, std::move(result));
    }
    out.max_correlation = required<double>(json, "max_correlation");
    if (json.contains("max_correlation_squared_norm") && !json["max_correlation_squared_norm"].is_null()) {
        out.max_correlation_squared_norm = json["max_correlation_squared_norm"].get<std::int64_t>();
    }
    const Json& right = json.contains("right_value") ? json["right_value"] : Json(nullptr);
    out.right_value = right.is_null() ? -std::numeric_limits<double>::infinity() : right.get<double>();
    if (json.contains("right_value_exact") && !json["right_value_exact"].is_null()) {
        out.right_value_exact = json["right_value_exact"].get<std::string>();
    }
    out.holds = required<bool>(json, "holds");
    out.sequence = json.value("sequence", std::string{});
    if (json.contains("notes")) out.notes = json["notes"].get<std::vector<std::string>>();
    return out;
}

Json to_json(const ExperimentSummary& summary, bool include_rows) {
    Json out;
    out["kind"] = summary.kind;
    out["ensemble"] = Json{{"generator", summary.generator},
                           {"m", summary.alphabet},
                           {"N", summary.n},
                           {"trials", summary.trials},
                           {"seed", summary.seed}};
    out["inequality"] = summary.inequality ? Json(std::string(to_string(*summary.inequality))) : Json(nullptr);
    Json stats = Json::object();
    for (const auto& [name, s] : summary.statistics) stats[name] = statistic_json(s);
    out["statistics"] = std::move(stats);
    Json scales = Json::object();
    for (const auto& [name, v] : summary.reference_scales) scales[name] = v;
    out["reference_scales"] = std::move(scales);
    out["reference_scale_logs"] = Json{{"log2_N", "base 2"}, {"sqrt_2N_lnN", "natural"}};
    out["checked"] = summary.checked;
    out["violations"] = summary.violations;
    out["order_violations"] = summary.order_violations;
    out["order_exempt_all_zero"] = summary.order_exempt;
    if (summary.min_slack) {
        const auto& w = *summary.min_slack;
        out["min_slack"] = Json{{"sequence", w.sequence},
                                {"slack", number_or_null(w.slack)},
                                {"slack_exact", w.slack_exact ? Json(*w.slack_exact) : Json(nullptr)},
                                {"report", to_json(w.report)}};
    }
    if (include_rows && !summary.rows.empty()) {
        Json rows = Json::array();
        for (const auto& r : summary.rows) {
            rows.push_back(Json{{"trial", r.trial},
                                {"seed", r.seed},
                                {"N", r.n},
                                {"M", r.max_order},
                                {"C2", r.c2},
                                {"C2_exact", r.c2_exact},
                                {"scale_logN", r.scale_log_n},
                                {"scale_sqrt", r.scale_sqrt}});
        }
        out["rows"] = std::move(rows);
    }
    return out;
}

Json to_json(const LegendreReport& report) {
    Json per_k = Json::array();
    for (const auto& [k, result] : report.per_k) {
        Json entry = to_json(result);
        entry["ratio_to_scale"] = report.ratio_to_scale.at(k);
        per_k.push_back(std::move(entry));
    }
    return Json{{"p", report.p},
                {"N", report.n},
                {"per_k", std::move(per_k)},
                {"M", report.max_order},
                {"lower_bound_reference", report.lower_bound_reference},
                {"sequence", report.sequence}};
}

Json to_json(const TwoPrimeReport& report) {
    Json bounded = Json::array();
    for (const auto& [k, result] : report.bounded) bounded.push_back(to_json(result));
    return Json{{"p", report.p},
                {"q", report.q},
                {"period", report.period},
                {"identity_rate", report.identity_rate},
                {"safe_indices", report.safe_indices},
                {"safe_satisfied", report.safe_satisfied},
                {"coprime_rate", report.coprime_rate},
                {"coprime_indices", report.coprime_indices},
                {"coprime_satisfied", report.coprime_satisfied},
                {"C4_structured", report.c4_structured},
                {"C4_structured_sum", report.c4_structured_sum},
                {"C4_structured_lags", {0, report.p, report.q, report.p + report.q}},
                {"C4_structured_U", report.c4_structured_u},
                {"max_lag", report.max_lag},
                {"bounded", std::move(bounded)}};
}

std::string random_stats_csv(const ExperimentSummary& summary) {
    std::ostringstream out;
    out << "trial,seed,N,M,C2,scale_logN,scale_sqrt\n";
    for (const auto& r : summary.rows) {
        out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.max_order << ',' << format_number(r.c2) << ','
            << format_number(r.scale_log_n) << ',' << format_number(r.scale_sqrt) << '\n';
    }
    return out.str();
}

std::string legendre_csv(const LegendreReport& report) {
    std::ostringstream out;
    out << "p,N,k,C_k,mode,ratio_to_scale,witness_lags,witness_U,M,lower_bound_reference\n";
    for (const auto& [k, result] : report.per_k) {
        out << report.p << ',' << report.n << ',' << k << ',' << format_number(result.value) << ','
            << to_string(result.mode) << ',' << format_number(report.ratio_to_scale.at(k)) << ','
            << join_lags(result.witness_lags) << ',' << result.witness_u << ',' << report.max_order << ','
            << format_number(report.lower_bound_reference) << '\n';
    }
    return out.str();
}

std::string two_prime_csv(const TwoPrimeReport& report) {
    std::ostringstream out;
    out << "p,q,period,identity_rate,safe_indices,coprime_rate,C4_structured,C4_structured_U,max_lag,"
           "bounded_C1,bounded_C2,bounded_C3,bounded_C4\n";
    out << report.p << ',' << report.q << ',' << report.period << ',' << format_number(report.identity_rate) << ','
        << report.safe_indices << ',' << format_number(report.coprime_rate) << ','
        << format_number(report.c4_structured) << ',' << report.c4_structured_u << ',' << report.max_lag;
    for (std::size_t k = 1; k <= 4; ++k) {
        out << ',';
        if (auto it = report.bounded.find(k); it != report.bounded.end()) out << format_number(it->second.value);
    }
    out << '\n';
    return out.str();
}

}  // namespace seqm
