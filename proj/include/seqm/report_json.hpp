#pragma once

#include <string>

#include "json.hpp"
#include "seqm/complexity.hpp"
#include "seqm/correlation.hpp"
#include "seqm/verify.hpp"

namespace seqm {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "seqm 1.0.0";

Json to_json(const MeasureResult& result);
MeasureResult measure_result_from_json(const Json& json);

Json to_json(const ComplexityProfile& profile);

Json to_json(const BoundReport& report);
BoundReport bound_report_from_json(const Json& json);

Json to_json(const ExperimentSummary& summary, bool include_rows = true);
Json to_json(const LegendreReport& report);
Json to_json(const TwoPrimeReport& report);

/// Shortest decimal that round-trips, "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double value);

// CSV tables. Column sets are fixed:
//   random stats: trial,seed,N,M,C2,scale_logN,scale_sqrt
//   legendre:     p,N,k,C_k,mode,ratio_to_scale,witness_lags,witness_U,M,lower_bound_reference
//   two-prime:    p,q,period,identity_rate,safe_indices,coprime_rate,C4_structured,
//                 C4_structured_U,max_lag,bounded_C1,bounded_C2,bounded_C3,bounded_C4
std::string random_stats_csv(const ExperimentSummary& summary);
std::string legendre_csv(const LegendreReport& report);
std::string two_prime_csv(const TwoPrimeReport& report);

}  // namespace seqm
