#pragma once

#include <nlohmann/json.hpp>

#include "lfam/legendre.hpp"
#include "lfam/verify.hpp"
#include "lfam/watermark.hpp"

namespace lfam {

inline nlohmann::json to_json(const CorrelationReport& r) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [v, c] : r.value_histogram) hist[std::to_string(v)] = c;
  nlohmann::json j;
  j["kind"] = r.kind == ReportKind::autocorrelation ? "auto" : "cross";
  if (r.kind == ReportKind::autocorrelation) {
    j["m"] = r.m1;
  } else {
    j["m1"] = r.m1;
    j["m2"] = r.m2;
  }
  j["peak_value"] = r.peak_value;
  j["off_peak_max_abs"] = r.off_peak_max_abs;
  j["bound"] = r.bound;
  j["passed"] = r.passed;
  j["bound_attained"] = r.bound_attained;
  j["matches_expected_values"] = r.matches_expected_values;
  j["involves_m0"] = r.involves_m0;
  j["value_histogram"] = std::move(hist);
  j["peak_shifts"] = r.peak_shifts;
  return j;
}

inline nlohmann::json to_json(const WelchMetrics& w) {
  return {
      {"p", w.p},
      {"n", w.n},
      {"nonzero_count", w.nonzero_count.str()},
      {"cross_bound", w.cross_bound.str()},
      {"bound_to_peak_ratio", w.bound_to_peak_unreduced()},
      {"bound_to_peak_ratio_reduced", to_fraction(w.bound_to_peak_ratio)},
      {"welch_ratio", to_fraction(w.welch_ratio)},
      {"welch_ratio_unreduced", w.welch_unreduced()},
      {"relative_difference", to_fraction(w.relative_difference)},
      {"relative_difference_value", to_double(w.relative_difference)},
      {"relative_difference_percent", to_double(w.relative_difference * 100)},
  };
}

inline nlohmann::json to_json(const LegendreParams& params) {
  return {{"p", params.p.value()},
          {"n", params.n},
          {"a", params.a},
          {"poly", params.poly.to_string()},
          {"poly_pretty", params.poly.pretty()},
          {"convention", std::string(to_string(params.convention))}};
}

inline nlohmann::json to_json(const FamilyVerification& v, const LegendreParams& params) {
  nlohmann::json j = to_json(params);
  j["theorem1"] = nlohmann::json::array();
  for (const auto& r : v.theorem1) j["theorem1"].push_back(to_json(r));
  j["theorem2"] = nlohmann::json::array();
  for (const auto& r : v.theorem2) j["theorem2"].push_back(to_json(r));
  j["welch"] = to_json(v.welch);
  j["passed"] = v.passed;
  return j;
}

inline nlohmann::json to_json(const ExtractResult& r) {
  return {{"m", r.payload.m},
          {"shifts", r.payload.shifts},
          {"score", r.score},
          {"snr", r.snr},
          {"confident", r.confident}};
}

}  // namespace lfam
