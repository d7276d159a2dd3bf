#pragma once

// JSON and CSV renderings of series, polynomials, CM points, zeros and verdicts.

#include "mfzl/classify.hpp"
#include "mfzl/cm.hpp"
#include "mfzl/jpoly.hpp"
#include "mfzl/locator.hpp"
#include "mfzl/qseries.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace mfzl {

using Json = nlohmann::ordered_json;

/// {"ramification": r, "truncation": "N", "terms": [["e", "c"], ...]}; exact series use "exact".
Json to_json(const QSeries& s);
QSeries qseries_from_json(const Json& j);

/// {"weight": k, "coeffs": ["c0", ..., "cd"]}
Json to_json(const JPolynomial& p);
JPolynomial jpoly_from_json(const Json& j);

/// {"a", "b", "c", "D", "z": ["-b/2a", |D|, 2a], "locus"}
Json to_json(const CMPoint& p);

Json to_json(const IntegralityReport& r);
Json to_json(const Verdict& v, int digits = 40);
Json to_json(const ZeroRecord& z, int digits = 40);

/// Significant decimal digits carried by `bits` bits.
int decimal_digits(long bits);

/// One RFC 4180 record terminated by CRLF; fields with commas, quotes or line breaks are quoted.
std::string csv_record(const std::vector<std::string>& fields);

/// locus,param,re,im,residual
std::string zeros_csv(const std::vector<ZeroRecord>& zeros, int digits);
/// theta_or_t,value
std::string profile_csv(const std::vector<std::pair<Real, Real>>& samples, int digits);

}  // namespace mfzl
