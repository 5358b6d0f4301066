#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "diagbase/base_engine.hpp"
#include "diagbase/prob_lab.hpp"
#include "diagbase/simple_group.hpp"

namespace diagbase {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

Json to_json(const Rational& q);
Json to_json(const BigInt& n);
Json to_json(const OmegaPoint& w);
Json to_json(const DiagTypeGroup& g, const DiagPerm& e);
Json to_json(const DiagTypeGroup& g, const BaseCertificate& c);
Json to_json(const PyberReport& r);
Json to_json(const AltBounds& b);
Json to_json(const Q2Bound& q);
Json to_json(const McEstimate& m);
Json to_json(const SpecValidation& v);

/// Descriptor of the group instance: T, k, out-part, top, |G|, degree.
Json describe(const DiagTypeGroup& g);

/// The envelope shared by every report.
Json make_report(const std::string& command, Json config, Json result, std::optional<double> seconds);

/// Flat CSV rendering: header line plus one line per row; nested values are JSON-encoded.
std::string to_csv(const std::vector<Json>& rows);
/// Indented "key: value" lines.
std::string to_text(const Json& j, int indent = 0);

}  // namespace diagbase
