#include "diagbase/report.hpp"

#include <sstream>

namespace diagbase {

Json to_json(const Rational& q) {
    return Json{{"num", boost::multiprecision::numerator(q).str()},
                {"den", boost::multiprecision::denominator(q).str()},
                {"text", to_string(q)}};
}

Json to_json(const BigInt& n) { return n.str(); }

Json to_json(const OmegaPoint& w) { return Json{{"tuple", w.t}, {"text", w.to_string()}}; }

Json to_json(const DiagTypeGroup& g, const DiagPerm& e) {
    return Json{{"alpha", e.alpha},
                {"out_label", g.aut().coset(e.alpha)},
                {"inner_offset", g.aut().inner_offset(e.alpha)},
                {"perm", e.perm.to_string()}};
}

Json to_json(const DiagTypeGroup& g, const BaseCertificate& c) {
    Json pts = Json::array();
    for (const auto& w : c.points) pts.push_back(to_json(w));
    return Json{{"points", pts},
                {"size", c.points.size()},
                {"is_base", c.is_base},
                {"method", to_string(c.method)},
                {"stabilizer_order", to_json(c.stabilizer_order)},
                {"witness", c.witness ? to_json(g, *c.witness) : Json(nullptr)}};
}

Json to_json(const PyberReport& r) {
    return Json{{"b", r.b},          {"exact", r.exact},           {"log_ceiling", r.log_ceiling},
                {"upper", r.upper}, {"upper_holds", r.upper_holds}, {"lower_holds", r.lower_holds}};
}

Json to_json(const AltBounds& b) { return Json{{"lo", b.lo}, {"hi", b.hi}, {"reasons", b.reasons}}; }

Json to_json(const Q2Bound& q) {
    return Json{{"total", to_json(q.total)}, {"r1", to_json(q.r1)}, {"r2", to_json(q.r2)}, {"r3", to_json(q.r3)}};
}

Json to_json(const McEstimate& m) {
    return Json{{"samples", m.samples}, {"nonbase", m.nonbase}, {"fraction", m.fraction()}, {"seed", m.seed}};
}

Json to_json(const SpecValidation& v) {
    Json checks = Json::array();
    for (const auto& c : v.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return Json{{"group", v.group}, {"ok", v.ok()}, {"min_index_verified", v.min_index_verified}, {"checks", checks}};
}

Json describe(const DiagTypeGroup& g) {
    return Json{{"group", g.t().name()},
                {"k", g.k()},
                {"out_part", g.out_part()},
                {"top", g.top().name()},
                {"order", to_json(g.order())},
                {"degree", to_json(g.degree())},
                {"descriptor", g.descriptor()}};
}

Json make_report(const std::string& command, Json config, Json result, std::optional<double> seconds) {
    return Json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"config", std::move(config)},
                {"timing", {{"seconds", seconds ? Json(*seconds) : Json(nullptr)}}},
                {"result", std::move(result)}};
}

namespace {

std::string csv_cell(const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace

std::string to_csv(const std::vector<Json>& rows) {
    std::vector<std::string> cols;
    for (const auto& r : rows)
        for (const auto& [key, val] : r.items())
            if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
    std::ostringstream out;
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_cell(cols[i]);
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out << ',';
            if (r.contains(cols[i])) out << csv_cell(r[cols[i]]);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_text(const Json& j, int indent) {
    std::ostringstream out;
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            if (val.is_structured() && !val.empty())
                out << pad << key << ":\n" << to_text(val, indent + 1);
            else
                out << pad << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
        }
    } else if (j.is_array()) {
        for (const auto& val : j) {
            if (val.is_structured())
                out << pad << "-\n" << to_text(val, indent + 1);
            else
                out << pad << "- " << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
        }
    } else {
        out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
    return out.str();
}

}  // namespace diagbase
