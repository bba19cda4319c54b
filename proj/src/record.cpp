#include "onrefl/record.hpp"

#include <json.hpp>

#include <cmath>

namespace onrefl {

VerificationRecord make_record(std::string theorem, std::string params, std::vector<Rational> lhs,
                               std::vector<Rational> rhs) {
    VerificationRecord r;
    r.theorem = std::move(theorem);
    r.params = std::move(params);
    r.pass = lhs == rhs;
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    return r;
}

std::string format_vector(const std::vector<Rational>& v) {
    if (v.size() == 1) return to_string(v[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + "]";
}

void emit_header(std::ostream& os, ReportFormat fmt) {
    if (fmt == ReportFormat::Tsv) os << "theorem\tparams\tlhs\trhs\tpass\tms\n";
}

void emit_record(std::ostream& os, const VerificationRecord& r, ReportFormat fmt, bool with_timing) {
    const long long ms = with_timing ? std::llround(r.ms) : 0;
    if (fmt == ReportFormat::Tsv) {
        os << r.theorem << '\t' << r.params << '\t' << format_vector(r.lhs) << '\t' << format_vector(r.rhs) << '\t'
           << (r.pass ? "true" : "false") << '\t' << ms << '\n';
        return;
    }
    nlohmann::ordered_json j;
    j["theorem"] = r.theorem;
    j["params"] = r.params;
    auto arr = [](const std::vector<Rational>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : v) a.push_back(to_string(x));
        return a;
    };
    j["lhs"] = arr(r.lhs);
    j["rhs"] = arr(r.rhs);
    j["pass"] = r.pass;
    j["ms"] = ms;
    if (!r.note.empty()) j["note"] = r.note;
    os << j.dump() << '\n';
}

void emit(std::ostream& os, const std::vector<VerificationRecord>& records, ReportFormat fmt, bool with_timing) {
    emit_header(os, fmt);
    for (const auto& r : records) emit_record(os, r, fmt, with_timing);
}

}  // namespace onrefl
