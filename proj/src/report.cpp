#include "fracgeo/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace fracgeo {

using ordered_json = nlohmann::ordered_json;

bool ChainReport::any_violation() const {
    for (const Verdict& v : verdicts)
        if (v.status == "violated-within-uncertainty") return true;
    return false;
}

const TermValue* ChainReport::term(const std::string& name) const {
    for (const TermValue& t : terms)
        if (t.name == name) return &t;
    return nullptr;
}

const Verdict* ChainReport::verdict(const std::string& inequality) const {
    for (const Verdict& v : verdicts)
        if (v.inequality == inequality) return &v;
    return nullptr;
}

namespace {

ordered_json to_json(const ChainReport& r) {
    ordered_json j;
    j["case"] = r.case_id;
    j["params"] = ordered_json{{"n", r.params.n}, {"s", r.params.s}, {"p", r.params.p}};
    j["grid"] = ordered_json{{"L", r.L}, {"m", r.m}};
    ordered_json terms = ordered_json::array();
    for (const TermValue& t : r.terms) {
        ordered_json tj;
        tj["name"] = t.name;
        if (t.infinite)
            tj["value"] = nullptr;
        else
            tj["value"] = t.value;
        tj["infinite"] = t.infinite;
        tj["uncertainty"] = t.uncertainty;
        tj["refinement"] = t.refinement;
        terms.push_back(tj);
    }
    j["terms"] = terms;
    ordered_json margins = ordered_json::array();
    for (const MarginValue& m : r.margins) {
        ordered_json mj;
        mj["name"] = m.name;
        if (std::isnan(m.value))
            mj["value"] = nullptr;
        else
            mj["value"] = m.value;
        mj["uncertainty"] = m.uncertainty;
        margins.push_back(mj);
    }
    j["margins"] = margins;
    ordered_json verdicts = ordered_json::array();
    for (const Verdict& v : r.verdicts)
        verdicts.push_back(ordered_json{{"inequality", v.inequality}, {"status", v.status}});
    j["verdicts"] = verdicts;
    j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string report_to_json(const ChainReport& report, int indent) {
    return to_json(report).dump(indent);
}

std::string reports_to_json(const std::vector<ChainReport>& reports, int indent) {
    ordered_json arr = ordered_json::array();
    for (const ChainReport& r : reports) arr.push_back(to_json(r));
    return arr.dump(indent);
}

std::string terms_csv(const std::vector<ChainReport>& reports) {
    std::ostringstream os;
    os << "case,term,refinement,value,uncertainty\n";
    os.precision(17);
    for (const ChainReport& r : reports)
        for (const TermValue& t : r.terms) {
            for (const auto& lv : t.level_values)
                os << csv_field(r.case_id) << ',' << csv_field(t.name) << ','
                   << csv_field(lv.first) << ',' << lv.second << ",\n";
            os << csv_field(r.case_id) << ',' << csv_field(t.name) << ','
               << csv_field(t.refinement) << ',';
            if (t.infinite)
                os << "inf";
            else
                os << t.value;
            os << ',' << t.uncertainty << '\n';
        }
    return os.str();
}

std::string margins_csv(const std::vector<ChainReport>& reports) {
    std::ostringstream os;
    os << "case,margin,value,uncertainty,status\n";
    os.precision(17);
    for (const ChainReport& r : reports) {
        for (std::size_t i = 0; i < r.margins.size(); ++i) {
            const MarginValue& m = r.margins[i];
            os << csv_field(r.case_id) << ',' << csv_field(m.name) << ',';
            if (std::isnan(m.value))
                os << "inf";
            else
                os << m.value;
            os << ',' << m.uncertainty << ',';
            os << (i < r.verdicts.size() ? csv_field(r.verdicts[i].status) : std::string());
            os << '\n';
        }
    }
    return os.str();
}

} // namespace fracgeo
