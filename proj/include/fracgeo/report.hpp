#ifndef FRACGEO_REPORT_HPP
#define FRACGEO_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "fracgeo/params.hpp"

namespace fracgeo {

struct TermValue {
    std::string name;
    double value = 0.0;
    bool infinite = false;
    double uncertainty = 0.0;
    std::string refinement;   // how the value was obtained, e.g. "richardson(m=200,400)"
    // Raw per-level values backing the refinement estimate (CSV plot data).
    std::vector<std::pair<std::string, double>> level_values;
};

struct MarginValue {
    std::string name;
    double value = 0.0;       // lhs - rhs; NaN when a side is infinite
    double uncertainty = 0.0; // combined
};

struct Verdict {
    std::string inequality;
    // holds | holds-with-equality | violated-within-uncertainty | vacuous-infinite
    std::string status;
};

struct ChainReport {
    std::string case_id;
    Params params;
    double L = 0.0;
    int m = 0;
    std::vector<TermValue> terms;
    std::vector<MarginValue> margins;
    std::vector<Verdict> verdicts;
    double runtime_seconds = 0.0;

    bool any_violation() const;
    const TermValue* term(const std::string& name) const;
    const Verdict* verdict(const std::string& inequality) const;
};

// JSON with exactly the report schema fields: case, params{n,s,p}, grid{L,m},
// terms[{name,value,infinite,uncertainty,refinement}], margins[], verdicts[],
// runtime_seconds.  Infinite terms serialize value as null.
std::string report_to_json(const ChainReport& report, int indent = 2);
std::string reports_to_json(const std::vector<ChainReport>& reports, int indent = 2);

// Plot data: term value per refinement level, and margin per case.
std::string terms_csv(const std::vector<ChainReport>& reports);
std::string margins_csv(const std::vector<ChainReport>& reports);

} // namespace fracgeo

#endif
