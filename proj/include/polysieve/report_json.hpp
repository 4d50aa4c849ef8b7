#pragma once

#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <string>

#include <json.hpp>

#include "polysieve/exponent_bound.hpp"
#include "polysieve/local_density.hpp"
#include "polysieve/reference_tables.hpp"
#include "polysieve/weighted_sieve.hpp"

// JSON/CSV emission for the front end. All reports carry "schema": 1; the
// timestamp is optional so output can be byte-identical across runs.

namespace polysieve {

using json = nlohmann::ordered_json;

inline std::string iso8601_utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline double round6(double v) { return std::round(v * 1e6) / 1e6; }

inline json histogram_json(const std::map<int, uint64_t>& h) {
    json rows = json::array();
    for (const auto& [omega, count] : h) {
        rows.push_back(json::array({omega, count}));
    }
    return rows;
}

inline json weight_report_json(const WeightAnalysis& an,
                               const SieveSequence& A, bool admissible,
                               bool with_timestamp) {
    json j;
    j["schema"] = 1;
    if (with_timestamp) j["generated_at"] = iso8601_utc_now();
    j["poly"] = A.f.coeff_string();
    j["poly_display"] = A.f.to_string();
    j["x"] = A.x;
    j["N"] = to_string(A.N);  // decimal string: may exceed 64 bits
    j["admissible"] = admissible;
    const WeightReport& r = an.report;
    j["r"] = r.r;
    j["alpha"] = r.alpha;
    j["beta"] = r.beta;
    j["z"] = r.z;
    j["y"] = r.y;
    j["eta"] = r.eta;
    j["W"] = r.W;
    j["X"] = r.X;
    j["survivors"] = r.survivors;
    j["positive_weight"] = r.positive_weight;
    j["square_hit"] = r.square_hit;
    j["Pr_violations"] = r.Pr_violations;
    j["log_N"] = r.log_N;
    j["histogram"] = histogram_json(an.histogram);
    return j;
}

// Per-element table; weight left blank for elements sifted out by P(z).
inline std::string weight_elements_csv(const WeightAnalysis& an) {
    std::string out = "p,value,omega,weight\n";
    char buf[40];
    for (const auto& e : an.elements) {
        out += std::to_string(e.p);
        out += ',';
        out += to_string(e.value);
        out += ',';
        out += std::to_string(e.omega);
        out += ',';
        if (e.survivor) {
            std::snprintf(buf, sizeof buf, "%.12g", e.weight);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

inline json constants_json(const ExponentConstants& C) {
    json j;
    j["delta0"] = round6(C.delta0_star);
    j["f1_at_6"] = round6(C.f1_at_6);
    j["M1"] = round6(C.M1);
    j["M2"] = round6(C.M2);
    j["M3"] = round6(C.M3);
    j["M4"] = round6(C.M4);
    j["c1"] = round6(C.c1);
    j["c2"] = round6(C.c2);
    j["c"] = round6(C.c);
    return j;
}

inline json optimize_json(const PerDegreeResult& row) {
    json j;
    j["k"] = row.k;
    j["delta0"] = round6(row.delta0);
    j["beta0"] = round6(row.beta0);
    j["branch"] = to_string(row.branch);
    j["r_real"] = round6(row.r_real);
    j["r_int"] = row.r_int;
    for (const auto& ref : reference::integer_rows) {
        if (ref.k == row.k) {
            j["r_int_previous"] = ref.r_int_previous;
            break;
        }
    }
    return j;
}

inline json admissible_json(const IntPolynomial& f, const Admissibility& adm,
                            bool with_timestamp) {
    json j;
    j["schema"] = 1;
    if (with_timestamp) j["generated_at"] = iso8601_utc_now();
    j["poly"] = f.coeff_string();
    j["poly_display"] = f.to_string();
    j["admissible"] = adm.admissible;
    if (!adm.admissible) j["witness"] = adm.witness;
    return j;
}

}  // namespace polysieve
