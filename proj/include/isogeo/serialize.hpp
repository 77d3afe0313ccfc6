#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "embed.hpp"
#include "regularity.hpp"
#include "secant.hpp"

namespace isogeo {

inline constexpr const char* kPolyMapSchema = "isogeo/1";
inline constexpr const char* kTerraciniSchema = "isogeo/terracini/1";
inline constexpr const char* kStrong2Schema = "isogeo/strong2/1";

// Coefficients travel as exact decimal/fraction strings so the round trip
// is lossless for arbitrary-precision rationals.
inline nlohmann::json poly_map_to_json(const PolyMap& f) {
    nlohmann::json coords = nlohmann::json::array();
    for (size_t i = 0; i < f.coords.size(); ++i) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, c] : f.coords[i].terms()) {
            std::vector<int> exps(m.begin(), m.end());
            exps.resize(f.n_vars, 0);
            terms.push_back({{"exps", exps}, {"coeff", c.str()}});
        }
        coords.push_back({{"index", f.coord_index[i]},
                          {"label", f.labels[i]},
                          {"terms", terms}});
    }
    return {{"schema", kPolyMapSchema},
            {"variety", variety_name(f.variety)},
            {"n", f.n},
            {"vars", f.n_vars},
            {"coords", coords}};
}

inline PolyMap poly_map_from_json(const nlohmann::json& j) {
    if (j.at("schema").get<std::string>() != kPolyMapSchema)
        throw std::invalid_argument("poly_map_from_json: unknown schema");
    PolyMap f;
    f.variety = parse_variety(j.at("variety").get<std::string>());
    f.n = j.at("n").get<int>();
    f.n_vars = j.at("vars").get<int>();
    for (const nlohmann::json& c : j.at("coords")) {
        IndexSet idx = c.at("index").get<std::vector<int>>();
        f.coord_index.push_back(idx);
        f.labels.push_back(c.at("label").get<std::string>());
        MultiPoly<Rational> p = MultiPoly<Rational>::constant(Rational(0), f.n_vars);
        for (const nlohmann::json& t : c.at("terms")) {
            std::vector<int> e = t.at("exps").get<std::vector<int>>();
            Monomial m(e.begin(), e.end());
            p.add_term(m, Rational::from_decimal_string(t.at("coeff").get<std::string>()));
        }
        f.coords.push_back(std::move(p));
    }
    return f;
}

inline std::filesystem::path poly_map_cache_dir() {
    if (const char* dir = std::getenv("ISOGEO_CACHE_DIR")) return std::filesystem::path(dir);
    return std::filesystem::temp_directory_path() / "isogeo-cache";
}

// Builds the chart map for (variety, n), consulting a JSON disk cache;
// any unreadable or stale cache entry is silently rebuilt.
inline PolyMap poly_map_cached(Variety v, int n) {
    auto build = [&]() {
        switch (v) {
            case Variety::GR: return grass_plucker(n);
            case Variety::LG: return lg_plucker(n);
            case Variety::SPIN_PL: return spinor_plucker(n);
            case Variety::SPIN_MIN: return spinor_minimal(n);
        }
        throw std::logic_error("poly_map_cached: bad variety");
    };
    std::filesystem::path dir = poly_map_cache_dir();
    std::filesystem::path file =
        dir / ("polymap-" + std::string(variety_name(v)) + "-" + std::to_string(n) + ".json");
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
        try {
            std::ifstream in(file);
            nlohmann::json j;
            in >> j;
            PolyMap f = poly_map_from_json(j);
            if (f.variety == v && f.n == n) return f;
        } catch (const std::exception&) {
            // fall through to rebuild
        }
    }
    PolyMap f = build();
    std::filesystem::create_directories(dir, ec);
    if (!ec) {
        std::filesystem::path tmp = file;
        tmp += ".tmp";
        std::ofstream out(tmp);
        if (out) {
            out << poly_map_to_json(f).dump();
            out.close();
            std::filesystem::rename(tmp, file, ec);
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Secant-probe reports
// ---------------------------------------------------------------------------

// All fields are plain integers or fixed strings, so dumps of equal
// reports are byte-identical.
inline nlohmann::json terracini_to_json(const TerraciniReport& r) {
    nlohmann::json j;
    j["schema"] = kTerraciniSchema;
    j["variety"] = variety_name(r.variety);
    j["n"] = r.n;
    j["h"] = r.h;
    j["N"] = r.ambient_n;
    j["dimX"] = r.dim_x;
    j["expected"] = r.expected;
    j["rank"] = r.computed_rank_max;
    j["verdict"] = verdict_str(r.verdict);
    j["field"] = r.field;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    return j;
}

inline std::string terracini_csv_header() {
    return "variety,n,h,N,dimX,expected,rank,verdict,field,seed,trials";
}

inline std::string terracini_csv_row(const TerraciniReport& r) {
    std::ostringstream out;
    out << variety_name(r.variety) << ',' << r.n << ',' << r.h << ',' << r.ambient_n << ','
        << r.dim_x << ',' << r.expected << ',' << r.computed_rank_max << ','
        << verdict_str(r.verdict) << ',' << r.field << ',' << r.seed << ',' << r.trials;
    return out.str();
}

inline std::string terracini_csv(const std::vector<TerraciniReport>& rows) {
    std::string out = terracini_csv_header() + "\n";
    for (const TerraciniReport& r : rows) out += terracini_csv_row(r) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Degeneration reports
// ---------------------------------------------------------------------------

inline nlohmann::json strong2_to_json(const Strong2Report& r) {
    nlohmann::json j;
    j["schema"] = kStrong2Schema;
    j["variety"] = variety_name(r.variety);
    j["n"] = r.n;
    j["s1"] = r.s1;
    j["s2"] = r.s2;
    j["family"] = r.family_dim;
    j["limit"] = r.limit_dim;
    j["target"] = r.target_dim;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["field"] = r.field;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["resampled"] = r.resampled;
    return j;
}

inline std::string strong2_csv_header() {
    return "variety,n,s1,s2,family,limit,target,verdict,field,seed,trials,resampled";
}

inline std::string strong2_csv_row(const Strong2Report& r) {
    std::ostringstream out;
    out << variety_name(r.variety) << ',' << r.n << ',' << r.s1 << ',' << r.s2 << ','
        << r.family_dim << ',' << r.limit_dim << ',' << r.target_dim << ','
        << (r.pass ? "pass" : "fail") << ',' << r.field << ',' << r.seed << ',' << r.trials << ','
        << r.resampled;
    return out.str();
}

inline std::string strong2_csv(const std::vector<Strong2Report>& rows) {
    std::string out = strong2_csv_header() + "\n";
    for (const Strong2Report& r : rows) out += strong2_csv_row(r) + "\n";
    return out;
}

}  // namespace isogeo
