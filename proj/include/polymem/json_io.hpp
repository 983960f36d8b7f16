#ifndef POLYMEM_JSON_IO_HPP
#define POLYMEM_JSON_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polymem/chain.hpp"
#include "polymem/errors.hpp"
#include "polymem/lattice.hpp"
#include "polymem/membership.hpp"
#include "polymem/polytope.hpp"
#include "polymem/sparse_poly.hpp"

namespace polymem {

using Json = nlohmann::json;

inline Json to_json(const Point& p) {
    Json a = Json::array();
    for (auto c : p) a.push_back(c);
    return a;
}

inline Point point_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("point: expected an array of integers");
    Point p;
    for (const auto& c : j) {
        if (!c.is_number_integer()) throw InputError("point: expected integer coordinates");
        p.push_back(c.get<std::int64_t>());
    }
    return p;
}

inline Json to_json(const PointSet& s) {
    Json j;
    j["dim"] = s.dim();
    Json pts = Json::array();
    for (const auto& p : s) pts.push_back(to_json(p));
    j["points"] = pts;
    return j;
}

inline PointSet pointset_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("points"))
        throw InputError("point set: need \"dim\" and \"points\"");
    PointSet s(j.at("dim").get<std::size_t>());
    for (const auto& p : j.at("points")) s.insert(point_from_json(p));
    return s;
}

inline Json to_json(const HPolytope& x) {
    Json j;
    j["dim"] = x.dim();
    Json fs = Json::array();
    for (const auto& f : x.facets()) {
        Json jf;
        jf["normal"] = to_json(f.normal);
        jf["offset"] = rational_to_string(f.offset);
        fs.push_back(jf);
    }
    j["facets"] = fs;
    return j;
}

inline HPolytope polytope_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("facets"))
        throw InputError("polytope: need \"dim\" and \"facets\"");
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<Facet> fs;
    for (const auto& jf : j.at("facets")) {
        if (!jf.contains("normal") || !jf.contains("offset"))
            throw InputError("polytope facet: need \"normal\" and \"offset\"");
        Facet f;
        f.normal = point_from_json(jf.at("normal"));
        f.offset = parse_rational(jf.at("offset").get<std::string>());
        fs.push_back(f);
    }
    return HPolytope(dim, std::move(fs));
}

inline Json to_json(const SparsePoly& f) {
    Json j;
    j["dim"] = f.dim();
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) {
        Json t;
        t["exp"] = to_json(e);
        t["coeff"] = c;
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

inline SparsePoly poly_from_json(const Json& j, const PrimeField& field) {
    if (!j.contains("dim") || !j.contains("terms"))
        throw InputError("polynomial: need \"dim\" and \"terms\"");
    SparsePoly f(j.at("dim").get<std::size_t>(), field);
    for (const auto& t : j.at("terms")) {
        if (!t.contains("exp") || !t.contains("coeff"))
            throw InputError("polynomial term: need \"exp\" and \"coeff\"");
        f.set_coeff(point_from_json(t.at("exp")), field.reduce(t.at("coeff").get<std::int64_t>()));
    }
    return f;
}

inline Json to_json(const MembershipReport& r) {
    Json j;
    j["dimW"] = r.dimW;
    j["dimKer"] = r.dimKer;
    j["dimV"] = r.dimV;
    Json basis = Json::array();
    for (const auto& g : r.basis) basis.push_back(to_json(g));
    j["basis"] = basis;
    j["omega"] = Json{{"rows", r.omega_rows}, {"cols", r.omega_cols}};
    j["primes"] = r.primes;
    j["seeds"] = r.seeds;
    j["translation"] = to_json(r.translation);
    return j;
}

inline Json to_json(const NormalChain& chain) {
    Json j;
    j["base"] = to_json(chain.base);
    j["epsilon0"] = rational_to_string(chain.epsilon0);
    j["descending"] = chain.descending;
    Json terms = Json::array();
    for (const auto& t : chain.terms) terms.push_back(to_json(t));
    j["terms"] = terms;
    Json steps = Json::array();
    for (const auto& s : chain.steps) {
        Json js;
        js["facet"] = s.facet;
        js["tau"] = rational_to_string(s.tau);
        js["t1"] = rational_to_string(s.t1);
        js["t2"] = rational_to_string(s.t2);
        steps.push_back(js);
    }
    j["steps"] = steps;
    return j;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

// Write-then-rename so partially written reports are never observed.
inline void write_json_file(const std::string& path, const Json& j) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp);
        out << j.dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot rename into " + path);
}

}  // namespace polymem

#endif
