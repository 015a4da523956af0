#pragma once

// JSON files: complexes, marks sidecars, colorings, reduction reports.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/coloring.hpp"
#include "forge/complex.hpp"
#include "forge/construct.hpp"
#include "forge/errors.hpp"
#include "forge/group.hpp"

namespace forge {

using json = nlohmann::ordered_json;

inline json complex_to_json(const SimplicialComplex& x) {
    json facets = json::array();
    for (const auto& f : x.facets()) facets.push_back(f);
    json j;
    j["num_vertices"] = x.num_vertices();
    j["dimension"] = x.dimension();
    j["facets"] = std::move(facets);
    return j;
}

inline SimplicialComplex complex_from_json(const json& j) {
    if (!j.is_object()) throw InputError("complex file: top level must be an object");
    for (const char* key : {"num_vertices", "dimension", "facets"})
        if (!j.contains(key)) throw InputError(std::string("complex file: missing key '") + key + "'");
    if (!j["num_vertices"].is_number_unsigned()) throw InputError("complex file: num_vertices must be a nonnegative integer");
    if (!j["dimension"].is_number_integer()) throw InputError("complex file: dimension must be an integer");
    if (!j["facets"].is_array()) throw InputError("complex file: facets must be an array");
    const auto n = j["num_vertices"].get<std::size_t>();
    const auto dim = j["dimension"].get<long long>();
    std::vector<Simplex> facets;
    long long max_dim = n > 0 ? 0 : -1;
    for (const auto& f : j["facets"]) {
        if (!f.is_array() || f.empty()) throw InputError("complex file: each facet must be a nonempty array");
        Simplex s;
        for (const auto& v : f) {
            if (!v.is_number_unsigned()) throw InputError("complex file: vertex labels must be nonnegative integers");
            const auto label = v.get<std::size_t>();
            if (label >= n) throw InputError("complex file: vertex label " + std::to_string(label) + " out of range");
            if (!s.empty() && label <= s.back()) throw InputError("complex file: facet is not strictly increasing");
            s.push_back(static_cast<Vertex>(label));
        }
        max_dim = std::max(max_dim, static_cast<long long>(s.size()) - 1);
        facets.push_back(std::move(s));
    }
    if (dim != max_dim)
        throw InputError("complex file: dimension " + std::to_string(dim) + " does not match facets (" +
                         std::to_string(max_dim) + ")");
    return build_complex(std::span<const Simplex>(facets), n);
}

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(what + ": " + e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("write to '" + path + "' failed");
}

inline SimplicialComplex read_complex_file(const std::string& path) {
    return complex_from_json(parse_json_text(read_text_file(path), path));
}

inline void write_complex_file(const std::string& path, const SimplicialComplex& x) {
    write_text_file(path, complex_to_json(x).dump() + "\n");
}

inline json constants_to_json(const ConstructionConstants& c) {
    json j;
    j["d"] = c.d;
    j["delta_P"] = c.delta_P;
    j["num_vertices_P"] = c.num_vertices_P;
    j["L"] = c.L;
    j["K"] = c.K;
    j["C_d"] = c.C_d;
    return j;
}

inline json marks_to_json(const std::vector<Simplex>& marks, const ConstructionConstants& c) {
    json m = json::array();
    for (const auto& z : marks) m.push_back(z);
    json j;
    j["marks"] = std::move(m);
    j["constants"] = constants_to_json(c);
    return j;
}

inline json coloring_to_json(const Coloring& c) {
    json j;
    j["colors"] = c.colors;
    j["num_colors"] = c.num_colors;
    return j;
}

inline Coloring coloring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("colors") || !j.contains("num_colors") || !j["colors"].is_array() ||
        !j["num_colors"].is_number_unsigned())
        throw InputError("coloring file: expected {\"colors\": [...], \"num_colors\": n}");
    Coloring c;
    for (const auto& v : j["colors"]) {
        if (!v.is_number_unsigned()) throw InputError("coloring file: colors must be nonnegative integers");
        c.colors.push_back(v.get<std::uint32_t>());
    }
    c.num_colors = j["num_colors"].get<std::size_t>();
    return c;
}

/// Big invariant factors are written as decimal strings.
inline json group_to_json(const GroupStructure& g) {
    json f = json::array();
    for (const auto& d : g.invariant_factors()) f.push_back(d.get_str());
    json j;
    j["free_rank"] = g.free_rank();
    j["invariant_factors"] = std::move(f);
    j["text"] = g.to_string();
    return j;
}

inline json report_to_json(const ReductionReport& r) {
    json j;
    j["input_vertices"] = r.input_vertices;
    j["output_vertices"] = r.output_vertices;
    j["num_colors"] = r.num_colors;
    j["method"] = to_string(r.method);
    j["seed"] = r.seed;
    j["upper_bound_vertices"] = r.upper_bound_vertices;
    j["homology"] = r.verified ? "verified" : "unverified";
    if (r.verified) {
        j["torsion_before"] = group_to_json(r.torsion_before);
        j["torsion_after"] = group_to_json(r.torsion_after);
        j["top_homology_before"] = group_to_json(r.top_before);
        j["top_homology_after"] = group_to_json(r.top_after);
    }
    return j;
}

}  // namespace forge
