#pragma once

// Vertex colorings whose pattern complex keeps the codimension-1 torsion.
// A coloring qualifies when it is proper on the 1-skeleton and no two
// (d-1)-faces share a pattern (multiset of colors).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "forge/complex.hpp"
#include "forge/errors.hpp"
#include "forge/group.hpp"
#include "forge/homology.hpp"

namespace forge {

struct Coloring {
    std::vector<std::uint32_t> colors;  // vertex -> color, dense from 0
    std::size_t num_colors = 0;
};

enum class Method { greedy, lll };

inline std::string to_string(Method m) { return m == Method::greedy ? "greedy" : "lll"; }

inline Method parse_method(const std::string& s) {
    if (s == "greedy") return Method::greedy;
    if (s == "lll") return Method::lll;
    throw InputError("unknown method '" + s + "' (expected greedy or lll)");
}

inline bool is_proper(const SimplicialComplex& x, const Coloring& c) {
    if (c.colors.size() != x.num_vertices()) return false;
    for (const auto& e : x.faces(1))
        if (c.colors[e[0]] == c.colors[e[1]]) return false;
    return true;
}

inline Simplex pattern_of(const Simplex& f, const Coloring& c) {
    Simplex p;
    p.reserve(f.size());
    for (Vertex v : f) p.push_back(c.colors[v]);
    std::sort(p.begin(), p.end());
    return p;
}

/// c proper and all r-faces carry pairwise distinct patterns.
inline bool verify_pattern_coloring(const SimplicialComplex& x, const Coloring& c, int r) {
    if (!is_proper(x, c)) return false;
    std::unordered_set<Simplex, SimplexHash> seen;
    for (const auto& f : x.faces(r))
        if (!seen.insert(pattern_of(f, c)).second) return false;
    return true;
}

/// The complex on colors whose faces are the realized patterns.
inline SimplicialComplex pattern_complex(const SimplicialComplex& x, const Coloring& c) {
    if (c.colors.size() != x.num_vertices()) throw InputError("pattern_complex: coloring size mismatch");
    for (auto col : c.colors)
        if (col >= c.num_colors) throw InputError("pattern_complex: color id out of range");
    if (!is_proper(x, c)) throw InputError("pattern_complex: coloring is not proper");
    return image_complex(x, c.colors, c.num_colors);
}

/// Greedy coloring in decreasing degree order. Every (d-1)-face keeps a key
/// (its uncolored vertices, the multiset of colors of the rest); keys stay
/// pairwise distinct, so a color never used before is always admissible and
/// the finished coloring has distinct patterns.
inline Coloring greedy_coloring(const SimplicialComplex& x) {
    const std::size_t n = x.num_vertices();
    const int r = x.dimension() - 1;
    constexpr std::uint32_t kUncolored = UINT32_MAX;
    const auto adj = adjacency(x);
    const std::vector<Simplex> empty;
    const auto& ridges = r >= 0 ? x.faces(r) : empty;
    std::vector<std::vector<std::uint32_t>> incident(n);
    for (std::size_t f = 0; f < ridges.size(); ++f)
        for (Vertex v : ridges[f]) incident[v].push_back(static_cast<std::uint32_t>(f));

    std::vector<std::uint32_t> color(n, kUncolored);
    // key layout: uncolored vertices, separator, sorted colors
    auto key_of = [&](const Simplex& f, Vertex v, std::uint32_t cv) {
        std::vector<std::uint32_t> key, cols;
        for (Vertex u : f) {
            const std::uint32_t cu = (u == v) ? cv : color[u];
            if (cu == kUncolored)
                key.push_back(u);
            else
                cols.push_back(cu);
        }
        std::sort(cols.begin(), cols.end());
        key.push_back(kUncolored);
        key.insert(key.end(), cols.begin(), cols.end());
        return key;
    };
    std::unordered_set<std::vector<std::uint32_t>, SimplexHash> keys;
    for (const auto& f : ridges) keys.insert(key_of(f, kUncolored, kUncolored));

    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return adj[a].size() > adj[b].size(); });

    std::uint32_t used = 0;
    std::vector<std::vector<std::uint32_t>> fresh_keys;
    for (Vertex v : order) {
        std::vector<char> blocked(used + 1, 0);
        for (Vertex u : adj[v])
            if (color[u] != kUncolored) blocked[color[u]] = 1;
        for (std::uint32_t c = 0; c <= used; ++c) {
            if (blocked[c]) continue;
            fresh_keys.clear();
            bool ok = true;
            for (auto f : incident[v]) {
                fresh_keys.push_back(key_of(ridges[f], v, c));
                if (keys.contains(fresh_keys.back())) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (auto f : incident[v]) keys.erase(key_of(ridges[f], kUncolored, kUncolored));
            for (auto& k : fresh_keys) keys.insert(std::move(k));
            color[v] = c;
            if (c == used) ++used;
            break;
        }
        if (color[v] == kUncolored) throw VerificationError("greedy_coloring: no admissible color (internal error)");
    }
    Coloring out;
    out.colors = std::move(color);
    out.num_colors = used;
    if (!verify_pattern_coloring(x, out, r)) throw VerificationError("greedy_coloring: produced an invalid coloring");
    return out;
}

/// Smallest integer s with s^d >= n.
inline mpz_class ceil_root(const mpz_class& n, unsigned d) {
    mpz_class s;
    mpz_root(s.get_mpz_t(), n.get_mpz_t(), d);
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), s.get_mpz_t(), d);
    if (p < n) ++s;
    return s;
}

inline mpz_class ipow(const mpz_class& b, unsigned e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

struct LLLPalette {
    mpz_class c1;  // K
    mpz_class c2;  // 3 d^5 K^5
    mpz_class c3;  // 6 K^2 d ceil(n^(1/d))
    mpz_class product() const { return c1 * c2 * c3; }
};

inline LLLPalette lll_palette(int d, std::size_t k, std::size_t n) {
    const mpz_class dd = d, kk = static_cast<unsigned long>(k);
    LLLPalette p;
    p.c1 = kk;
    p.c2 = 3 * ipow(dd, 5) * ipow(kk, 5);
    p.c3 = 6 * kk * kk * dd * ceil_root(std::max<mpz_class>(mpz_class(static_cast<unsigned long>(n)), 1), static_cast<unsigned>(d));
    return p;
}

/// 18 K^8 d^6 ceil(n^(1/d)); equals lll_palette(d, K, n).product().
inline mpz_class lll_color_bound(int d, std::size_t k, std::size_t n) { return lll_palette(d, k, n).product(); }

// e < 271828182846 / 10^11
inline const mpz_class& e_upper_num() {
    static const mpz_class v("271828182846");
    return v;
}
inline const mpz_class& e_upper_den() {
    static const mpz_class v("100000000000");
    return v;
}

/// e * dK/(3d^5K^5) * (d^4K^4 + 1) <= 1, checked with a rational upper bound for e.
inline bool lll_intersecting_feasible(int d, std::size_t k) {
    const mpz_class dd = d, kk = static_cast<unsigned long>(k);
    const mpz_class lhs = e_upper_num() * dd * kk * (ipow(dd, 4) * ipow(kk, 4) + 1);
    const mpz_class rhs = 3 * ipow(dd, 5) * ipow(kk, 5) * e_upper_den();
    return lhs <= rhs;
}

/// e * (2K^2 n + 1) / (6^d K^(2d) n) <= 1.
inline bool lll_disjoint_feasible(int d, std::size_t k, std::size_t n) {
    const mpz_class dd = d, kk = static_cast<unsigned long>(k), nn = static_cast<unsigned long>(n);
    const auto ud = static_cast<unsigned>(d);
    const mpz_class lhs = e_upper_num() * (2 * kk * kk * nn + 1);
    const mpz_class rhs = e_upper_den() * ipow(6, ud) * ipow(kk, 2 * ud) * nn;
    return lhs <= rhs;
}

struct LLLStats {
    std::size_t resamples_stage2 = 0;
    std::size_t resamples_stage3 = 0;
};

/// Three-stage coloring c = (c1, c2, c3): c1 proper with at most K colors,
/// c2 separates intersecting (d-1)-faces, c3 separates disjoint ones. Stages 2
/// and 3 resample the vertices of every colliding pair until none is left.
///
/// This entry point takes explicit palette sizes; pal.c1 must be at least
/// max degree + 1. Without the local lemma guarantee the cap may be hit.
inline Coloring lll_coloring_with_palette(const SimplicialComplex& x, const LLLPalette& pal, std::uint64_t seed,
                                          std::size_t max_rounds = 1000000, LLLStats* stats = nullptr) {
    const int d = x.dimension();
    if (d < 1) throw InputError("lll_coloring: dimension must be at least 1");
    const std::size_t n = x.num_vertices();
    const auto adj = adjacency(x);
    std::size_t max_deg = 0;
    for (const auto& a : adj) max_deg = std::max(max_deg, a.size());
    if (pal.c1 < static_cast<unsigned long>(max_deg + 1) || pal.c2 < 1 || pal.c3 < 1)
        throw InputError("lll_coloring: palette too small");

    std::vector<std::uint32_t> c1(n, UINT32_MAX);
    for (Vertex v = 0; v < n; ++v) {
        std::vector<char> blocked(adj[v].size() + 1, 0);
        for (Vertex u : adj[v])
            if (c1[u] != UINT32_MAX && c1[u] < blocked.size()) blocked[c1[u]] = 1;
        std::uint32_t c = 0;
        while (blocked[c]) ++c;
        c1[v] = c;
    }

    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(mpz_class(static_cast<unsigned long>(seed)));
    const auto& ridges = x.faces(d - 1);

    auto run_stage = [&](const mpz_class& palette, bool intersecting, std::size_t& count) {
        std::vector<mpz_class> col(n);
        for (auto& c : col) c = rng.get_z_range(palette);
        std::size_t resamples = 0;
        for (;;) {
            std::map<std::vector<mpz_class>, std::vector<std::size_t>> groups;
            for (std::size_t f = 0; f < ridges.size(); ++f) {
                std::vector<mpz_class> p;
                for (Vertex v : ridges[f]) p.push_back(col[v]);
                std::sort(p.begin(), p.end());
                groups[std::move(p)].push_back(f);
            }
            std::vector<char> hit(n, 0);
            bool bad = false;
            for (const auto& [pat, fs] : groups) {
                for (std::size_t i = 0; i < fs.size(); ++i)
                    for (std::size_t j = i + 1; j < fs.size(); ++j) {
                        const auto& a = ridges[fs[i]];
                        const auto& b = ridges[fs[j]];
                        const bool meet = std::find_first_of(a.begin(), a.end(), b.begin(), b.end()) != a.end();
                        if (meet != intersecting) continue;
                        bad = true;
                        if (++resamples > max_rounds)
                            throw ResamplingCapExceeded("lll_coloring: resampling cap of " + std::to_string(max_rounds) +
                                                        " exceeded");
                        for (Vertex v : a) hit[v] = 1;
                        for (Vertex v : b) hit[v] = 1;
                    }
            }
            if (!bad) break;
            for (Vertex v = 0; v < n; ++v)
                if (hit[v]) col[v] = rng.get_z_range(palette);
        }
        count = resamples;
        return col;
    };
    LLLStats st;
    const auto c2 = run_stage(pal.c2, true, st.resamples_stage2);
    const auto c3 = run_stage(pal.c3, false, st.resamples_stage3);
    if (stats) *stats = st;

    std::map<std::tuple<std::uint32_t, mpz_class, mpz_class>, std::uint32_t> ids;
    Coloring out;
    for (Vertex v = 0; v < n; ++v) {
        auto [it, fresh] = ids.emplace(std::make_tuple(c1[v], c2[v], c3[v]), static_cast<std::uint32_t>(ids.size()));
        out.colors.push_back(it->second);
    }
    out.num_colors = ids.size();
    if (!verify_pattern_coloring(x, out, d - 1)) throw VerificationError("lll_coloring: produced an invalid coloring");
    return out;
}

inline Coloring lll_coloring(const SimplicialComplex& x, std::size_t k, std::uint64_t seed,
                             std::size_t max_rounds = 1000000, LLLStats* stats = nullptr) {
    const int d = x.dimension();
    if (d < 2) throw InputError("lll_coloring: dimension must be at least 2");
    if (k < 5) throw InputError("lll_coloring: K must be at least 5");
    const std::size_t n = x.num_vertices();
    if (degree_profile(x).delta_max > k - 1) throw InputError("lll_coloring: complex degree exceeds K - 1");
    if (!lll_intersecting_feasible(d, k) || !lll_disjoint_feasible(d, k, n))
        throw InputError("lll_coloring: local lemma inequalities fail for these parameters");
    return lll_coloring_with_palette(x, lll_palette(d, k, n), seed, max_rounds, stats);
}

struct ReductionReport {
    std::size_t input_vertices = 0;
    std::size_t output_vertices = 0;
    std::size_t num_colors = 0;
    GroupStructure torsion_before;
    GroupStructure torsion_after;
    GroupStructure top_before;  // H_d
    GroupStructure top_after;
    Method method = Method::greedy;
    std::uint64_t seed = 0;
    std::size_t upper_bound_vertices = 0;
    bool verified = false;  // homology was computed and compared
};

struct ReduceOptions {
    Method method = Method::greedy;
    std::uint64_t seed = 0;
    std::size_t max_rounds = 1000000;
    bool verify_homology = true;
};

struct Reduction {
    SimplicialComplex complex;
    Coloring coloring;
    ReductionReport report;
};

/// Colors X, forms the pattern complex and checks that H_{d-1} torsion and
/// H_d agree before and after. The LLL colorer runs with K = max(5, Delta(X)+1).
inline Reduction reduce(const SimplicialComplex& x, const ReduceOptions& opt = {}) {
    const int d = x.dimension();
    if (d < 2) throw InputError("reduce: dimension must be at least 2");
    Reduction out;
    if (opt.method == Method::greedy) {
        out.coloring = greedy_coloring(x);
    } else {
        const std::size_t k = std::max<std::size_t>(5, degree_profile(x).delta_max + 1);
        out.coloring = lll_coloring(x, k, opt.seed, opt.max_rounds);
    }
    if (!verify_pattern_coloring(x, out.coloring, d - 1)) throw VerificationError("reduce: coloring rejected by verifier");
    out.complex = pattern_complex(x, out.coloring);
    auto& r = out.report;
    r.input_vertices = x.num_vertices();
    r.output_vertices = out.complex.num_vertices();
    r.num_colors = out.coloring.num_colors;
    r.method = opt.method;
    r.seed = opt.seed;
    r.upper_bound_vertices = r.output_vertices;
    if (opt.verify_homology) {
        const auto before = homology_all(x);
        const auto after = homology_all(out.complex);
        r.torsion_before = before[d - 1].torsion_part();
        r.torsion_after = after.size() > static_cast<std::size_t>(d - 1) ? after[d - 1].torsion_part() : GroupStructure{};
        r.top_before = before[d];
        r.top_after = after.size() > static_cast<std::size_t>(d) ? after[d] : GroupStructure{};
        if (!groups_isomorphic(r.torsion_before, r.torsion_after))
            throw VerificationError("reduce: torsion changed from " + r.torsion_before.to_string() + " to " +
                                    r.torsion_after.to_string());
        if (!groups_isomorphic(r.top_before, r.top_after))
            throw VerificationError("reduce: top homology changed from " + r.top_before.to_string() + " to " +
                                    r.top_after.to_string());
        r.verified = true;
    }
    return out;
}

}  // namespace forge
