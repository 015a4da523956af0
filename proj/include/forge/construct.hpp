#pragma once

// Sphere-and-telescope construction of complexes with prescribed
// codimension-1 torsion.
//
// Marks are stored as sorted vertex tuples. With the orientation induced by
// the global vertex order, the sorted tuple of an induced simplex boundary is
// always a coherent ordering, so order-preserving gluing is just "i-th vertex
// to i-th vertex".

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forge/complex.hpp"
#include "forge/errors.hpp"
#include "forge/smith.hpp"

namespace forge {

struct BinaryExpansion {
    std::vector<std::size_t> exponents;  // n_1 < ... < n_k
    mpz_class m;

    std::size_t k() const { return exponents.size(); }
};

inline BinaryExpansion binary_expansion(const mpz_class& m) {
    if (m <= 0) throw InputError("binary_expansion: m must be positive");
    BinaryExpansion b;
    b.m = m;
    const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i)
        if (mpz_tstbit(m.get_mpz_t(), i)) b.exponents.push_back(i);
    return b;
}

struct MarkedComplex {
    SimplicialComplex complex;
    std::vector<Simplex> marks;  // each sorted, d+1 vertices
};

/// Throws unless every mark spans an induced d-simplex boundary (or, with
/// `filled`, a d-face) and the marks are pairwise vertex-disjoint; with
/// `nonadjacent` no edge may join two different marks.
inline void validate_marks(const MarkedComplex& mc, bool filled = false, bool nonadjacent = false) {
    const auto& x = mc.complex;
    std::map<Vertex, std::size_t> owner;
    for (std::size_t i = 0; i < mc.marks.size(); ++i) {
        const auto& z = mc.marks[i];
        if (z.size() < 2 || !std::is_sorted(z.begin(), z.end()) || std::adjacent_find(z.begin(), z.end()) != z.end())
            throw StructureError("mark " + std::to_string(i) + " is not a strictly increasing tuple");
        for (Vertex v : z)
            if (!owner.emplace(v, i).second) throw StructureError("marks are not vertex-disjoint");
        for (std::size_t skip = 0; skip < z.size(); ++skip) {
            Simplex ridge;
            for (std::size_t k = 0; k < z.size(); ++k)
                if (k != skip) ridge.push_back(z[k]);
            if (!x.contains(ridge)) throw StructureError("mark " + std::to_string(i) + " is missing a boundary face");
        }
        if (x.contains(z) != filled)
            throw StructureError("mark " + std::to_string(i) + (filled ? " is not a face" : " is filled"));
    }
    if (nonadjacent)
        for (const auto& e : x.faces(1)) {
            auto a = owner.find(e[0]), b = owner.find(e[1]);
            if (a != owner.end() && b != owner.end() && a->second != b->second)
                throw StructureError("marks are adjacent");
        }
}

/// The (d-1)-cycle of the simplex boundary z (sorted), as a vector over faces(d-1).
inline std::vector<mpz_class> boundary_cycle(const SimplicialComplex& x, const Simplex& z) {
    const int d = simplex_dimension(z);
    std::vector<mpz_class> c(x.num_faces(d - 1), 0);
    for (std::size_t skip = 0; skip < z.size(); ++skip) {
        Simplex ridge;
        for (std::size_t k = 0; k < z.size(); ++k)
            if (k != skip) ridge.push_back(z[k]);
        auto idx = x.index_of(ridge);
        if (!idx) throw StructureError("boundary_cycle: ridge missing from complex");
        c[*idx] += (skip % 2 == 0) ? 1 : -1;
    }
    return c;
}

/// a * cycle(za) + b * cycle(zb)
inline std::vector<mpz_class> cycle_combination(const SimplicialComplex& x, long a, const Simplex& za, long b,
                                                const Simplex& zb) {
    auto c = boundary_cycle(x, za);
    const auto e = boundary_cycle(x, zb);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a * c[i] + b * e[i];
    return c;
}

/// True iff the d-chain z satisfies boundary(z) = rhs.
inline bool check_chain(const SimplicialComplex& x, int d, std::span<const mpz_class> z, std::span<const mpz_class> rhs) {
    if (d < 1 || d > x.dimension()) return false;
    return boundary_matrix(x, d).apply(z) == std::vector<mpz_class>(rhs.begin(), rhs.end());
}

/// An integer d-chain with boundary rhs, if any.
inline std::optional<std::vector<mpz_class>> find_chain(const SimplicialComplex& x, int d, std::span<const mpz_class> rhs) {
    return solve_integer(boundary_matrix(x, d), rhs);
}

// P(2) with labels 0..5
inline const std::vector<Simplex>& building_block_2_facets() {
    static const std::vector<Simplex> f = {{0, 1, 5}, {0, 2, 5}, {2, 4, 5}, {1, 3, 5}, {1, 2, 3},
                                           {0, 2, 3}, {0, 3, 4}, {0, 1, 4}, {1, 2, 4}};
    return f;
}

/// P(d) with marks (A, B); H_{d-1} is generated by the two mark cycles with 2a = b.
inline MarkedComplex building_block(int d) {
    if (d < 2) throw InputError("building_block: d must be at least 2");
    MarkedComplex p{build_complex(std::span<const Simplex>(building_block_2_facets()), 6), {{0, 1, 2}, {3, 4, 5}}};
    for (int dim = 2; dim < d; ++dim) {
        const SimplicialComplex s = suspension(p.complex);
        std::vector<Simplex> facets = s.facets();
        Simplex a{0}, b{1};
        for (Vertex v : p.marks[0]) a.push_back(v + 2);
        for (Vertex v : p.marks[1]) b.push_back(v + 2);
        facets.push_back(a);
        facets.push_back(b);
        const std::size_t n = s.num_vertices();
        // Swap the labels of the two smallest B vertices; this fixes the sign
        // of the relation so that it stays 2a = b.
        std::vector<Vertex> perm(n);
        for (Vertex v = 0; v < n; ++v) perm[v] = v;
        std::swap(perm[b[1]], perm[b[2]]);
        std::vector<Simplex> relabeled;
        for (const auto& f : facets) {
            Simplex g;
            for (Vertex v : f) g.push_back(perm[v]);
            std::sort(g.begin(), g.end());
            relabeled.push_back(std::move(g));
        }
        Simplex new_a{1}, new_b{0};
        for (Vertex v : p.marks[0]) new_a.push_back(perm[v + 2]);
        for (Vertex v : p.marks[1]) new_b.push_back(perm[v + 2]);
        std::sort(new_a.begin(), new_a.end());
        std::sort(new_b.begin(), new_b.end());
        p.complex = build_complex(std::span<const Simplex>(relabeled), n);
        p.marks = {new_a, new_b};
    }
    return p;
}

/// Y_1: n copies of P(d), the A mark of each glued onto the B mark of the
/// previous one. Marks Z_0 .. Z_n with 2 Z_i = Z_{i+1} in H_{d-1}.
inline MarkedComplex telescope(int d, std::size_t n) {
    if (d < 2) throw InputError("telescope: d must be at least 2");
    if (n == 0) {
        Simplex z(static_cast<std::size_t>(d) + 1);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = static_cast<Vertex>(i);
        std::vector<Simplex> facets;
        for (std::size_t skip = 0; skip < z.size(); ++skip) {
            Simplex r;
            for (std::size_t k = 0; k < z.size(); ++k)
                if (k != skip) r.push_back(z[k]);
            facets.push_back(std::move(r));
        }
        return {build_complex(std::span<const Simplex>(facets), z.size()), {z}};
    }
    // Labels as iterated attach would give them: copy i keeps its A mark on
    // the previous B mark and numbers its other vertices consecutively.
    const MarkedComplex p = building_block(d);
    const std::size_t np = p.complex.num_vertices();
    const auto& p_facets = p.complex.facets();
    std::vector<Simplex> facets(p_facets.begin(), p_facets.end());
    MarkedComplex y;
    y.marks = p.marks;
    std::vector<Vertex> labels(np);
    Vertex next = static_cast<Vertex>(np);
    for (std::size_t i = 1; i < n; ++i) {
        const Simplex& prev_b = y.marks.back();
        for (Vertex v = 0; v < np; ++v) {
            const auto it = std::find(p.marks[0].begin(), p.marks[0].end(), v);
            labels[v] = it != p.marks[0].end() ? prev_b[static_cast<std::size_t>(it - p.marks[0].begin())] : next++;
        }
        for (const auto& f : p_facets) {
            Simplex g;
            for (Vertex v : f) g.push_back(labels[v]);
            std::sort(g.begin(), g.end());
            facets.push_back(std::move(g));
        }
        Simplex zb;
        for (Vertex v : p.marks[1]) zb.push_back(labels[v]);
        std::sort(zb.begin(), zb.end());
        y.marks.push_back(std::move(zb));
    }
    y.complex = build_complex(std::span<const Simplex>(facets), next);
    return y;
}

namespace detail {

// Stellar subdivision of the top face f with new vertex w.
inline void zero_move(std::set<Simplex>& top, const Simplex& f, Vertex w) {
    if (top.erase(f) != 1) throw StructureError("zero_move: face not present");
    for (std::size_t skip = 0; skip < f.size(); ++skip) {
        Simplex g;
        for (std::size_t k = 0; k < f.size(); ++k)
            if (k != skip) g.push_back(f[k]);
        g.push_back(w);
        std::sort(g.begin(), g.end());
        top.insert(std::move(g));
    }
}

}  // namespace detail

/// Triangulated d-sphere with k vertex-disjoint, pairwise nonadjacent marked
/// d-faces (kept filled). |V| = (d^2+d+1)k + (d+2)^2.
inline MarkedComplex sphere_with_slots(int d, std::size_t k) {
    if (d < 1) throw InputError("sphere_with_slots: d must be at least 1");
    if (k < 1) throw InputError("sphere_with_slots: k must be at least 1");
    const auto ud = static_cast<Vertex>(d);
    std::set<Simplex> top;
    for (Vertex skip = 0; skip <= ud + 1; ++skip) {
        Simplex f;
        for (Vertex v = 0; v <= ud + 1; ++v)
            if (v != skip) f.push_back(v);
        top.insert(std::move(f));
    }
    Vertex next = ud + 2;
    for (std::size_t i = 0; i < k; ++i) {
        Simplex f;
        for (Vertex v = static_cast<Vertex>(i) + 1; v <= static_cast<Vertex>(i) + ud + 1; ++v) f.push_back(v);
        detail::zero_move(top, f, next++);
    }
    const std::vector<Simplex> base(top.begin(), top.end());
    std::vector<Simplex> fresh;
    for (const auto& u : base) {
        // [u0..ud] -> [u1..ud,w0] -> [u2..ud,w0,w1] -> ... -> [w0..wd]
        Simplex cur = u;
        for (int step = 0; step <= d; ++step) {
            const Vertex w = next++;
            detail::zero_move(top, cur, w);
            cur.erase(cur.begin());
            cur.push_back(w);
        }
        fresh.push_back(cur);
    }
    MarkedComplex t;
    const std::vector<Simplex> facets(top.begin(), top.end());
    t.complex = build_complex(std::span<const Simplex>(facets), next);
    t.marks.assign(fresh.begin(), fresh.begin() + static_cast<std::ptrdiff_t>(k));
    return t;
}

/// A +-1 coefficient on every d-face (d = dim T) with zero boundary, for a
/// closed orientable pseudomanifold T.
inline std::vector<int> top_cycle(const SimplicialComplex& t) {
    const int d = t.dimension();
    if (d < 1) throw StructureError("top_cycle: dimension must be at least 1");
    const auto& faces = t.faces(d);
    // ridge index -> (face, sign of ridge in face)
    std::vector<std::vector<std::pair<std::size_t, int>>> cof(t.num_faces(d - 1));
    Simplex ridge;
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (std::size_t skip = 0; skip < faces[f].size(); ++skip) {
            ridge.clear();
            for (std::size_t k = 0; k < faces[f].size(); ++k)
                if (k != skip) ridge.push_back(faces[f][k]);
            cof[*t.index_of(ridge)].emplace_back(f, skip % 2 == 0 ? 1 : -1);
        }
    for (const auto& c : cof)
        if (c.size() != 2) throw StructureError("top_cycle: a ridge does not lie in exactly two facets");
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ridges_of(faces.size());  // (ridge, slot)
    for (std::size_t r = 0; r < cof.size(); ++r)
        for (std::size_t s = 0; s < 2; ++s) ridges_of[cof[r][s].first].emplace_back(r, s);
    std::vector<int> x(faces.size(), 0);
    for (std::size_t start = 0; start < faces.size(); ++start) {
        if (x[start] != 0) continue;
        x[start] = 1;
        std::queue<std::size_t> q;
        q.push(start);
        while (!q.empty()) {
            const std::size_t f = q.front();
            q.pop();
            for (auto [r, s] : ridges_of[f]) {
                const auto [g, sg] = cof[r][1 - s];
                const int want = -x[f] * cof[r][s].second * sg;
                if (x[g] == 0) {
                    x[g] = want;
                    q.push(g);
                } else if (x[g] != want) {
                    throw StructureError("top_cycle: complex is not orientable");
                }
            }
        }
    }
    return x;
}

struct PuncturedSphere {
    MarkedComplex marked;
    /// d-chain with boundary equal to the sum of the mark cycles.
    std::vector<mpz_class> certificate;
};

/// Y_2: a d-sphere with k marked faces removed, H_{d-1} = <t_1..t_k | sum t_i = 0>.
inline PuncturedSphere punctured_sphere_detailed(int d, std::size_t k) {
    if (d < 2) throw InputError("punctured_sphere: d must be at least 2");
    if (k < 1) throw InputError("punctured_sphere: k must be at least 1");
    const MarkedComplex t = sphere_with_slots(d, 2 * k);
    std::vector<int> x = top_cycle(t.complex);
    std::vector<std::size_t> special;
    for (const auto& z : t.marks) special.push_back(*t.complex.index_of(z));
    std::size_t negatives = 0;
    for (std::size_t s : special) negatives += x[s] == -1;
    if (negatives < k)
        for (int& c : x) c = -c;
    std::set<std::size_t> removed;
    std::vector<Simplex> marks;
    for (std::size_t i = 0; i < special.size() && marks.size() < k; ++i)
        if (x[special[i]] == -1) {
            removed.insert(special[i]);
            marks.push_back(t.marks[i]);
        }
    std::vector<Simplex> facets;
    const auto& top = t.complex.faces(d);
    for (std::size_t f = 0; f < top.size(); ++f)
        if (!removed.contains(f)) facets.push_back(top[f]);
    PuncturedSphere out;
    out.marked.complex = build_complex(std::span<const Simplex>(facets), t.complex.num_vertices());
    out.marked.marks = std::move(marks);
    const auto& kept = out.marked.complex.faces(d);
    out.certificate.assign(kept.size(), 0);
    for (std::size_t f = 0; f < top.size(); ++f)
        if (!removed.contains(f)) out.certificate[*out.marked.complex.index_of(top[f])] = x[f];
    return out;
}

inline MarkedComplex punctured_sphere(int d, std::size_t k) { return punctured_sphere_detailed(d, k).marked; }

/// H_{d-1}(X) has torsion Z/m (and, for d = 2, free rank k - 1).
/// X with the telescope marks Z_0..Z_n kept as marks; their labels survive the gluing.
inline MarkedComplex assemble_cyclic_marked(int d, const mpz_class& m) {
    if (d < 2) throw InputError("assemble_cyclic: d must be at least 2");
    if (m < 2) throw InputError("assemble_cyclic: m must be at least 2");
    const BinaryExpansion be = binary_expansion(m);
    MarkedComplex y1 = telescope(d, be.exponents.back());
    const MarkedComplex y2 = punctured_sphere(d, be.k());
    std::vector<Simplex> targets;
    for (std::size_t e : be.exponents) targets.push_back(y1.marks[e]);
    return {attach(y1.complex, y2.complex, GluingMap::along_boundaries(y2.marks, targets)), std::move(y1.marks)};
}

inline SimplicialComplex assemble_cyclic(int d, const mpz_class& m) { return assemble_cyclic_marked(d, m).complex; }

inline SimplicialComplex assemble_cyclic(int d, long m) { return assemble_cyclic(d, mpz_class(m)); }

/// Disjoint union of assemble_cyclic over the orders; torsion is their direct sum.
inline MarkedComplex realize_group_marked(int d, std::span<const mpz_class> orders) {
    if (d < 2) throw InputError("realize_group: d must be at least 2");
    std::vector<SimplicialComplex> parts;
    std::vector<Simplex> marks;
    std::size_t offset = 0;
    for (const auto& m : orders) {
        if (m < 2) throw InputError("realize_group: cyclic order must be at least 2");
        auto part = assemble_cyclic_marked(d, m);
        for (auto z : part.marks) {
            for (Vertex& v : z) v = static_cast<Vertex>(v + offset);
            marks.push_back(std::move(z));
        }
        offset += part.complex.num_vertices();
        parts.push_back(std::move(part.complex));
    }
    return {disjoint_union(std::span<const SimplicialComplex>(parts)), std::move(marks)};
}

inline SimplicialComplex realize_group(int d, std::span<const mpz_class> orders) {
    return realize_group_marked(d, orders).complex;
}

inline SimplicialComplex realize_group(int d, std::initializer_list<long> orders) {
    std::vector<mpz_class> v(orders.begin(), orders.end());
    return realize_group(d, std::span<const mpz_class>(v));
}

struct ConstructionConstants {
    int d = 0;
    std::size_t delta_P = 0;
    std::size_t num_vertices_P = 0;
    std::size_t L = 0;
    std::size_t K = 0;
    double C_d = 0;  // report only
};

inline ConstructionConstants constants(int d) {
    if (d < 2) throw InputError("constants: d must be at least 2");
    const MarkedComplex p = building_block(d);
    ConstructionConstants c;
    c.d = d;
    c.delta_P = degree_profile(p.complex).delta_max;
    c.num_vertices_P = p.complex.num_vertices();
    const auto ud = static_cast<std::size_t>(d);
    c.L = std::max((ud + 1) * (ud * ud + ud + 2) * (ud + 1), ud * ud + ud + 1 + (ud + 2) * (ud + 2));
    c.K = std::max(2 * c.delta_P + c.L + 1, 2 * c.num_vertices_P + 4 * c.L);
    const double k = static_cast<double>(c.K);
    const double dd = static_cast<double>(d);
    c.C_d = 18.0 * std::pow(k, 8.0 + 1.0 / dd) * std::pow(dd, 6.0) / std::pow(std::log(2.0), 1.0 / dd);
    return c;
}

}  // namespace forge
