#pragma once

// Finite abstract simplicial complexes with the orientation induced by the
// global vertex order: every face is a strictly increasing vertex tuple and
// its orientation is the one given by that tuple.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "forge/errors.hpp"
#include "forge/matrix.hpp"

namespace forge {

using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>;

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept { return boost::hash_range(s.begin(), s.end()); }
};

inline int simplex_dimension(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

/// Immutable after construction. Faces of each dimension are kept in
/// lexicographic order, which fixes the row/column order of boundary matrices.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    std::size_t num_vertices() const { return num_vertices_; }
    int dimension() const { return static_cast<int>(faces_.size()) - 1; }

    const std::vector<Simplex>& faces(int dim) const {
        static const std::vector<Simplex> kEmpty;
        if (dim < 0 || dim > dimension()) return kEmpty;
        return faces_[static_cast<std::size_t>(dim)];
    }

    std::size_t num_faces(int dim) const { return faces(dim).size(); }

    std::size_t total_faces() const {
        std::size_t n = 0;
        for (const auto& f : faces_) n += f.size();
        return n;
    }

    /// Position of `s` in faces(dim s), if present. `s` must be sorted.
    std::optional<std::size_t> index_of(const Simplex& s) const {
        const int dim = simplex_dimension(s);
        if (dim < 0 || dim > dimension()) return std::nullopt;
        const auto& idx = index_[static_cast<std::size_t>(dim)];
        auto it = idx.find(s);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// Maximal faces, by increasing dimension then lexicographically.
    std::vector<Simplex> facets() const {
        std::vector<Simplex> out;
        for (int i = 0; i <= dimension(); ++i) {
            std::vector<char> covered(num_faces(i), 0);
            if (i < dimension()) {
                for (const auto& tau : faces(i + 1)) {
                    Simplex sub(tau.size() - 1);
                    for (std::size_t skip = 0; skip < tau.size(); ++skip) {
                        std::size_t w = 0;
                        for (std::size_t k = 0; k < tau.size(); ++k)
                            if (k != skip) sub[w++] = tau[k];
                        covered[*index_of(sub)] = 1;
                    }
                }
            }
            for (std::size_t k = 0; k < faces(i).size(); ++k)
                if (!covered[k]) out.push_back(faces(i)[k]);
        }
        return out;
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.num_vertices_ == b.num_vertices_ && a.faces_ == b.faces_;
    }

    friend SimplicialComplex build_complex(std::span<const Simplex> facets, std::size_t num_vertices);

  private:
    std::size_t num_vertices_ = 0;
    std::vector<std::vector<Simplex>> faces_;
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
};

/// Downward closure of `facets` on the vertex set {0, ..., num_vertices - 1}.
/// Every vertex is a face, so isolated vertices need not be listed. Tuples may
/// be given in any order; they are sorted here.
inline SimplicialComplex build_complex(std::span<const Simplex> facets, std::size_t num_vertices) {
    std::vector<std::vector<Simplex>> layers(num_vertices > 0 ? 1 : 0);
    for (const auto& raw : facets) {
        if (raw.empty()) continue;
        Simplex s = raw;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InputError("build_complex: repeated vertex inside one face");
        if (s.back() >= num_vertices)
            throw InputError("build_complex: vertex label " + std::to_string(s.back()) + " out of range");
        const std::size_t dim = s.size() - 1;
        if (layers.size() <= dim) layers.resize(dim + 1);
        layers[dim].push_back(std::move(s));
    }
    auto sort_unique = [](std::vector<Simplex>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    // Close downward one codimension at a time.
    for (std::size_t dim = layers.size(); dim-- > 1;) {
        sort_unique(layers[dim]);
        auto& below = layers[dim - 1];
        below.reserve(below.size() + layers[dim].size() * (dim + 1));
        for (const auto& tau : layers[dim])
            for (std::size_t skip = 0; skip <= dim; ++skip) {
                Simplex sub;
                sub.reserve(dim);
                for (std::size_t k = 0; k <= dim; ++k)
                    if (k != skip) sub.push_back(tau[k]);
                below.push_back(std::move(sub));
            }
    }
    if (!layers.empty()) {
        for (Vertex v = 0; v < num_vertices; ++v) layers[0].push_back(Simplex{v});
        sort_unique(layers[0]);
    }

    SimplicialComplex x;
    x.num_vertices_ = num_vertices;
    x.faces_.resize(layers.size());
    x.index_.resize(layers.size());
    for (std::size_t dim = 0; dim < layers.size(); ++dim) {
        auto& out = x.faces_[dim];
        out = std::move(layers[dim]);
        auto& idx = x.index_[dim];
        idx.reserve(out.size());
        for (std::size_t k = 0; k < out.size(); ++k) idx.emplace(out[k], k);
    }
    return x;
}

inline SimplicialComplex build_complex(std::initializer_list<Simplex> facets, std::size_t num_vertices) {
    std::vector<Simplex> v(facets);
    return build_complex(std::span<const Simplex>(v), num_vertices);
}

/// delta(i, j) = max over i-faces of the number of j-faces containing it.
struct DegreeProfile {
    std::map<std::pair<int, int>, std::size_t> delta;
    std::size_t delta_max = 0;

    std::size_t at(int i, int j) const {
        auto it = delta.find({i, j});
        return it == delta.end() ? 0 : it->second;
    }
};

inline DegreeProfile degree_profile(const SimplicialComplex& x) {
    const int dim = x.dimension();
    std::vector<std::vector<std::vector<std::uint32_t>>> counts(static_cast<std::size_t>(std::max(dim, 0)));
    // counts[i][j - i - 1][face] for i < j
    for (int i = 0; i < dim; ++i) {
        counts[i].resize(static_cast<std::size_t>(dim - i));
        for (auto& c : counts[i]) c.assign(x.num_faces(i), 0);
    }
    Simplex sub;
    for (int j = 1; j <= dim; ++j) {
        const std::uint32_t width = static_cast<std::uint32_t>(j + 1);
        for (const auto& tau : x.faces(j)) {
            for (std::uint32_t mask = 1; mask + 1 < (1u << width); ++mask) {
                sub.clear();
                for (std::uint32_t b = 0; b < width; ++b)
                    if (mask & (1u << b)) sub.push_back(tau[b]);
                const int i = simplex_dimension(sub);
                ++counts[i][j - i - 1][*x.index_of(sub)];
            }
        }
    }
    DegreeProfile p;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j <= dim; ++j) {
            const auto& c = counts[i][j - i - 1];
            const std::size_t m = c.empty() ? 0 : *std::max_element(c.begin(), c.end());
            p.delta[{i, j}] = m;
            p.delta_max = std::max(p.delta_max, m);
        }
    return p;
}

inline long long euler_characteristic(const SimplicialComplex& x) {
    long long chi = 0;
    for (int i = 0; i <= x.dimension(); ++i) {
        const auto n = static_cast<long long>(x.num_faces(i));
        chi += (i % 2 == 0) ? n : -n;
    }
    return chi;
}

/// Rows are (i-1)-faces, columns i-faces, both in lexicographic order.
/// Removing the vertex at position k contributes (-1)^k.
inline IntegerMatrix boundary_matrix(const SimplicialComplex& x, int i) {
    if (i < 1 || i > x.dimension())
        throw InputError("boundary_matrix: degree " + std::to_string(i) + " out of range");
    const auto& cols = x.faces(i);
    std::vector<std::vector<IntegerMatrix::Entry>> data(cols.size());
    Simplex sub(static_cast<std::size_t>(i));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& tau = cols[c];
        auto& col = data[c];
        col.reserve(tau.size());
        for (std::size_t skip = 0; skip < tau.size(); ++skip) {
            std::size_t w = 0;
            for (std::size_t k = 0; k < tau.size(); ++k)
                if (k != skip) sub[w++] = tau[k];
            col.emplace_back(*x.index_of(sub), mpz_class(skip % 2 == 0 ? 1 : -1));
        }
    }
    return IntegerMatrix(x.num_faces(i - 1), cols.size(), std::move(data));
}

/// Complex on the image vertex set: every face maps to the set of labels of
/// its vertices. The caller guarantees `labels` is injective on each face.
inline SimplicialComplex image_complex(const SimplicialComplex& x, std::span<const Vertex> labels,
                                       std::size_t num_labels) {
    if (labels.size() != x.num_vertices()) throw InputError("image_complex: label count mismatch");
    std::vector<Simplex> facets;
    for (const auto& f : x.facets()) {
        Simplex s;
        s.reserve(f.size());
        for (Vertex v : f) s.push_back(labels[v]);
        facets.push_back(std::move(s));
    }
    return build_complex(std::span<const Simplex>(facets), num_labels);
}

/// Relabel vertices by a permutation `perm` (old label -> new label).
inline SimplicialComplex relabel(const SimplicialComplex& x, std::span<const Vertex> perm) {
    std::vector<char> seen(x.num_vertices(), 0);
    for (Vertex v : perm) {
        if (v >= x.num_vertices() || seen[v]) throw InputError("relabel: not a permutation");
        seen[v] = 1;
    }
    return image_complex(x, perm, x.num_vertices());
}

/// Two cone points placed before all old vertices (old labels shift by 2).
inline SimplicialComplex suspension(const SimplicialComplex& x) {
    std::vector<Simplex> facets{{0}, {1}};
    for (const auto& f : x.facets()) {
        for (Vertex w : {Vertex{0}, Vertex{1}}) {
            Simplex s{w};
            for (Vertex v : f) s.push_back(v + 2);
            facets.push_back(std::move(s));
        }
    }
    return build_complex(std::span<const Simplex>(facets), x.num_vertices() + 2);
}

/// Vertex labels of the k-th part are offset by the sizes of parts 0..k-1.
inline SimplicialComplex disjoint_union(std::span<const SimplicialComplex> parts) {
    std::vector<Simplex> facets;
    std::size_t offset = 0;
    for (const auto& p : parts) {
        for (const auto& f : p.facets()) {
            Simplex s;
            for (Vertex v : f) s.push_back(static_cast<Vertex>(v + offset));
            facets.push_back(std::move(s));
        }
        offset += p.num_vertices();
    }
    return build_complex(std::span<const Simplex>(facets), offset);
}

inline SimplicialComplex disjoint_union(std::initializer_list<SimplicialComplex> parts) {
    std::vector<SimplicialComplex> v(parts);
    return disjoint_union(std::span<const SimplicialComplex>(v));
}

/// Identification data for attaching B to A: `source` lists facets of an
/// induced subcomplex S2 of B, `vertex_map` sends V(S2) into V(A).
struct GluingMap {
    std::vector<Simplex> source;
    std::map<Vertex, Vertex> vertex_map;

    /// Identify the i-th simplex boundary of B with the i-th one of A,
    /// matching vertices in order. Both lists hold sorted vertex tuples.
    static GluingMap along_boundaries(std::span<const Simplex> b_marks, std::span<const Simplex> a_marks) {
        if (b_marks.size() != a_marks.size()) throw InputError("GluingMap: mark count mismatch");
        GluingMap g;
        for (std::size_t i = 0; i < b_marks.size(); ++i) {
            const auto& b = b_marks[i];
            const auto& a = a_marks[i];
            if (a.size() != b.size() || b.size() < 2) throw InputError("GluingMap: mark size mismatch");
            for (std::size_t skip = 0; skip < b.size(); ++skip) {
                Simplex ridge;
                for (std::size_t k = 0; k < b.size(); ++k)
                    if (k != skip) ridge.push_back(b[k]);
                g.source.push_back(std::move(ridge));
            }
            for (std::size_t k = 0; k < b.size(); ++k) {
                auto [it, fresh] = g.vertex_map.emplace(b[k], a[k]);
                if (!fresh && it->second != a[k]) throw InputError("GluingMap: inconsistent vertex map");
            }
        }
        return g;
    }
};

struct AttachResult {
    SimplicialComplex complex;
    std::vector<Vertex> b_labels;  // label in the result of each vertex of B
};

/// A glued to B along g. Realized as the image of A ⊔ B under the coloring
/// that keeps A's labels, sends V(S2) to its partners in A, and numbers the
/// remaining B vertices after A in B's order.
inline AttachResult attach_detailed(const SimplicialComplex& a, const SimplicialComplex& b, const GluingMap& g) {
    // S2 as a face set, validated against B.
    std::vector<Simplex> s2_facets;
    for (auto s : g.source) {
        std::sort(s.begin(), s.end());
        s2_facets.push_back(std::move(s));
    }
    std::unordered_set<Vertex> s2_vertices;
    for (const auto& s : s2_facets)
        for (Vertex v : s) s2_vertices.insert(v);
    const std::size_t nb = b.num_vertices();
    for (Vertex v : s2_vertices)
        if (v >= nb) throw InputError("attach: gluing source vertex outside B");
    const SimplicialComplex s2 = build_complex(std::span<const Simplex>(s2_facets), nb);
    for (int i = 1; i <= s2.dimension(); ++i)
        for (const auto& f : s2.faces(i))
            if (!b.contains(f)) throw InputError("attach: gluing source is not a subcomplex of B");
    // Induced: every face of B spanned by V(S2) lies in S2.
    for (int i = 1; i <= b.dimension(); ++i)
        for (const auto& f : b.faces(i))
            if (std::all_of(f.begin(), f.end(), [&](Vertex v) { return s2_vertices.contains(v); }) &&
                !s2.contains(f))
                throw InputError("attach: gluing source is not an induced subcomplex of B");

    // Vertex map: defined on all of V(S2), injective, face-preserving into A.
    std::unordered_set<Vertex> image;
    for (Vertex v : s2_vertices) {
        auto it = g.vertex_map.find(v);
        if (it == g.vertex_map.end()) throw InputError("attach: vertex map undefined on gluing source");
        if (it->second >= a.num_vertices()) throw InputError("attach: vertex map leaves A");
        if (!image.insert(it->second).second) throw InputError("attach: vertex map is not injective");
    }
    if (g.vertex_map.size() != s2_vertices.size())
        throw InputError("attach: vertex map defined outside the gluing source");
    for (int i = 1; i <= s2.dimension(); ++i)
        for (const auto& f : s2.faces(i)) {
            Simplex img;
            for (Vertex v : f) img.push_back(g.vertex_map.at(v));
            std::sort(img.begin(), img.end());
            if (!a.contains(img)) throw InputError("attach: vertex map does not send faces to faces");
        }

    const std::size_t na = a.num_vertices();
    std::vector<Vertex> coloring(na + nb);
    for (Vertex v = 0; v < na; ++v) coloring[v] = v;
    Vertex next = static_cast<Vertex>(na);
    for (Vertex v = 0; v < nb; ++v) {
        auto it = g.vertex_map.find(v);
        coloring[na + v] = (it != g.vertex_map.end()) ? it->second : next++;
    }
    std::vector<Simplex> facets = a.facets();
    for (const auto& f : b.facets()) {
        Simplex s;
        for (Vertex v : f) s.push_back(coloring[na + v]);
        facets.push_back(std::move(s));
    }
    AttachResult out;
    out.complex = build_complex(std::span<const Simplex>(facets), next);
    out.b_labels.assign(coloring.begin() + static_cast<std::ptrdiff_t>(na), coloring.end());
    return out;
}

inline SimplicialComplex attach(const SimplicialComplex& a, const SimplicialComplex& b, const GluingMap& g) {
    return attach_detailed(a, b, g).complex;
}

/// Vertex adjacency lists of the 1-skeleton.
inline std::vector<std::vector<Vertex>> adjacency(const SimplicialComplex& x) {
    std::vector<std::vector<Vertex>> adj(x.num_vertices());
    for (const auto& e : x.faces(1)) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    return adj;
}

}  // namespace forge
