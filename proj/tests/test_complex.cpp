#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "forge/complex.hpp"

using namespace forge;

namespace {

// P(2) facets, labels shifted down by one
const std::vector<Simplex> kP2 = {{0, 1, 5}, {0, 2, 5}, {2, 4, 5}, {1, 3, 5}, {1, 2, 3},
                                  {0, 2, 3}, {0, 3, 4}, {0, 1, 4}, {1, 2, 4}};

// all subsets of each facet, deduplicated; independent of build_complex
std::vector<std::vector<Simplex>> brute_closure(const std::vector<Simplex>& facets) {
    std::set<Simplex> all;
    for (const auto& f : facets)
        for (unsigned mask = 1; mask < (1u << f.size()); ++mask) {
            Simplex s;
            for (std::size_t b = 0; b < f.size(); ++b)
                if (mask & (1u << b)) s.push_back(f[b]);
            all.insert(s);
        }
    std::vector<std::vector<Simplex>> out;
    for (const auto& s : all) {
        if (out.size() < s.size()) out.resize(s.size());
        out[s.size() - 1].push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("closure of the building block") {
    const auto x = build_complex(kP2, 6);
    CHECK(x.dimension() == 2);
    CHECK(x.num_faces(0) == 6);
    CHECK(x.num_faces(1) == 15);
    CHECK(x.num_faces(2) == 9);
    CHECK(euler_characteristic(x) == 0);
    const auto want = brute_closure(kP2);
    for (int i = 0; i <= 2; ++i) CHECK(x.faces(i) == want[i]);
    const auto p = degree_profile(x);
    CHECK(p.at(0, 1) == 5);
    CHECK(p.at(1, 2) == 2);
    auto sorted = kP2;
    std::sort(sorted.begin(), sorted.end());
    CHECK(x.facets() == sorted);
}

TEST_CASE("isolated vertices and input validation") {
    const auto x = build_complex({{0, 1}}, 4);
    CHECK(x.num_faces(0) == 4);
    CHECK(x.facets() == std::vector<Simplex>{{2}, {3}, {0, 1}});
    CHECK_THROWS_AS(build_complex({{0, 4}}, 4), InputError);
    CHECK_THROWS_AS(build_complex({{1, 1}}, 4), InputError);
    const auto e = build_complex(std::vector<Simplex>{}, 0);
    CHECK(e.dimension() == -1);
}

TEST_CASE("boundary matrices compose to zero") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Simplex> facets;
        for (int k = 0; k < 12; ++k) {
            std::vector<Vertex> all(8);
            std::iota(all.begin(), all.end(), 0);
            std::shuffle(all.begin(), all.end(), rng);
            facets.emplace_back(all.begin(), all.begin() + 4);
        }
        const auto x = build_complex(facets, 8);
        for (int i = 2; i <= x.dimension(); ++i) CHECK((boundary_matrix(x, i - 1) * boundary_matrix(x, i)).is_zero());
    }
}

TEST_CASE("boundary sign convention") {
    const auto x = build_complex({{0, 1, 2}}, 3);
    const auto d2 = boundary_matrix(x, 2);
    // d[0,1,2] = [1,2] - [0,2] + [0,1]; edges sorted (0,1) (0,2) (1,2)
    CHECK(d2.at(0, 0) == 1);
    CHECK(d2.at(1, 0) == -1);
    CHECK(d2.at(2, 0) == 1);
    CHECK_THROWS_AS(boundary_matrix(x, 0), InputError);
    CHECK_THROWS_AS(boundary_matrix(x, 3), InputError);
}

TEST_CASE("suspension and disjoint union counts") {
    const auto x = build_complex({{0, 1}, {1, 2}}, 3);
    const auto s = suspension(x);
    CHECK(s.num_vertices() == 5);
    CHECK(s.num_faces(2) == 4);
    CHECK(s.contains({0, 2, 3}));
    const auto u = disjoint_union({x, x});
    CHECK(u.num_vertices() == 6);
    CHECK(u.contains({4, 5}));
}

TEST_CASE("attaching two triangles along an edge") {
    const auto a = build_complex({{0, 1, 2}}, 3);
    const auto b = build_complex({{0, 1, 2}}, 3);
    GluingMap g;
    g.source = {{1, 2}};
    g.vertex_map = {{1, 0}, {2, 2}};
    const auto r = attach_detailed(a, b, g);
    CHECK(r.complex.num_vertices() == 4);
    CHECK(r.b_labels == std::vector<Vertex>{3, 0, 2});
    CHECK(r.complex.num_faces(2) == 2);
    CHECK(r.complex.num_faces(1) == 5);
}

TEST_CASE("attach rejects bad gluing data") {
    const auto a = build_complex({{0, 1, 2}}, 3);
    const auto b = build_complex({{0, 1}, {1, 2}}, 3);
    GluingMap g;
    g.source = {{0, 2}};
    g.vertex_map = {{0, 0}, {2, 1}};
    CHECK_THROWS_AS(attach(a, b, g), InputError);  // not a face of B
    GluingMap h;
    h.source = {{0}, {2}};
    h.vertex_map = {{0, 0}, {2, 0}};
    CHECK_THROWS_AS(attach(a, b, h), InputError);  // not injective
}
