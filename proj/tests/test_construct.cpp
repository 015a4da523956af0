#include <catch_amalgamated.hpp>

#include "forge/construct.hpp"
#include "forge/homology.hpp"

using namespace forge;

namespace {

GroupStructure Z(std::size_t r = 1) { return GroupStructure(r, {}); }

bool dd_zero(const SimplicialComplex& x) {
    for (int i = 2; i <= x.dimension(); ++i)
        if (!(boundary_matrix(x, i - 1) * boundary_matrix(x, i)).is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("binary expansion") {
    CHECK(binary_expansion(25).exponents == std::vector<std::size_t>{0, 3, 4});
    CHECK(binary_expansion(1).exponents == std::vector<std::size_t>{0});
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 2, 40);
    CHECK(binary_expansion(big).exponents == std::vector<std::size_t>{40});
    CHECK_THROWS_AS(binary_expansion(0), InputError);
}

TEST_CASE("building block P(2)") {
    const auto p = building_block(2);
    CHECK(p.complex.num_vertices() == 6);
    CHECK(p.complex.num_faces(2) == 9);
    validate_marks(p);
    // the 9 faces, signed, bound 2a - b
    const auto rhs = cycle_combination(p.complex, 2, p.marks[0], -1, p.marks[1]);
    const auto z = find_chain(p.complex, 2, rhs);
    REQUIRE(z);
    CHECK(check_chain(p.complex, 2, *z, rhs));
    for (const auto& c : *z) CHECK(abs(c) == 1);
    CHECK(homology(p.complex, 1) == Z());
    CHECK_THROWS_AS(building_block(1), InputError);
}

TEST_CASE("building blocks in higher dimension") {
    for (int d = 3; d <= 5; ++d) {
        const auto p = building_block(d);
        CHECK(p.complex.num_vertices() == static_cast<std::size_t>(2 * d + 2));
        validate_marks(p);
        CHECK(dd_zero(p.complex));
        const auto rhs = cycle_combination(p.complex, 2, p.marks[0], -1, p.marks[1]);
        CHECK(find_chain(p.complex, d, rhs).has_value());
        CHECK(homology(p.complex, d - 1) == Z());
        // the relation has this sign only
        CHECK_FALSE(find_chain(p.complex, d, cycle_combination(p.complex, 2, p.marks[0], 1, p.marks[1])).has_value());
    }
}

TEST_CASE("telescope") {
    const auto y = telescope(2, 4);
    CHECK(y.complex.num_vertices() == 15);
    CHECK(degree_profile(y.complex).delta_max <= 10);
    validate_marks(y);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto rhs = cycle_combination(y.complex, 2, y.marks[i], -1, y.marks[i + 1]);
        CHECK(find_chain(y.complex, 2, rhs).has_value());
    }
    CHECK(homology(telescope(2, 1).complex, 1) == Z());
    const auto y3 = telescope(3, 3);
    CHECK(y3.marks.size() == 4);
    validate_marks(y3);
    CHECK(homology(y3.complex, 2) == Z());
    const auto y0 = telescope(2, 0);
    CHECK(y0.complex.num_vertices() == 3);
    CHECK(y0.marks.size() == 1);
}

TEST_CASE("telescope matches iterated attaching") {
    for (int d = 2; d <= 4; ++d) {
        const auto p = building_block(d);
        MarkedComplex y = p;
        for (std::size_t n = 1; n <= 5; ++n) {
            if (n > 1) {
                const auto g = GluingMap::along_boundaries(std::span<const Simplex>(&p.marks[0], 1),
                                                           std::span<const Simplex>(&y.marks.back(), 1));
                const auto r = attach_detailed(y.complex, p.complex, g);
                Simplex zb;
                for (Vertex v : p.marks[1]) zb.push_back(r.b_labels[v]);
                std::sort(zb.begin(), zb.end());
                y.complex = r.complex;
                y.marks.push_back(zb);
            }
            const auto t = telescope(d, n);
            CHECK(t.complex == y.complex);
            CHECK(t.marks == y.marks);
        }
    }
}

TEST_CASE("slotted spheres") {
    for (int d = 1; d <= 4; ++d)
        for (std::size_t k : {1, 2, 5}) {
            const auto t = sphere_with_slots(d, k);
            const std::size_t ud = static_cast<std::size_t>(d);
            CHECK(t.complex.num_vertices() == (ud * ud + ud + 1) * k + (ud + 2) * (ud + 2));
            CHECK(degree_profile(t.complex).at(0, 1) <= (ud + 1) * (ud * ud + ud + 2));
            CHECK(euler_characteristic(t.complex) == 1 + (d % 2 == 0 ? 1 : -1));
            validate_marks(t, true, true);
            const auto x = top_cycle(t.complex);
            std::vector<mpz_class> xz(x.begin(), x.end());
            CHECK(boundary_matrix(t.complex, d).apply(xz) == std::vector<mpz_class>(t.complex.num_faces(d - 1), 0));
        }
    const auto t = sphere_with_slots(3, 5);
    CHECK(t.complex.num_vertices() == 90);
    CHECK(homology(t.complex, 2).is_trivial());
    CHECK(homology(t.complex, 3) == Z());
}

TEST_CASE("top cycle rejects non-manifolds") {
    CHECK_THROWS_AS(top_cycle(build_complex({{0, 1, 2}}, 3)), StructureError);
    // Moebius strip doubled is not closed; use RP^2 (6 vertices) for non-orientability
    const auto rp2 = build_complex({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                    {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}},
                                   6);
    CHECK_THROWS_AS(top_cycle(rp2), StructureError);
}

TEST_CASE("punctured spheres") {
    for (int d : {2, 3})
        for (std::size_t k : {1, 2, 3}) {
            const auto ps = punctured_sphere_detailed(d, k);
            const auto& y = ps.marked;
            validate_marks(y, false, true);
            std::vector<mpz_class> rhs(y.complex.num_faces(d - 1), 0);
            for (const auto& z : y.marks) {
                const auto c = boundary_cycle(y.complex, z);
                for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += c[i];
            }
            CHECK(check_chain(y.complex, d, ps.certificate, rhs));
            CHECK(homology(y.complex, d - 1) == Z(k - 1));
            CHECK(homology(y.complex, d).is_trivial());
        }
}

TEST_CASE("cyclic assembly") {
    CHECK(homology(assemble_cyclic(2, 25), 1) == GroupStructure(2, {25}));
    CHECK(homology(assemble_cyclic(3, 25), 2) == GroupStructure(0, {25}));
    for (int j = 1; j <= 12; ++j) {
        const auto x = assemble_cyclic(2, 1L << j);
        CHECK(homology(x, 1) == GroupStructure(0, {mpz_class(1L << j)}));
    }
    CHECK_THROWS_AS(assemble_cyclic(2, 1), InputError);
}

TEST_CASE("group realization") {
    CHECK(torsion(realize_group(2, {2, 3}), 1) == GroupStructure(0, {6}));
    CHECK(torsion(realize_group(2, {4, 6}), 1) == GroupStructure(0, {2, 12}));
    CHECK(realize_group(3, {25}) == assemble_cyclic(3, 25));
    CHECK(realize_group(2, {}).num_vertices() == 0);
    CHECK_THROWS_AS(realize_group(2, {1}), InputError);
}

TEST_CASE("assembled complexes keep the telescope marks") {
    const auto x = assemble_cyclic_marked(2, 25);
    CHECK(x.marks.size() == 5);
    CHECK_NOTHROW(validate_marks(x));
    const std::vector<mpz_class> orders = {4, 6};
    const auto g = realize_group_marked(3, orders);
    CHECK(g.marks.size() == 3 + 3);
    CHECK_NOTHROW(validate_marks(g));
    CHECK(g.complex == realize_group(3, std::span<const mpz_class>(orders)));
}

TEST_CASE("construction constants") {
    const auto c = constants(2);
    CHECK(c.delta_P == 5);
    CHECK(c.num_vertices_P == 6);
    CHECK(c.L == 72);
    CHECK(c.K == 300);
    for (int d = 2; d <= 5; ++d) CHECK(constants(d).K >= 5);
}
