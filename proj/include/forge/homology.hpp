#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "forge/complex.hpp"
#include "forge/errors.hpp"
#include "forge/group.hpp"
#include "forge/smith.hpp"

namespace forge {

/// H_i(X; Z) for every 0 <= i <= dim X, each boundary matrix reduced once.
/// Unreduced unless `reduced` is set (which lowers the rank of H_0 by one).
inline std::vector<GroupStructure> homology_all(const SimplicialComplex& x, bool reduced = false) {
    const int dim = x.dimension();
    if (dim < 0) return {};
    // snf[i] describes boundary_matrix(x, i) for 1 <= i <= dim
    std::vector<SNFResult> snf(static_cast<std::size_t>(dim) + 1);
    for (int i = 1; i <= dim; ++i) snf[i] = smith_normal_form(boundary_matrix(x, i));
    std::vector<GroupStructure> out;
    for (int i = 0; i <= dim; ++i) {
        const std::size_t rank_in = i >= 1 ? snf[i].rank : 0;
        const std::size_t rank_out = i < dim ? snf[i + 1].rank : 0;
        std::size_t free_rank = x.num_faces(i) - rank_in - rank_out;
        if (reduced && i == 0 && free_rank > 0) --free_rank;
        std::vector<mpz_class> tors = i < dim ? snf[i + 1].nontrivial_factors() : std::vector<mpz_class>{};
        out.emplace_back(free_rank, std::move(tors));
    }
    return out;
}

/// H_i(X; Z). Degrees above dim X give the trivial group.
inline GroupStructure homology(const SimplicialComplex& x, int i, bool reduced = false) {
    if (i < 0) throw InputError("homology: negative degree " + std::to_string(i));
    const int dim = x.dimension();
    if (i > dim) return {};
    std::size_t rank_in = 0;
    if (i >= 1) rank_in = smith_normal_form(boundary_matrix(x, i)).rank;
    std::size_t rank_out = 0;
    std::vector<mpz_class> tors;
    if (i < dim) {
        const SNFResult s = smith_normal_form(boundary_matrix(x, i + 1));
        rank_out = s.rank;
        tors = s.nontrivial_factors();
    }
    std::size_t free_rank = x.num_faces(i) - rank_in - rank_out;
    if (reduced && i == 0 && free_rank > 0) --free_rank;
    return GroupStructure(free_rank, std::move(tors));
}

/// Torsion subgroup of H_i(X).
inline GroupStructure torsion(const SimplicialComplex& x, int i) {
    if (i < 0) throw InputError("torsion: negative degree " + std::to_string(i));
    if (i >= x.dimension()) return {};
    return GroupStructure(0, smith_normal_form(boundary_matrix(x, i + 1)).nontrivial_factors());
}

}  // namespace forge
