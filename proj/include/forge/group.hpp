#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"
#include "forge/smith.hpp"

namespace forge {

/// Finitely generated abelian group Z^r ⊕ Z/d1 ⊕ ... ⊕ Z/dt with
/// 2 <= d1 | d2 | ... | dt. Values are always canonical, so structural
/// equality is isomorphism.
class GroupStructure {
  public:
    GroupStructure() = default;

    GroupStructure(std::size_t free_rank, std::vector<mpz_class> invariant_factors)
        : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] < 2) throw InputError("GroupStructure: invariant factor below 2");
            if (i > 0 && !mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t()))
                throw InputError("GroupStructure: invariant factors do not form a divisibility chain");
        }
    }

    /// From an arbitrary cyclic decomposition Z^r ⊕ Z/m1 ⊕ ... ⊕ Z/mk.
    static GroupStructure from_cyclic(std::size_t free_rank, std::vector<mpz_class> orders) {
        for (const auto& m : orders)
            if (m <= 1) throw InputError("GroupStructure: cyclic order must be at least 2");
        normalize_divisibility_chain(orders);
        std::erase_if(orders, [](const mpz_class& m) { return m == 1; });
        return GroupStructure(free_rank, std::move(orders));
    }

    static GroupStructure cyclic(const mpz_class& m) { return from_cyclic(0, {m}); }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<mpz_class>& invariant_factors() const { return factors_; }

    mpz_class torsion_order() const {
        mpz_class n = 1;
        for (const auto& d : factors_) n *= d;
        return n;
    }

    GroupStructure torsion_part() const { return GroupStructure(0, factors_); }

    bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }

    GroupStructure direct_sum(const GroupStructure& other) const {
        std::vector<mpz_class> all = factors_;
        all.insert(all.end(), other.factors_.begin(), other.factors_.end());
        return from_cyclic(free_rank_ + other.free_rank_, std::move(all));
    }

    /// "0", "Z", "Z^2 + Z/25", "Z/3 + Z/30 + Z/30".
    std::string to_string() const {
        if (is_trivial()) return "0";
        std::string out;
        if (free_rank_ == 1) out = "Z";
        if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
        for (const auto& d : factors_) {
            if (!out.empty()) out += " + ";
            out += "Z/" + d.get_str();
        }
        return out;
    }

    friend bool operator==(const GroupStructure&, const GroupStructure&) = default;

  private:
    std::size_t free_rank_ = 0;
    std::vector<mpz_class> factors_;
};

inline bool groups_isomorphic(const GroupStructure& a, const GroupStructure& b) { return a == b; }

}  // namespace forge
