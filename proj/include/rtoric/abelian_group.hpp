#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rtoric/bigint.hpp"
#include "rtoric/error.hpp"

namespace rtoric {

/// Prime factorisation by trial division; torsion orders met in practice are tiny.
inline std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n) {
    if (n <= 0) throw InvalidInput("factorize: nonpositive argument");
    std::vector<std::pair<BigInt, unsigned>> out;
    for (BigInt p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_prime_power(const BigInt& q) { return q > 1 && factorize(q).size() == 1; }

/// Finitely generated abelian group Z^r + sum Z/q_i with each q_i a prime power.
/// The torsion list is kept sorted ascending, so equality is isomorphism.
class AbelianGroup {
public:
    AbelianGroup() = default;
    AbelianGroup(std::size_t free_rank, std::vector<BigInt> torsion) : free_rank_(free_rank), torsion_(std::move(torsion)) {
        for (const auto& q : torsion_)
            if (!is_prime_power(q)) throw InvalidInput("AbelianGroup: torsion entry " + q.str() + " is not a prime power");
        std::sort(torsion_.begin(), torsion_.end());
    }

    /// Builds the group from invariant factors (entries equal to 1 are ignored).
    static AbelianGroup from_invariant_factors(std::size_t free_rank, const std::vector<BigInt>& factors) {
        std::vector<BigInt> torsion;
        for (const auto& d : factors) {
            if (d == 1) continue;
            for (const auto& [p, e] : factorize(d)) torsion.push_back(boost::multiprecision::pow(p, e));
        }
        return AbelianGroup(free_rank, std::move(torsion));
    }

    static AbelianGroup trivial() { return {}; }
    static AbelianGroup integers(std::size_t r = 1) { return AbelianGroup(r, {}); }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<BigInt>& torsion() const { return torsion_; }
    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

    /// Number of cyclic summands of order divisible by p.
    std::size_t torsion_count_divisible_by(const BigInt& p) const {
        return static_cast<std::size_t>(
            std::count_if(torsion_.begin(), torsion_.end(), [&](const BigInt& q) { return q % p == 0; }));
    }

    std::size_t even_torsion_count() const { return torsion_count_divisible_by(2); }

    /// The subgroup 2A (isomorphic to A modulo its elements of order dividing 2).
    AbelianGroup doubled() const {
        std::vector<BigInt> t;
        for (const auto& q : torsion_) {
            BigInt r = (q % 2 == 0) ? BigInt(q / 2) : q;
            if (r > 1) t.push_back(r);
        }
        return AbelianGroup(free_rank_, std::move(t));
    }

    AbelianGroup operator+(const AbelianGroup& o) const {
        std::vector<BigInt> t = torsion_;
        t.insert(t.end(), o.torsion_.begin(), o.torsion_.end());
        return AbelianGroup(free_rank_ + o.free_rank_, std::move(t));
    }

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
        return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
    }
    friend bool operator!=(const AbelianGroup& a, const AbelianGroup& b) { return !(a == b); }

    std::vector<std::string> torsion_strings() const {
        std::vector<std::string> s;
        for (const auto& q : torsion_) s.push_back(q.str());
        return s;
    }

    /// "0", "Z", "Z^2 + Z/2 + Z/4".
    std::string str() const {
        std::string s;
        if (free_rank_ == 1) s = "Z";
        else if (free_rank_ > 1) s = "Z^" + std::to_string(free_rank_);
        for (const auto& q : torsion_) s += (s.empty() ? "" : " + ") + std::string("Z/") + q.str();
        return s.empty() ? "0" : s;
    }

private:
    std::size_t free_rank_ = 0;
    std::vector<BigInt> torsion_;
};

}  // namespace rtoric
