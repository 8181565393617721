#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcb/laurent.hpp"

namespace qcb {

/// Membership tests for the lattices used throughout:
///   ZvInv      Z[v^{-1}]
///   VinvZvInv  v^{-1} Z[v^{-1}]
///   ARing      A = Q[[v^{-1}]] cap Q(v), rational functions regular at v=oo
///   VinvA      v^{-1} A, regular and vanishing at v=oo
enum class LatticeTest { ZvInv, VinvZvInv, ARing, VinvA };

/// Element of Q(v), stored as num/den with integer polynomial parts in
/// canonical reduced form: gcd(num, den) = 1 in Z[v] (content included) and
/// den has positive leading coefficient.  Equality is structural.
class RatFunc {
public:
    RatFunc();  // zero
    explicit RatFunc(long c);
    explicit RatFunc(const Laurent& p);
    RatFunc(const Laurent& num, const Laurent& den);

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(1); }
    static RatFunc v_pow(int e) { return RatFunc(Laurent::v_pow(e)); }

    bool is_zero() const { return num_.empty(); }
    bool is_one() const;

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    /// Throws on division by zero.
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const;
    /// Bar involution v -> v^{-1}.
    RatFunc bar() const;

    /// Laurent conversion; empty when the value is not in Z[v,v^{-1}].
    std::optional<Laurent> as_laurent() const;
    /// Laurent conversion that throws when impossible.
    Laurent laurent() const;

    bool satisfies(LatticeTest t) const;

    /// deg num - deg den, the order of the pole at v=oo; zero is -infinity,
    /// reported as INT_MIN.
    int degree_at_infinity() const;

    std::string str() const;
    std::string to_json() const;
    static RatFunc from_json(const std::string& text);

private:
    void normalize();
    // Dense coefficient lists over Z, index = exponent, trailing zeros
    // stripped; num_ empty encodes zero and den_ is then {1}.
    std::vector<Int> num_, den_;
};

bool lattice_test(const RatFunc& f, LatticeTest t);

}  // namespace qcb
