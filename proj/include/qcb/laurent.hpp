#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace qcb {

using Int = mpz_class;

/// Laurent polynomial in one variable v with arbitrary-precision integer
/// coefficients.  Terms are kept in a sorted map exponent -> coefficient;
/// zero coefficients are never stored.
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(long c);
    explicit Laurent(const Int& c);
    /// c * v^e
    Laurent(const Int& c, int e);

    static Laurent zero() { return Laurent(); }
    static Laurent one() { return Laurent(1); }
    /// v^e
    static Laurent v_pow(int e) { return Laurent(Int(1), e); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;

    /// Coefficient of v^e (zero if absent).
    Int coeff(int e) const;
    /// Lowest/highest exponent; requires a nonzero value.
    int min_exp() const;
    int max_exp() const;

    const std::map<int, Int>& terms() const { return terms_; }

    Laurent operator-() const;
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Laurent& o);
    bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }
    bool operator<(const Laurent& o) const { return terms_ < o.terms_; }

    /// Multiply by v^e.
    Laurent shifted(int e) const;
    /// Exact division; throws if the divisor does not divide exactly.
    Laurent divide_exact(const Laurent& d) const;
    /// Bar involution v -> v^{-1}.
    Laurent bar() const;

    /// All exponents <= 0, i.e. membership in Z[v^{-1}].
    bool in_z_vinv() const;
    /// All exponents < 0, i.e. membership in v^{-1}Z[v^{-1}].
    bool in_vinv_z_vinv() const;
    /// All coefficients >= 0.
    bool coeffs_nonnegative() const;

    /// Constant term when the value is constant; throws otherwise.
    Int constant_value() const;

    /// Sum of terms with exponent < 0 only.
    Laurent negative_part() const;

    /// Rendering like "v^2 + 2 + v^-2"; zero renders as "0".
    std::string str() const;

    /// JSON object mapping exponent to decimal coefficient string, e.g.
    /// {"-2":"1","0":"2","2":"1"}.  Parsing accepts the same shape.
    std::string to_json() const;
    static Laurent from_json(const std::string& text);

private:
    void strip();
    std::map<int, Int> terms_;
};

/// [n] = (v^n - v^{-n})/(v - v^{-1}); [0]=0, [1]=1, [-n]=-[n].
Laurent quantum_integer(int n);
/// [n]! for n >= 0.
Laurent quantum_factorial(int n);
/// Quantum binomial coefficient for any integer n and m >= 0, computed by
/// exact division of the defining products.  Result is asserted to land in
/// Z[v,v^{-1}]; fails loudly otherwise.
Laurent quantum_binomial(int n, int m);

}  // namespace qcb
