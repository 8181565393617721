#pragma once

#include <map>
#include <utility>

#include "qcb/linalg.hpp"
#include "qcb/word.hpp"

namespace qcb {

/// Element of the free divided-power algebra on the datum nodes: a finite
/// Q(v)-combination of words.  Relations are never applied to the words;
/// equality in the quotient algebra f is a separate question answered through
/// the bilinear form (whose radical is exactly the defining ideal).
class FreeElement {
public:
    FreeElement() = default;
    static FreeElement unit();
    static FreeElement single(const Word& w, const RatFunc& c = RatFunc::one());
    /// theta_node^{(mult)}
    static FreeElement theta(int node, int mult = 1);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, RatFunc>& terms() const { return terms_; }
    RatFunc coeff(const Word& w) const;

    FreeElement& add_term(const Word& w, const RatFunc& c);
    FreeElement operator+(const FreeElement& o) const;
    FreeElement operator-(const FreeElement& o) const;
    FreeElement operator-() const;
    /// Free product: words concatenate, coefficients multiply.
    FreeElement operator*(const FreeElement& o) const;
    FreeElement operator*(const RatFunc& c) const;
    FreeElement& operator+=(const FreeElement& o);
    FreeElement& operator-=(const FreeElement& o);
    bool operator==(const FreeElement& o) const { return terms_ == o.terms_; }

    std::string str(const CartanDatum& d) const;

private:
    std::map<Word, RatFunc> terms_;
};

/// True when every word of x has the same weight; that weight is returned in
/// nu when given.  Zero counts as homogeneous of indeterminate weight.
bool is_homogeneous(const CartanDatum& d, const FreeElement& x, NodeVec* nu = nullptr);
/// Weight of a homogeneous nonzero element; throws otherwise.
NodeVec weight_of(const CartanDatum& d, const FreeElement& x);

/// Left derivation for node a:
///   ir(1) = 0, ir(theta_b) = delta_{ab},
///   ir(xy) = ir(x) y + v^{|x| . a} x ir(y).
FreeElement i_r(const CartanDatum& d, int a, const FreeElement& x);
/// Right-sided counterpart:
///   ri(xy) = v^{|y| . a} ri(x) y + x ri(y).
FreeElement r_i(const CartanDatum& d, int a, const FreeElement& x);

using WordPair = std::pair<Word, Word>;
using BiElement = std::map<WordPair, RatFunc>;

/// Twisted coproduct r: algebra map with r(theta_a) = theta_a x 1 + 1 x
/// theta_a, where (x1 x x2)(y1 x y2) = v^{|x2| . |y1|} x1 y1 x x2 y2.
BiElement comult(const CartanDatum& d, const FreeElement& x);

/// Word-reversing algebra antiautomorphism fixing each theta_a.
FreeElement sigma(const FreeElement& x);
/// Bar involution: v -> v^{-1} on coefficients, words fixed.
FreeElement bar_f(const FreeElement& x);

/// sum_{p+q = 1 - a.b} (-1)^p theta_a^{(p)} theta_b theta_a^{(q)}, zero in f.
FreeElement serre_element(const CartanDatum& d, int a, int b);

/// Bilinear form and word-Gram machinery for one datum, with memoized values.
/// The form is characterized by (1,1)=1, (theta_a,theta_b)=delta/(1-v^{-2}),
/// (x,yz)=(r(x),y x z); it is computed by peeling divided-power letters
/// against the left derivation.
class FAlgebra {
public:
    explicit FAlgebra(const CartanDatum& d) : d_(d) {}
    const CartanDatum& datum() const { return d_; }

    RatFunc form(const FreeElement& x, const FreeElement& y);
    RatFunc form_words(const Word& a, const Word& b);

    /// Gram matrix of the form over enumerate_words(nu).
    const Mat& gram(const NodeVec& nu);
    /// dim f_nu = rank of the word Gram matrix.
    size_t dim(const NodeVec& nu);

    /// Equality in the quotient algebra f: the difference pairs to zero with
    /// every word of its weight.
    bool equals_in_f(const FreeElement& x, const FreeElement& y);

    /// Access to the memoized form values, for persistence.
    const std::map<WordPair, RatFunc>& form_memo() const { return memo_; }
    void adopt_form_memo(std::map<WordPair, RatFunc> memo) { memo_ = std::move(memo); }

private:
    CartanDatum d_;
    std::map<WordPair, RatFunc> memo_;
    std::map<NodeVec, Mat> gram_;
};

}  // namespace qcb
