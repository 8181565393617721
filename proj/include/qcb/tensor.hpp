#pragma once

#include "qcb/hwmodule.hpp"

namespace qcb {

/// Tensor product of two highest-weight modules over one datum, with the
/// coproduct action, the quasi-R-matrix operator Theta, the bar-like
/// involution Psi = Theta o (coefficientwise bar), the product form, and the
/// Psi-fixed diamond basis b1 <> b2.  Elements are coordinate maps over pairs
/// of module canonical basis indices.
class TensorProduct {
public:
    using Index = std::pair<CBIndex, CBIndex>;
    using Elt = std::map<Index, RatFunc>;

    TensorProduct(Module& m1, Module& m2);

    Module& left() { return m1_; }
    Module& right() { return m2_; }
    const CartanDatum& datum() const { return m1_.datum(); }

    static Elt pure(const CBIndex& b1, const CBIndex& b2);
    static void add_to(Elt& x, const Index& idx, const RatFunc& c);

    NodeVec index_weight(const Index& idx) const;

    /// Coproduct actions: F_a via 1 x F_a + F_a x K_{-a}, E_a via
    /// E_a x 1 + K_a x E_a, K_mu via K_mu x K_mu.
    Elt act_F(int node, const Elt& x);
    Elt act_E(int node, const Elt& x);
    Elt act_F_div(int node, int t, const Elt& x);
    Elt act_E_div(int node, int t, const Elt& x);
    Elt act_K(const NodeVec& mu, const Elt& x);

    /// Coefficientwise bar; legitimate because the module canonical bases
    /// are bar-fixed.
    static Elt bar_coeffs(const Elt& x);

    /// Theta(m1 x m2) = sum_nu (-v)^{tr nu} sum_{b in B_nu} b^- m1 x b^{*+} m2.
    /// The sum truncates exactly at the carrier weight of the second factor.
    Elt theta(const Elt& x);
    Elt psi(const Elt& x) { return theta(bar_coeffs(x)); }

    /// Product of the admissible forms of the factors.
    RatFunc form(const Elt& x, const Elt& y);

    /// Basis indices of one total carrier weight, ordered by increasing
    /// second-factor depth (tr nu2); the order that makes Theta unitriangular.
    const std::vector<Index>& group(const NodeVec& nu_total);

    /// The Psi-fixed element congruent to b1 x b2 mod v^{-1} L.
    const Elt& diamond(const Index& idx);
    /// Exact expansion of x over the diamond basis.
    std::map<Index, RatFunc> expand_diamond(const Elt& x);

    std::string str(const Elt& x) const;

private:
    struct Group {
        std::vector<Index> indices;
        Mat p;  // diamond coordinates over pure indices, unitriangular
    };
    const Group& build(const NodeVec& nu_total);
    const std::map<CBIndex, RatFunc>& minus_image(const CBIndex& b, const CBIndex& b1);
    const std::map<CBIndex, RatFunc>& plus_image(const CBIndex& b, const CBIndex& b2);

    Module& m1_;
    Module& m2_;
    std::map<NodeVec, Group> groups_;
    std::map<Index, Elt> diamond_;
    std::map<std::pair<CBIndex, CBIndex>, std::map<CBIndex, RatFunc>> minus_memo_, plus_memo_;
};

}  // namespace qcb
