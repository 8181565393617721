#pragma once

#include "qcb/canonical.hpp"

namespace qcb {

/// Integrable highest-weight module Lambda_lam as a quotient of the Verma
/// module: elements are carriers x with m = x^- eta, two carriers agree when
/// their difference lies in sum_a f theta_a^{(<a,lam>+1)}.  All linear
/// algebra happens in canonical pairing coordinates per carrier weight.
class Module {
public:
    Module(CBTable& cb, const Weight& lam);

    CBTable& cb() { return cb_; }
    FAlgebra& alg() { return cb_.alg(); }
    const CartanDatum& datum() const { return cb_.datum(); }
    const Weight& lam() const { return lam_; }

    /// F_a^{(t)} m: left multiplication of the carrier.
    FreeElement act_F(int node, int t, const FreeElement& m) const;
    /// E_a m through the derivation formula
    ///   E_a x = (v^{<a,lam-|x|>+2} ir_a(x) - v^{-<a,lam>} ri_a(x)) / (v-v^{-1}),
    /// applied per homogeneous part.
    FreeElement act_E(int node, const FreeElement& m) const;
    /// E_a^{(t)} = E_a^t / [t]!
    FreeElement act_E_div(int node, int t, const FreeElement& m) const;
    /// K_mu m = v^{<mu, lam - |m|>} m per homogeneous part, mu in Z[I].
    FreeElement act_K(const NodeVec& mu, const FreeElement& m) const;

    /// Canonical basis B(lam)_nu of the nu weight space (highest weight
    /// minus nu), via right-divisibility statistics.
    const std::vector<CBIndex>& basis_at(const NodeVec& nu);
    /// All carrier weights with nonempty basis, found by downward closure.
    const std::vector<NodeVec>& weights();
    /// Total dimension.
    size_t dimension();

    /// Coefficients over the canonical basis of the module; exact, with the
    /// basis-part solution unique.  Mixed-weight elements are supported.
    std::map<CBIndex, RatFunc> expand(const FreeElement& m);
    bool is_zero_in_module(const FreeElement& m);
    bool equals_in_module(const FreeElement& x, const FreeElement& y);

    /// Admissible symmetric form: (eta,eta)=1, (um,m') = (m,rho(u)m') with
    /// rho(F_a^{(t)}) = v^{t^2} K_{-ta} E_a^{(t)}.  Carriers only.
    RatFunc form(const FreeElement& x, const FreeElement& y);

    /// Matrix of F_node / E_node between basis coordinate spaces.
    const Mat& f_mat(int node, const NodeVec& from_nu);
    const Mat& e_mat(int node, const NodeVec& from_nu);

private:
    struct Quotient {
        SpanReducer ideal;               // coords of the kernel at this weight
        std::vector<Vec> basis_cols;     // ideal-reduced coords of basis carriers
    };
    const Quotient& quotient(const NodeVec& nu);
    RatFunc form_words_m(const Word& a, const Word& b);

    CBTable& cb_;
    Weight lam_;
    std::map<NodeVec, std::vector<CBIndex>> basis_;
    std::map<NodeVec, Quotient> quot_;
    std::vector<NodeVec> weights_;
    bool weights_done_ = false;
    std::map<WordPair, RatFunc> form_memo_;
    std::map<std::pair<int, NodeVec>, Mat> fmat_, emat_;
};

}  // namespace qcb
