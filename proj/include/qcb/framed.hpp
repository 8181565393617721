#pragma once

#include <memory>
#include <optional>

#include "qcb/report.hpp"
#include "qcb/tensor.hpp"

namespace qcb {

/// One framed pair (xi, lam) over a base datum: the framed datum and algebra,
/// theta_lambda, the sandwich subspace f theta_lambda f, the comparison map
/// phi into Lambda_xi (x) Lambda_lam, the closed basis families for base A1,
/// and the verification drivers for the structural identities.
///
/// Base nodes keep their indices inside the framed datum (partners are
/// appended), so base words and weights embed by identity / zero padding.
class FramedSetup {
public:
    FramedSetup(const CartanDatum& base, const Weight& xi, const Weight& lam);

    const CartanDatum& base_datum() const { return base_; }
    const CartanDatum& framed_datum() const { return framed_; }
    const Weight& xi() const { return xi_; }
    const Weight& lam() const { return lam_; }
    /// xi (.) lam on the framed datum.
    const Weight& combined() const { return odot_; }

    FAlgebra& base_alg() { return *base_alg_; }
    FAlgebra& framed_alg() { return *framed_alg_; }
    CBTable& base_cb() { return *base_cb_; }
    Module& module_xi() { return *mod_xi_; }
    Module& module_lam() { return *mod_lam_; }
    TensorProduct& tensor() { return *tensor_; }

    /// Carrier-level actions are valid for any base; basis-dependent
    /// operations on these require the framed datum to be an A1/A2 shape.
    CBTable& framed_cb() { return *framed_cb_; }
    Module& framed_module() { return *framed_mod_; }
    bool framed_basis_supported() const;

    Word theta_lambda_word() const { return theta_word_; }
    FreeElement theta_lambda() const { return FreeElement::single(theta_word_); }
    const NodeVec& theta_weight() const { return theta_wt_; }

    NodeVec to_framed_vec(const NodeVec& base_nu) const;
    NodeVec base_part(const NodeVec& framed_nu) const;
    /// base nu -> nu + |theta_lambda| on the framed datum.
    NodeVec sandwich_weight(const NodeVec& base_nu) const;
    /// Partner components equal |theta_lambda| exactly.
    bool is_sandwich_weight(const NodeVec& framed_nu) const;

    /// Base word pairs (x, y) whose monomials x theta_lambda y span
    /// (f theta_lambda f) at this base weight; x, y run over base canonical
    /// basis words.
    std::vector<WordPair> sandwich_pairs(const NodeVec& base_nu) const;
    Word sandwich_word(const Word& x, const Word& y) const;
    /// Recover (x, y) from a word of the shape x theta_lambda y; throws when
    /// the partner letters do not form one exact theta_lambda block.
    WordPair split_sandwich(const Word& w) const;

    using SandwichCombo = std::vector<std::pair<WordPair, RatFunc>>;
    /// Rewrite over sandwich monomials; nullopt when the element does not lie
    /// in f theta_lambda f.
    std::optional<SandwichCombo> to_sandwich(const FreeElement& x);

    /// phi pi(x theta_lambda y) =
    ///   sum v^{|x2| . |theta_lambda|} (x2 y)^- eta_xi (x) x1^- eta_lam
    /// over r(x) = sum x1 (x) x2 in the base algebra, extended linearly.
    TensorProduct::Elt phi(const FreeElement& x);
    TensorProduct::Elt phi_pair(const Word& xw, const Word& yw);
    TensorProduct::Elt phi_combo(const SandwichCombo& combo);

    // ---- closed forms for base A1; m = <i,xi>, n = <i,lam> ----

    struct FramedCBIndex {
        int k = 0;
        int l = 0;
        CBIndex cb;  // defining framed canonical-basis monomial
    };
    /// All (k, l), 0 <= k <= m, 0 <= l <= n, with the two families meeting at
    /// k - l = m - n.
    std::vector<FramedCBIndex> framed_cb_set();

    /// alpha_{k,l} = sum_{s<=min(k,l)} v^{s(k-m-s)} [n-l+s, s]
    ///                 F^{(m-k+s)} eta (x) F^{(l-s)} eta, and the beta twin.
    TensorProduct::Elt alpha(int k, int l);
    TensorProduct::Elt beta(int k, int l);

    /// Canonical basis elements of (f theta_lambda f) at one framed weight:
    /// union of expansion supports of the sandwich monomials.
    const std::vector<CBIndex>& b_fthetaf_at(const NodeVec& framed_nu);
    bool appears_in_cb(const CBIndex& b, const FreeElement& x);
    /// B(xi, lam): b_fthetaf filtered by t_right(b, i) <= <i, xi> at base
    /// nodes, over the finite weight range of the family.
    const std::vector<CBIndex>& b_xi_lambda();

    // ---- verification drivers; every record lands in the returned Report ----

    /// phi pi over B(xi,lam) against the alpha/beta table and the diamond
    /// basis of Lambda_xi (x) Lambda_lam; base A1.
    Report verify_cb_correspondence();
    /// (pi(theta_lambda y), pi(theta_lambda y'))_{xi (.) lam} against the
    /// tensor form of the phi images times the binomial factor; base A1,
    /// y, y' over all words of trace <= max_tr.
    Report verify_two_pairings(int max_tr);

    enum class PositivityScope { Tensor, Framed, All };
    /// E_i / F_i coefficient positivity on the diamond basis (any base) and
    /// on B(Lambda_{xi,lam}) (base A1), plus the derivation exponent bound on
    /// _ir coordinates of b_fthetaf elements.
    Report verify_positivity(PositivityScope scope = PositivityScope::All);

    /// phi is a module map and intertwines bar with Psi; psi kills the
    /// xi-ideal; per-weight dimensions match the tensor side; Psi^2 = id and
    /// Psi semilinearity; form adjunction; x -> x theta_lambda embeds
    /// Lambda_lam when xi = 0; almost orthonormality of phi images.
    Report verify_structure(int max_tr);

private:
    std::optional<WordPair> try_split(const Word& w) const;

    CartanDatum base_;
    CartanDatum framed_;
    Weight xi_, lam_, odot_;
    Word theta_word_;
    NodeVec theta_wt_;

    std::unique_ptr<FAlgebra> base_alg_, framed_alg_;
    std::unique_ptr<CBTable> base_cb_, framed_cb_;
    std::unique_ptr<Module> mod_xi_, mod_lam_, framed_mod_;
    std::unique_ptr<TensorProduct> tensor_;

    std::map<NodeVec, std::vector<CBIndex>> bff_;
    std::optional<std::vector<CBIndex>> bxl_;
};

/// Exact equality of coordinate maps, zero coefficients ignored.
bool elt_equal(const TensorProduct::Elt& a, const TensorProduct::Elt& b);
std::string laurent_or_str(const RatFunc& c);

}  // namespace qcb
