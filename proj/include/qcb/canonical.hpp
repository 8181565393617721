#pragma once

#include <vector>

#include "qcb/free_algebra.hpp"

namespace qcb {

/// Closed-form canonical basis families for the two supported shapes.
///   A1:      theta_0^{(p)}                              index A1[p]
///   A2Left:  theta_0^{(p)} theta_1^{(q)} theta_0^{(r)}  with q >= p+r
///   A2Right: theta_1^{(r)} theta_0^{(q)} theta_1^{(p)}  with q >= p+r
/// Left and Right coincide exactly at q = p+r; the Left form is canonical
/// there, so valid Right indices keep q > p+r.
enum class CBFamily { A1, A2Left, A2Right };

struct CBIndex {
    CBFamily family = CBFamily::A1;
    int p = 0, q = 0, r = 0;

    static CBIndex a1(int p);
    static CBIndex a2(CBFamily fam, int p, int q, int r);  // normalizes the boundary

    Word word() const;
    NodeVec weight(const CartanDatum& d) const;
    std::string str() const;
    auto operator<=>(const CBIndex&) const = default;
};

/// Canonical basis of f_nu in a fixed deterministic order.
std::vector<CBIndex> cb_list(const CartanDatum& d, const NodeVec& nu);

enum class ResidualPolicy { Auto, Force, Skip };

/// Coordinates, expansions and divisibility statistics over the canonical
/// basis, all through the bilinear form.  The pairing coordinate vector
/// ((x,c))_c over CB_nu is a complete invariant of the image of x in f_nu;
/// every linear question below reduces to it.
class CBTable {
public:
    explicit CBTable(FAlgebra& alg);

    FAlgebra& alg() { return alg_; }
    const CartanDatum& datum() const { return alg_.datum(); }

    const std::vector<CBIndex>& basis(const NodeVec& nu);
    FreeElement element(const CBIndex& b) const { return FreeElement::single(b.word()); }

    /// Gram matrix (c_i, c_j) over basis(nu) and its inverse.  Invertibility
    /// is asserted; it is what makes the coordinates faithful.
    const Mat& gram_cb(const NodeVec& nu);
    const Mat& gram_cb_inv(const NodeVec& nu);

    /// Pairing coordinates ((x,c))_{c in basis(nu)}.
    Vec coords(const FreeElement& x, const NodeVec& nu);

    /// Expansion of x in the canonical basis of its weight.  With residual
    /// checking the reassembled combination is verified against x word by
    /// word through the form (Auto: only at small weights).
    std::map<CBIndex, RatFunc> expand(const FreeElement& x,
                                      ResidualPolicy policy = ResidualPolicy::Auto);

    /// Dual basis coordinates: b^* = sum_c dual(b)[c] c with (b^*, b') =
    /// delta_{b,b'}.
    std::map<CBIndex, RatFunc> dual(const CBIndex& b);

    /// Largest t with b in theta_node^{(t)} f, found by rank tests against
    /// the spanning sets theta^{(t)} CB.
    int t_left(const CBIndex& b, int node);
    /// Largest t with b in f theta_node^{(t)}.
    int t_right(const CBIndex& b, int node);

    /// Membership in B(lam): t_right(b, a) <= <a, lam> for every node a.
    bool in_b_lambda(const CBIndex& b, const Weight& lam);
    std::vector<CBIndex> b_lambda_at(const Weight& lam, const NodeVec& nu);

private:
    const SpanReducer& left_span(int node, int t, const NodeVec& nu);
    const SpanReducer& right_span(int node, int t, const NodeVec& nu);

    FAlgebra& alg_;
    std::map<NodeVec, std::vector<CBIndex>> basis_;
    std::map<NodeVec, Mat> gram_, inv_;
    std::map<std::tuple<int, int, NodeVec>, SpanReducer> lspan_, rspan_;
    std::map<std::pair<CBIndex, int>, int> tleft_, tright_;
};

}  // namespace qcb
