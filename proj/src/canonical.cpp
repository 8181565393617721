#include "qcb/canonical.hpp"

#include <sstream>

#include "qcb/error.hpp"

namespace qcb {

CBIndex CBIndex::a1(int p) {
    check(p >= 0, "invalid A1 index");
    return {CBFamily::A1, p, 0, 0};
}

CBIndex CBIndex::a2(CBFamily fam, int p, int q, int r) {
    check(fam != CBFamily::A1, "use a1() for the one-node family");
    check(p >= 0 && q >= 0 && r >= 0 && q >= p + r, "invalid A2 index");
    if (fam == CBFamily::A2Right && q == p + r) fam = CBFamily::A2Left;
    return {fam, p, q, r};
}

Word CBIndex::word() const {
    switch (family) {
        case CBFamily::A1:
            return Word({{0, p}});
        case CBFamily::A2Left:
            return Word({{0, p}, {1, q}, {0, r}});
        case CBFamily::A2Right:
            return Word({{1, r}, {0, q}, {1, p}});
    }
    throw error("bad family");
}

NodeVec CBIndex::weight(const CartanDatum& d) const { return word().weight(d); }

std::string CBIndex::str() const {
    std::ostringstream out;
    switch (family) {
        case CBFamily::A1:
            out << "A1[" << p << "]";
            break;
        case CBFamily::A2Left:
            out << "A2L[" << p << "," << q << "," << r << "]";
            break;
        case CBFamily::A2Right:
            out << "A2R[" << p << "," << q << "," << r << "]";
            break;
    }
    return out.str();
}

std::vector<CBIndex> cb_list(const CartanDatum& d, const NodeVec& nu) {
    check(nu.size() == d.size(), "weight size mismatch");
    for (int c : nu) check(c >= 0, "weight must be in N[I]");
    std::vector<CBIndex> out;
    if (d.is_a1_shape()) {
        out.push_back(CBIndex::a1(nu[0]));
        return out;
    }
    check(d.is_a2_shape(), "canonical basis supports A1/A2 shapes only");
    int a = nu[0], b = nu[1];
    if (b >= a) {
        // theta_0^{(p)} theta_1^{(b)} theta_0^{(a-p)}, q >= p+r holds since b >= a
        for (int p = 0; p <= a; ++p) out.push_back(CBIndex::a2(CBFamily::A2Left, p, b, a - p));
    } else {
        for (int p = 0; p <= b; ++p) out.push_back(CBIndex::a2(CBFamily::A2Right, p, a, b - p));
    }
    return out;
}

CBTable::CBTable(FAlgebra& alg) : alg_(alg) {}

const std::vector<CBIndex>& CBTable::basis(const NodeVec& nu) {
    auto it = basis_.find(nu);
    if (it != basis_.end()) return it->second;
    return basis_.emplace(nu, cb_list(datum(), nu)).first->second;
}

const Mat& CBTable::gram_cb(const NodeVec& nu) {
    auto it = gram_.find(nu);
    if (it != gram_.end()) return it->second;
    const auto& b = basis(nu);
    Mat g(b.size(), b.size());
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i; j < b.size(); ++j) {
            RatFunc f = alg_.form_words(b[i].word(), b[j].word());
            g.at(i, j) = f;
            g.at(j, i) = f;
        }
    return gram_.emplace(nu, std::move(g)).first->second;
}

const Mat& CBTable::gram_cb_inv(const NodeVec& nu) {
    auto it = inv_.find(nu);
    if (it != inv_.end()) return it->second;
    return inv_.emplace(nu, invert(gram_cb(nu))).first->second;
}

Vec CBTable::coords(const FreeElement& x, const NodeVec& nu) {
    const auto& b = basis(nu);
    Vec u(b.size());
    if (x.is_zero()) return u;
    check(weight_of(datum(), x) == nu, "element weight mismatch");
    for (size_t k = 0; k < b.size(); ++k) {
        FreeElement c = element(b[k]);
        u[k] = alg_.form(x, c);
    }
    return u;
}

std::map<CBIndex, RatFunc> CBTable::expand(const FreeElement& x, ResidualPolicy policy) {
    std::map<CBIndex, RatFunc> out;
    if (x.is_zero()) return out;
    NodeVec nu = weight_of(datum(), x);
    const auto& b = basis(nu);
    Vec t = gram_cb_inv(nu).apply(coords(x, nu));
    FreeElement recon;
    for (size_t k = 0; k < b.size(); ++k) {
        if (t[k].is_zero()) continue;
        out[b[k]] = t[k];
        recon += element(b[k]) * t[k];
    }
    bool do_check = policy == ResidualPolicy::Force ||
                    (policy == ResidualPolicy::Auto && trace(nu) <= 6);
    if (do_check)
        check(alg_.equals_in_f(x, recon), "canonical expansion residual is nonzero");
    return out;
}

std::map<CBIndex, RatFunc> CBTable::dual(const CBIndex& b) {
    NodeVec nu = b.weight(datum());
    const auto& bas = basis(nu);
    const Mat& inv = gram_cb_inv(nu);
    size_t pos = bas.size();
    for (size_t k = 0; k < bas.size(); ++k)
        if (bas[k] == b) pos = k;
    check(pos < bas.size(), "index not in basis: " + b.str());
    std::map<CBIndex, RatFunc> out;
    for (size_t k = 0; k < bas.size(); ++k)
        if (!inv.at(k, pos).is_zero()) out[bas[k]] = inv.at(k, pos);
    return out;
}

const SpanReducer& CBTable::left_span(int node, int t, const NodeVec& nu) {
    auto key = std::make_tuple(node, t, nu);
    auto it = lspan_.find(key);
    if (it != lspan_.end()) return it->second;
    NodeVec mu = nu;
    mu[node] -= t;
    std::vector<Vec> cols;
    for (const auto& c : basis(mu))
        cols.push_back(coords(FreeElement::theta(node, t) * element(c), nu));
    return lspan_.emplace(key, SpanReducer(cols)).first->second;
}

const SpanReducer& CBTable::right_span(int node, int t, const NodeVec& nu) {
    auto key = std::make_tuple(node, t, nu);
    auto it = rspan_.find(key);
    if (it != rspan_.end()) return it->second;
    NodeVec mu = nu;
    mu[node] -= t;
    std::vector<Vec> cols;
    for (const auto& c : basis(mu))
        cols.push_back(coords(element(c) * FreeElement::theta(node, t), nu));
    return rspan_.emplace(key, SpanReducer(cols)).first->second;
}

int CBTable::t_left(const CBIndex& b, int node) {
    auto key = std::make_pair(b, node);
    auto it = tleft_.find(key);
    if (it != tleft_.end()) return it->second;
    NodeVec nu = b.weight(datum());
    Vec u = coords(element(b), nu);
    int result = 0;
    for (int t = nu[node]; t >= 1; --t) {
        if (left_span(node, t, nu).contains(u)) {
            result = t;
            break;
        }
    }
    tleft_[key] = result;
    return result;
}

int CBTable::t_right(const CBIndex& b, int node) {
    auto key = std::make_pair(b, node);
    auto it = tright_.find(key);
    if (it != tright_.end()) return it->second;
    NodeVec nu = b.weight(datum());
    Vec u = coords(element(b), nu);
    int result = 0;
    for (int t = nu[node]; t >= 1; --t) {
        if (right_span(node, t, nu).contains(u)) {
            result = t;
            break;
        }
    }
    tright_[key] = result;
    return result;
}

bool CBTable::in_b_lambda(const CBIndex& b, const Weight& lam) {
    check(lam.pairings.size() == datum().size(), "weight size mismatch");
    for (size_t a = 0; a < datum().size(); ++a)
        if (t_right(b, static_cast<int>(a)) > lam.pairings[a]) return false;
    return true;
}

std::vector<CBIndex> CBTable::b_lambda_at(const Weight& lam, const NodeVec& nu) {
    std::vector<CBIndex> out;
    for (const auto& b : basis(nu))
        if (in_b_lambda(b, lam)) out.push_back(b);
    return out;
}

}  // namespace qcb
