#include "qcb/tensor.hpp"

#include <algorithm>
#include <sstream>

#include "qcb/error.hpp"

namespace qcb {

TensorProduct::TensorProduct(Module& m1, Module& m2) : m1_(m1), m2_(m2) {
    check(m1.datum() == m2.datum(), "tensor factors need one datum");
}

TensorProduct::Elt TensorProduct::pure(const CBIndex& b1, const CBIndex& b2) {
    return Elt{{{b1, b2}, RatFunc::one()}};
}

void TensorProduct::add_to(Elt& x, const Index& idx, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = x.find(idx);
    if (it == x.end()) x[idx] = c;
    else {
        it->second += c;
        if (it->second.is_zero()) x.erase(it);
    }
}

NodeVec TensorProduct::index_weight(const Index& idx) const {
    return nodevec_add(idx.first.weight(datum()), idx.second.weight(datum()));
}

namespace {

std::map<CBIndex, RatFunc> image_from_mat(Module& m, const Mat& mat, const NodeVec& to,
                                          const std::vector<CBIndex>& src, const CBIndex& b) {
    size_t j = src.size();
    for (size_t k = 0; k < src.size(); ++k)
        if (src[k] == b) j = k;
    check(j < src.size(), "index not in module basis");
    std::map<CBIndex, RatFunc> out;
    const auto& dst = m.basis_at(to);
    for (size_t i = 0; i < dst.size(); ++i)
        if (!mat.at(i, j).is_zero()) out[dst[i]] = mat.at(i, j);
    return out;
}

}  // namespace

TensorProduct::Elt TensorProduct::act_F(int node, const Elt& x) {
    Elt out;
    for (const auto& [idx, c] : x) {
        NodeVec nu1 = idx.first.weight(datum());
        NodeVec nu2 = idx.second.weight(datum());
        // 1 x F
        NodeVec to2 = nu2;
        to2[node] += 1;
        for (const auto& [d2, c2] :
             image_from_mat(m2_, m2_.f_mat(node, nu2), to2, m2_.basis_at(nu2), idx.second))
            add_to(out, {idx.first, d2}, c * c2);
        // F x K_{-node}
        long e = -pair_shifted(datum(), node, m2_.lam(), nu2);
        NodeVec to1 = nu1;
        to1[node] += 1;
        for (const auto& [d1, c1] :
             image_from_mat(m1_, m1_.f_mat(node, nu1), to1, m1_.basis_at(nu1), idx.first))
            add_to(out, {d1, idx.second}, c * c1 * RatFunc::v_pow(static_cast<int>(e)));
    }
    return out;
}

TensorProduct::Elt TensorProduct::act_E(int node, const Elt& x) {
    Elt out;
    for (const auto& [idx, c] : x) {
        NodeVec nu1 = idx.first.weight(datum());
        NodeVec nu2 = idx.second.weight(datum());
        // E x 1
        if (nu1[node] > 0) {
            NodeVec to1 = nu1;
            to1[node] -= 1;
            for (const auto& [d1, c1] :
                 image_from_mat(m1_, m1_.e_mat(node, nu1), to1, m1_.basis_at(nu1), idx.first))
                add_to(out, {d1, idx.second}, c * c1);
        }
        // K_node x E
        if (nu2[node] > 0) {
            long e = pair_shifted(datum(), node, m1_.lam(), nu1);
            NodeVec to2 = nu2;
            to2[node] -= 1;
            for (const auto& [d2, c2] :
                 image_from_mat(m2_, m2_.e_mat(node, nu2), to2, m2_.basis_at(nu2), idx.second))
                add_to(out, {idx.first, d2}, c * c2 * RatFunc::v_pow(static_cast<int>(e)));
        }
    }
    return out;
}

TensorProduct::Elt TensorProduct::act_F_div(int node, int t, const Elt& x) {
    Elt z = x;
    for (int s = 0; s < t; ++s) z = act_F(node, z);
    if (t >= 2) {
        RatFunc inv = RatFunc(quantum_factorial(t)).inverse();
        for (auto& [idx, c] : z) c *= inv;
    }
    return z;
}

TensorProduct::Elt TensorProduct::act_E_div(int node, int t, const Elt& x) {
    Elt z = x;
    for (int s = 0; s < t; ++s) z = act_E(node, z);
    if (t >= 2) {
        RatFunc inv = RatFunc(quantum_factorial(t)).inverse();
        for (auto& [idx, c] : z) c *= inv;
    }
    return z;
}

TensorProduct::Elt TensorProduct::act_K(const NodeVec& mu, const Elt& x) {
    Elt out;
    for (const auto& [idx, c] : x) {
        long e = 0;
        NodeVec nu1 = idx.first.weight(datum());
        NodeVec nu2 = idx.second.weight(datum());
        for (size_t a = 0; a < mu.size(); ++a)
            e += static_cast<long>(mu[a]) *
                 (pair_shifted(datum(), static_cast<int>(a), m1_.lam(), nu1) +
                  pair_shifted(datum(), static_cast<int>(a), m2_.lam(), nu2));
        out[idx] = c * RatFunc::v_pow(static_cast<int>(e));
    }
    return out;
}

TensorProduct::Elt TensorProduct::bar_coeffs(const Elt& x) {
    Elt out;
    for (const auto& [idx, c] : x) out[idx] = c.bar();
    return out;
}

const std::map<CBIndex, RatFunc>& TensorProduct::minus_image(const CBIndex& b,
                                                             const CBIndex& b1) {
    auto key = std::make_pair(b, b1);
    auto it = minus_memo_.find(key);
    if (it != minus_memo_.end()) return it->second;
    FreeElement carrier = FreeElement::single(b.word().concat(b1.word()));
    return minus_memo_.emplace(key, m1_.expand(carrier)).first->second;
}

const std::map<CBIndex, RatFunc>& TensorProduct::plus_image(const CBIndex& b,
                                                            const CBIndex& b2) {
    auto key = std::make_pair(b, b2);
    auto it = plus_memo_.find(key);
    if (it != plus_memo_.end()) return it->second;
    std::map<CBIndex, RatFunc> out;
    // b^* over the canonical basis, then the + image of each monomial acts
    // by divided E letters, leftmost letter acting last.
    for (const auto& [cidx, coeff] : m1_.cb().dual(b)) {
        FreeElement z = FreeElement::single(b2.word());
        const auto& ls = cidx.word().letters;
        for (size_t k = ls.size(); k-- > 0;) {
            z = m2_.act_E_div(ls[k].node, ls[k].mult, z);
            if (z.is_zero()) break;
        }
        if (z.is_zero()) continue;
        for (const auto& [d, c] : m2_.expand(z)) {
            auto jt = out.find(d);
            if (jt == out.end()) out[d] = coeff * c;
            else {
                jt->second += coeff * c;
                if (jt->second.is_zero()) out.erase(jt);
            }
        }
    }
    return plus_memo_.emplace(key, std::move(out)).first->second;
}

TensorProduct::Elt TensorProduct::theta(const Elt& x) {
    Elt out;
    for (const auto& [idx, c] : x) {
        add_to(out, idx, c);
        NodeVec nu2 = idx.second.weight(datum());
        // odometer over 0 <= nu <= nu2, skipping nu = 0
        NodeVec nu(datum().size(), 0);
        while (true) {
            size_t k = 0;
            while (k < nu.size()) {
                if (nu[k] < nu2[k]) {
                    ++nu[k];
                    break;
                }
                nu[k] = 0;
                ++k;
            }
            if (k == nu.size()) break;
            long tr = trace(nu);
            RatFunc sign = RatFunc::v_pow(static_cast<int>(tr));
            if (tr % 2) sign = -sign;
            for (const auto& b : m1_.cb().basis(nu)) {
                const auto& plus = plus_image(b, idx.second);
                if (plus.empty()) continue;
                const auto& minus = minus_image(b, idx.first);
                for (const auto& [d1, c1] : minus)
                    for (const auto& [d2, c2] : plus) add_to(out, {d1, d2}, c * sign * c1 * c2);
            }
        }
    }
    return out;
}

RatFunc TensorProduct::form(const Elt& x, const Elt& y) {
    RatFunc out;
    for (const auto& [ix, cx] : x)
        for (const auto& [iy, cy] : y) {
            RatFunc f1 = m1_.form(FreeElement::single(ix.first.word()),
                                  FreeElement::single(iy.first.word()));
            if (f1.is_zero()) continue;
            RatFunc f2 = m2_.form(FreeElement::single(ix.second.word()),
                                  FreeElement::single(iy.second.word()));
            if (f2.is_zero()) continue;
            out += cx * cy * f1 * f2;
        }
    return out;
}

const std::vector<TensorProduct::Index>& TensorProduct::group(const NodeVec& nu_total) {
    return build(nu_total).indices;
}

const TensorProduct::Group& TensorProduct::build(const NodeVec& nu_total) {
    auto it = groups_.find(nu_total);
    if (it != groups_.end()) return it->second;

    std::vector<Index> indices;
    for (const auto& nu1 : m1_.weights()) {
        if (!nodevec_leq(nu1, nu_total)) continue;
        NodeVec nu2 = nodevec_sub(nu_total, nu1);
        if (m2_.basis_at(nu2).empty()) continue;
        for (const auto& b1 : m1_.basis_at(nu1))
            for (const auto& b2 : m2_.basis_at(nu2)) indices.push_back({b1, b2});
    }
    std::sort(indices.begin(), indices.end(), [&](const Index& a, const Index& b) {
        long ta = trace(a.second.weight(datum()));
        long tb = trace(b.second.weight(datum()));
        if (ta != tb) return ta < tb;
        return a < b;
    });

    size_t n = indices.size();
    std::map<Index, size_t> pos;
    for (size_t k = 0; k < n; ++k) pos[indices[k]] = k;

    // Theta matrix over the group; must be unitriangular in this order.
    Mat a(n, n);
    for (size_t j = 0; j < n; ++j) {
        Elt th = theta(pure(indices[j].first, indices[j].second));
        for (const auto& [idx, c] : th) {
            auto p = pos.find(idx);
            check(p != pos.end(), "Theta left the weight space");
            size_t i = p->second;
            check(i <= j, "Theta is not triangular in depth order");
            if (i < j)
                check(trace(indices[i].second.weight(datum())) <
                          trace(indices[j].second.weight(datum())),
                      "Theta has an off-diagonal term of equal depth");
            a.at(i, j) = c;
        }
        check(a.at(j, j).is_one(), "Theta diagonal is not 1");
    }

    // Solve A bar(P) = P columnwise for the Psi-fixed coordinates: entry by
    // entry from the diagonal upward, p - bar(p) = g with p strictly negative
    // in v, which forces g antisymmetric with zero constant term.
    Mat p(n, n);
    for (size_t j = 0; j < n; ++j) {
        p.at(j, j) = RatFunc::one();
        for (size_t i2 = j; i2-- > 0;) {
            RatFunc g;
            for (size_t k = i2 + 1; k <= j; ++k) {
                if (a.at(i2, k).is_zero() || p.at(k, j).is_zero()) continue;
                g += a.at(i2, k) * p.at(k, j).bar();
            }
            if (g.is_zero()) continue;
            Laurent gl = g.laurent();
            check(gl.bar() == -gl, "diamond correction is not antisymmetric");
            p.at(i2, j) = RatFunc(gl.negative_part());
        }
    }

    Group grp{std::move(indices), std::move(p)};
    auto& stored = groups_.emplace(nu_total, std::move(grp)).first->second;
    for (size_t j = 0; j < n; ++j) {
        Elt d;
        for (size_t i2 = 0; i2 <= j; ++i2)
            add_to(d, stored.indices[i2], stored.p.at(i2, j));
        diamond_[stored.indices[j]] = std::move(d);
    }
    return stored;
}

const TensorProduct::Elt& TensorProduct::diamond(const Index& idx) {
    build(index_weight(idx));
    auto it = diamond_.find(idx);
    check(it != diamond_.end(), "not a basis index of the tensor product");
    return it->second;
}

std::map<TensorProduct::Index, RatFunc> TensorProduct::expand_diamond(const Elt& x) {
    std::map<Index, RatFunc> out;
    std::map<NodeVec, Elt> parts;
    for (const auto& [idx, c] : x) parts[index_weight(idx)][idx] = c;
    for (const auto& [nu, part] : parts) {
        const Group& grp = build(nu);
        size_t n = grp.indices.size();
        std::map<Index, size_t> pos;
        for (size_t k = 0; k < n; ++k) pos[grp.indices[k]] = k;
        Vec u(n);
        for (const auto& [idx, c] : part) {
            auto p = pos.find(idx);
            check(p != pos.end(), "element is outside the module basis");
            u[p->second] = c;
        }
        Vec coef(n);
        for (size_t j = n; j-- > 0;) {
            coef[j] = u[j];
            if (coef[j].is_zero()) continue;
            for (size_t i2 = 0; i2 < j; ++i2)
                if (!grp.p.at(i2, j).is_zero()) u[i2] -= grp.p.at(i2, j) * coef[j];
        }
        for (size_t k = 0; k < n; ++k)
            if (!coef[k].is_zero()) out[grp.indices[k]] = coef[k];
    }
    return out;
}

std::string TensorProduct::str(const Elt& x) const {
    if (x.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, c] : x) {
        if (!first) out << " + ";
        out << "(" << c.str() << ")*" << idx.first.str() << "(x)" << idx.second.str();
        first = false;
    }
    return out.str();
}

}  // namespace qcb
