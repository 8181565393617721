#include "qcb/crystal.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include "qcb/error.hpp"

namespace qcb {

namespace {

std::string nv_str(const NodeVec& nu) {
    std::string s = "(";
    for (size_t i = 0; i < nu.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(nu[i]);
    }
    return s + ")";
}

std::vector<NodeVec> weights_up_to(size_t size, int cap) {
    std::vector<NodeVec> out;
    NodeVec cur(size, 0);
    while (true) {
        int tr = 0;
        for (int c : cur) tr += c;
        if (tr <= cap) out.push_back(cur);
        size_t k = 0;
        while (k < size) {
            if (++cur[k] > cap) {
                cur[k] = 0;
                ++k;
            } else {
                break;
            }
        }
        if (k == size) break;
    }
    std::sort(out.begin(), out.end(), [](const NodeVec& a, const NodeVec& b) {
        int ta = 0, tb = 0;
        for (int c : a) ta += c;
        for (int c : b) tb += c;
        return std::tie(ta, a) < std::tie(tb, b);
    });
    return out;
}

RatFunc value_or_zero(const std::map<CBIndex, RatFunc>& m, const CBIndex& b) {
    auto it = m.find(b);
    return it == m.end() ? RatFunc::zero() : it->second;
}

Vec to_vec(const std::map<CBIndex, RatFunc>& exp, const std::vector<CBIndex>& bas) {
    Vec v(bas.size());
    for (const auto& [b, c] : exp) {
        if (c.is_zero()) continue;
        auto it = std::find(bas.begin(), bas.end(), b);
        check(it != bas.end(), "coefficient outside the expected basis");
        v[static_cast<size_t>(it - bas.begin())] = c;
    }
    return v;
}

}  // namespace

// ---- AlgebraCrystal ----

const std::vector<FreeElement>& AlgebraCrystal::kernel_basis_at(int node, const NodeVec& nu) {
    auto key = std::make_pair(node, nu);
    auto it = ker_.find(key);
    if (it != ker_.end()) return it->second;

    const auto& bas = cb_.basis(nu);
    std::vector<FreeElement> out;
    if (nu[static_cast<size_t>(node)] == 0) {
        for (const auto& b : bas) out.push_back(cb_.element(b));
    } else {
        NodeVec down = nu;
        down[static_cast<size_t>(node)] -= 1;
        size_t rows = cb_.basis(down).size();
        Mat m(rows, bas.size());
        for (size_t j = 0; j < bas.size(); ++j)
            m.set_col(j, cb_.coords(i_r(cb_.datum(), node, cb_.element(bas[j])), down));
        for (const auto& k : kernel_basis(m)) {
            FreeElement e;
            for (size_t j = 0; j < bas.size(); ++j)
                if (!k[j].is_zero()) e.add_term(bas[j].word(), k[j]);
            out.push_back(e);
        }
    }
    return ker_.emplace(key, std::move(out)).first->second;
}

StringParts AlgebraCrystal::string_decompose(int node, const FreeElement& x) {
    StringParts out;
    out.node = node;
    if (x.is_zero()) return out;
    NodeVec nu = weight_of(cb_.datum(), x);
    int cap = nu[static_cast<size_t>(node)];

    std::vector<Vec> cols;
    std::vector<std::pair<int, const FreeElement*>> tags;
    for (int t = 0; t <= cap; ++t) {
        NodeVec sub = nu;
        sub[static_cast<size_t>(node)] -= t;
        for (const auto& k : kernel_basis_at(node, sub)) {
            cols.push_back(cb_.coords(FreeElement::theta(node, t) * k, nu));
            tags.emplace_back(t, &k);
        }
    }
    auto sol = solve_columns(cols, cb_.coords(x, nu), /*expect_unique=*/true);
    check(sol.has_value(), "string decomposition is inconsistent");
    for (size_t j = 0; j < cols.size(); ++j) {
        if ((*sol)[j].is_zero()) continue;
        out.parts[tags[j].first] += *tags[j].second * (*sol)[j];
    }
    for (auto it = out.parts.begin(); it != out.parts.end();)
        it = it->second.is_zero() ? out.parts.erase(it) : std::next(it);
    return out;
}

FreeElement AlgebraCrystal::phi_tilde(int node, const FreeElement& x) {
    FreeElement out;
    for (const auto& [t, part] : string_decompose(node, x).parts)
        out += FreeElement::theta(node, t + 1) * part;
    return out;
}

FreeElement AlgebraCrystal::eps_tilde(int node, const FreeElement& x) {
    FreeElement out;
    for (const auto& [t, part] : string_decompose(node, x).parts)
        if (t >= 1) out += FreeElement::theta(node, t - 1) * part;
    return out;
}

bool AlgebraCrystal::in_lattice(const FreeElement& x, LatticeTest t) {
    if (x.is_zero()) return true;
    for (const auto& [b, c] : cb_.expand(x))
        if (!c.satisfies(t)) return false;
    return true;
}

std::optional<CBIndex> AlgebraCrystal::leading_cb(const FreeElement& x, LatticeTest small) {
    if (x.is_zero()) return std::nullopt;
    std::optional<CBIndex> lead;
    for (const auto& [b, c] : cb_.expand(x)) {
        if (c.satisfies(small)) continue;
        if (!(c - RatFunc::one()).satisfies(small)) return std::nullopt;
        if (lead) return std::nullopt;
        lead = b;
    }
    return lead;
}

// ---- ModuleCrystal ----

const std::vector<FreeElement>& ModuleCrystal::kernel_basis_at(int node, const NodeVec& nu) {
    auto key = std::make_pair(node, nu);
    auto it = ker_.find(key);
    if (it != ker_.end()) return it->second;

    const auto& bas = mod_.basis_at(nu);
    std::vector<FreeElement> out;
    if (nu[static_cast<size_t>(node)] == 0) {
        for (const auto& b : bas) out.push_back(FreeElement::single(b.word()));
    } else {
        NodeVec down = nu;
        down[static_cast<size_t>(node)] -= 1;
        const auto& dst = mod_.basis_at(down);
        Mat m(dst.size(), bas.size());
        for (size_t j = 0; j < bas.size(); ++j)
            m.set_col(j, to_vec(mod_.expand(mod_.act_E(node, FreeElement::single(bas[j].word()))), dst));
        for (const auto& k : kernel_basis(m)) {
            FreeElement e;
            for (size_t j = 0; j < bas.size(); ++j)
                if (!k[j].is_zero()) e.add_term(bas[j].word(), k[j]);
            out.push_back(e);
        }
    }
    return ker_.emplace(key, std::move(out)).first->second;
}

StringParts ModuleCrystal::string_decompose(int node, const FreeElement& m) {
    StringParts out;
    out.node = node;
    if (m.is_zero() || mod_.is_zero_in_module(m)) return out;
    NodeVec nu = weight_of(mod_.datum(), m);
    int cap = nu[static_cast<size_t>(node)];
    const auto& bas = mod_.basis_at(nu);

    std::vector<Vec> cols;
    std::vector<std::pair<int, const FreeElement*>> tags;
    for (int t = 0; t <= cap; ++t) {
        NodeVec sub = nu;
        sub[static_cast<size_t>(node)] -= t;
        // beyond the string length the divided power annihilates the kernel
        if (t > pair_shifted(mod_.datum(), node, mod_.lam(), sub)) continue;
        for (const auto& k : kernel_basis_at(node, sub)) {
            cols.push_back(to_vec(mod_.expand(mod_.act_F(node, t, k)), bas));
            tags.emplace_back(t, &k);
        }
    }
    auto sol = solve_columns(cols, to_vec(mod_.expand(m), bas), /*expect_unique=*/true);
    check(sol.has_value(), "module string decomposition is inconsistent");
    for (size_t j = 0; j < cols.size(); ++j) {
        if ((*sol)[j].is_zero()) continue;
        out.parts[tags[j].first] += *tags[j].second * (*sol)[j];
    }
    for (auto it = out.parts.begin(); it != out.parts.end();)
        it = it->second.is_zero() ? out.parts.erase(it) : std::next(it);
    return out;
}

FreeElement ModuleCrystal::f_tilde(int node, const FreeElement& m) {
    FreeElement out;
    for (const auto& [t, part] : string_decompose(node, m).parts)
        out += mod_.act_F(node, t + 1, part);
    return out;
}

FreeElement ModuleCrystal::e_tilde(int node, const FreeElement& m) {
    FreeElement out;
    for (const auto& [t, part] : string_decompose(node, m).parts)
        if (t >= 1) out += mod_.act_F(node, t - 1, part);
    return out;
}

bool ModuleCrystal::in_lattice(const FreeElement& m, LatticeTest t) {
    for (const auto& [b, c] : mod_.expand(m))
        if (!c.satisfies(t)) return false;
    return true;
}

std::optional<CBIndex> ModuleCrystal::leading_cb(const FreeElement& m, LatticeTest small) {
    std::optional<CBIndex> lead;
    for (const auto& [b, c] : mod_.expand(m)) {
        if (c.satisfies(small)) continue;
        if (!(c - RatFunc::one()).satisfies(small)) return std::nullopt;
        if (lead) return std::nullopt;
        lead = b;
    }
    return lead;
}

// ---- TensorCrystal ----

const std::vector<TensorProduct::Elt>& TensorCrystal::kernel_basis_at(int node,
                                                                      const NodeVec& nu) {
    auto key = std::make_pair(node, nu);
    auto it = ker_.find(key);
    if (it != ker_.end()) return it->second;

    const auto& idxs = tp_.group(nu);
    std::vector<TensorProduct::Elt> out;
    if (nu[static_cast<size_t>(node)] == 0) {
        for (const auto& idx : idxs) out.push_back(TensorProduct::pure(idx.first, idx.second));
    } else {
        NodeVec down = nu;
        down[static_cast<size_t>(node)] -= 1;
        const auto& dst = tp_.group(down);
        auto dst_vec = [&](const TensorProduct::Elt& x) {
            Vec v(dst.size());
            for (const auto& [idx, c] : x) {
                if (c.is_zero()) continue;
                auto pos = std::find(dst.begin(), dst.end(), idx);
                check(pos != dst.end(), "tensor coefficient outside the expected weight");
                v[static_cast<size_t>(pos - dst.begin())] = c;
            }
            return v;
        };
        Mat m(dst.size(), idxs.size());
        for (size_t j = 0; j < idxs.size(); ++j)
            m.set_col(j, dst_vec(tp_.act_E(node, TensorProduct::pure(idxs[j].first, idxs[j].second))));
        for (const auto& k : kernel_basis(m)) {
            TensorProduct::Elt e;
            for (size_t j = 0; j < idxs.size(); ++j)
                if (!k[j].is_zero()) TensorProduct::add_to(e, idxs[j], k[j]);
            out.push_back(e);
        }
    }
    return ker_.emplace(key, std::move(out)).first->second;
}

std::map<int, TensorProduct::Elt> TensorCrystal::strings(int node, const TensorProduct::Elt& x) {
    std::map<int, TensorProduct::Elt> parts;
    if (x.empty()) return parts;
    NodeVec nu = tp_.index_weight(x.begin()->first);
    for (const auto& [idx, c] : x)
        check(tp_.index_weight(idx) == nu, "tensor string decomposition needs one weight");
    int cap = nu[static_cast<size_t>(node)];
    const auto& idxs = tp_.group(nu);

    auto nu_vec = [&](const TensorProduct::Elt& e) {
        Vec v(idxs.size());
        for (const auto& [idx, c] : e) {
            if (c.is_zero()) continue;
            auto pos = std::find(idxs.begin(), idxs.end(), idx);
            check(pos != idxs.end(), "tensor coefficient outside the expected weight");
            v[static_cast<size_t>(pos - idxs.begin())] = c;
        }
        return v;
    };

    std::vector<Vec> cols;
    std::vector<std::pair<int, const TensorProduct::Elt*>> tags;
    for (int t = 0; t <= cap; ++t) {
        NodeVec sub = nu;
        sub[static_cast<size_t>(node)] -= t;
        // string length in the tensor product: <node, xi + lam - sub>
        long len = tp_.left().lam()[static_cast<size_t>(node)] +
                   tp_.right().lam()[static_cast<size_t>(node)] - tp_.datum().dot(node, sub);
        if (t > len) continue;
        for (const auto& k : kernel_basis_at(node, sub)) {
            cols.push_back(nu_vec(tp_.act_F_div(node, t, k)));
            tags.emplace_back(t, &k);
        }
    }
    auto sol = solve_columns(cols, nu_vec(x), /*expect_unique=*/true);
    check(sol.has_value(), "tensor string decomposition is inconsistent");
    for (size_t j = 0; j < cols.size(); ++j) {
        if ((*sol)[j].is_zero()) continue;
        for (const auto& [idx, c] : *tags[j].second)
            TensorProduct::add_to(parts[tags[j].first], idx, c * (*sol)[j]);
    }
    for (auto it = parts.begin(); it != parts.end();)
        it = it->second.empty() ? parts.erase(it) : std::next(it);
    return parts;
}

TensorProduct::Elt TensorCrystal::f_tilde(int node, const TensorProduct::Elt& x) {
    TensorProduct::Elt out;
    for (const auto& [t, part] : strings(node, x))
        for (const auto& [idx, c] : tp_.act_F_div(node, t + 1, part))
            TensorProduct::add_to(out, idx, c);
    return out;
}

TensorProduct::Elt TensorCrystal::e_tilde(int node, const TensorProduct::Elt& x) {
    TensorProduct::Elt out;
    for (const auto& [t, part] : strings(node, x)) {
        if (t < 1) continue;
        for (const auto& [idx, c] : tp_.act_F_div(node, t - 1, part))
            TensorProduct::add_to(out, idx, c);
    }
    return out;
}

// ---- suites ----

namespace {

bool epsphi_one(AlgebraCrystal& cr, CBTable& cb, const CBIndex& b, int i, std::string& why) {
    int n = cb.t_left(b, i);
    FreeElement x = cb.element(b);
    FreeElement up = cr.phi_tilde(i, x);
    if (!cr.in_lattice(up)) {
        why = b.str() + ": phi image escapes the lattice";
        return false;
    }
    auto b1 = cr.leading_cb(up);
    if (!b1) {
        why = b.str() + ": phi image has no leading basis element";
        return false;
    }
    if (cb.t_left(*b1, i) != n + 1) {
        why = b.str() + ": left statistic not raised by phi";
        return false;
    }
    auto back = cr.leading_cb(cr.eps_tilde(i, cb.element(*b1)));
    if (!back || *back != b) {
        why = b.str() + ": eps does not lead back to the start";
        return false;
    }
    if (n == 0) {
        if (!cr.in_lattice(cr.eps_tilde(i, x), LatticeTest::VinvZvInv)) {
            why = b.str() + ": eps at the string bottom is not in v^-1 L";
            return false;
        }
        return true;
    }
    auto b2 = cr.leading_cb(cr.eps_tilde(i, x));
    if (!b2) {
        why = b.str() + ": eps image has no leading basis element";
        return false;
    }
    if (cb.t_left(*b2, i) != n - 1) {
        why = b.str() + ": left statistic not lowered by eps";
        return false;
    }
    auto fwd = cr.leading_cb(cr.phi_tilde(i, cb.element(*b2)));
    if (!fwd || *fwd != b) {
        why = b.str() + ": phi does not lead back up";
        return false;
    }
    return true;
}

}  // namespace

Report crystal_epsphi_suite(CBTable& cb, int max_tr) {
    Report rep;
    AlgebraCrystal cr(cb);
    const CartanDatum& d = cb.datum();
    for (const auto& nu : weights_up_to(d.size(), max_tr)) {
        int bad = 0;
        size_t cases = 0;
        std::string wit;
        for (const auto& b : cb.basis(nu))
            for (int i = 0; i < static_cast<int>(d.size()); ++i) {
                ++cases;
                std::string why;
                if (!epsphi_one(cr, cb, b, i, why)) {
                    ++bad;
                    if (wit.empty()) wit = why;
                }
            }
        rep.add("strings pair off at weight " + nv_str(nu) + " over " + std::to_string(cases) +
                    " cases",
                bad == 0, wit);
    }
    return rep;
}

Report crystal_epsphi_restricted_suite(FramedSetup& fs, int max_tr) {
    check(fs.framed_basis_supported(), "restricted string suite needs a framed basis");
    Report rep;
    CBTable& fcb = fs.framed_cb();
    AlgebraCrystal cr(fcb);

    std::map<int, std::set<CBIndex>> allowed;
    for (int a = 0; a <= max_tr + 1; ++a) {
        const auto& fam = fs.b_fthetaf_at(fs.sandwich_weight(NodeVec{a}));
        allowed[a] = std::set<CBIndex>(fam.begin(), fam.end());
    }

    for (int a = 0; a <= max_tr; ++a) {
        int bad = 0;
        size_t cases = 0;
        std::string wit;
        for (const auto& b : fs.b_fthetaf_at(fs.sandwich_weight(NodeVec{a}))) {
            ++cases;
            std::string why;
            if (!epsphi_one(cr, fcb, b, 0, why)) {
                ++bad;
                if (wit.empty()) wit = why;
                continue;
            }
            auto b1 = cr.leading_cb(cr.phi_tilde(0, fcb.element(b)));
            if (!allowed[a + 1].count(*b1)) {
                ++bad;
                if (wit.empty()) wit = b.str() + ": phi image leaves the sandwich basis";
                continue;
            }
            if (fcb.t_left(b, 0) >= 1) {
                auto b2 = cr.leading_cb(cr.eps_tilde(0, fcb.element(b)));
                if (!allowed[a - 1].count(*b2)) {
                    ++bad;
                    if (wit.empty()) wit = b.str() + ": eps image leaves the sandwich basis";
                }
            }
        }
        rep.add("sandwich strings pair off at base trace " + std::to_string(a) + " over " +
                    std::to_string(cases) + " cases",
                bad == 0, wit);
    }
    return rep;
}

Report crystal_thetalambda_suite(FramedSetup& fs) {
    check(fs.framed_basis_supported(), "theta_lambda suite needs a framed basis");
    Report rep;
    CBTable& fcb = fs.framed_cb();
    CBTable& bcb = fs.base_cb();
    int m = fs.xi()[0];
    int n = fs.lam()[0];
    std::set<CBIndex> bxl(fs.b_xi_lambda().begin(), fs.b_xi_lambda().end());

    std::map<int, CBIndex> image;
    bool exact = true, inside = true, stat = true, member = true;
    std::string we, wi, ws, wm;
    for (int c = 0; c <= m + n + 1; ++c) {
        CBIndex b0 = CBIndex::a1(c);
        auto exp = fcb.expand(fs.theta_lambda() * bcb.element(b0));
        for (auto it = exp.begin(); it != exp.end();)
            it = it->second.is_zero() ? exp.erase(it) : std::next(it);
        if (exp.size() != 1 || !exp.begin()->second.is_one()) {
            exact = false;
            if (we.empty()) we = "theta_lambda * " + b0.str() + " is not a basis element";
            continue;
        }
        CBIndex im = exp.begin()->first;
        image.emplace(c, im);
        const auto& fam = fs.b_fthetaf_at(fs.sandwich_weight(NodeVec{c}));
        if (std::find(fam.begin(), fam.end(), im) == fam.end()) {
            inside = false;
            if (wi.empty()) wi = im.str();
        }
        if (fcb.t_right(im, 0) != bcb.t_right(b0, 0)) {
            stat = false;
            if (ws.empty()) ws = im.str();
        }
        if (bcb.in_b_lambda(b0, fs.xi()) != (bxl.count(im) > 0)) {
            member = false;
            if (wm.empty()) wm = b0.str();
        }
    }
    rep.add("left multiplication by theta_lambda lands on single basis elements", exact, we);
    rep.add("the images lie in the sandwich basis", inside, wi);
    rep.add("right t-statistics survive left multiplication by theta_lambda", stat, ws);
    rep.add("membership transfers from B(xi) to B(xi,lam)", member, wm);

    bool bij = true;
    std::string wb;
    for (int a = 0; a <= n + 2; ++a) {
        std::set<CBIndex> lhs;
        if (a <= n) {
            auto it = image.find(a);
            if (it == image.end()) {
                bij = false;
                if (wb.empty()) wb = "missing image at base trace " + std::to_string(a);
                continue;
            }
            lhs.insert(it->second);
        }
        std::set<CBIndex> rhs;
        for (const auto& b : fs.b_fthetaf_at(fs.sandwich_weight(NodeVec{a})))
            if (fcb.t_left(b, 0) == 0) rhs.insert(b);
        if (lhs != rhs) {
            bij = false;
            if (wb.empty()) wb = "mismatch at base trace " + std::to_string(a);
        }
    }
    rep.add("the left t-zero part of the sandwich basis is exactly theta_lambda B(lam)", bij, wb);

    bool survive = true;
    std::string wv;
    for (const auto& b : fs.b_xi_lambda())
        if (!fcb.in_b_lambda(b, fs.combined())) {
            survive = false;
            if (wv.empty()) wv = b.str();
        }
    rep.add("B(xi,lam) lies inside the framed module basis", survive, wv);
    return rep;
}

Report crystal_commute_suite(FramedSetup& fs, int max_tr) {
    check(fs.framed_basis_supported(), "commute suite needs a framed basis");
    Report rep;
    CBTable& fcb = fs.framed_cb();
    Module& fmod = fs.framed_module();
    AlgebraCrystal acr(fcb);
    ModuleCrystal mcr(fmod);
    std::set<CBIndex> allowed(fs.b_xi_lambda().begin(), fs.b_xi_lambda().end());

    auto congruent = [&](const std::map<CBIndex, RatFunc>& lhs,
                         const std::map<CBIndex, RatFunc>& rhs, LatticeTest small,
                         std::string* why) {
        std::set<CBIndex> keys;
        for (const auto& [b, c] : lhs) keys.insert(b);
        for (const auto& [b, c] : rhs) keys.insert(b);
        for (const auto& b : keys) {
            RatFunc diff = value_or_zero(lhs, b) - value_or_zero(rhs, b);
            if (diff.is_zero()) continue;
            if (!allowed.count(b)) {
                if (why) *why = "difference supported outside B(xi,lam) at " + b.str();
                return false;
            }
            if (!diff.satisfies(small)) {
                if (why) *why = "difference too large at " + b.str();
                return false;
            }
        }
        return true;
    };

    const int node = 0;
    int flavor_gap = 0;
    for (int a = 0; a <= max_tr; ++a) {
        int badf = 0, bade = 0;
        size_t fcases = 0, ecases = 0;
        std::string wf, we;
        for (const auto& b : fs.b_fthetaf_at(fs.sandwich_weight(NodeVec{a}))) {
            FreeElement x = fcb.element(b);
            auto lhs = fmod.expand(acr.phi_tilde(node, x));
            auto rhs = fmod.expand(mcr.f_tilde(node, x));
            ++fcases;
            std::string why;
            bool ok_a = congruent(lhs, rhs, LatticeTest::VinvA, &why);
            if (!ok_a) {
                ++badf;
                if (wf.empty()) wf = b.str() + ": " + why;
            }
            if (ok_a != congruent(lhs, rhs, LatticeTest::VinvZvInv, nullptr)) ++flavor_gap;

            if (a >= 1 && allowed.count(b)) {
                auto el = fmod.expand(acr.eps_tilde(node, x));
                auto er = fmod.expand(mcr.e_tilde(node, x));
                ++ecases;
                std::string ewhy;
                bool eok_a = congruent(el, er, LatticeTest::VinvA, &ewhy);
                if (!eok_a) {
                    ++bade;
                    if (we.empty()) we = b.str() + ": " + ewhy;
                }
                if (eok_a != congruent(el, er, LatticeTest::VinvZvInv, nullptr)) ++flavor_gap;
            }
        }
        rep.add("raising commutes with the projection at base trace " + std::to_string(a) +
                    " over " + std::to_string(fcases) + " cases",
                badf == 0, wf);
        if (ecases)
            rep.add("lowering commutes with the projection at base trace " + std::to_string(a) +
                        " over " + std::to_string(ecases) + " cases",
                    bade == 0, we);
    }
    rep.add("lattice flavor comparison: " + std::to_string(flavor_gap) +
                " congruences hold over A but not over Z[v^-1] (informational)",
            true);
    return rep;
}

Report crystal_reach_suite(FramedSetup& fs, int max_tr) {
    check(fs.framed_basis_supported(), "reach suite needs a framed basis");
    Report rep;
    CBTable& fcb = fs.framed_cb();
    AlgebraCrystal cr(fcb);
    int n = fs.lam()[0];

    std::map<int, std::set<CBIndex>> reached;
    std::queue<std::pair<int, CBIndex>> work;
    bool seeds_ok = true;
    std::string wseed;
    for (int c = 0; c <= std::min(n, max_tr); ++c) {
        auto exp = fcb.expand(fs.theta_lambda() * FreeElement::theta(0, c));
        for (auto it = exp.begin(); it != exp.end();)
            it = it->second.is_zero() ? exp.erase(it) : std::next(it);
        if (exp.size() != 1 || !exp.begin()->second.is_one()) {
            seeds_ok = false;
            if (wseed.empty()) wseed = "seed at base trace " + std::to_string(c);
            continue;
        }
        if (reached[c].insert(exp.begin()->first).second) work.emplace(c, exp.begin()->first);
    }
    rep.add("seeds expand to single basis elements", seeds_ok, wseed);

    bool leads = true;
    std::string wlead;
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop();
        if (a >= max_tr) continue;
        auto b1 = cr.leading_cb(cr.phi_tilde(0, fcb.element(b)));
        if (!b1) {
            leads = false;
            if (wlead.empty()) wlead = b.str();
            continue;
        }
        if (reached[a + 1].insert(*b1).second) work.emplace(a + 1, *b1);
    }
    rep.add("phi images keep a unique leading basis element", leads, wlead);

    for (int a = 0; a <= max_tr; ++a) {
        const auto& fam = fs.b_fthetaf_at(fs.sandwich_weight(NodeVec{a}));
        std::set<CBIndex> want(fam.begin(), fam.end());
        bool ok = reached[a] == want;
        std::string wit;
        if (!ok)
            for (const auto& b : want)
                if (!reached[a].count(b)) {
                    wit = b.str() + " not reached";
                    break;
                }
        if (!ok && wit.empty()) wit = "extra elements reached";
        rep.add("all " + std::to_string(want.size()) + " sandwich basis elements at base trace " +
                    std::to_string(a) + " are reached",
                ok, wit);
    }
    return rep;
}

Report crystal_adjoint_suite(FramedSetup& fs, int max_tr) {
    Report rep;
    TensorProduct& tp = fs.tensor();
    TensorCrystal tc(tp);
    const CartanDatum& d = fs.base_datum();

    std::map<NodeVec, std::vector<TensorProduct::Index>> levels;
    for (const auto& w1 : fs.module_xi().weights())
        for (const auto& w2 : fs.module_lam().weights()) {
            NodeVec tot(d.size());
            int tr = 0;
            for (size_t k = 0; k < tot.size(); ++k) {
                tot[k] = w1[k] + w2[k];
                tr += tot[k];
            }
            if (tr > max_tr + 1) continue;
            for (const auto& b1 : fs.module_xi().basis_at(w1))
                for (const auto& b2 : fs.module_lam().basis_at(w2))
                    levels[tot].push_back({b1, b2});
        }

    for (int i = 0; i < static_cast<int>(d.size()); ++i) {
        int bad = 0;
        size_t cases = 0;
        std::string wit;
        for (const auto& [nu, idxs] : levels) {
            NodeVec up = nu;
            up[static_cast<size_t>(i)] += 1;
            auto itu = levels.find(up);
            if (itu == levels.end()) continue;
            for (const auto& a : idxs) {
                auto ea = TensorProduct::pure(a.first, a.second);
                auto fa = tc.f_tilde(i, ea);
                for (const auto& bidx : itu->second) {
                    auto eb = TensorProduct::pure(bidx.first, bidx.second);
                    RatFunc diff = tp.form(fa, eb) - tp.form(ea, tc.e_tilde(i, eb));
                    ++cases;
                    if (!diff.satisfies(LatticeTest::VinvA)) {
                        ++bad;
                        if (wit.empty())
                            wit = "pair at weight " + nv_str(nu) + " node " + std::to_string(i);
                    }
                }
            }
        }
        rep.add("raising and lowering are adjoint modulo v^-1 A at node " + std::to_string(i) +
                    " over " + std::to_string(cases) + " pairs",
                bad == 0, wit);
    }
    return rep;
}

}  // namespace qcb
