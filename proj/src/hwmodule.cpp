#include "qcb/hwmodule.hpp"

#include <algorithm>
#include <set>

#include "qcb/error.hpp"

namespace qcb {

Module::Module(CBTable& cb, const Weight& lam) : cb_(cb), lam_(lam) {
    check(lam.pairings.size() == datum().size(), "weight size mismatch");
    check(lam.dominant(), "highest weight must be dominant");
}

FreeElement Module::act_F(int node, int t, const FreeElement& m) const {
    return FreeElement::theta(node, t) * m;
}

FreeElement Module::act_E(int node, const FreeElement& m) const {
    if (m.is_zero()) return m;
    std::map<NodeVec, FreeElement> parts;
    for (const auto& [w, c] : m.terms()) parts[w.weight(datum())].add_term(w, c);
    RatFunc denom = RatFunc::v_pow(1) - RatFunc::v_pow(-1);
    FreeElement out;
    for (const auto& [nu, part] : parts) {
        long p = pair_shifted(datum(), node, lam_, nu);
        check(p + 2 <= INT32_MAX, "exponent overflow");
        FreeElement up = i_r(datum(), node, part) * RatFunc::v_pow(static_cast<int>(p) + 2) -
                         r_i(datum(), node, part) * RatFunc::v_pow(-lam_.pairings[node]);
        out += up * denom.inverse();
    }
    return out;
}

FreeElement Module::act_E_div(int node, int t, const FreeElement& m) const {
    FreeElement z = m;
    for (int s = 0; s < t; ++s) z = act_E(node, z);
    if (t >= 2) z = z * RatFunc(quantum_factorial(t)).inverse();
    return z;
}

FreeElement Module::act_K(const NodeVec& mu, const FreeElement& m) const {
    check(mu.size() == datum().size(), "NodeVec size mismatch");
    FreeElement out;
    for (const auto& [w, c] : m.terms()) {
        NodeVec nu = w.weight(datum());
        long e = 0;
        for (size_t a = 0; a < mu.size(); ++a)
            e += static_cast<long>(mu[a]) * pair_shifted(datum(), static_cast<int>(a), lam_, nu);
        out.add_term(w, c * RatFunc::v_pow(static_cast<int>(e)));
    }
    return out;
}

const std::vector<CBIndex>& Module::basis_at(const NodeVec& nu) {
    auto it = basis_.find(nu);
    if (it != basis_.end()) return it->second;
    return basis_.emplace(nu, cb_.b_lambda_at(lam_, nu)).first->second;
}

const std::vector<NodeVec>& Module::weights() {
    if (weights_done_) return weights_;
    // Downward closure from the highest weight; weight sets of integrable
    // modules are saturated, so breadth-first growth by single nodes is
    // exhaustive.
    std::set<NodeVec> seen;
    std::vector<NodeVec> frontier{NodeVec(datum().size(), 0)};
    seen.insert(frontier[0]);
    long cap = 1;
    for (int p : lam_.pairings) cap += p;
    cap *= 3 * static_cast<long>(datum().size());
    while (!frontier.empty()) {
        std::vector<NodeVec> next;
        for (const auto& nu : frontier) {
            for (size_t a = 0; a < datum().size(); ++a) {
                NodeVec mu = nu;
                mu[a] += 1;
                if (seen.count(mu)) continue;
                check(trace(mu) <= cap, "weight closure failed to terminate");
                if (basis_at(mu).empty()) continue;
                seen.insert(mu);
                next.push_back(mu);
            }
        }
        frontier = std::move(next);
    }
    weights_.assign(seen.begin(), seen.end());
    weights_done_ = true;
    return weights_;
}

size_t Module::dimension() {
    size_t n = 0;
    for (const auto& nu : weights()) n += basis_at(nu).size();
    return n;
}

const Module::Quotient& Module::quotient(const NodeVec& nu) {
    auto it = quot_.find(nu);
    if (it != quot_.end()) return it->second;
    const auto& cbb = cb_.basis(nu);
    std::vector<Vec> ideal_cols;
    for (size_t a = 0; a < datum().size(); ++a) {
        int power = lam_.pairings[a] + 1;
        if (nu[a] < power) continue;
        NodeVec mu = nu;
        mu[a] -= power;
        for (const auto& c : cb_.basis(mu)) {
            FreeElement gen = cb_.element(c) * FreeElement::theta(static_cast<int>(a), power);
            ideal_cols.push_back(cb_.coords(gen, nu));
        }
    }
    Quotient q{SpanReducer(ideal_cols), {}};
    const auto& bas = basis_at(nu);
    for (const auto& b : bas) q.basis_cols.push_back(q.ideal.reduce(cb_.coords(cb_.element(b), nu)));
    // Basis and kernel complement each other inside f_nu.
    check(q.ideal.dim() + bas.size() == cbb.size(), "quotient dimension mismatch");
    SpanReducer indep(q.basis_cols);
    check(indep.dim() == bas.size(), "module basis is dependent");
    return quot_.emplace(nu, std::move(q)).first->second;
}

std::map<CBIndex, RatFunc> Module::expand(const FreeElement& m) {
    std::map<CBIndex, RatFunc> out;
    if (m.is_zero()) return out;
    std::map<NodeVec, FreeElement> parts;
    for (const auto& [w, c] : m.terms()) parts[w.weight(datum())].add_term(w, c);
    for (const auto& [nu, part] : parts) {
        const Quotient& q = quotient(nu);
        Vec target = q.ideal.reduce(cb_.coords(part, nu));
        auto sol = solve_columns(q.basis_cols, target, /*expect_unique=*/true);
        check(sol.has_value(), "carrier does not reduce to the module basis");
        const auto& bas = basis_at(nu);
        for (size_t k = 0; k < bas.size(); ++k) {
            if ((*sol)[k].is_zero()) continue;
            auto it = out.find(bas[k]);
            if (it == out.end()) out[bas[k]] = (*sol)[k];
            else {
                it->second += (*sol)[k];
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

bool Module::is_zero_in_module(const FreeElement& m) {
    if (m.is_zero()) return true;
    std::map<NodeVec, FreeElement> parts;
    for (const auto& [w, c] : m.terms()) parts[w.weight(datum())].add_term(w, c);
    for (const auto& [nu, part] : parts) {
        Vec r = quotient(nu).ideal.reduce(cb_.coords(part, nu));
        for (const auto& c : r)
            if (!c.is_zero()) return false;
    }
    return true;
}

bool Module::equals_in_module(const FreeElement& x, const FreeElement& y) {
    return is_zero_in_module(x - y);
}

RatFunc Module::form(const FreeElement& x, const FreeElement& y) {
    RatFunc out;
    for (const auto& [w1, c1] : x.terms())
        for (const auto& [w2, c2] : y.terms()) {
            RatFunc f = form_words_m(w1, w2);
            if (!f.is_zero()) out += c1 * c2 * f;
        }
    return out;
}

RatFunc Module::form_words_m(const Word& a, const Word& b) {
    if (a.weight(datum()) != b.weight(datum())) return RatFunc();
    if (a.empty()) return RatFunc::one();
    auto key = std::make_pair(a, b);
    auto it = form_memo_.find(key);
    if (it != form_memo_.end()) return it->second;

    // (F_n^{(t)} x eta, y eta) = (x eta, v^{t^2} K_{-tn} E_n^{(t)} y eta)
    Letter l = a.letters.front();
    Word rest = a;
    rest.letters.erase(rest.letters.begin());
    FreeElement z = act_E_div(l.node, l.mult, FreeElement::single(b));
    RatFunc out;
    for (const auto& [u, c] : z.terms()) {
        NodeVec nu = u.weight(datum());
        long e = static_cast<long>(-l.mult) * pair_shifted(datum(), l.node, lam_, nu);
        RatFunc f = form_words_m(rest, u);
        if (!f.is_zero()) out += c * RatFunc::v_pow(static_cast<int>(e)) * f;
    }
    out *= RatFunc::v_pow(l.mult * l.mult);
    form_memo_[key] = out;
    return out;
}

const Mat& Module::f_mat(int node, const NodeVec& from_nu) {
    auto key = std::make_pair(node, from_nu);
    auto it = fmat_.find(key);
    if (it != fmat_.end()) return it->second;
    NodeVec to = from_nu;
    to[node] += 1;
    const auto& src = basis_at(from_nu);
    const auto& dst = basis_at(to);
    Mat m(dst.size(), src.size());
    for (size_t j = 0; j < src.size(); ++j) {
        auto img = expand(act_F(node, 1, cb_.element(src[j])));
        for (size_t i = 0; i < dst.size(); ++i) {
            auto f = img.find(dst[i]);
            if (f != img.end()) m.at(i, j) = f->second;
        }
    }
    return fmat_.emplace(key, std::move(m)).first->second;
}

const Mat& Module::e_mat(int node, const NodeVec& from_nu) {
    auto key = std::make_pair(node, from_nu);
    auto it = emat_.find(key);
    if (it != emat_.end()) return it->second;
    NodeVec to = from_nu;
    to[node] -= 1;
    const auto& src = basis_at(from_nu);
    bool valid = to[node] >= 0;
    const std::vector<CBIndex> empty;
    const auto& dst = valid ? basis_at(to) : empty;
    Mat m(dst.size(), src.size());
    for (size_t j = 0; j < src.size(); ++j) {
        auto img = expand(act_E(node, cb_.element(src[j])));
        for (size_t i = 0; i < dst.size(); ++i) {
            auto f = img.find(dst[i]);
            if (f != img.end()) m.at(i, j) = f->second;
        }
    }
    return emat_.emplace(key, std::move(m)).first->second;
}

}  // namespace qcb
