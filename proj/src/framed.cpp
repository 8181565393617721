#include "qcb/framed.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qcb/error.hpp"

namespace qcb {

namespace {

/// All nu1 with 0 <= nu1 <= nu componentwise, odometer order.
std::vector<NodeVec> vectors_below(const NodeVec& nu) {
    std::vector<NodeVec> out;
    NodeVec cur(nu.size(), 0);
    while (true) {
        out.push_back(cur);
        size_t k = 0;
        while (k < nu.size() && cur[k] == nu[k]) cur[k++] = 0;
        if (k == nu.size()) break;
        ++cur[k];
    }
    return out;
}

std::vector<NodeVec> vectors_with_trace_at_most(size_t size, int cap) {
    std::vector<NodeVec> all = vectors_below(NodeVec(size, cap));
    std::vector<NodeVec> out;
    for (auto& nu : all)
        if (trace(nu) <= cap) out.push_back(std::move(nu));
    std::sort(out.begin(), out.end());
    return out;
}

bool natural_laurent(const RatFunc& c, std::string* why) {
    auto l = c.as_laurent();
    if (!l) {
        if (why) *why = "not a Laurent polynomial: " + c.str();
        return false;
    }
    if (!l->coeffs_nonnegative()) {
        if (why) *why = "negative coefficient in " + l->str();
        return false;
    }
    return true;
}

std::string kl_tag(int k, int l) {
    return "[" + std::to_string(k) + "," + std::to_string(l) + "]";
}

}  // namespace

bool elt_equal(const TensorProduct::Elt& a, const TensorProduct::Elt& b) {
    for (const auto& [i, c] : a) {
        auto it = b.find(i);
        if (it == b.end() ? !c.is_zero() : c != it->second) return false;
    }
    for (const auto& [i, c] : b)
        if (!a.count(i) && !c.is_zero()) return false;
    return true;
}

std::string laurent_or_str(const RatFunc& c) {
    auto l = c.as_laurent();
    return l ? l->str() : c.str();
}

FramedSetup::FramedSetup(const CartanDatum& base, const Weight& xi, const Weight& lam)
    : base_(base), framed_(base.frame()), xi_(xi), lam_(lam) {
    check(base_.max_generation() == 0, "framed setup expects an unframed base datum");
    check(base_.is_a1_shape() || base_.is_a2_shape(),
          "framed setup supports A1/A2 base data only");
    check(xi_.pairings.size() == base_.size(), "xi must live on the base datum");
    check(lam_.pairings.size() == base_.size(), "lam must live on the base datum");
    check(xi_.dominant(), "xi must be dominant");
    check(lam_.dominant(), "lam must be dominant");

    Weight xi_ext = xi_;
    xi_ext.pairings.resize(framed_.size(), 0);
    odot_ = odot(framed_, xi_ext, lam_);

    std::vector<Letter> ls;
    for (size_t a = 0; a < base_.size(); ++a)
        ls.push_back({framed_.frame_partner(static_cast<int>(a)), lam_[a]});
    theta_word_ = Word(ls);
    theta_wt_ = theta_lambda_weight(framed_, lam_);

    base_alg_ = std::make_unique<FAlgebra>(base_);
    framed_alg_ = std::make_unique<FAlgebra>(framed_);
    base_cb_ = std::make_unique<CBTable>(*base_alg_);
    framed_cb_ = std::make_unique<CBTable>(*framed_alg_);
    mod_xi_ = std::make_unique<Module>(*base_cb_, xi_);
    mod_lam_ = std::make_unique<Module>(*base_cb_, lam_);
    framed_mod_ = std::make_unique<Module>(*framed_cb_, odot_);
    tensor_ = std::make_unique<TensorProduct>(*mod_xi_, *mod_lam_);
}

bool FramedSetup::framed_basis_supported() const {
    return framed_.is_a1_shape() || framed_.is_a2_shape();
}

NodeVec FramedSetup::to_framed_vec(const NodeVec& base_nu) const {
    check(base_nu.size() == base_.size(), "base weight size mismatch");
    NodeVec r = base_nu;
    r.resize(framed_.size(), 0);
    return r;
}

NodeVec FramedSetup::base_part(const NodeVec& framed_nu) const {
    check(framed_nu.size() == framed_.size(), "framed weight size mismatch");
    return NodeVec(framed_nu.begin(), framed_nu.begin() + base_.size());
}

NodeVec FramedSetup::sandwich_weight(const NodeVec& base_nu) const {
    return nodevec_add(to_framed_vec(base_nu), theta_wt_);
}

bool FramedSetup::is_sandwich_weight(const NodeVec& framed_nu) const {
    check(framed_nu.size() == framed_.size(), "framed weight size mismatch");
    for (size_t a = 0; a < base_.size(); ++a)
        if (framed_nu[a] < 0) return false;
    for (size_t a = base_.size(); a < framed_.size(); ++a)
        if (framed_nu[a] != theta_wt_[a]) return false;
    return true;
}

std::vector<WordPair> FramedSetup::sandwich_pairs(const NodeVec& base_nu) const {
    check(base_nu.size() == base_.size(), "base weight size mismatch");
    std::vector<WordPair> out;
    for (const NodeVec& nu1 : vectors_below(base_nu)) {
        NodeVec nu2 = nodevec_sub(base_nu, nu1);
        for (const CBIndex& c1 : cb_list(base_, nu1))
            for (const CBIndex& c2 : cb_list(base_, nu2))
                out.push_back({c1.word(), c2.word()});
    }
    return out;
}

Word FramedSetup::sandwich_word(const Word& x, const Word& y) const {
    for (const auto& l : x.letters)
        check(framed_.generation(l.node) == 0, "sandwich parts must use base nodes");
    for (const auto& l : y.letters)
        check(framed_.generation(l.node) == 0, "sandwich parts must use base nodes");
    return x.concat(theta_word_).concat(y);
}

std::optional<WordPair> FramedSetup::try_split(const Word& w) const {
    size_t first = w.letters.size();
    for (size_t k = 0; k < w.letters.size(); ++k)
        if (framed_.generation(w.letters[k].node) > 0) {
            first = k;
            break;
        }
    const auto& tl = theta_word_.letters;
    if (tl.empty()) {
        if (first != w.letters.size()) return std::nullopt;
        return WordPair{w, Word()};
    }
    if (first + tl.size() > w.letters.size()) return std::nullopt;
    for (size_t k = 0; k < tl.size(); ++k) {
        const auto& l = w.letters[first + k];
        if (l.node != tl[k].node || l.mult != tl[k].mult) return std::nullopt;
    }
    Word y(std::vector<Letter>(w.letters.begin() + first + tl.size(), w.letters.end()));
    for (const auto& l : y.letters)
        if (framed_.generation(l.node) != 0) return std::nullopt;
    Word x(std::vector<Letter>(w.letters.begin(), w.letters.begin() + first));
    return WordPair{x, y};
}

WordPair FramedSetup::split_sandwich(const Word& w) const {
    auto pr = try_split(w);
    check(pr.has_value(), "word does not have the x theta_lambda y shape");
    return *pr;
}

std::optional<FramedSetup::SandwichCombo> FramedSetup::to_sandwich(const FreeElement& x) {
    if (x.is_zero()) return SandwichCombo{};
    NodeVec nu_t;
    if (!is_homogeneous(framed_, x, &nu_t)) return std::nullopt;
    if (!is_sandwich_weight(nu_t)) return std::nullopt;

    SandwichCombo direct;
    bool all_split = true;
    for (const auto& [w, c] : x.terms()) {
        auto pr = try_split(w);
        if (!pr) {
            all_split = false;
            break;
        }
        direct.push_back({*pr, c});
    }
    if (all_split) return direct;

    std::vector<WordPair> pairs = sandwich_pairs(base_part(nu_t));
    std::vector<Vec> cols;
    Vec target;
    if (framed_basis_supported()) {
        for (const auto& pr : pairs)
            cols.push_back(framed_cb_->coords(
                FreeElement::single(sandwich_word(pr.first, pr.second)), nu_t));
        target = framed_cb_->coords(x, nu_t);
    } else {
        // no framed canonical coordinates: pair against every word of the weight
        std::vector<Word> ws = enumerate_words(framed_, nu_t);
        auto coords = [&](const FreeElement& z) {
            Vec v;
            v.reserve(ws.size());
            for (const auto& w : ws) v.push_back(framed_alg_->form(z, FreeElement::single(w)));
            return v;
        };
        for (const auto& pr : pairs)
            cols.push_back(coords(FreeElement::single(sandwich_word(pr.first, pr.second))));
        target = coords(x);
    }
    auto sol = solve_columns(cols, target);
    if (!sol) return std::nullopt;
    SandwichCombo combo;
    for (size_t j = 0; j < pairs.size(); ++j)
        if (!(*sol)[j].is_zero()) combo.push_back({pairs[j], (*sol)[j]});
    return combo;
}

TensorProduct::Elt FramedSetup::phi_pair(const Word& xw, const Word& yw) {
    for (const auto& l : xw.letters)
        check(framed_.generation(l.node) == 0, "sandwich parts must use base nodes");
    for (const auto& l : yw.letters)
        check(framed_.generation(l.node) == 0, "sandwich parts must use base nodes");
    TensorProduct::Elt out;
    BiElement rx = comult(base_, FreeElement::single(xw));
    for (const auto& [pr, c] : rx) {
        const Word& x1 = pr.first;
        const Word& x2 = pr.second;
        long tw = framed_.dot(to_framed_vec(x2.weight(base_)), theta_wt_);
        auto e1 = mod_xi_->expand(FreeElement::single(x2.concat(yw)));
        if (e1.empty()) continue;
        auto e2 = mod_lam_->expand(FreeElement::single(x1));
        if (e2.empty()) continue;
        RatFunc scale = c * RatFunc::v_pow(static_cast<int>(tw));
        for (const auto& [b1, c1] : e1)
            for (const auto& [b2, c2] : e2)
                TensorProduct::add_to(out, {b1, b2}, scale * c1 * c2);
    }
    return out;
}

TensorProduct::Elt FramedSetup::phi_combo(const SandwichCombo& combo) {
    TensorProduct::Elt out;
    for (const auto& [pr, c] : combo) {
        auto part = phi_pair(pr.first, pr.second);
        for (const auto& [i, pc] : part) TensorProduct::add_to(out, i, c * pc);
    }
    return out;
}

TensorProduct::Elt FramedSetup::phi(const FreeElement& x) {
    auto combo = to_sandwich(x);
    check(combo.has_value(), "phi: element does not lie in f theta_lambda f");
    return phi_combo(*combo);
}

std::vector<FramedSetup::FramedCBIndex> FramedSetup::framed_cb_set() {
    check(base_.is_a1_shape(), "closed framed families need base A1");
    int m = xi_[0], n = lam_[0];
    std::vector<FramedCBIndex> out;
    for (int k = 0; k <= m; ++k)
        for (int l = 0; l <= n; ++l) {
            CBIndex cb = (k - l <= m - n)
                             ? CBIndex::a2(CBFamily::A2Right, l, m - k + l, n - l)
                             : CBIndex::a2(CBFamily::A2Left, l, n, m - k);
            out.push_back({k, l, cb});
        }
    return out;
}

TensorProduct::Elt FramedSetup::alpha(int k, int l) {
    check(base_.is_a1_shape(), "closed framed families need base A1");
    int m = xi_[0], n = lam_[0];
    check(0 <= k && k <= m && 0 <= l && l <= n, "alpha index out of range");
    TensorProduct::Elt out;
    for (int s = 0; s <= std::min(k, l); ++s) {
        RatFunc c = RatFunc::v_pow(s * (k - m - s)) * RatFunc(quantum_binomial(n - l + s, s));
        TensorProduct::add_to(out, {CBIndex::a1(m - k + s), CBIndex::a1(l - s)}, c);
    }
    return out;
}

TensorProduct::Elt FramedSetup::beta(int k, int l) {
    check(base_.is_a1_shape(), "closed framed families need base A1");
    int m = xi_[0], n = lam_[0];
    check(0 <= k && k <= m && 0 <= l && l <= n, "beta index out of range");
    TensorProduct::Elt out;
    for (int s = 0; s <= std::min(k, l); ++s) {
        RatFunc c = RatFunc::v_pow(s * (l - n - s)) * RatFunc(quantum_binomial(m - k + s, s));
        TensorProduct::add_to(out, {CBIndex::a1(m - k + s), CBIndex::a1(l - s)}, c);
    }
    return out;
}

const std::vector<CBIndex>& FramedSetup::b_fthetaf_at(const NodeVec& framed_nu) {
    auto it = bff_.find(framed_nu);
    if (it != bff_.end()) return it->second;
    check(framed_basis_supported(), "b_fthetaf needs framed canonical coordinates (base A1)");
    check(is_sandwich_weight(framed_nu), "not a weight of f theta_lambda f");
    std::set<CBIndex> seen;
    for (const auto& pr : sandwich_pairs(base_part(framed_nu))) {
        auto exp = framed_cb_->expand(FreeElement::single(sandwich_word(pr.first, pr.second)));
        for (const auto& [b, c] : exp)
            if (!c.is_zero()) seen.insert(b);
    }
    return bff_[framed_nu] = std::vector<CBIndex>(seen.begin(), seen.end());
}

bool FramedSetup::appears_in_cb(const CBIndex& b, const FreeElement& x) {
    check(framed_basis_supported(), "appears_in_cb needs framed canonical coordinates");
    if (x.is_zero()) return false;
    NodeVec nu = weight_of(framed_, x);
    if (b.weight(framed_) != nu) return false;
    auto exp = framed_cb_->expand(x);
    auto it = exp.find(b);
    return it != exp.end() && !it->second.is_zero();
}

const std::vector<CBIndex>& FramedSetup::b_xi_lambda() {
    if (bxl_) return *bxl_;
    check(base_.is_a1_shape(), "b_xi_lambda enumeration needs base A1");
    int m = xi_[0], n = lam_[0];
    std::vector<CBIndex> out;
    for (int a = 0; a <= m + n; ++a)
        for (const CBIndex& b : b_fthetaf_at({a, n}))
            if (framed_cb_->t_right(b, 0) <= m) out.push_back(b);
    bxl_ = std::move(out);
    return *bxl_;
}

Report FramedSetup::verify_cb_correspondence() {
    check(base_.is_a1_shape(), "canonical-basis correspondence is closed for base A1 only");
    Report rep;
    int m = xi_[0], n = lam_[0];
    auto fam = framed_cb_set();
    const auto& bxl = b_xi_lambda();

    rep.add("family size is (m+1)(n+1)",
            fam.size() == static_cast<size_t>((m + 1) * (n + 1)) && bxl.size() == fam.size(),
            "closed table " + std::to_string(fam.size()) + ", filtered basis " +
                std::to_string(bxl.size()));

    std::set<CBIndex> fam_set, bxl_set(bxl.begin(), bxl.end());
    for (const auto& f : fam) fam_set.insert(f.cb);
    {
        std::string witness;
        for (const auto& b : fam_set)
            if (!bxl_set.count(b)) witness = "missing from filter: " + b.str();
        for (const auto& b : bxl_set)
            if (!fam_set.count(b)) witness = "extra in filter: " + b.str();
        rep.add("filtered basis equals the closed monomial table", fam_set == bxl_set, witness);
    }

    {
        bool empty_beyond = true;
        for (int a = m + n + 1; a <= m + n + 2; ++a)
            for (const CBIndex& b : b_fthetaf_at({a, n}))
                if (framed_cb_->t_right(b, 0) <= m) empty_beyond = false;
        rep.add("no basis members beyond trace m+n", empty_beyond);
    }

    for (const auto& f : fam) {
        bool is_alpha = (f.k - f.l <= m - n);
        std::string tag = kl_tag(f.k, f.l);
        TensorProduct::Elt closed = is_alpha ? alpha(f.k, f.l) : beta(f.k, f.l);
        TensorProduct::Elt img = phi(FreeElement::single(f.cb.word()));
        rep.add("phi b" + tag + " equals " + (is_alpha ? "alpha" : "beta") + tag,
                elt_equal(img, closed),
                tensor_->str(img) + " vs " + tensor_->str(closed));
        const auto& dia = tensor_->diamond({CBIndex::a1(m - f.k), CBIndex::a1(f.l)});
        rep.add("phi b" + tag + " equals the diamond element at (" +
                    std::to_string(m - f.k) + "," + std::to_string(f.l) + ")",
                elt_equal(img, dia), tensor_->str(img) + " vs " + tensor_->str(dia));
        if (f.k - f.l == m - n)
            rep.add("alpha" + tag + " equals beta" + tag + " on the boundary",
                    elt_equal(alpha(f.k, f.l), beta(f.k, f.l)));
    }
    return rep;
}

Report FramedSetup::verify_two_pairings(int max_tr) {
    check(base_.is_a1_shape(), "two-pairings check needs base A1");
    Report rep;
    int n = lam_[0];
    for (int c = 0; c <= max_tr; ++c) {
        std::vector<Word> ws = enumerate_words(base_, {c});
        RatFunc scalar = RatFunc::v_pow(-n * c) * RatFunc(quantum_binomial(n + c, n));
        size_t bad = 0;
        std::string witness;
        for (const auto& wy : ws)
            for (const auto& wy2 : ws) {
                RatFunc lhs = framed_mod_->form(FreeElement::single(theta_word_.concat(wy)),
                                                FreeElement::single(theta_word_.concat(wy2)));
                RatFunc rhs = tensor_->form(phi_pair(Word(), wy), phi_pair(Word(), wy2)) * scalar;
                if (lhs != rhs) {
                    ++bad;
                    if (witness.empty())
                        witness = "y=" + wy.str(base_) + ", y'=" + wy2.str(base_) + ": " +
                                  lhs.str() + " vs " + rhs.str();
                }
            }
        rep.add("module form equals the tensor form times the binomial factor at trace " +
                    std::to_string(c) + " (" + std::to_string(ws.size() * ws.size()) +
                    " pairs)",
                bad == 0, witness);
    }
    return rep;
}

Report FramedSetup::verify_positivity(PositivityScope scope) {
    Report rep;
    if (scope != PositivityScope::Framed) {
        std::vector<TensorProduct::Index> all_idx;
        for (const auto& w1 : mod_xi_->weights())
            for (const auto& c1 : mod_xi_->basis_at(w1))
                for (const auto& w2 : mod_lam_->weights())
                    for (const auto& c2 : mod_lam_->basis_at(w2))
                        all_idx.push_back({c1, c2});

        for (size_t a = 0; a < base_.size(); ++a) {
            size_t bad_f = 0, bad_e = 0;
            std::string wit_f, wit_e;
            for (const auto& idx : all_idx) {
                auto co_f = tensor_->expand_diamond(
                    tensor_->act_F(static_cast<int>(a), tensor_->diamond(idx)));
                for (const auto& [i2, c] : co_f) {
                    std::string why;
                    if (!natural_laurent(c, &why)) {
                        ++bad_f;
                        if (wit_f.empty()) wit_f = "F on " + tensor_->str(TensorProduct::pure(idx.first, idx.second)) + ": " + why;
                    }
                }
                auto co_e = tensor_->expand_diamond(
                    tensor_->act_E(static_cast<int>(a), tensor_->diamond(idx)));
                for (const auto& [i2, c] : co_e) {
                    std::string why;
                    if (!natural_laurent(c, &why)) {
                        ++bad_e;
                        if (wit_e.empty()) wit_e = "E on " + tensor_->str(TensorProduct::pure(idx.first, idx.second)) + ": " + why;
                    }
                }
            }
            std::string node = base_.name(static_cast<int>(a));
            rep.add("F_" + node + " has natural coefficients on the diamond basis (" +
                        std::to_string(all_idx.size()) + " elements)",
                    bad_f == 0, wit_f);
            rep.add("E_" + node + " has natural coefficients on the diamond basis (" +
                        std::to_string(all_idx.size()) + " elements)",
                    bad_e == 0, wit_e);
        }

        {
            size_t bad = 0;
            std::string wit;
            for (const auto& idx : all_idx) {
                const auto& dia = tensor_->diamond(idx);
                for (const auto& [i2, c] : dia) {
                    if (i2 == idx) {
                        if (!c.is_one()) {
                            ++bad;
                            if (wit.empty()) wit = "leading coefficient " + c.str();
                        }
                        continue;
                    }
                    auto l = c.as_laurent();
                    if (!l || !l->coeffs_nonnegative() || l->max_exp() > -1) {
                        ++bad;
                        if (wit.empty()) wit = "off-leading coordinate " + c.str();
                    }
                }
            }
            rep.add("diamond transition coordinates lie in v^-1 N[v^-1] (" +
                        std::to_string(all_idx.size()) + " elements)",
                    bad == 0, wit);
        }
    }

    if (scope == PositivityScope::Framed)
        check(base_.is_a1_shape(), "framed positivity scope needs base A1");
    if (scope != PositivityScope::Tensor && base_.is_a1_shape()) {
        int m = xi_[0], n = lam_[0];
        const auto& bxl = b_xi_lambda();
        std::set<CBIndex> allowed(bxl.begin(), bxl.end());

        size_t bad_f = 0, bad_e = 0;
        std::string wit_f, wit_e;
        auto scan = [&](const CBIndex& b, const FreeElement& image, size_t& bad,
                        std::string& wit) {
            auto exp = framed_mod_->expand(image);
            for (const auto& [bp, c] : exp) {
                std::string why;
                if (!allowed.count(bp))
                    why = "support leaves B(xi,lam) at " + bp.str();
                else
                    natural_laurent(c, &why);
                if (!why.empty()) {
                    ++bad;
                    if (wit.empty()) wit = "on " + b.str() + ": " + why;
                }
            }
        };
        for (const CBIndex& b : bxl) {
            FreeElement eb = FreeElement::single(b.word());
            scan(b, framed_mod_->act_F(0, 1, eb), bad_f, wit_f);
            scan(b, framed_mod_->act_E(0, eb), bad_e, wit_e);
        }
        rep.add("F_i has natural coefficients on B(Lambda_{xi,lam}) (" +
                    std::to_string(bxl.size()) + " elements)",
                bad_f == 0, wit_f);
        rep.add("E_i has natural coefficients on B(Lambda_{xi,lam}) (" +
                    std::to_string(bxl.size()) + " elements)",
                bad_e == 0, wit_e);

        size_t bad_nat = 0, bad_bound = 0;
        std::string wit_nat, wit_bound;
        for (int a = 0; a <= m + n; ++a)
            for (const CBIndex& b : b_fthetaf_at({a, n})) {
                FreeElement der = i_r(framed_, 0, FreeElement::single(b.word()));
                if (der.is_zero()) continue;
                auto exp = framed_cb_->expand(der);
                long bound = xi_[0] - framed_.dot(0, b.weight(framed_)) + 2;
                for (const auto& [bp, c] : exp) {
                    std::string why;
                    if (!natural_laurent(c, &why)) {
                        ++bad_nat;
                        if (wit_nat.empty()) wit_nat = "_ir(" + b.str() + ") at " + bp.str() + ": " + why;
                    } else if (allowed.count(bp) && c.laurent().min_exp() < -bound) {
                        ++bad_bound;
                        if (wit_bound.empty())
                            wit_bound = "_ir(" + b.str() + ") at " + bp.str() + ": exponent " +
                                        std::to_string(c.laurent().min_exp()) + " below " +
                                        std::to_string(-bound);
                    }
                }
            }
        rep.add("_ir coordinates over the framed basis have natural coefficients",
                bad_nat == 0, wit_nat);
        rep.add("_ir exponents meet the derivation bound on B(xi,lam) components",
                bad_bound == 0, wit_bound);
    }
    return rep;
}

Report FramedSetup::verify_structure(int max_tr) {
    Report rep;
    constexpr size_t kMaxPairsPerWeight = 8;

    size_t pairs_checked = 0;
    size_t bad_f = 0, bad_e = 0, bad_k = 0, bad_psi = 0, bad_ker = 0;
    std::string wit_f, wit_e, wit_k, wit_psi, wit_ker;
    for (const NodeVec& nu : vectors_with_trace_at_most(base_.size(), max_tr)) {
        std::vector<WordPair> pairs = sandwich_pairs(nu);
        if (pairs.size() > kMaxPairsPerWeight) pairs.resize(kMaxPairsPerWeight);
        for (const auto& pr : pairs) {
            ++pairs_checked;
            TensorProduct::Elt ts = phi_pair(pr.first, pr.second);
            std::string tag = "x=" + pr.first.str(framed_) + ", y=" + pr.second.str(framed_);

            if (!elt_equal(tensor_->psi(ts), ts)) {
                ++bad_psi;
                if (wit_psi.empty()) wit_psi = tag;
            }

            for (size_t a = 0; a < base_.size(); ++a) {
                int ai = static_cast<int>(a);
                Word fx = Word({{ai, 1}}).concat(pr.first);
                if (!elt_equal(phi_pair(fx, pr.second), tensor_->act_F(ai, ts))) {
                    ++bad_f;
                    if (wit_f.empty()) wit_f = "F_" + base_.name(ai) + " on " + tag;
                }

                FreeElement es = framed_mod_->act_E(
                    ai, FreeElement::single(sandwich_word(pr.first, pr.second)));
                SandwichCombo combo;
                for (const auto& [w, c] : es.terms()) combo.push_back({split_sandwich(w), c});
                if (!elt_equal(phi_combo(combo), tensor_->act_E(ai, ts))) {
                    ++bad_e;
                    if (wit_e.empty()) wit_e = "E_" + base_.name(ai) + " on " + tag;
                }

                NodeVec mu(base_.size(), 0);
                mu[a] = 1;
                long e = pair_shifted(framed_, ai, odot_, sandwich_weight(nu));
                TensorProduct::Elt lhs_k;
                for (const auto& [i2, c] : ts)
                    TensorProduct::add_to(lhs_k, i2, c * RatFunc::v_pow(static_cast<int>(e)));
                if (!elt_equal(lhs_k, tensor_->act_K(mu, ts))) {
                    ++bad_k;
                    if (wit_k.empty()) wit_k = "K_" + base_.name(ai) + " on " + tag;
                }

                Word ideal_y = pr.second.concat(Word({{ai, xi_[a] + 1}}));
                if (!phi_pair(pr.first, ideal_y).empty()) {
                    ++bad_ker;
                    if (wit_ker.empty())
                        wit_ker = "theta_" + base_.name(ai) + "^(" + std::to_string(xi_[a] + 1) +
                                  ") tail on " + tag;
                }
            }
        }
    }
    std::string scope = " (" + std::to_string(pairs_checked) + " sandwich monomials)";
    rep.add("phi intertwines F with the coproduct action" + scope, bad_f == 0, wit_f);
    rep.add("phi intertwines E with the coproduct action" + scope, bad_e == 0, wit_e);
    rep.add("phi intertwines K with the coproduct action" + scope, bad_k == 0, wit_k);
    rep.add("phi images of monomials are Psi-fixed" + scope, bad_psi == 0, wit_psi);
    rep.add("phi kills the xi ideal" + scope, bad_ker == 0, wit_ker);

    {
        size_t bad2 = 0, badF = 0, badK = 0;
        std::string w2, wF, wK;
        std::vector<TensorProduct::Index> all_idx;
        for (const auto& w1 : mod_xi_->weights())
            for (const auto& c1 : mod_xi_->basis_at(w1))
                for (const auto& wv2 : mod_lam_->weights())
                    for (const auto& c2 : mod_lam_->basis_at(wv2))
                        all_idx.push_back({c1, c2});
        for (const auto& idx : all_idx) {
            TensorProduct::Elt x = TensorProduct::pure(idx.first, idx.second);
            std::string tag = tensor_->str(x);
            if (!elt_equal(tensor_->psi(tensor_->psi(x)), x)) {
                ++bad2;
                if (w2.empty()) w2 = tag;
            }
            for (size_t a = 0; a < base_.size(); ++a) {
                int ai = static_cast<int>(a);
                if (!elt_equal(tensor_->psi(tensor_->act_F(ai, x)),
                               tensor_->act_F(ai, tensor_->psi(x)))) {
                    ++badF;
                    if (wF.empty()) wF = "F_" + base_.name(ai) + " on " + tag;
                }
                NodeVec mu(base_.size(), 0), mneg(base_.size(), 0);
                mu[a] = 1;
                mneg[a] = -1;
                if (!elt_equal(tensor_->psi(tensor_->act_K(mu, x)),
                               tensor_->act_K(mneg, tensor_->psi(x)))) {
                    ++badK;
                    if (wK.empty()) wK = "K_" + base_.name(ai) + " on " + tag;
                }
            }
        }
        std::string sc = " (" + std::to_string(all_idx.size()) + " pure tensors)";
        rep.add("Psi is an involution" + sc, bad2 == 0, w2);
        rep.add("Psi(F x) = F Psi(x)" + sc, badF == 0, wF);
        rep.add("Psi(K x) = K^{-1} Psi(x)" + sc, badK == 0, wK);
    }

    {
        size_t bad = 0, count = 0;
        std::string wit;
        for (int t = 1; t <= 2; ++t)
            for (size_t a = 0; a < base_.size(); ++a) {
                int ai = static_cast<int>(a);
                for (const auto& wx : mod_xi_->weights()) {
                    NodeVec wy = wx;
                    wy[a] += t;
                    const auto& bx = mod_xi_->basis_at(wx);
                    if (std::find(mod_xi_->weights().begin(), mod_xi_->weights().end(), wy) ==
                        mod_xi_->weights().end())
                        continue;
                    const auto& by = mod_xi_->basis_at(wy);
                    for (const auto& cx : bx)
                        for (const auto& cy : by) {
                            ++count;
                            FreeElement X = FreeElement::single(cx.word());
                            FreeElement Y = FreeElement::single(cy.word());
                            RatFunc lhs = mod_xi_->form(mod_xi_->act_F(ai, t, X), Y);
                            NodeVec mneg(base_.size(), 0);
                            mneg[a] = -t;
                            FreeElement rho =
                                mod_xi_->act_K(mneg, mod_xi_->act_E_div(ai, t, Y)) *
                                RatFunc::v_pow(t * t);
                            RatFunc rhs = mod_xi_->form(X, rho);
                            if (lhs != rhs) {
                                ++bad;
                                if (wit.empty())
                                    wit = "t=" + std::to_string(t) + ", x=" + cx.str() +
                                          ", y=" + cy.str();
                            }
                        }
                }
            }
        rep.add("(F^(t) x, y) = (x, v^{t^2} K_{-t} E^(t) y) on Lambda_xi (" +
                    std::to_string(count) + " pairs)",
                bad == 0, wit);
    }

    if (base_.is_a1_shape()) {
        int m = xi_[0], n = lam_[0];

        {
            size_t bad = 0;
            std::string wit;
            for (int a = 0; a <= m + n + 1; ++a) {
                NodeVec nut = sandwich_weight({a});
                const auto& bas = framed_mod_->basis_at(nut);
                std::vector<Vec> vecs;
                for (const auto& pr : sandwich_pairs({a})) {
                    auto e = framed_mod_->expand(
                        FreeElement::single(sandwich_word(pr.first, pr.second)));
                    Vec v(bas.size(), RatFunc::zero());
                    for (size_t i = 0; i < bas.size(); ++i) {
                        auto it = e.find(bas[i]);
                        if (it != e.end()) v[i] = it->second;
                    }
                    vecs.push_back(std::move(v));
                }
                size_t lhs = SpanReducer(vecs).dim();
                size_t rhs = 0;
                for (int a1 = 0; a1 <= std::min(a, m); ++a1)
                    if (a - a1 <= n) ++rhs;
                if (lhs != rhs) {
                    ++bad;
                    if (wit.empty())
                        wit = "trace " + std::to_string(a) + ": " + std::to_string(lhs) +
                              " vs " + std::to_string(rhs);
                }
            }
            rep.add("per-weight dimensions match the tensor side", bad == 0, wit);
        }

        bool xi_zero = true;
        for (size_t a = 0; a < base_.size(); ++a)
            if (xi_[a] != 0) xi_zero = false;
        if (xi_zero) {
            size_t bad = 0;
            std::string wit;
            for (int c = 0; c <= n + 1; ++c) {
                FreeElement img = FreeElement::single(
                    Word({{0, c}}).concat(theta_word_));
                bool zero_in_lam = c > n;
                bool zero_in_framed = framed_mod_->is_zero_in_module(img);
                if (zero_in_lam != zero_in_framed) {
                    ++bad;
                    if (wit.empty()) wit = "theta^(" + std::to_string(c) + ") theta_lambda";
                }
                if (c <= n) {
                    NodeVec nut = sandwich_weight({c});
                    const auto& bas = framed_mod_->basis_at(nut);
                    std::vector<Vec> vecs;
                    for (const auto& pr : sandwich_pairs({c})) {
                        auto e = framed_mod_->expand(
                            FreeElement::single(sandwich_word(pr.first, pr.second)));
                        Vec v(bas.size(), RatFunc::zero());
                        for (size_t i = 0; i < bas.size(); ++i) {
                            auto it = e.find(bas[i]);
                            if (it != e.end()) v[i] = it->second;
                        }
                        vecs.push_back(std::move(v));
                    }
                    if (SpanReducer(vecs).dim() != 1) {
                        ++bad;
                        if (wit.empty()) wit = "weight " + std::to_string(c) + " not a line";
                    }
                }
            }
            rep.add("x -> x theta_lambda embeds Lambda_lam as Lambda_{0,lam}", bad == 0, wit);
        }

        {
            size_t bad = 0;
            std::string wit;
            for (const CBIndex& b : b_xi_lambda()) {
                TensorProduct::Elt img = phi(FreeElement::single(b.word()));
                RatFunc d = tensor_->form(img, img) - RatFunc::one();
                if (!d.satisfies(LatticeTest::VinvA)) {
                    ++bad;
                    if (wit.empty()) wit = b.str() + ": (phi b, phi b) = " +
                                           tensor_->form(img, img).str();
                }
            }
            rep.add("(phi pi(b), phi pi(b)) lies in 1 + v^-1 A", bad == 0, wit);
        }
    }

    return rep;
}

}  // namespace qcb
