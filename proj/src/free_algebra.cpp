#include "qcb/free_algebra.hpp"

#include <sstream>

#include "qcb/error.hpp"

namespace qcb {

FreeElement FreeElement::unit() { return single(Word()); }

FreeElement FreeElement::single(const Word& w, const RatFunc& c) {
    FreeElement x;
    if (!c.is_zero()) x.terms_[w] = c;
    return x;
}

FreeElement FreeElement::theta(int node, int mult) {
    if (mult == 0) return unit();
    return single(Word({{node, mult}}));
}

RatFunc FreeElement::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? RatFunc() : it->second;
}

FreeElement& FreeElement::add_term(const Word& w, const RatFunc& c) {
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_[w] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
    FreeElement r = *this;
    r += o;
    return r;
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

FreeElement FreeElement::operator-() const {
    FreeElement r;
    for (const auto& [w, c] : terms_) r.terms_[w] = -c;
    return r;
}

FreeElement FreeElement::operator-(const FreeElement& o) const { return *this + (-o); }

FreeElement& FreeElement::operator-=(const FreeElement& o) { return *this += -o; }

FreeElement FreeElement::operator*(const FreeElement& o) const {
    FreeElement r;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) r.add_term(w1.concat(w2), c1 * c2);
    return r;
}

FreeElement FreeElement::operator*(const RatFunc& c) const {
    FreeElement r;
    if (c.is_zero()) return r;
    for (const auto& [w, c0] : terms_) r.terms_[w] = c0 * c;
    return r;
}

std::string FreeElement::str(const CartanDatum& d) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) out << " + ";
        out << "(" << c.str() << ")*" << w.str(d);
        first = false;
    }
    return out.str();
}

bool is_homogeneous(const CartanDatum& d, const FreeElement& x, NodeVec* nu) {
    bool have = false;
    NodeVec w0;
    for (const auto& [w, c] : x.terms()) {
        NodeVec wn = w.weight(d);
        if (!have) {
            w0 = wn;
            have = true;
        } else if (wn != w0) {
            return false;
        }
    }
    if (have && nu) *nu = w0;
    return true;
}

NodeVec weight_of(const CartanDatum& d, const FreeElement& x) {
    check(!x.is_zero(), "weight of zero element");
    NodeVec nu;
    check(is_homogeneous(d, x, &nu), "element is not homogeneous");
    return nu;
}

namespace {

// ir(theta_a^{(t)} rest) = v^{t-1} theta_a^{(t-1)} rest
//                        + v^{t (b.a)} theta_b^{(t)} ir(rest)   [b = letter node]
FreeElement i_r_word(const CartanDatum& d, int a, const Word& w) {
    FreeElement out;
    RatFunc prefix_scale = RatFunc::one();
    Word prefix;
    for (size_t k = 0; k < w.letters.size(); ++k) {
        const Letter& l = w.letters[k];
        if (l.node == a) {
            Word term = prefix;
            if (l.mult > 1) term.letters.push_back({l.node, l.mult - 1});
            for (size_t j = k + 1; j < w.letters.size(); ++j) term.letters.push_back(w.letters[j]);
            out.add_term(term, prefix_scale * RatFunc::v_pow(l.mult - 1));
        }
        prefix_scale *= RatFunc::v_pow(l.mult * d.dot(l.node, a));
        prefix.letters.push_back(l);
    }
    return out;
}

FreeElement r_i_word(const CartanDatum& d, int a, const Word& w) {
    FreeElement out;
    RatFunc suffix_scale = RatFunc::one();
    for (size_t k = w.letters.size(); k-- > 0;) {
        const Letter& l = w.letters[k];
        if (l.node == a) {
            Word term;
            for (size_t j = 0; j < k; ++j) term.letters.push_back(w.letters[j]);
            if (l.mult > 1) term.letters.push_back({l.node, l.mult - 1});
            for (size_t j = k + 1; j < w.letters.size(); ++j) term.letters.push_back(w.letters[j]);
            out.add_term(term, suffix_scale * RatFunc::v_pow(l.mult - 1));
        }
        suffix_scale *= RatFunc::v_pow(l.mult * d.dot(l.node, a));
    }
    return out;
}

}  // namespace

FreeElement i_r(const CartanDatum& d, int a, const FreeElement& x) {
    FreeElement out;
    for (const auto& [w, c] : x.terms()) out += i_r_word(d, a, w) * c;
    return out;
}

FreeElement r_i(const CartanDatum& d, int a, const FreeElement& x) {
    FreeElement out;
    for (const auto& [w, c] : x.terms()) out += r_i_word(d, a, w) * c;
    return out;
}

BiElement comult(const CartanDatum& d, const FreeElement& x) {
    BiElement out;
    for (const auto& [w, c] : x.terms()) {
        // Running product over the letters; r(theta_a^{(t)}) =
        // sum_s v^{s(t-s)} theta_a^{(s)} x theta_a^{(t-s)}.
        BiElement acc{{{Word(), Word()}, c}};
        for (const auto& l : w.letters) {
            BiElement next;
            for (const auto& [pair, c0] : acc) {
                NodeVec right_wt = pair.second.weight(d);
                for (int s = 0; s <= l.mult; ++s) {
                    Word w1 = pair.first, w2 = pair.second;
                    if (s > 0) w1.letters.push_back({l.node, s});
                    if (s < l.mult) w2.letters.push_back({l.node, l.mult - s});
                    // twist v^{|x2| . |y1|} for y1 = theta^{(s)}
                    long tw = static_cast<long>(s) * d.dot(l.node, right_wt) +
                              static_cast<long>(s) * (l.mult - s);
                    RatFunc c1 = c0 * RatFunc::v_pow(static_cast<int>(tw));
                    auto key = std::make_pair(w1, w2);
                    auto it = next.find(key);
                    if (it == next.end()) next[key] = c1;
                    else {
                        it->second += c1;
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
            }
            acc = std::move(next);
        }
        for (const auto& [pair, c0] : acc) {
            auto it = out.find(pair);
            if (it == out.end()) out[pair] = c0;
            else {
                it->second += c0;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

FreeElement sigma(const FreeElement& x) {
    FreeElement out;
    for (const auto& [w, c] : x.terms()) out.add_term(w.reversed(), c);
    return out;
}

FreeElement bar_f(const FreeElement& x) {
    FreeElement out;
    for (const auto& [w, c] : x.terms()) out.add_term(w, c.bar());
    return out;
}

FreeElement serre_element(const CartanDatum& d, int a, int b) {
    check(a != b, "serre element needs distinct nodes");
    int n = 1 - d.dot(a, b);
    FreeElement out;
    for (int p = 0; p <= n; ++p) {
        FreeElement t = FreeElement::theta(a, p) * FreeElement::theta(b, 1) *
                        FreeElement::theta(a, n - p);
        out += t * RatFunc(Laurent(Int(p % 2 == 0 ? 1 : -1)));
    }
    return out;
}

RatFunc FAlgebra::form(const FreeElement& x, const FreeElement& y) {
    RatFunc out;
    for (const auto& [w1, c1] : x.terms())
        for (const auto& [w2, c2] : y.terms()) {
            RatFunc f = form_words(w1, w2);
            if (!f.is_zero()) out += c1 * c2 * f;
        }
    return out;
}

RatFunc FAlgebra::form_words(const Word& a, const Word& b) {
    if (a.weight(d_) != b.weight(d_)) return RatFunc();
    if (a.empty()) return RatFunc::one();
    auto key = std::make_pair(a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    // Peel the first letter theta_n^{(t)} of a:
    // (theta_n^{(t)} a', b) = (1/([t]! (1-v^{-2})^t)) (a', ir_n^t(b)).
    Letter l = a.letters.front();
    Word rest = a;
    rest.letters.erase(rest.letters.begin());
    FreeElement z = FreeElement::single(b);
    for (int s = 0; s < l.mult; ++s) z = i_r(d_, l.node, z);
    RatFunc scale =
        RatFunc::one() /
        (RatFunc(quantum_factorial(l.mult)) *
         [&] {
             RatFunc p = RatFunc::one(), base = RatFunc::one() - RatFunc::v_pow(-2);
             for (int s = 0; s < l.mult; ++s) p *= base;
             return p;
         }());
    RatFunc out;
    for (const auto& [u, c] : z.terms()) {
        RatFunc f = form_words(rest, u);
        if (!f.is_zero()) out += c * f;
    }
    out *= scale;
    memo_[key] = out;
    return out;
}

const Mat& FAlgebra::gram(const NodeVec& nu) {
    auto it = gram_.find(nu);
    if (it != gram_.end()) return it->second;
    auto words = enumerate_words(d_, nu);
    Mat g(words.size(), words.size());
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i; j < words.size(); ++j) {
            RatFunc f = form_words(words[i], words[j]);
            g.at(i, j) = f;
            g.at(j, i) = f;
        }
    return gram_.emplace(nu, std::move(g)).first->second;
}

size_t FAlgebra::dim(const NodeVec& nu) { return rank(gram(nu)); }

bool FAlgebra::equals_in_f(const FreeElement& x, const FreeElement& y) {
    FreeElement diff = x - y;
    if (diff.is_zero()) return true;
    // Pair each homogeneous part against all spanning words of its weight.
    std::map<NodeVec, FreeElement> parts;
    for (const auto& [w, c] : diff.terms()) parts[w.weight(d_)].add_term(w, c);
    for (const auto& [nu, part] : parts)
        for (const auto& w : enumerate_words(d_, nu))
            if (!form(part, FreeElement::single(w)).is_zero()) return false;
    return true;
}

}  // namespace qcb
