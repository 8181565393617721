#include "qcb/ratfunc.hpp"

#include <climits>
#include <sstream>

#include "json.hpp"
#include "qcb/error.hpp"

namespace qcb {

namespace {

using Poly = std::vector<Int>;  // dense over Z, index = exponent

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }  // -1 for zero

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r = a;
    if (b.size() > r.size()) r.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Poly neg(const Poly& a) {
    Poly r = a;
    for (auto& c : r) c = -c;
    return r;
}

Int content(const Poly& p) {
    Int g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;  // zero for the zero polynomial
}

Poly div_int_exact(const Poly& p, const Int& d) {
    Poly r = p;
    for (auto& c : r) {
        check(mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()) != 0, "non-exact content division");
        c /= d;
    }
    return r;
}

Poly primitive(const Poly& p) {
    if (p.empty()) return p;
    Int c = content(p);
    if (p.back() < 0) c = -c;
    return div_int_exact(p, c);
}

// Pseudo-remainder of a by b (deg a >= deg b, b nonzero).
Poly prem(Poly a, const Poly& b) {
    const Int& lb = b.back();
    int k = deg(a) - deg(b);
    for (int step = 0; step <= k; ++step) {
        int d = deg(a) - deg(b);
        if (d < 0) break;
        Int la = a.empty() ? Int(0) : a.back();
        for (auto& c : a) c *= lb;
        for (size_t j = 0; j < b.size(); ++j) a[j + d] -= la * b[j];
        trim(a);
    }
    return a;
}

// Full gcd in Z[v] including integer content, leading coefficient positive.
Poly gcd_poly(Poly a, Poly b) {
    trim(a);
    trim(b);
    if (a.empty()) return primitive(b);
    if (b.empty()) return primitive(a);
    Int ca = content(a), cb = content(b);
    Int cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = primitive(a);
    b = primitive(b);
    if (deg(a) < deg(b)) std::swap(a, b);
    while (!b.empty()) {
        Poly r = prem(a, b);
        a = b;
        b = primitive(r);
    }
    Poly g = a;
    for (auto& c : g) c *= cg;
    if (!g.empty() && g.back() < 0) g = neg(g);
    return g;
}

// Exact polynomial division; throws unless d | p.
Poly div_poly_exact(const Poly& p, const Poly& d) {
    check(!d.empty(), "polynomial division by zero");
    if (p.empty()) return {};
    check(p.size() >= d.size(), "non-exact polynomial division");
    Poly rem = p, quo(p.size() - d.size() + 1);
    const Int& lead = d.back();
    for (int k = static_cast<int>(quo.size()) - 1; k >= 0; --k) {
        Int top = rem[k + d.size() - 1];
        if (top == 0) continue;
        check(mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()) != 0,
              "non-exact polynomial division");
        quo[k] = top / lead;
        for (size_t j = 0; j < d.size(); ++j) rem[k + j] -= quo[k] * d[j];
    }
    for (const auto& c : rem) check(c == 0, "non-exact polynomial division");
    trim(quo);
    return quo;
}

Poly from_laurent_shifted(const Laurent& p, int shift) {
    Poly r;
    if (p.is_zero()) return r;
    r.resize(p.max_exp() + shift + 1);
    for (const auto& [e, c] : p.terms()) r[e + shift] = c;
    return r;
}

Poly reversed(const Poly& p) {
    Poly r(p.rbegin(), p.rend());
    trim(r);
    return r;
}

}  // namespace

RatFunc::RatFunc() : den_{Int(1)} {}

RatFunc::RatFunc(long c) : den_{Int(1)} {
    if (c != 0) num_ = {Int(c)};
}

RatFunc::RatFunc(const Laurent& p) : den_{Int(1)} {
    if (p.is_zero()) return;
    int s = std::min(0, p.min_exp());
    num_ = from_laurent_shifted(p, -s);
    if (s < 0) {
        den_.assign(-s + 1, Int(0));
        den_.back() = 1;
    }
    normalize();
}

RatFunc::RatFunc(const Laurent& num, const Laurent& den) {
    check(!den.is_zero(), "zero denominator");
    RatFunc n(num), d(den);
    *this = n / d;
}

void RatFunc::normalize() {
    trim(num_);
    trim(den_);
    check(!den_.empty(), "zero denominator");
    if (num_.empty()) {
        den_ = {Int(1)};
        return;
    }
    Poly g = gcd_poly(num_, den_);
    if (deg(g) > 0 || g[0] != 1) {
        num_ = div_poly_exact(num_, g);
        den_ = div_poly_exact(den_, g);
    }
    if (den_.back() < 0) {
        num_ = neg(num_);
        den_ = neg(den_);
    }
}

bool RatFunc::is_one() const {
    return num_.size() == 1 && num_[0] == 1 && den_.size() == 1 && den_[0] == 1;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = neg(r.num_);
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    RatFunc r;
    r.num_ = add(mul(num_, o.den_), mul(o.num_, den_));
    r.den_ = mul(den_, o.den_);
    r.normalize();
    return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    RatFunc r;
    r.num_ = mul(num_, o.num_);
    r.den_ = mul(den_, o.den_);
    if (r.num_.empty()) r.den_ = {Int(1)};
    else r.normalize();
    return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc& RatFunc::operator+=(const RatFunc& o) { return *this = *this + o; }
RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this = *this - o; }
RatFunc& RatFunc::operator*=(const RatFunc& o) { return *this = *this * o; }

RatFunc RatFunc::inverse() const {
    check(!is_zero(), "inverse of zero");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_.back() < 0) {
        r.num_ = neg(r.num_);
        r.den_ = neg(r.den_);
    }
    return r;
}

RatFunc RatFunc::bar() const {
    if (is_zero()) return RatFunc();
    // f(1/v) = rev(num) v^{deg den - deg num} / rev(den)
    RatFunc r;
    r.num_ = reversed(num_);
    r.den_ = reversed(den_);
    int shift = deg(den_) - deg(num_);
    Poly vs(std::abs(shift) + 1, Int(0));
    vs.back() = 1;
    if (shift > 0) r.num_ = mul(r.num_, vs);
    else if (shift < 0) r.den_ = mul(r.den_, vs);
    r.normalize();
    return r;
}

std::optional<Laurent> RatFunc::as_laurent() const {
    if (is_zero()) return Laurent();
    // Reduced form: Laurent iff den = v^k.
    for (size_t i = 0; i + 1 < den_.size(); ++i)
        if (den_[i] != 0) return std::nullopt;
    if (den_.back() != 1) return std::nullopt;
    int k = deg(den_);
    Laurent r;
    for (size_t e = 0; e < num_.size(); ++e)
        if (num_[e] != 0) r += Laurent(num_[e], static_cast<int>(e) - k);
    return r;
}

Laurent RatFunc::laurent() const {
    auto l = as_laurent();
    check(l.has_value(), "value is not a Laurent polynomial: " + str());
    return *l;
}

int RatFunc::degree_at_infinity() const {
    if (is_zero()) return INT_MIN;
    return deg(num_) - deg(den_);
}

bool RatFunc::satisfies(LatticeTest t) const {
    switch (t) {
        case LatticeTest::ZvInv: {
            auto l = as_laurent();
            return l && l->in_z_vinv();
        }
        case LatticeTest::VinvZvInv: {
            auto l = as_laurent();
            return l && l->in_vinv_z_vinv();
        }
        case LatticeTest::ARing:
            return is_zero() || degree_at_infinity() <= 0;
        case LatticeTest::VinvA:
            return is_zero() || degree_at_infinity() < 0;
    }
    return false;
}

bool lattice_test(const RatFunc& f, LatticeTest t) { return f.satisfies(t); }

namespace {
std::string poly_str(const Poly& p) {
    Laurent l;
    for (size_t e = 0; e < p.size(); ++e)
        if (p[e] != 0) l += Laurent(p[e], static_cast<int>(e));
    return l.str();
}
}  // namespace

std::string RatFunc::str() const {
    auto l = as_laurent();
    if (l) return l->str();
    return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

std::string RatFunc::to_json() const {
    auto l = as_laurent();
    if (l) return l->to_json();
    Laurent n, d;
    for (size_t e = 0; e < num_.size(); ++e)
        if (num_[e] != 0) n += Laurent(num_[e], static_cast<int>(e));
    for (size_t e = 0; e < den_.size(); ++e)
        if (den_[e] != 0) d += Laurent(den_[e], static_cast<int>(e));
    nlohmann::json j;
    j["num"] = nlohmann::json::parse(n.to_json());
    j["den"] = nlohmann::json::parse(d.to_json());
    return j.dump();
}

RatFunc RatFunc::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    check(j.is_object(), "RatFunc json must be an object");
    if (j.contains("num") && j.contains("den"))
        return RatFunc(Laurent::from_json(j["num"].dump()), Laurent::from_json(j["den"].dump()));
    return RatFunc(Laurent::from_json(text));
}

}  // namespace qcb
