#include "qcb/laurent.hpp"

#include <sstream>
#include <vector>

#include "json.hpp"
#include "qcb/error.hpp"

namespace qcb {

Laurent::Laurent(long c) {
    if (c != 0) terms_[0] = Int(c);
}

Laurent::Laurent(const Int& c) {
    if (c != 0) terms_[0] = c;
}

Laurent::Laurent(const Int& c, int e) {
    if (c != 0) terms_[e] = c;
}

bool Laurent::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

Int Laurent::coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
}

int Laurent::min_exp() const {
    check(!terms_.empty(), "min_exp of zero");
    return terms_.begin()->first;
}

int Laurent::max_exp() const {
    check(!terms_.empty(), "max_exp of zero");
    return terms_.rbegin()->first;
}

void Laurent::strip() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) it = terms_.erase(it);
        else ++it;
    }
}

Laurent Laurent::operator-() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    strip();
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] -= c;
    strip();
    return *this;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent r = *this;
    r += o;
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
    Laurent r = *this;
    r -= o;
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
    Laurent r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.terms_[e1 + e2] += c1 * c2;
    r.strip();
    return r;
}

Laurent& Laurent::operator*=(const Laurent& o) {
    *this = *this * o;
    return *this;
}

Laurent Laurent::shifted(int e) const {
    Laurent r;
    for (const auto& [e1, c] : terms_) r.terms_[e1 + e] = c;
    return r;
}

Laurent Laurent::divide_exact(const Laurent& d) const {
    check(!d.is_zero(), "division by zero");
    if (is_zero()) return Laurent();
    // Shift both operands into ordinary polynomials and run long division,
    // checking exact coefficient divisibility at every step.
    int sn = min_exp(), sd = d.min_exp();
    std::vector<Int> num(max_exp() - sn + 1), den(d.max_exp() - sd + 1);
    for (const auto& [e, c] : terms_) num[e - sn] = c;
    for (const auto& [e, c] : d.terms_) den[e - sd] = c;
    check(num.size() >= den.size(), "non-exact Laurent division");
    std::vector<Int> quo(num.size() - den.size() + 1);
    const Int& lead = den.back();
    for (int k = static_cast<int>(quo.size()) - 1; k >= 0; --k) {
        Int top = num[k + den.size() - 1];
        if (top == 0) continue;
        check(mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()) != 0,
              "non-exact Laurent division");
        quo[k] = top / lead;
        for (size_t j = 0; j < den.size(); ++j) num[k + j] -= quo[k] * den[j];
    }
    for (const auto& c : num) check(c == 0, "non-exact Laurent division");
    Laurent r;
    for (size_t k = 0; k < quo.size(); ++k)
        if (quo[k] != 0) r.terms_[static_cast<int>(k) + sn - sd] = quo[k];
    return r;
}

Laurent Laurent::bar() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
}

bool Laurent::in_z_vinv() const {
    return terms_.empty() || max_exp() <= 0;
}

bool Laurent::in_vinv_z_vinv() const {
    return terms_.empty() || max_exp() < 0;
}

bool Laurent::coeffs_nonnegative() const {
    for (const auto& [e, c] : terms_)
        if (c < 0) return false;
    return true;
}

Int Laurent::constant_value() const {
    if (terms_.empty()) return Int(0);
    check(terms_.size() == 1 && terms_.begin()->first == 0, "value is not constant");
    return terms_.begin()->second;
}

Laurent Laurent::negative_part() const {
    Laurent r;
    for (const auto& [e, c] : terms_)
        if (e < 0) r.terms_[e] = c;
    return r;
}

std::string Laurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Highest exponent first reads like usual polynomial notation.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Int a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (e == 0) out << a.get_str();
        else {
            if (a != 1) out << a.get_str() << "*";
            out << "v";
            if (e != 1) out << "^" << e;
        }
        first = false;
    }
    return out.str();
}

std::string Laurent::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, c] : terms_) j[std::to_string(e)] = c.get_str();
    return j.dump();
}

Laurent Laurent::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    check(j.is_object(), "Laurent json must be an object");
    Laurent r;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int e = std::stoi(it.key());
        Int c(it.value().get<std::string>());
        if (c != 0) r.terms_[e] = c;
    }
    return r;
}

Laurent quantum_integer(int n) {
    // (v^n - v^{-n})/(v - v^{-1}) = v^{n-1} + v^{n-3} + ... + v^{1-n}
    if (n == 0) return Laurent();
    if (n < 0) return -quantum_integer(-n);
    Laurent r;
    for (int e = -(n - 1); e <= n - 1; e += 2) r += Laurent::v_pow(e);
    return r;
}

Laurent quantum_factorial(int n) {
    check(n >= 0, "quantum_factorial needs n >= 0");
    Laurent r = Laurent::one();
    for (int k = 2; k <= n; ++k) r *= quantum_integer(k);
    return r;
}

Laurent quantum_binomial(int n, int m) {
    check(m >= 0, "quantum_binomial needs m >= 0");
    Laurent num = Laurent::one();
    for (int k = 0; k < m; ++k)
        num *= Laurent::v_pow(n - k) - Laurent::v_pow(-n + k);
    Laurent den = Laurent::one();
    for (int k = 1; k <= m; ++k)
        den *= Laurent::v_pow(k) - Laurent::v_pow(-k);
    // divide_exact throws unless the quotient lands in Z[v,v^{-1}].
    return num.divide_exact(den);
}

}  // namespace qcb
