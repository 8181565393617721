#include "qcb/cartan.hpp"

#include <set>
#include <sstream>

#include "qcb/error.hpp"

namespace qcb {

CartanDatum CartanDatum::make(const std::vector<std::string>& names,
                              const std::vector<std::vector<int>>& pairing) {
    CartanDatum d;
    check(!names.empty(), "datum needs at least one node");
    check(pairing.size() == names.size(), "pairing matrix size mismatch");
    std::set<std::string> seen;
    for (const auto& n : names) {
        check(!n.empty(), "empty node name");
        check(seen.insert(n).second, "duplicate node name: " + n);
    }
    for (size_t a = 0; a < names.size(); ++a) {
        check(pairing[a].size() == names.size(), "pairing matrix not square");
        check(pairing[a][a] == 2, "diagonal pairing must be 2");
        for (size_t b = 0; b < names.size(); ++b) {
            check(pairing[a][b] == pairing[b][a], "pairing matrix not symmetric");
            if (a != b) check(pairing[a][b] <= 0, "off-diagonal pairing must be <= 0");
        }
    }
    d.names_ = names;
    d.pairing_ = pairing;
    d.gen_.assign(names.size(), 0);
    d.base_of_.resize(names.size());
    for (size_t a = 0; a < names.size(); ++a) d.base_of_[a] = static_cast<int>(a);
    return d;
}

CartanDatum CartanDatum::a1() { return make({"i"}, {{2}}); }

CartanDatum CartanDatum::a2() { return make({"i", "j"}, {{2, -1}, {-1, 2}}); }

CartanDatum CartanDatum::frame() const {
    CartanDatum d = *this;
    int newgen = max_gen_ + 1;
    std::vector<int> base_nodes;
    for (size_t a = 0; a < size(); ++a)
        if (gen_[a] == 0) base_nodes.push_back(static_cast<int>(a));
    size_t old = size(), added = base_nodes.size();
    for (auto& row : d.pairing_) row.resize(old + added, 0);
    for (size_t k = 0; k < added; ++k) {
        int b = base_nodes[k];
        d.names_.push_back(names_[b] + std::string(newgen, '\''));
        d.gen_.push_back(newgen);
        d.base_of_.push_back(b);
        std::vector<int> row(old + added, 0);
        row[b] = -1;
        row[old + k] = 2;
        d.pairing_[b][old + k] = -1;
        d.pairing_.push_back(row);
    }
    d.max_gen_ = newgen;
    return d;
}

size_t CartanDatum::base_size() const {
    size_t n = 0;
    for (int g : gen_)
        if (g < max_gen_) ++n;
    return max_gen_ == 0 ? size() : n;
}

int CartanDatum::node_index(const std::string& name) const {
    for (size_t a = 0; a < names_.size(); ++a)
        if (names_[a] == name) return static_cast<int>(a);
    throw error("unknown node: " + name);
}

int CartanDatum::frame_partner(int a) const {
    check(max_gen_ > 0, "datum is not framed");
    check(gen_[a] == 0, "frame partner only attaches to generation-0 nodes");
    for (size_t b = 0; b < size(); ++b)
        if (gen_[b] == max_gen_ && base_of_[b] == a) return static_cast<int>(b);
    throw error("no frame partner found");
}

bool CartanDatum::is_a1_shape() const { return size() == 1; }

bool CartanDatum::is_a2_shape() const {
    return size() == 2 && pairing_[0][1] == -1;
}

long CartanDatum::dot(const NodeVec& x, const NodeVec& y) const {
    check(x.size() == size() && y.size() == size(), "NodeVec size mismatch");
    long s = 0;
    for (size_t a = 0; a < size(); ++a)
        for (size_t b = 0; b < size(); ++b) s += static_cast<long>(x[a]) * y[b] * pairing_[a][b];
    return s;
}

long CartanDatum::dot(int a, const NodeVec& y) const {
    check(y.size() == size(), "NodeVec size mismatch");
    long s = 0;
    for (size_t b = 0; b < size(); ++b) s += static_cast<long>(y[b]) * pairing_[a][b];
    return s;
}

std::string CartanDatum::describe() const {
    std::ostringstream out;
    out << "nodes=";
    for (size_t a = 0; a < size(); ++a) out << (a ? "," : "") << names_[a];
    out << ";gen=";
    for (size_t a = 0; a < size(); ++a) out << (a ? "," : "") << gen_[a];
    out << ";matrix=";
    for (size_t a = 0; a < size(); ++a) {
        if (a) out << ";";
        for (size_t b = 0; b < size(); ++b) out << (b ? "," : "") << pairing_[a][b];
    }
    return out.str();
}

std::string CartanDatum::fingerprint() const {
    // FNV-1a 64-bit over the describe() string.
    const std::string s = describe();
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

bool Weight::dominant() const {
    for (int p : pairings)
        if (p < 0) return false;
    return true;
}

std::string Weight::str() const {
    std::ostringstream out;
    out << "(";
    for (size_t a = 0; a < pairings.size(); ++a) out << (a ? "," : "") << pairings[a];
    out << ")";
    return out.str();
}

long trace(const NodeVec& nu) {
    long s = 0;
    for (int c : nu) s += c;
    return s;
}

NodeVec nodevec_add(const NodeVec& a, const NodeVec& b) {
    check(a.size() == b.size(), "NodeVec size mismatch");
    NodeVec r = a;
    for (size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    return r;
}

NodeVec nodevec_sub(const NodeVec& a, const NodeVec& b) {
    check(a.size() == b.size(), "NodeVec size mismatch");
    NodeVec r = a;
    for (size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
    return r;
}

bool nodevec_leq(const NodeVec& a, const NodeVec& b) {
    check(a.size() == b.size(), "NodeVec size mismatch");
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

long pair_shifted(const CartanDatum& d, int a, const Weight& w, const NodeVec& nu) {
    check(w.pairings.size() == d.size(), "weight size mismatch");
    return w.pairings[a] - d.dot(a, nu);
}

Weight odot(const CartanDatum& framed, const Weight& xi, const Weight& lam) {
    check(framed.max_generation() > 0, "odot needs a framed datum");
    check(xi.pairings.size() == framed.size(), "xi must live on the framed datum");
    check(lam.pairings.size() == framed.base_size(), "lam must live on the base datum");
    check(lam.dominant(), "lam must be dominant");
    Weight w = xi;
    for (size_t a = 0; a < framed.size(); ++a)
        if (framed.generation(static_cast<int>(a)) == framed.max_generation())
            w.pairings[a] = lam.pairings[framed.base_node(static_cast<int>(a))];
    return w;
}

NodeVec theta_lambda_weight(const CartanDatum& framed, const Weight& lam) {
    check(framed.max_generation() > 0, "needs a framed datum");
    check(lam.pairings.size() == framed.base_size(), "lam must live on the base datum");
    check(lam.dominant(), "lam must be dominant");
    NodeVec nu(framed.size(), 0);
    for (size_t a = 0; a < framed.size(); ++a)
        if (framed.generation(static_cast<int>(a)) == 0)
            nu[framed.frame_partner(static_cast<int>(a))] = lam.pairings[a];
    return nu;
}

}  // namespace qcb
