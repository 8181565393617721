#pragma once

#include <string>
#include <vector>

namespace qcb {

/// Element of Z[I] for a fixed datum, component per node in datum order.
using NodeVec = std::vector<int>;

/// Symmetric Cartan datum over a finite node set.  Nodes carry a framing
/// generation: 0 for original nodes, g>0 for partners added by the g-th
/// application of frame().  Partners always attach to generation-0 nodes.
class CartanDatum {
public:
    static CartanDatum make(const std::vector<std::string>& names,
                            const std::vector<std::vector<int>>& pairing);
    static CartanDatum a1();
    static CartanDatum a2();

    /// Framed datum: one new node per generation-0 node, pairing -1 with its
    /// partner, 0 with every other existing node, and 2 * delta among the new
    /// nodes.  New nodes are appended in base order with a ' suffix.
    CartanDatum frame() const;

    size_t size() const { return names_.size(); }
    int dot(int a, int b) const { return pairing_[a][b]; }
    const std::string& name(int a) const { return names_[a]; }
    int generation(int a) const { return gen_[a]; }
    /// Generation-0 node a partner is attached to (identity for gen 0).
    int base_node(int a) const { return base_of_[a]; }
    int max_generation() const { return max_gen_; }
    /// Nodes of generation < max_generation(), always a prefix of the list.
    size_t base_size() const;
    const std::vector<std::vector<int>>& matrix() const { return pairing_; }

    /// Index lookup by name; throws on unknown names.
    int node_index(const std::string& name) const;
    /// Partner of a generation-0 node at the top generation; throws unless
    /// the datum is framed and the node has generation 0.
    int frame_partner(int a) const;

    bool is_a1_shape() const;
    bool is_a2_shape() const;

    /// x . y extended bilinearly to Z[I].
    long dot(const NodeVec& x, const NodeVec& y) const;
    /// node . y
    long dot(int a, const NodeVec& y) const;

    /// Stable content string and short hash, used for cache keys.
    std::string describe() const;
    std::string fingerprint() const;

    bool operator==(const CartanDatum& o) const {
        return names_ == o.names_ && gen_ == o.gen_ && pairing_ == o.pairing_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> gen_;
    std::vector<int> base_of_;
    std::vector<std::vector<int>> pairing_;
    int max_gen_ = 0;
};

/// Integral weight, stored through its pairings <a, w> with the datum nodes.
struct Weight {
    std::vector<int> pairings;

    int operator[](size_t a) const { return pairings[a]; }
    bool dominant() const;
    bool operator==(const Weight& o) const { return pairings == o.pairings; }
    std::string str() const;
};

/// tr nu = sum of components.
long trace(const NodeVec& nu);
NodeVec nodevec_add(const NodeVec& a, const NodeVec& b);
NodeVec nodevec_sub(const NodeVec& a, const NodeVec& b);
bool nodevec_leq(const NodeVec& a, const NodeVec& b);

/// <a, w - nu> for a node a, weight w and nu in Z[I].
long pair_shifted(const CartanDatum& d, int a, const Weight& w, const NodeVec& nu);

/// Combined weight for a framed datum: components of xi on nodes below the
/// top generation, components <i, lam> on the top-generation partner of each
/// generation-0 node i.  lam lives on the base datum (prefix components) and
/// must be dominant.
Weight odot(const CartanDatum& framed, const Weight& xi, const Weight& lam);

/// Weight of theta_lambda in N[I~]: <i, lam> on the partner of each
/// generation-0 node i, zero elsewhere.
NodeVec theta_lambda_weight(const CartanDatum& framed, const Weight& lam);

}  // namespace qcb
