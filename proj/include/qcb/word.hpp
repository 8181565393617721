#pragma once

#include <string>
#include <vector>

#include "qcb/cartan.hpp"

namespace qcb {

/// One divided-power letter theta_a^{(mult)}, mult >= 1.
struct Letter {
    int node;
    int mult;
    auto operator<=>(const Letter&) const = default;
};

/// Monomial in divided-power letters.  The empty word is the unit.  Letters
/// with multiplicity 0 are dropped on construction; adjacent letters may
/// repeat a node (theta_i theta_i and theta_i^{(2)} are different words).
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls);

    bool empty() const { return letters.empty(); }
    NodeVec weight(const CartanDatum& d) const;
    Word concat(const Word& o) const;
    Word reversed() const;

    /// Text form "i(2).i'(3).i(1)"; the empty word renders as "1".
    std::string str(const CartanDatum& d) const;
    static Word parse(const CartanDatum& d, const std::string& text);

    auto operator<=>(const Word&) const = default;
};

/// All words of weight nu whose adjacent letters use distinct nodes, in
/// lexicographic order by node index sequence, ties by multiplicity sequence.
std::vector<Word> enumerate_words(const CartanDatum& d, const NodeVec& nu);

}  // namespace qcb
