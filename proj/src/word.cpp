#include "qcb/word.hpp"

#include <algorithm>
#include <sstream>

#include "qcb/error.hpp"

namespace qcb {

Word::Word(std::vector<Letter> ls) {
    for (const auto& l : ls) {
        check(l.mult >= 0, "negative letter multiplicity");
        if (l.mult > 0) letters.push_back(l);
    }
}

NodeVec Word::weight(const CartanDatum& d) const {
    NodeVec nu(d.size(), 0);
    for (const auto& l : letters) {
        check(l.node >= 0 && static_cast<size_t>(l.node) < d.size(), "letter node out of range");
        nu[l.node] += l.mult;
    }
    return nu;
}

Word Word::concat(const Word& o) const {
    Word r = *this;
    r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
    return r;
}

Word Word::reversed() const {
    Word r = *this;
    std::reverse(r.letters.begin(), r.letters.end());
    return r;
}

std::string Word::str(const CartanDatum& d) const {
    if (letters.empty()) return "1";
    std::ostringstream out;
    for (size_t k = 0; k < letters.size(); ++k) {
        if (k) out << ".";
        out << d.name(letters[k].node) << "(" << letters[k].mult << ")";
    }
    return out.str();
}

Word Word::parse(const CartanDatum& d, const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty() || s == "1") return Word();
    std::vector<Letter> ls;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t dot = s.find('.', pos);
        std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        size_t open = tok.find('(');
        std::string name = tok;
        int mult = 1;
        if (open != std::string::npos) {
            check(tok.back() == ')', "malformed letter: " + tok);
            name = tok.substr(0, open);
            std::string m = tok.substr(open + 1, tok.size() - open - 2);
            check(!m.empty() && m.find_first_not_of("0123456789") == std::string::npos,
                  "malformed multiplicity: " + tok);
            mult = std::stoi(m);
        }
        ls.push_back({d.node_index(name), mult});
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return Word(ls);
}

namespace {

void gen_words(const CartanDatum& d, NodeVec rest, int prev_node, std::vector<Letter>& acc,
               std::vector<Word>& out) {
    bool done = true;
    for (int c : rest)
        if (c != 0) done = false;
    if (done) {
        out.push_back(Word(acc));
        return;
    }
    for (size_t a = 0; a < d.size(); ++a) {
        if (static_cast<int>(a) == prev_node || rest[a] == 0) continue;
        for (int m = 1; m <= rest[a]; ++m) {
            acc.push_back({static_cast<int>(a), m});
            NodeVec next = rest;
            next[a] -= m;
            gen_words(d, next, static_cast<int>(a), acc, out);
            acc.pop_back();
        }
    }
}

}  // namespace

std::vector<Word> enumerate_words(const CartanDatum& d, const NodeVec& nu) {
    check(nu.size() == d.size(), "weight size mismatch");
    for (int c : nu) check(c >= 0, "weight must be in N[I]");
    std::vector<Word> out;
    std::vector<Letter> acc;
    gen_words(d, nu, -1, acc, out);
    std::sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
        std::vector<int> nx, ny, mx, my;
        for (const auto& l : x.letters) nx.push_back(l.node), mx.push_back(l.mult);
        for (const auto& l : y.letters) ny.push_back(l.node), my.push_back(l.mult);
        if (nx != ny) return nx < ny;
        return mx < my;
    });
    return out;
}

}  // namespace qcb
