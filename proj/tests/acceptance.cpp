// End-to-end acceptance: one line per criterion, exit 0 only when all hold.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <qcb/crystal.hpp>
#include <qcb/framed.hpp>
#include <qcb/linalg.hpp>

using namespace qcb;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void criterion(const std::string& name, const std::function<std::string()>& body) {
    auto t0 = Clock::now();
    std::string witness;
    try {
        witness = body();
    } catch (const std::exception& e) {
        witness = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    if (witness.empty()) {
        std::printf("[PASS] %s (%lld ms)\n", name.c_str(), static_cast<long long>(ms));
    } else {
        std::printf("[FAIL] %s :: %s\n", name.c_str(), witness.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

std::string report_witness(const Report& rep) {
    if (rep.all_pass()) return "";
    for (const auto& c : rep.checks())
        if (!c.pass) return c.name + (c.witness.empty() ? "" : " :: " + c.witness);
    return "unknown failure";
}

// Cached rank-one framed setups keyed by (m, n).
FramedSetup& setup_a1(int m, int n) {
    static std::map<std::pair<int, int>, std::unique_ptr<FramedSetup>> pool;
    auto& slot = pool[{m, n}];
    if (!slot)
        slot = std::make_unique<FramedSetup>(CartanDatum::a1(), Weight{{m}}, Weight{{n}});
    return *slot;
}

FramedSetup& setup_a2(const std::vector<int>& xi, const std::vector<int>& lam) {
    static std::map<std::pair<std::vector<int>, std::vector<int>>,
                    std::unique_ptr<FramedSetup>>
        pool;
    auto& slot = pool[{xi, lam}];
    if (!slot)
        slot = std::make_unique<FramedSetup>(CartanDatum::a2(), Weight{xi}, Weight{lam});
    return *slot;
}

const std::vector<std::vector<int>> kA2Weights = {{1, 0}, {0, 1}, {1, 1}};

std::string check_diamond_positivity(TensorProduct& tp, const NodeVec& total) {
    for (const auto& idx : tp.group(total)) {
        for (const auto& [j, c] : tp.diamond(idx)) {
            if (j == idx) {
                if (!(c == RatFunc::one())) return "leading coefficient differs from 1";
                continue;
            }
            auto l = c.as_laurent();
            if (!l) return "off-leading coordinate is not a Laurent polynomial";
            if (!l->coeffs_nonnegative() || !l->in_vinv_z_vinv())
                return "off-leading coordinate " + l->str() + " outside v^-1 N[v^-1]";
        }
    }
    return "";
}

} // namespace

int main() {
    auto suite_start = Clock::now();
    std::printf("acceptance suite\n================\n");

    criterion("closed-form diamond tables match on five shapes", [] {
        const std::vector<std::pair<int, int>> shapes = {
            {1, 1}, {2, 1}, {2, 2}, {3, 2}, {4, 3}};
        for (auto [m, n] : shapes) {
            FramedSetup& fs = setup_a1(m, n);
            for (int k = 0; k <= m; ++k)
                for (int l = 0; l <= n; ++l) {
                    TensorProduct::Elt closed =
                        (k - l <= m - n) ? fs.alpha(k, l) : fs.beta(k, l);
                    const auto& dia = fs.tensor().diamond(
                        {CBIndex::a1(m - k), CBIndex::a1(l)});
                    if (!elt_equal(closed, dia))
                        return "mismatch at m=" + std::to_string(m) +
                               " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                               " l=" + std::to_string(l);
                    if (k - l == m - n && !elt_equal(fs.alpha(k, l), fs.beta(k, l)))
                        return "family boundary mismatch at m=" + std::to_string(m) +
                               " n=" + std::to_string(n);
                }
        }
        return std::string();
    });

    criterion("basis correspondence is a perfect bijection up to (4,4)", [] {
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n) {
                Report rep = setup_a1(m, n).verify_cb_correspondence();
                if (!rep.all_pass())
                    return "(" + std::to_string(m) + "," + std::to_string(n) +
                           ") " + report_witness(rep);
            }
        return std::string();
    });

    criterion("chevalley action coefficients are positive", [] {
        // rank-one tensor bases
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n) {
                Report rep =
                    setup_a1(m, n).verify_positivity(FramedSetup::PositivityScope::Tensor);
                if (!rep.all_pass())
                    return "tensor (" + std::to_string(m) + "," + std::to_string(n) +
                           ") " + report_witness(rep);
            }
        // framed module bases
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                Report rep =
                    setup_a1(m, n).verify_positivity(FramedSetup::PositivityScope::All);
                if (!rep.all_pass())
                    return "framed (" + std::to_string(m) + "," + std::to_string(n) +
                           ") " + report_witness(rep);
            }
        // rank-two tensor bases
        for (const auto& xi : kA2Weights)
            for (const auto& lam : kA2Weights) {
                Report rep =
                    setup_a2(xi, lam).verify_positivity(FramedSetup::PositivityScope::Tensor);
                if (!rep.all_pass()) return "rank-two pair " + report_witness(rep);
            }
        return std::string();
    });

    criterion("diamond transition coordinates lie in v^-1 N[v^-1]", [] {
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n) {
                TensorProduct& tp = setup_a1(m, n).tensor();
                for (int tr = 0; tr <= m + n; ++tr) {
                    std::string w = check_diamond_positivity(tp, NodeVec{tr});
                    if (!w.empty())
                        return "(" + std::to_string(m) + "," + std::to_string(n) +
                               ") trace " + std::to_string(tr) + ": " + w;
                }
            }
        for (const auto& xi : kA2Weights)
            for (const auto& lam : kA2Weights) {
                FramedSetup& fs = setup_a2(xi, lam);
                TensorProduct& tp = fs.tensor();
                // every realized total carrier weight of the rank-two pair
                for (const auto& nu1 : fs.module_xi().weights())
                    for (const auto& nu2 : fs.module_lam().weights()) {
                        std::string w =
                            check_diamond_positivity(tp, nodevec_add(nu1, nu2));
                        if (!w.empty()) return "rank-two: " + w;
                    }
            }
        return std::string();
    });

    criterion("module and comparison pairings agree up to (3,3)", [] {
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                Report rep = setup_a1(m, n).verify_two_pairings(4);
                if (!rep.all_pass())
                    return "(" + std::to_string(m) + "," + std::to_string(n) +
                           ") " + report_witness(rep);
            }
        return std::string();
    });

    criterion("structural identities hold", [] {
        // involutions, semilinearity, adjunction, dimensions, embeddings
        for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
            Report rep = setup_a1(m, n).verify_structure(3);
            if (!rep.all_pass())
                return "rank-one structure (" + std::to_string(m) + "," +
                       std::to_string(n) + ") " + report_witness(rep);
        }
        Report rep2 = setup_a2({1, 0}, {0, 1}).verify_structure(2);
        if (!rep2.all_pass()) return "rank-two structure " + report_witness(rep2);

        // coefficient bar is an involution
        CartanDatum d = CartanDatum::a2();
        FreeElement w = FreeElement::single(Word::parse(d, "i(2).j(1)"), RatFunc::v_pow(3)) +
                        FreeElement::theta(0, 3) * RatFunc::v_pow(-2);
        if (!(bar_f(bar_f(w)) == w)) return std::string("bar is not an involution on words");

        // defining relations stay in the form radical with multipliers, total
        // degree up to six letters
        FAlgebra alg(d);
        for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}) {
            FreeElement s = serre_element(d, a, b);
            for (int extra = 0; extra <= 3; ++extra)
                for (const Word& x : enumerate_words(d, {extra, 3 - extra})) {
                    FreeElement xe = FreeElement::single(x);
                    if (!alg.equals_in_f(xe * s, FreeElement()))
                        return std::string("left-multiplied relation escapes the radical");
                    if (!alg.equals_in_f(s * xe, FreeElement()))
                        return std::string("right-multiplied relation escapes the radical");
                }
        }

        // word Gram rank equals the canonical basis count through trace 7
        CBTable cb(alg);
        for (int t = 0; t <= 7; ++t)
            for (int a = 0; a <= t; ++a) {
                NodeVec nu{a, t - a};
                Mat g = alg.gram(nu);
                size_t rank = g.cols() - kernel_basis(g).size();
                if (rank != cb.basis(nu).size())
                    return "gram rank " + std::to_string(rank) + " vs basis " +
                           std::to_string(cb.basis(nu).size()) + " at trace " +
                           std::to_string(t);
            }

        // module canonical bases are almost orthonormal over Z[v^-1]
        auto almost_orthonormal = [](Module& mod) -> std::string {
            for (const NodeVec& nu : mod.weights()) {
                const auto& bs = mod.basis_at(nu);
                for (size_t i = 0; i < bs.size(); ++i)
                    for (size_t j = i; j < bs.size(); ++j) {
                        RatFunc c = mod.form(mod.cb().element(bs[i]),
                                             mod.cb().element(bs[j]));
                        if (i == j) c = c - RatFunc::one();
                        if (!c.satisfies(LatticeTest::VinvZvInv))
                            return "module form value " + c.str() +
                                   " outside delta + v^-1 Z[v^-1]";
                    }
            }
            return "";
        };
        FAlgebra alg1(CartanDatum::a1());
        CBTable cb1(alg1);
        for (int m = 0; m <= 4; ++m) {
            Module mod(cb1, Weight{{m}});
            std::string w2 = almost_orthonormal(mod);
            if (!w2.empty()) return w2;
        }
        Module adj(cb, Weight{{1, 1}});
        std::string w3 = almost_orthonormal(adj);
        if (!w3.empty()) return w3;

        // comparison images have norm in 1 + v^-1 A
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                FramedSetup& fs = setup_a1(m, n);
                for (const CBIndex& b : fs.b_xi_lambda()) {
                    auto img = fs.phi(FreeElement::single(b.word()));
                    RatFunc nrm = fs.tensor().form(img, img) - RatFunc::one();
                    if (!nrm.satisfies(LatticeTest::VinvA))
                        return "comparison image norm escapes 1 + v^-1 A at (" +
                               std::to_string(m) + "," + std::to_string(n) + ")";
                }
            }
        return std::string();
    });

    criterion("string operator suites hold", [] {
        CartanDatum d = CartanDatum::a2();
        FAlgebra alg(d);
        CBTable cb(alg);
        Report ep = crystal_epsphi_suite(cb, 5);
        if (!ep.all_pass()) return "raising/lowering pairing: " + report_witness(ep);

        for (int n = 0; n <= 4; ++n) {
            Report th = crystal_thetalambda_suite(setup_a1(2, n));
            if (!th.all_pass())
                return "frame-block bijection at n=" + std::to_string(n) + ": " +
                       report_witness(th);
        }

        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                Report cm = crystal_commute_suite(setup_a1(m, n), m + n);
                if (!cm.all_pass())
                    return "operator transport at (" + std::to_string(m) + "," +
                           std::to_string(n) + "): " + report_witness(cm);
            }

        // reachability through framed trace five
        for (auto [m, n, cap] :
             std::vector<std::tuple<int, int, int>>{{2, 2, 3}, {3, 2, 3}, {1, 3, 2}, {4, 1, 4}}) {
            Report rc = crystal_reach_suite(setup_a1(m, n), cap);
            if (!rc.all_pass())
                return "reachability at (" + std::to_string(m) + "," + std::to_string(n) +
                       "): " + report_witness(rc);
        }
        return std::string();
    });

    criterion("smallest shape end-to-end under five seconds", [] {
        auto t0 = Clock::now();
        FramedSetup fs(CartanDatum::a1(), Weight{{1}}, Weight{{1}});
        bool ok = fs.verify_cb_correspondence().all_pass() &&
                  fs.verify_positivity().all_pass() && fs.verify_two_pairings(3).all_pass() &&
                  fs.verify_structure(2).all_pass() &&
                  crystal_thetalambda_suite(fs).all_pass() &&
                  crystal_commute_suite(fs, 2).all_pass() &&
                  crystal_reach_suite(fs, 2).all_pass();
        auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        if (!ok) return std::string("a smoke check failed");
        if (ms >= 5000) return "took " + std::to_string(ms) + " ms";
        return std::string();
    });

    auto total_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - suite_start)
            .count();
    std::printf("================\n%s: %d failed, total %lld ms\n",
                g_failures == 0 ? "ALL CRITERIA HOLD" : "FAILURES", g_failures,
                static_cast<long long>(total_ms));
    return g_failures == 0 ? 0 : 1;
}
