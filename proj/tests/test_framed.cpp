#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qcb/framed.hpp>

using namespace qcb;

TEST_CASE("framed setup geometry") {
    FramedSetup fs(CartanDatum::a1(), Weight{{2}}, Weight{{3}});
    CHECK(fs.framed_datum().size() == 2);
    CHECK(fs.combined()[0] == 2);
    CHECK(fs.combined()[1] == 3);
    CHECK(fs.theta_lambda_word().str(fs.framed_datum()) == "i'(3)");
    CHECK(fs.theta_weight() == NodeVec{0, 3});
    CHECK(fs.framed_basis_supported());

    CHECK(fs.to_framed_vec({2}) == NodeVec{2, 0});
    CHECK(fs.base_part({2, 3}) == NodeVec{2});
    CHECK(fs.sandwich_weight({2}) == NodeVec{2, 3});
    CHECK(fs.is_sandwich_weight({4, 3}));
    CHECK_FALSE(fs.is_sandwich_weight({4, 2}));
}

TEST_CASE("rank two base framing") {
    FramedSetup fs(CartanDatum::a2(), Weight{{1, 0}}, Weight{{0, 1}});
    CHECK(fs.framed_datum().size() == 4);
    CHECK_FALSE(fs.framed_basis_supported());
    // theta_lambda multiplies the partner letters once per pairing unit
    CHECK(fs.theta_weight() == NodeVec{0, 0, 0, 1});
    // carrier-level phi still works: the highest sandwich monomial maps to
    // the highest pure tensor
    auto img = fs.phi(fs.theta_lambda());
    REQUIRE(img.size() == 1);
    CHECK(img.begin()->second == RatFunc::one());
}

TEST_CASE("sandwich words split and reassemble") {
    FramedSetup fs(CartanDatum::a1(), Weight{{1}}, Weight{{2}});
    const CartanDatum& fd = fs.framed_datum();
    Word x = Word::parse(fd, "i(1)");
    Word y = Word::parse(fd, "i(2)");
    Word w = fs.sandwich_word(x, y);
    CHECK(w.str(fd) == "i(1).i'(2).i(2)");
    auto [sx, sy] = fs.split_sandwich(w);
    CHECK(sx == x);
    CHECK(sy == y);
    CHECK_THROWS(fs.split_sandwich(Word::parse(fd, "i(1).i'(1).i(1).i'(1)")));

    auto pairs = fs.sandwich_pairs(NodeVec{2});
    CHECK(pairs.size() == 3); // x+y split of two base letters: (0,2),(1,1),(2,0)
}

TEST_CASE("sandwich rewriting") {
    FramedSetup fs(CartanDatum::a1(), Weight{{1}}, Weight{{1}});
    const CartanDatum& fd = fs.framed_datum();
    // theta_i theta_i' theta_i lies in f theta_lambda f
    FreeElement w = FreeElement::single(Word::parse(fd, "i(1).i'(1).i(1)"));
    auto combo = fs.to_sandwich(w);
    REQUIRE(combo.has_value());
    FreeElement back;
    for (const auto& [pr, c] : *combo)
        back += FreeElement::single(fs.sandwich_word(pr.first, pr.second)) * c;
    CHECK(fs.framed_alg().equals_in_f(back, w));

    // a bare partner power with the wrong multiplicity is not in the subspace
    FreeElement bad = FreeElement::single(Word::parse(fd, "i'(2)"));
    CHECK_FALSE(fs.to_sandwich(bad).has_value());
}

TEST_CASE("comparison map on small monomials") {
    FramedSetup fs(CartanDatum::a1(), Weight{{1}}, Weight{{1}});
    // phi(theta_lambda) = eta x eta
    auto top = fs.phi(fs.theta_lambda());
    CHECK(elt_equal(top, TensorProduct::pure(CBIndex::a1(0), CBIndex::a1(0))));

    // phi(theta_i theta_lambda) = eta x F eta + v^-1 F eta x eta = alpha_{1,1}
    const CartanDatum& fd = fs.framed_datum();
    auto img = fs.phi(FreeElement::single(Word::parse(fd, "i(1).i'(1)")));
    TensorProduct::Elt want;
    TensorProduct::add_to(want, {CBIndex::a1(0), CBIndex::a1(1)}, RatFunc::one());
    TensorProduct::add_to(want, {CBIndex::a1(1), CBIndex::a1(0)}, RatFunc::v_pow(-1));
    CHECK(elt_equal(img, want));
    CHECK(elt_equal(img, fs.alpha(1, 1)));

    // the right factor feeds the xi side: phi(theta_lambda theta_i) = F eta x eta
    auto img2 = fs.phi(FreeElement::single(Word::parse(fd, "i'(1).i(1)")));
    CHECK(elt_equal(img2, TensorProduct::pure(CBIndex::a1(1), CBIndex::a1(0))));
}

TEST_CASE("closed families at a small shape") {
    FramedSetup fs(CartanDatum::a1(), Weight{{2}}, Weight{{1}});
    // alpha_{1,1} = F eta x F eta + v^-2 F^(2) eta x eta  (m=2, n=1)
    TensorProduct::Elt want;
    TensorProduct::add_to(want, {CBIndex::a1(1), CBIndex::a1(1)}, RatFunc::one());
    TensorProduct::add_to(want, {CBIndex::a1(2), CBIndex::a1(0)}, RatFunc::v_pow(-2));
    CHECK(elt_equal(fs.alpha(1, 1), want));

    // the families agree on the boundary k - l = m - n
    CHECK(elt_equal(fs.alpha(2, 1), fs.beta(2, 1)));
    CHECK(elt_equal(fs.alpha(1, 0), fs.beta(1, 0)));

    // (m+1)(n+1) indexed elements
    auto set = fs.framed_cb_set();
    CHECK(set.size() == 6);
    for (const auto& fcb : set) {
        CHECK(fcb.k <= 2);
        CHECK(fcb.l <= 1);
    }
}

TEST_CASE("sandwich basis and its highest weight filter") {
    FramedSetup fs(CartanDatum::a1(), Weight{{1}}, Weight{{2}});
    const auto& bxl = fs.b_xi_lambda();
    CHECK(bxl.size() == 6); // (m+1)(n+1)
    for (const CBIndex& b : bxl) {
        // every member lives inside the framed module basis
        CHECK(fs.framed_cb().in_b_lambda(b, fs.combined()));
        // and its base-node right statistic respects xi
        CHECK(fs.framed_cb().t_right(b, 0) <= 1);
    }
    // b_fthetaf at the weight of theta_lambda itself is the single monomial
    auto& top = fs.b_fthetaf_at(fs.sandwich_weight(NodeVec{0}));
    REQUIRE(top.size() == 1);
    CHECK(fs.appears_in_cb(top[0], fs.theta_lambda()));
}

TEST_CASE("verification drivers at desk scale") {
    FramedSetup fs(CartanDatum::a1(), Weight{{2}}, Weight{{1}});
    Report cb = fs.verify_cb_correspondence();
    CHECK(cb.all_pass());
    CHECK(cb.total() > 0);

    Report pair = fs.verify_two_pairings(3);
    CHECK(pair.all_pass());

    Report pos = fs.verify_positivity();
    CHECK(pos.all_pass());

    Report st = fs.verify_structure(3);
    CHECK(st.all_pass());
    CHECK(st.total() > 10);
}

TEST_CASE("structure holds over a rank two base") {
    FramedSetup fs(CartanDatum::a2(), Weight{{1, 0}}, Weight{{0, 1}});
    Report pos = fs.verify_positivity(FramedSetup::PositivityScope::Tensor);
    CHECK(pos.all_pass());
    Report st = fs.verify_structure(2);
    CHECK(st.all_pass());
}

TEST_CASE("zero frame weight embeds the module") {
    // xi = 0: x theta_lambda reproduces Lambda_lam inside the sandwich space
    FramedSetup fs(CartanDatum::a1(), Weight{{0}}, Weight{{2}});
    CHECK(fs.verify_cb_correspondence().all_pass());
    const auto& bxl = fs.b_xi_lambda();
    CHECK(bxl.size() == 3);
}
