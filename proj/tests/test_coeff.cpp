#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qcb/laurent.hpp>
#include <qcb/ratfunc.hpp>

using namespace qcb;

namespace {

Laurent L(long c, int e) { return Laurent(Int(c), e); }

} // namespace

TEST_CASE("quantum integers") {
    CHECK(quantum_integer(0).is_zero());
    CHECK(quantum_integer(1).is_one());
    CHECK(quantum_integer(2) == Laurent::v_pow(1) + Laurent::v_pow(-1));
    CHECK(quantum_integer(3) == Laurent::v_pow(2) + Laurent::one() + Laurent::v_pow(-2));
    CHECK(quantum_integer(-3) == -quantum_integer(3));
    // bar symmetry [n] = bar([n])
    CHECK(quantum_integer(5).bar() == quantum_integer(5));
}

TEST_CASE("quantum factorials") {
    CHECK(quantum_factorial(0).is_one());
    CHECK(quantum_factorial(1).is_one());
    CHECK(quantum_factorial(2) == quantum_integer(2));
    CHECK(quantum_factorial(3) == quantum_integer(3) * quantum_integer(2));
    CHECK(quantum_factorial(4) == quantum_factorial(3) * quantum_integer(4));
}

TEST_CASE("quantum binomials") {
    CHECK(quantum_binomial(5, 0).is_one());
    CHECK(quantum_binomial(5, 5).is_one());
    CHECK(quantum_binomial(5, 6).is_zero());
    CHECK(quantum_binomial(3, 1) == quantum_integer(3));

    Laurent b42 = quantum_binomial(4, 2);
    Laurent expect = Laurent::v_pow(4) + Laurent::v_pow(2) + L(2, 0) + Laurent::v_pow(-2) +
                     Laurent::v_pow(-4);
    CHECK(b42 == expect);
    CHECK(b42.bar() == b42);
    CHECK(b42.coeffs_nonnegative());

    // symmetry and the Pascal-type recursion with v-weights
    for (int n = 1; n <= 6; ++n) {
        for (int m = 0; m <= n; ++m) {
            CHECK(quantum_binomial(n, m) == quantum_binomial(n, n - m));
            if (m >= 1) {
                Laurent lhs = quantum_binomial(n, m);
                Laurent rhs = Laurent::v_pow(m) * quantum_binomial(n - 1, m) +
                              Laurent::v_pow(-(n - m)) * quantum_binomial(n - 1, m - 1);
                CHECK(lhs == rhs);
            }
        }
    }

    // negative upper index stays in Z[v,v^-1]: [-1 choose 1] = [-1], [-1 choose 2] = [-1][-2]/[2]!
    CHECK(quantum_binomial(-1, 1) == -Laurent::one());
    CHECK(quantum_binomial(-1, 2) == Laurent::one());
    CHECK(quantum_binomial(-2, 1) == -quantum_integer(2));
}

TEST_CASE("laurent arithmetic") {
    Laurent a = Laurent::v_pow(1) + Laurent::v_pow(-1);
    CHECK(a * a == Laurent::v_pow(2) + L(2, 0) + Laurent::v_pow(-2));
    CHECK((a - a).is_zero());
    CHECK(a.min_exp() == -1);
    CHECK(a.max_exp() == 1);
    CHECK(a.coeff(1) == 1);
    CHECK(a.coeff(0) == 0);
    CHECK(a.shifted(3) == Laurent::v_pow(4) + Laurent::v_pow(2));
    CHECK(Laurent(Int(7)).constant_value() == 7);
    CHECK((-a) + a == Laurent::zero());
}

TEST_CASE("laurent bar and exact division") {
    Laurent a = L(3, 2) + L(-1, -1);
    CHECK(a.bar() == L(3, -2) + L(-1, 1));
    CHECK(a.bar().bar() == a);

    Laurent prod = quantum_integer(4) * quantum_integer(3);
    CHECK(prod.divide_exact(quantum_integer(3)) == quantum_integer(4));
    CHECK(prod.divide_exact(quantum_integer(4)) == quantum_integer(3));
    CHECK_THROWS(prod.divide_exact(quantum_integer(5)));
    CHECK_THROWS(Laurent::one().divide_exact(Laurent::zero()));
}

TEST_CASE("laurent lattice predicates") {
    CHECK(Laurent::v_pow(-2).in_z_vinv());
    CHECK(Laurent::v_pow(-2).in_vinv_z_vinv());
    CHECK(Laurent::one().in_z_vinv());
    CHECK_FALSE(Laurent::one().in_vinv_z_vinv());
    CHECK_FALSE(Laurent::v_pow(1).in_z_vinv());
    CHECK(Laurent::zero().in_vinv_z_vinv());

    Laurent mix = L(1, 1) + L(5, -3);
    CHECK(mix.negative_part() == L(5, -3));
    CHECK((mix - mix.negative_part()) == L(1, 1));
    CHECK(mix.coeffs_nonnegative());
    CHECK_FALSE((mix - L(2, 1)).coeffs_nonnegative());
}

TEST_CASE("laurent json round trip") {
    Laurent a = L(123456789, 5) + L(-987654321, -7) + Laurent::one();
    Laurent b = Laurent::from_json(a.to_json());
    CHECK(a == b);
    CHECK(Laurent::from_json(Laurent::zero().to_json()).is_zero());
}

TEST_CASE("rational function arithmetic") {
    RatFunc one = RatFunc::one();
    RatFunc t = RatFunc(Laurent::one() - Laurent::v_pow(-2)); // 1 - v^-2
    RatFunc inv = t.inverse();
    CHECK(t * inv == one);
    CHECK((inv + inv) * t == one + one);
    CHECK((t - t).is_zero());
    CHECK_THROWS(RatFunc::zero().inverse());

    // reduction: (v^2-1)/(v-1) == v+1
    RatFunc num = RatFunc(Laurent::v_pow(2) - Laurent::one());
    RatFunc den = RatFunc(Laurent::v_pow(1) - Laurent::one());
    CHECK(num / den == RatFunc(Laurent::v_pow(1) + Laurent::one()));
}

TEST_CASE("rational function laurent extraction") {
    RatFunc p = RatFunc(quantum_integer(3));
    auto lp = p.as_laurent();
    REQUIRE(lp.has_value());
    CHECK(*lp == quantum_integer(3));
    CHECK(p.laurent() == quantum_integer(3));

    RatFunc q = RatFunc(Laurent::one()) / RatFunc(Laurent::one() - Laurent::v_pow(-2));
    CHECK_FALSE(q.as_laurent().has_value());
    CHECK_THROWS(q.laurent());
}

TEST_CASE("rational function bar") {
    RatFunc q = RatFunc(Laurent::one()) / RatFunc(Laurent::one() - Laurent::v_pow(-2));
    RatFunc qb = q.bar();
    CHECK(qb == RatFunc(Laurent::one()) / RatFunc(Laurent::one() - Laurent::v_pow(2)));
    CHECK(qb.bar() == q);
}

TEST_CASE("rational function lattice membership") {
    RatFunc vinv = RatFunc::v_pow(-1);
    CHECK(vinv.satisfies(LatticeTest::ZvInv));
    CHECK(vinv.satisfies(LatticeTest::VinvZvInv));
    CHECK(vinv.satisfies(LatticeTest::ARing));
    CHECK(vinv.satisfies(LatticeTest::VinvA));

    RatFunc one = RatFunc::one();
    CHECK(one.satisfies(LatticeTest::ZvInv));
    CHECK_FALSE(one.satisfies(LatticeTest::VinvZvInv));
    CHECK(one.satisfies(LatticeTest::ARing));
    CHECK_FALSE(one.satisfies(LatticeTest::VinvA));

    // 1/(1-v^-2) = v^2/(v^2-1) is a power series in v^-1 with constant term 1
    RatFunc series = one / RatFunc(Laurent::one() - Laurent::v_pow(-2));
    CHECK(series.satisfies(LatticeTest::ARing));
    CHECK_FALSE(series.satisfies(LatticeTest::VinvA));
    CHECK_FALSE(series.satisfies(LatticeTest::ZvInv));

    // v/(v^2+1) has degree -1 at infinity: in v^-1 A but not a Laurent polynomial
    RatFunc thin = RatFunc::v_pow(1) / RatFunc(Laurent::v_pow(2) + Laurent::one());
    CHECK(thin.satisfies(LatticeTest::VinvA));
    CHECK_FALSE(thin.satisfies(LatticeTest::VinvZvInv));

    CHECK(RatFunc::zero().satisfies(LatticeTest::VinvA));
    CHECK(RatFunc::zero().satisfies(LatticeTest::VinvZvInv));
}

TEST_CASE("degree at infinity") {
    CHECK(RatFunc::one().degree_at_infinity() == 0);
    CHECK(RatFunc::v_pow(3).degree_at_infinity() == 3);
    CHECK(RatFunc::v_pow(-2).degree_at_infinity() == -2);
    RatFunc q = RatFunc(quantum_integer(3)) / RatFunc(quantum_integer(2));
    CHECK(q.degree_at_infinity() == 1);
    RatFunc r = RatFunc::one() / RatFunc(Laurent::one() - Laurent::v_pow(-2));
    CHECK(r.degree_at_infinity() == 0);
}

TEST_CASE("rational function json round trip") {
    RatFunc q = RatFunc(quantum_integer(5)) / RatFunc(Laurent::one() - Laurent::v_pow(-4));
    RatFunc back = RatFunc::from_json(q.to_json());
    CHECK(back == q);
    CHECK(RatFunc::from_json(RatFunc::zero().to_json()).is_zero());
}
