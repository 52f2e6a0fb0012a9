#include <doctest.h>

#include "dskp/dual.hpp"
#include "dskp/projective.hpp"

using namespace dskp;

namespace {

PV fin(long n, long d = 1) { return PV(GaussianRational(Rational(n, d))); }

PV random_pv(Rng& rng) {
    uint64_t r = rng.below(12);
    if (r == 0) return PV::infinity();
    return PV(random_gaussian_rational(rng));
}

} // namespace

TEST_CASE("extended arithmetic rules") {
    PV inf = PV::infinity();
    CHECK(fin(3) + inf == inf);
    CHECK(fin(5) / inf == fin(0));
    CHECK((inf - inf).is_indeterminate());
    CHECK((fin(0) * inf).is_indeterminate());
    CHECK((fin(0) / fin(0)).is_indeterminate());
    CHECK((inf / inf).is_indeterminate());
    CHECK(fin(7) / fin(0) == inf);
    CHECK(inf * fin(2) == inf);
    CHECK(fin(0) / inf == fin(0));
    // indeterminate absorbs
    CHECK((PV::indeterminate() + fin(1)).is_indeterminate());
    CHECK((PV::indeterminate() * inf).is_indeterminate());
}

TEST_CASE("field axioms for Gaussian rationals (randomized, exact)") {
    Rng rng(42);
    for (int t = 0; t < 200; ++t) {
        GaussianRational a = random_gaussian_rational(rng);
        GaussianRational b = random_gaussian_rational(rng);
        GaussianRational c = random_gaussian_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!is_zero(a)) {
            CHECK(a * a.inverse() == GaussianRational(1));
            CHECK(a.inverse().inverse() == a);
        }
    }
    GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
}

TEST_CASE("projective arithmetic agrees with homogeneous coordinates") {
    using H = Homog<GaussianRational>;
    Rng rng(7);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        PV x = random_pv(rng);
        PV y = random_pv(rng);
        H hx = H::from_projective(x), hy = H::from_projective(y);
        CHECK((x + y) == (hx + hy).to_projective());
        CHECK((x - y) == (hx - hy).to_projective());
        CHECK((x * y) == (hx * hy).to_projective());
        CHECK((x / y) == (hx / hy).to_projective());
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("serialization round-trip") {
    GaussianRational g(Rational(-3, 4), Rational(5, 7));
    CHECK(GaussianRational::parse(g.str()) == g);
    GaussianRational r(Rational(22, 7));
    CHECK(GaussianRational::parse(r.str()) == r);
    GaussianRational pure(Rational(0), Rational(-2, 3));
    CHECK(GaussianRational::parse(pure.str()) == pure);
    CHECK(PV::infinity().str() == "inf");
}

TEST_CASE("Mobius maps act projectively and invert") {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        auto m = random_mobius(rng);
        auto mi = m.inverse();
        PV x = random_pv(rng);
        PV y = m(x);
        CHECK(mi(y) == x);
    }
}

TEST_CASE("dual numbers differentiate") {
    // d/dx (x^2 / (3 - x)) at x = 2 is (6x - x^2) / (3-x)^2 = 8
    DualRational x(GaussianRational(2), GaussianRational(1));
    DualRational y = x * x / (DualRational(GaussianRational(3)) - x);
    CHECK(y.std_part() == GaussianRational(4));
    CHECK(y.eps_part() == GaussianRational(8));
    // non-invertible standard part is flagged
    DualRational eps(GaussianRational(0), GaussianRational(1));
    CHECK_THROWS_AS((void)(x / eps), std::domain_error);
    CHECK(!is_invertible(eps));
    CHECK(!is_zero(eps));
}
