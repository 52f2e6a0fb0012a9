#include <doctest.h>

#include "dskp/linalg.hpp"
#include "dskp/multipoly.hpp"
#include "dskp/rng.hpp"

using namespace dskp;

namespace {
MultiPoly fv(int i, int j) { return MultiPoly::var(face_var(i, j)); }
}

TEST_CASE("difference of squares and identity") {
    MultiPoly a = fv(0, 0), b = fv(1, 0);
    MultiPoly p = (a - b) * (a + b);
    MultiPoly q = a * a - b * b;
    CHECK(p == q);
    CHECK(p.monomial_count() == 2);
    MultiPoly one = MultiPoly::constant(1);
    CHECK(p * one == p);
    CHECK(MultiPoly::zero().monomial_count() == 0);
}

TEST_CASE("single dimer product expands to 4 terms") {
    MultiPoly p = (fv(0, 1) - fv(0, 0)) * (fv(0, -1) - fv(0, 0));
    CHECK(p.monomial_count() == 4); // a01*a0-1 - a01*a00 - a0-1*a00 + a00^2
}

TEST_CASE("ring axioms and evaluation homomorphism (randomized)") {
    Rng rng(9);
    auto rand_poly = [&](int terms) {
        MultiPoly p;
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            MultiPoly term = MultiPoly::constant(static_cast<long>(rng.range(-4, 4)));
            for (int v = 0; v < 3; ++v)
                if (rng.below(2)) {
                    MultiPoly x = fv(static_cast<int>(v), 0);
                    for (uint64_t e = 0, n = rng.below(3); e < n; ++e) term = term * x;
                }
            p += term;
        }
        return p;
    };
    for (int t = 0; t < 40; ++t) {
        MultiPoly p = rand_poly(3), q = rand_poly(3), r = rand_poly(2);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        // evaluation homomorphism at random Gaussian rationals
        std::map<VarId, GaussianRational> assign;
        for (int v = 0; v < 3; ++v) assign[face_var(v, 0)] = random_gaussian_rational(rng);
        auto ev = [&](VarId v) { return assign.at(v); };
        auto evf = std::function<GaussianRational(VarId)>(ev);
        CHECK((p * q).eval<GaussianRational>(evf) ==
              p.eval<GaussianRational>(evf) * q.eval<GaussianRational>(evf));
        CHECK((p + q).eval<GaussianRational>(evf) ==
              p.eval<GaussianRational>(evf) + q.eval<GaussianRational>(evf));
    }
}

TEST_CASE("canonical text is deterministic and sorted") {
    MultiPoly p = fv(0, 1) * fv(1, 0) - fv(0, 0) - MultiPoly::constant(2) * fv(0, 1);
    CHECK(p.str() == "- a[0,0] - 2*a[0,1] + a[0,1]*a[1,0]");
}

TEST_CASE("exact division (Bareiss support)") {
    MultiPoly a = fv(0, 0), b = fv(1, 0), c = fv(0, 1);
    MultiPoly num = (a + b) * (a - c) * (b + c);
    CHECK(exact_divide(num, a + b) == (a - c) * (b + c));
    CHECK(exact_divide(num, (a - c) * (b + c)) == a + b);
}

TEST_CASE("bareiss determinant matches cofactor expansion on small symbolic matrix") {
    MultiPoly a = fv(0, 0), b = fv(1, 0), c = fv(0, 1), d = fv(1, 1);
    Matrix<MultiPoly> m(2, 2, MultiPoly::zero());
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    CHECK(det_bareiss(m) == a * d - b * c);

    Matrix<MultiPoly> m3(3, 3, MultiPoly::zero());
    MultiPoly vars[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m3(i, j) = vars[i][j] = fv(i, j);
    MultiPoly expect;
    int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}, {1, 0, 2}, {0, 2, 1}};
    int sign[6] = {1, 1, 1, -1, -1, -1};
    for (int p = 0; p < 6; ++p) {
        MultiPoly t = MultiPoly::constant(sign[p]);
        for (int i = 0; i < 3; ++i) t = t * vars[i][perm[p][i]];
        expect += t;
    }
    CHECK(det_bareiss(m3) == expect);
}

TEST_CASE("content reduction and rational function equality") {
    MultiPoly p = MultiPoly::constant(6) * fv(0, 0);
    MultiPoly q = MultiPoly::constant(4) * fv(1, 0);
    RationalFunction r(p, q);
    CHECK(r.num == MultiPoly::constant(3) * fv(0, 0));
    CHECK(r.den == MultiPoly::constant(2) * fv(1, 0));
    RationalFunction doubled(p * MultiPoly::constant(5), q * MultiPoly::constant(5));
    CHECK(RationalFunction::equivalent(r, doubled));
}
