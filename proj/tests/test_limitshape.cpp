#include <doctest.h>

#include <cmath>

#include "dskp/dual.hpp"
#include "dskp/lattice.hpp"
#include "dskp/limitshape.hpp"

using namespace dskp;

namespace {

// dual-number evolution of the linear solution i*a + j*b + h*c + d with
// a perturbation at the origin; the eps part is the exact sensitivity
std::map<LatticePoint, Rational> dual_sensitivities(long a, long b, long c, long d, int kmax) {
    using D = Dual<GaussianRational>;
    int radius = 2 * kmax + 1;
    HeightFunction h = HeightFunction::standard(radius);
    InitialData<D> data{h, {}};
    for (int i = -radius; i <= radius; ++i)
        for (int j = -radius; j <= radius; ++j) {
            GaussianRational base(Rational(i * a + j * b + h(i, j) * c + d));
            GaussianRational eps(Rational((i == 0 && j == 0) ? 1 : 0));
            data.a[{i, j}] = ProjectiveValue<D>(D(base, eps));
        }
    auto sol = evolve(data, Recurrence::Dskp, kmax);
    std::map<LatticePoint, Rational> rho;
    for (auto& [p, v] : sol.values) {
        REQUIRE(v.first.is_finite());
        const GaussianRational& e = v.first.value().eps_part();
        REQUIRE(e.is_real());
        rho[p] = e.re();
    }
    return rho;
}

} // namespace

TEST_CASE("sensitivity parameter from solution coefficients") {
    CHECK(q_linear(13, 3, 11) == Rational(7, 10));
    CHECK(q_linear(21, 1, 23) == Rational(6, 5));
    CHECK(q_multiplicative(2, 3, 5) == Rational(-56, 25));
}

TEST_CASE("binomial-convolution coefficients") {
    Rational q(7, 10);
    // constant term is 1
    CHECK(cq_coefficient(q, 0, 0, 0) == 1);
    CHECK(cq_coefficient(q, 0, 2, 5) == 1);
    // B = 0 collapses to a single binomial
    Rational lam = q / (Rational(1) - q);
    CHECK(cq_coefficient(q, 2, 0, 5) == Rational(10) * lam * lam);
    // cross-check a nontrivial value against direct polynomial expansion
    // of (1-z)^3 (1 + lam z)^2 at z^2: C(3,0)C(2,2)lam^2 - C(3,1)C(2,1)lam + C(3,2)
    CHECK(cq_coefficient(q, 2, 3, 5) == lam * lam - Rational(6) * lam + Rational(3));
}

TEST_CASE("rho at the cone tip and outside the cone") {
    Rational q(7, 10);
    CHECK(rho_exact(0, 0, 2, q) == Rational(-1));
    CHECK(rho_exact(5, 0, 3, q) == 0);
    CHECK(rho_exact(2, 1, 3, q) == 0); // |i|+|j| = k: still outside the support
}

TEST_CASE("exact identity suite: product formula vs dual-number derivative") {
    // q = 7/10 from (a,b,c) = (13,3,11); q = 6/5 from (21,1,23)
    struct Case {
        long a, b, c;
        Rational q;
    };
    for (const Case& cs : {Case{13, 3, 11, Rational(7, 10)}, Case{21, 1, 23, Rational(6, 5)}}) {
        REQUIRE(q_linear(cs.a, cs.b, cs.c) == cs.q);
        auto rho = dual_sensitivities(cs.a, cs.b, cs.c, 0, 8);
        int checked = 0, zeros = 0;
        for (auto& [p, r] : rho) {
            CHECK(r == rho_exact(p.i, p.j, p.k, cs.q));
            ++checked;
            if (std::abs(p.i) + std::abs(p.j) > p.k - 2) {
                CHECK(r == 0); // light cone
                ++zeros;
            }
        }
        CHECK(checked > 100);
        CHECK(zeros > 10);
    }
}

TEST_CASE("multiplicative solution: logarithmic sensitivity obeys the same formula") {
    using D = Dual<GaussianRational>;
    Rational q = q_multiplicative(2, 3, 5); // -56/25
    int kmax = 5, radius = 2 * kmax + 1;
    HeightFunction h = HeightFunction::standard(radius);
    auto ipow = [](Rational base, int e) {
        Rational r = 1;
        for (int t = 0; t < std::abs(e); ++t) r *= base;
        if (e < 0) r = Rational(1) / r;
        return r;
    };
    InitialData<D> data{h, {}};
    for (int i = -radius; i <= radius; ++i)
        for (int j = -radius; j <= radius; ++j) {
            Rational base = ipow(2, i) * ipow(3, j) * ipow(5, h(i, j));
            Rational eps = (i == 0 && j == 0) ? 1 : 0;
            data.a[{i, j}] = ProjectiveValue<D>(D(GaussianRational(base), GaussianRational(eps)));
        }
    auto sol = evolve(data, Recurrence::Dskp, kmax);
    int checked = 0;
    for (auto& [p, v] : sol.values) {
        REQUIRE(v.first.is_finite());
        const D& val = v.first.value();
        // a00 = 1 here, so the logarithmic derivative is eps/std
        Rational tilde = (val.eps_part() / val.std_part()).re();
        CHECK(tilde == rho_exact(p.i, p.j, p.k, q));
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("linear recurrence of the sensitivity holds at every octahedron") {
    CHECK(rho_recurrence_check(Rational(7, 10), 8));
    CHECK(rho_recurrence_check(Rational(6, 5), 8));
}

TEST_CASE("generating function coefficients match to total degree 8") {
    for (Rational q : {Rational(7, 10), Rational(6, 5)}) {
        MultiPolyQ f = rho_generating_function(q, 8);
        int checked = 0;
        for (int k = 0; k <= 8; ++k)
            for (int i = -8; i <= 8; ++i)
                for (int j = -8; j <= 8; ++j) {
                    if (((i + j + k) & 1) != 0) continue;
                    Monomial m;
                    if (i != 0) m.e.push_back({VAR_U, i});
                    if (j != 0) m.e.push_back({VAR_V, j});
                    if (k != 0) m.e.push_back({VAR_T, k});
                    std::sort(m.e.begin(), m.e.end());
                    Rational coeff = f.coefficient(m);
                    Rational expect = (k == 0) ? Rational(i == 0 && j == 0 ? 1 : 0)
                                               : (k == 1 ? Rational(0) : rho_exact(i, j, k, q));
                    CHECK(coeff == expect);
                    ++checked;
                }
        CHECK(checked > 200);
    }
}

TEST_CASE("direct float evaluation tracks the exact one to 1e-9 (k <= 60)") {
    Rational q(7, 10);
    double worst = 0;
    for (int k : {12, 30, 57, 60})
        for (int i = -k; i <= k; ++i)
            for (int j = -k; j <= k; ++j) {
                if (((i + j + k) & 1) != 0 || std::abs(i) + std::abs(j) > k - 2) continue;
                Rational e = rho_exact(i, j, k, q);
                if (e == 0) continue;
                double d = rho_exact_double(i, j, k, 0.7);
                double ed = mpq_get_d(e.get_mpq_t());
                worst = std::max(worst, std::abs(d - ed) / std::abs(ed));
            }
    CHECK(worst < 1e-9);
}

TEST_CASE("desk-scale asymptotics at k = 200") {
    // center envelope inside the ellipse at q = 7/10
    Rational q7(7, 10);
    Rational kr = Rational(200) * rho_exact(0, 0, 200, q7);
    double bound = 1.1 * 2.0 / (M_PI * std::sqrt(0.7 * 0.3));
    CHECK(std::abs(mpq_get_d(kr.get_mpq_t())) <= bound);
    // positive Lyapunov rate at q = 6/5 within 5% of 2 log(sqrt(q) + sqrt(q-1))
    Rational q65(6, 5);
    Rational kr2 = Rational(200) * rho_exact(0, 0, 200, q65);
    double lr = log_abs(kr2) / 200.0;
    double xi = 2.0 * std::log(std::sqrt(1.2) + std::sqrt(0.2));
    CHECK(std::abs(lr - xi) / xi < 0.05);
    CHECK(lr > 0);
    // exponential decay outside the ellipse: (x,y) = (0.9, 0)
    int i = 180, j = 0, k = 200;
    Rational r = rho_exact(i, j, k, q7);
    REQUIRE(r != 0);
    CHECK(log_abs(r) / 200.0 < -0.01);
}

TEST_CASE("scan output shape and determinism") {
    auto rows = asymptotic_scan(Rational(7, 10), 30, 11, 11);
    CHECK(rows.size() == 121);
    std::string csv = scan_csv(rows);
    CHECK(csv.substr(0, 25) == "x,y,rho,k_rho,log_rate\n-1");
    CHECK(scan_csv(asymptotic_scan(Rational(7, 10), 30, 11, 11)) == csv);
}
