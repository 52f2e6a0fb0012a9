#include "dskp/limitshape.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dskp {

Rational q_linear(const Rational& a, const Rational& b, const Rational& c) {
    Rational den = a * a - b * b;
    if (den == 0) throw std::domain_error("q_linear: a^2 = b^2");
    Rational q = (c * c - b * b) / den;
    q.canonicalize();
    return q;
}

Rational q_multiplicative(const Rational& a, const Rational& b, const Rational& c) {
    Rational den = c * (a - b) * (a * b - 1);
    if (den == 0) throw std::domain_error("q_multiplicative: degenerate parameters");
    Rational q = a * (c - b) * (b * c - 1) / den;
    q.canonicalize();
    return q;
}

namespace {
mpz_class binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}
} // namespace

Rational cq_coefficient(const Rational& q, long A, long B, long n) {
    if (A < 0 || A > n || B < 0 || B > n)
        throw std::out_of_range("cq_coefficient: parameters out of range");
    if (q == 1) throw std::domain_error("cq_coefficient: q = 1");
    Rational lambda = q / (Rational(1) - q);
    Rational acc = 0;
    Rational lpow; // lambda^(A-j), built from the top power downwards
    // precompute lambda^A then divide stepwise (exact)
    lpow = 1;
    for (long t = 0; t < A; ++t) lpow *= lambda;
    for (long j = 0; j <= std::min(A, B); ++j) {
        Rational term = Rational(binom(B, j)) * Rational(binom(n - B, A - j)) * lpow;
        if (j % 2 == 1) term = -term;
        acc += term;
        if (lambda != 0) lpow /= lambda;
        else lpow = (j + 1 <= A - 1) ? Rational(0) : Rational(1); // degenerate q = 0
    }
    acc.canonicalize();
    return acc;
}

double cq_coefficient_double(double q, long A, long B, long n) {
    if (A < 0 || A > n || B < 0 || B > n)
        throw std::out_of_range("cq_coefficient_double: parameters out of range");
    // exactly-rounded binomials and extended-precision accumulation keep
    // the alternating sum usable into the cancellation-heavy regime
    long double lambda = static_cast<long double>(q) / (1.0L - static_cast<long double>(q));
    long double lpow = 1.0L;
    for (long t = 0; t < A; ++t) lpow *= lambda;
    long double acc = 0.0L;
    for (long j = 0; j <= std::min(A, B); ++j) {
        long double term = static_cast<long double>(binom(B, j).get_d()) *
                           static_cast<long double>(binom(n - B, A - j).get_d()) * lpow;
        if (j % 2 == 1) term = -term;
        acc += term;
        if (lambda != 0.0L) lpow /= lambda;
    }
    return static_cast<double>(acc);
}

Rational rho_exact(int i, int j, int k, const Rational& q) {
    if (((i + j + k) & 1) != 0) throw std::invalid_argument("rho_exact: not a lattice point");
    if (k < 1) throw std::invalid_argument("rho_exact: k >= 1");
    long n = k - 2;
    long twoA = n - i - j, twoB = n + i - j;
    if (twoA < 0 || twoB < 0 || (twoA & 1) || (twoB & 1)) return 0;
    long A = twoA / 2, B = twoB / 2;
    if (A > n || B > n) return 0;
    Rational pre = 1;
    Rational base = Rational(1) - q;
    for (long t = 0; t < n; ++t) pre *= base;
    Rational r = -pre * cq_coefficient(q, A, B, n) * cq_coefficient(q, B, A, n);
    r.canonicalize();
    return r;
}

double rho_exact_double(int i, int j, int k, double q) {
    if (((i + j + k) & 1) != 0) throw std::invalid_argument("rho_exact_double: not a lattice point");
    if (k < 1) throw std::invalid_argument("rho_exact_double: k >= 1");
    long n = k - 2;
    long twoA = n - i - j, twoB = n + i - j;
    if (twoA < 0 || twoB < 0 || (twoA & 1) || (twoB & 1)) return 0.0;
    long A = twoA / 2, B = twoB / 2;
    if (A > n || B > n) return 0.0;
    return -std::pow(1.0 - q, double(n)) * cq_coefficient_double(q, A, B, n) *
           cq_coefficient_double(q, B, A, n);
}

double log_abs(const Rational& x) {
    if (x == 0) throw std::domain_error("log_abs: zero");
    signed long en, ed;
    double mn = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
    return std::log(std::abs(mn)) - std::log(std::abs(md)) +
           std::log(2.0) * (double(en) - double(ed));
}

bool rho_recurrence_check(const Rational& q, int kmax) {
    // rho(i,j,k) + rho(i,j,k-2) = q [rho(i-1,j,k-1) + rho(i+1,j,k-1)]
    //                           + (1-q) [rho(i,j-1,k-1) + rho(i,j+1,k-1)]
    for (int k = 3; k <= kmax; ++k)
        for (int i = -kmax; i <= kmax; ++i)
            for (int j = -kmax; j <= kmax; ++j) {
                if (((i + j + k) & 1) != 0) continue;
                if (std::abs(i) + std::abs(j) > k - 2) continue; // interior octahedra only
                Rational lhs = rho_exact(i, j, k, q) + rho_exact(i, j, k - 2, q);
                Rational rhs = q * (rho_exact(i - 1, j, k - 1, q) + rho_exact(i + 1, j, k - 1, q)) +
                               (Rational(1) - q) * (rho_exact(i, j - 1, k - 1, q) +
                                                    rho_exact(i, j + 1, k - 1, q));
                if (lhs != rhs) return false;
            }
    return true;
}

MultiPolyQ rho_generating_function(const Rational& q, int kmax) {
    using P = MultiPolyQ;
    auto term = [](const Rational& c, int eu, int ev, int et) {
        P p;
        Monomial m;
        if (eu != 0) m.e.push_back({VAR_U, eu});
        if (ev != 0) m.e.push_back({VAR_V, ev});
        if (et != 0) m.e.push_back({VAR_T, et});
        std::sort(m.e.begin(), m.e.end());
        p.add_term(m, c);
        return p;
    };
    auto truncate_t = [&](const P& p) {
        P r;
        for (auto& [m, c] : p.terms())
            if (m.exponent(VAR_T) <= kmax) r.add_term(m, c);
        return r;
    };
    // X = q t (u + 1/u) + (1-q) t (v + 1/v) - t^2;
    // 1/(1 - X) = sum X^n, truncated at t-degree kmax
    P x = term(q, 1, 0, 1) + term(q, -1, 0, 1) + term(Rational(1) - q, 0, 1, 1) +
          term(Rational(1) - q, 0, -1, 1) + term(Rational(-1), 0, 0, 2);
    P geom = term(Rational(1), 0, 0, 0);
    P power = term(Rational(1), 0, 0, 0);
    for (int n = 1; n <= kmax; ++n) {
        power = truncate_t(power * x);
        geom += power;
    }
    // F = 1 - t^2 * geom
    P f = term(Rational(1), 0, 0, 0);
    f -= truncate_t(term(Rational(1), 0, 0, 2) * geom);
    return truncate_t(f);
}

std::vector<ScanRow> asymptotic_scan(const Rational& q, int k, int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("asymptotic_scan: grid too small");
    std::vector<ScanRow> rows;
    rows.reserve(static_cast<size_t>(nx) * ny);
    double qd = mpq_get_d(q.get_mpq_t());
    for (int ix = 0; ix < nx; ++ix) {
        double x = -1.0 + 2.0 * ix / (nx - 1);
        for (int iy = 0; iy < ny; ++iy) {
            double y = -1.0 + 2.0 * iy / (ny - 1);
            int i = static_cast<int>(std::floor(x * k));
            int j = static_cast<int>(std::floor(y * k));
            ScanRow row{};
            row.x = x;
            row.y = y;
            row.on_lattice = ((i + j + k) & 1) == 0;
            if (!row.on_lattice) ++j; // snap to the lattice
            if (std::abs(i) + std::abs(j) > k + 4) {
                // far outside the diamond: identically zero
                rows.push_back(row);
                continue;
            }
            Rational r = rho_exact(i, j, k, q);
            if (r == 0) {
                rows.push_back(row);
                continue;
            }
            row.rho = mpq_get_d(r.get_mpq_t());
            Rational kr = Rational(k) * r;
            row.k_rho = mpq_get_d(kr.get_mpq_t());
            row.log_rate = log_abs(kr) / double(k);
            row.inside_ellipse = (qd > 0 && qd < 1)
                                     ? (x * x / (1.0 - qd) + y * y / qd < 1.0)
                                     : false;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << "x,y,rho,k_rho,log_rate\n";
    os.setf(std::ios::fmtflags(0), std::ios::floatfield);
    os.precision(12);
    for (auto& r : rows)
        os << r.x << "," << r.y << "," << r.rho << "," << r.k_rho << "," << r.log_rate << "\n";
    return os.str();
}

} // namespace dskp
