#pragma once

#include <string>
#include <vector>

#include "dskp/gaussian_rational.hpp"
#include "dskp/multipoly.hpp"

namespace dskp {

// Sensitivity parameter of the special solutions: for the linear
// solution q = (c^2 - b^2)/(a^2 - b^2), for the multiplicative one
// q = a(c-b)(bc-1) / (c(a-b)(ab-1)).
Rational q_linear(const Rational& a, const Rational& b, const Rational& c);
Rational q_multiplicative(const Rational& a, const Rational& b, const Rational& c);

// Coefficient of z^A in (1-z)^B (1 + q/(1-q) z)^{n-B}, exact.
Rational cq_coefficient(const Rational& q, long A, long B, long n);
double cq_coefficient_double(double q, long A, long B, long n);

// rho(i,j,k) = -(1-q)^{k-2} C_q(A,B,k-2) C_q(B,A,k-2) with
// A = (k-2-i-j)/2, B = (k-2+i-j)/2; zero outside the light cone.
Rational rho_exact(int i, int j, int k, const Rational& q);
double rho_exact_double(int i, int j, int k, double q);

// log |x| for an exact rational, computed from the integer sizes (no
// overflow for astronomically large values).
double log_abs(const Rational& x);

// the linear recurrence of the sensitivity at every interior octahedron
bool rho_recurrence_check(const Rational& q, int kmax);

// exact power series of 1 - t^2/(1 + t^2 - q t(u+1/u) - (1-q) t(v+1/v))
// up to total t-degree kmax
MultiPolyQ rho_generating_function(const Rational& q, int kmax);

struct ScanRow {
    double x, y;
    double rho;      // may underflow to 0 for far-out points
    double k_rho;    // k * rho
    double log_rate; // log |k rho| / k, from exact integer sizes
    bool inside_ellipse;
    bool on_lattice;
};

// Exact evaluation over an (nx x ny) grid of [-1,1]^2; float output.
// Values are computed with exact rational arithmetic and converted at
// the end, so no cancellation noise enters the scan even at large k.
std::vector<ScanRow> asymptotic_scan(const Rational& q, int k, int nx, int ny);

std::string scan_csv(const std::vector<ScanRow>& rows);

} // namespace dskp
