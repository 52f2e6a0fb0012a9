#pragma once

#include <complex>
#include <gmpxx.h>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dskp/rng.hpp"

namespace dskp {

using Rational = mpq_class; // always canonical: reduced, denominator > 0

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

// Element of Q(i). Field operations are exact; division by a nonzero
// element always succeeds.
class GaussianRational {
  public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(const Rational& re) : re_(re), im_(0) {}
    GaussianRational(long re) : re_(re), im_(0) {}
    GaussianRational(const Rational& re, const Rational& im) : re_(re), im_(im) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = r;
        im_ = i;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        Rational n = o.re_ * o.re_ + o.im_ * o.im_;
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = r;
        im_ = i;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational inverse() const {
        GaussianRational one(Rational(1));
        return one / *this;
    }

    // Serialized as "p/q" when real, "p/q+r/s*i" otherwise (see README).
    std::string str() const {
        std::ostringstream os;
        os << re_.get_str();
        if (im_ != 0) {
            if (im_ > 0) os << "+";
            os << im_.get_str() << "*i";
        }
        return os.str();
    }

    static GaussianRational parse(const std::string& s) {
        auto star = s.find("*i");
        if (star == std::string::npos) return GaussianRational(rational_from_string(s));
        // split off the imaginary summand: the sign that starts it is the
        // last '+'/'-' not directly after '/' and not at position 0
        std::string head = s.substr(0, star);
        for (size_t pos = head.size(); pos-- > 1;) {
            char c = head[pos];
            if ((c == '+' || c == '-') && head[pos - 1] != '/' && head[pos - 1] != '+' && head[pos - 1] != '-') {
                std::string re = head.substr(0, pos);
                std::string im = head.substr(pos);
                if (im == "+") im = "1";
                else if (im == "-") im = "-1";
                else if (im[0] == '+') im = im.substr(1);
                return GaussianRational(rational_from_string(re), rational_from_string(im));
            }
        }
        // pure imaginary "r/s*i"
        std::string im = head;
        if (im.empty() || im == "+") im = "1";
        else if (im == "-") im = "-1";
        return GaussianRational(Rational(0), rational_from_string(im));
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

  private:
    Rational re_, im_;
};

// Floating field used by the exploratory (non-certifying) code paths.
struct ComplexDouble {
    std::complex<double> v;
    ComplexDouble() : v(0.0) {}
    ComplexDouble(double x) : v(x) {}
    ComplexDouble(std::complex<double> x) : v(x) {}
    ComplexDouble(long x) : v(double(x)) {}
    bool is_zero() const { return v == std::complex<double>(0.0); }
    ComplexDouble operator-() const { return {-v}; }
    ComplexDouble& operator+=(const ComplexDouble& o) { v += o.v; return *this; }
    ComplexDouble& operator-=(const ComplexDouble& o) { v -= o.v; return *this; }
    ComplexDouble& operator*=(const ComplexDouble& o) { v *= o.v; return *this; }
    ComplexDouble& operator/=(const ComplexDouble& o) { v /= o.v; return *this; }
    friend ComplexDouble operator+(ComplexDouble a, const ComplexDouble& b) { return a += b; }
    friend ComplexDouble operator-(ComplexDouble a, const ComplexDouble& b) { return a -= b; }
    friend ComplexDouble operator*(ComplexDouble a, const ComplexDouble& b) { return a *= b; }
    friend ComplexDouble operator/(ComplexDouble a, const ComplexDouble& b) { return a /= b; }
    friend bool operator==(const ComplexDouble& a, const ComplexDouble& b) { return a.v == b.v; }
    friend bool operator!=(const ComplexDouble& a, const ComplexDouble& b) { return !(a == b); }
    ComplexDouble inverse() const { return {std::complex<double>(1.0) / v}; }
    std::string str() const {
        std::ostringstream os;
        os << v.real();
        if (v.imag() != 0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "*i";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const ComplexDouble& g) { return os << g.str(); }
};

// Field trait hooks shared by the exact and float scalars.
template <class F> inline bool is_zero(const F& x) { return x.is_zero(); }
template <> inline bool is_zero<Rational>(const Rational& x) { return x == 0; }

// Invertibility can differ from nonzero-ness (dual numbers); fields agree.
template <class F> inline bool is_invertible(const F& x) { return !is_zero(x); }
template <class F> inline F inverse(const F& x) { return x.inverse(); }
template <> inline Rational inverse<Rational>(const Rational& x) { return Rational(1) / x; }

template <class F> inline F field_from_int(long n) { return F(n); }

// Seeded small random values. Exact checks want generic data, so the
// ranges below keep coordinates small but collisions rare.
inline Rational random_rational(Rng& rng, long num_range = 40, long den_range = 6) {
    Rational q(rng.range(-num_range, num_range), rng.range(1, den_range));
    q.canonicalize();
    return q;
}

inline GaussianRational random_gaussian_rational(Rng& rng) {
    return GaussianRational(random_rational(rng), random_rational(rng));
}

// Real (rational) random value, handy where the math expects R.
inline GaussianRational random_real_rational(Rng& rng) {
    return GaussianRational(random_rational(rng));
}

} // namespace dskp
