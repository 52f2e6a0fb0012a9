#pragma once

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dskp/gaussian_rational.hpp"

namespace dskp {

// F[eps]/(eps^2). Threading these through the solver gives exact
// directional derivatives with no step-size tuning.
template <class F>
class Dual {
  public:
    Dual() : a_(field_from_int<F>(0)), b_(field_from_int<F>(0)) {}
    Dual(const F& a) : a_(a), b_(field_from_int<F>(0)) {}
    Dual(long a) : a_(field_from_int<F>(a)), b_(field_from_int<F>(0)) {}
    Dual(const F& a, const F& b) : a_(a), b_(b) {}

    const F& std_part() const { return a_; }
    const F& eps_part() const { return b_; }

    bool is_zero() const { return dskp::is_zero(a_) && dskp::is_zero(b_); }

    Dual operator-() const { return Dual(-a_, -b_); }
    Dual& operator+=(const Dual& o) { a_ += o.a_; b_ += o.b_; return *this; }
    Dual& operator-=(const Dual& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
    Dual& operator*=(const Dual& o) {
        b_ = a_ * o.b_ + b_ * o.a_;
        a_ = a_ * o.a_;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        if (!dskp::is_invertible(o.a_))
            throw std::domain_error("Dual: division by non-invertible element");
        F a = a_ / o.a_;
        F b = (b_ * o.a_ - a_ * o.b_) / (o.a_ * o.a_);
        a_ = a;
        b_ = b;
        return *this;
    }

    friend Dual operator+(Dual x, const Dual& y) { return x += y; }
    friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
    friend Dual operator*(Dual x, const Dual& y) { return x *= y; }
    friend Dual operator/(Dual x, const Dual& y) { return x /= y; }
    friend bool operator==(const Dual& x, const Dual& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }

    Dual inverse() const { return Dual(field_from_int<F>(1)) / *this; }

    std::string str() const {
        std::ostringstream os;
        os << "(" << a_ << ")+(" << b_ << ")eps";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Dual& d) { return os << d.str(); }

  private:
    F a_, b_;
};

using DualRational = Dual<GaussianRational>;

template <class F> inline bool is_zero(const Dual<F>& x) { return x.is_zero(); }
template <class F> inline bool is_invertible(const Dual<F>& x) { return is_invertible(x.std_part()); }
template <class F> inline Dual<F> inverse(const Dual<F>& x) { return x.inverse(); }

} // namespace dskp
