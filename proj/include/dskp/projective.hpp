#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include "dskp/gaussian_rational.hpp"

namespace dskp {

// Point of the projective line over F, extended with an explicit
// Indeterminate state. Arithmetic follows the usual conventions
// (z + inf = inf, z/inf = 0, z/0 = inf for z != 0, ...); the genuinely
// undefined forms inf-inf, 0*inf, 0/0, inf/inf yield Indeterminate,
// which then absorbs every further operation. Callers decide whether
// Indeterminate is an error or an observation (singularity tracking).
template <class F>
class ProjectiveValue {
  public:
    enum class State { Finite, Infinity, Indeterminate };

    ProjectiveValue() : state_(State::Finite), value_(field_from_int<F>(0)) {}
    ProjectiveValue(const F& v) : state_(State::Finite), value_(v) {}
    ProjectiveValue(long v) : state_(State::Finite), value_(field_from_int<F>(v)) {}

    static ProjectiveValue infinity() {
        ProjectiveValue p;
        p.state_ = State::Infinity;
        return p;
    }
    static ProjectiveValue indeterminate() {
        ProjectiveValue p;
        p.state_ = State::Indeterminate;
        return p;
    }

    bool is_finite() const { return state_ == State::Finite; }
    bool is_infinity() const { return state_ == State::Infinity; }
    bool is_indeterminate() const { return state_ == State::Indeterminate; }
    bool is_zero() const { return is_finite() && dskp::is_zero(value_); }

    const F& value() const {
        if (!is_finite()) throw std::domain_error("ProjectiveValue: not finite");
        return value_;
    }

    friend bool operator==(const ProjectiveValue& a, const ProjectiveValue& b) {
        if (a.state_ != b.state_) return false;
        if (a.state_ != State::Finite) return true;
        return a.value_ == b.value_;
    }
    friend bool operator!=(const ProjectiveValue& a, const ProjectiveValue& b) { return !(a == b); }

    friend ProjectiveValue operator+(const ProjectiveValue& a, const ProjectiveValue& b) {
        if (a.is_indeterminate() || b.is_indeterminate()) return indeterminate();
        if (a.is_infinity() && b.is_infinity()) return indeterminate();
        if (a.is_infinity() || b.is_infinity()) return infinity();
        return ProjectiveValue(a.value_ + b.value_);
    }
    friend ProjectiveValue operator-(const ProjectiveValue& a, const ProjectiveValue& b) {
        if (a.is_indeterminate() || b.is_indeterminate()) return indeterminate();
        if (a.is_infinity() && b.is_infinity()) return indeterminate();
        if (a.is_infinity() || b.is_infinity()) return infinity();
        return ProjectiveValue(a.value_ - b.value_);
    }
    ProjectiveValue operator-() const {
        if (is_finite()) return ProjectiveValue(-value_);
        return *this;
    }
    friend ProjectiveValue operator*(const ProjectiveValue& a, const ProjectiveValue& b) {
        if (a.is_indeterminate() || b.is_indeterminate()) return indeterminate();
        if (a.is_infinity() || b.is_infinity()) {
            if (a.is_zero() || b.is_zero()) return indeterminate();
            return infinity();
        }
        return ProjectiveValue(a.value_ * b.value_);
    }
    friend ProjectiveValue operator/(const ProjectiveValue& a, const ProjectiveValue& b) {
        if (a.is_indeterminate() || b.is_indeterminate()) return indeterminate();
        if (a.is_infinity() && b.is_infinity()) return indeterminate();
        if (a.is_infinity()) return infinity(); // inf / finite (incl. 0)
        if (b.is_infinity()) return ProjectiveValue(field_from_int<F>(0));
        if (b.is_zero()) {
            if (a.is_zero()) return indeterminate();
            return infinity();
        }
        if (!is_invertible(b.value_)) return indeterminate(); // non-unit ring element
        return ProjectiveValue(a.value_ / b.value_);
    }

    ProjectiveValue inverse() const {
        if (is_indeterminate()) return indeterminate();
        if (is_infinity()) return ProjectiveValue(field_from_int<F>(0));
        if (dskp::is_zero(value_)) return infinity();
        if (!is_invertible(value_)) return indeterminate();
        return ProjectiveValue(dskp::inverse(value_));
    }

    std::string str() const {
        if (is_infinity()) return "inf";
        if (is_indeterminate()) return "indeterminate";
        std::ostringstream os;
        os << value_;
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const ProjectiveValue& p) { return os << p.str(); }

  private:
    State state_;
    F value_;
};

// Homogeneous coordinates [u : v]. Finite x = [x : 1], inf = [1 : 0],
// [0 : 0] plays the role of Indeterminate. Used both as an independent
// oracle for the extended arithmetic and as the numerically robust way
// to solve the octahedron relations when values may sit at inf.
template <class F>
struct Homog {
    F u, v;

    Homog() : u(field_from_int<F>(0)), v(field_from_int<F>(1)) {}
    Homog(const F& u_, const F& v_) : u(u_), v(v_) {}

    static Homog from_projective(const ProjectiveValue<F>& p) {
        if (p.is_infinity()) return Homog(field_from_int<F>(1), field_from_int<F>(0));
        if (p.is_indeterminate()) return Homog(field_from_int<F>(0), field_from_int<F>(0));
        return Homog(p.value(), field_from_int<F>(1));
    }

    ProjectiveValue<F> to_projective() const {
        bool uz = is_zero(u), vz = is_zero(v);
        if (uz && vz) return ProjectiveValue<F>::indeterminate();
        if (vz) return ProjectiveValue<F>::infinity();
        if (!is_invertible(v)) return ProjectiveValue<F>::indeterminate();
        return ProjectiveValue<F>(u / v);
    }

    friend Homog operator+(const Homog& a, const Homog& b) {
        return Homog(a.u * b.v + b.u * a.v, a.v * b.v);
    }
    friend Homog operator-(const Homog& a, const Homog& b) {
        return Homog(a.u * b.v - b.u * a.v, a.v * b.v);
    }
    friend Homog operator*(const Homog& a, const Homog& b) { return Homog(a.u * b.u, a.v * b.v); }
    friend Homog operator/(const Homog& a, const Homog& b) { return Homog(a.u * b.v, a.v * b.u); }
};

// det(x, y) = u_x v_y - u_y v_x; vanishes exactly when x == y on P^1.
template <class F>
F homog_det(const Homog<F>& x, const Homog<F>& y) {
    return x.u * y.v - y.u * x.v;
}

// z -> (a z + b) / (c z + d) with ad - bc != 0, acting on P^1.
template <class F>
struct MobiusMap {
    F a, b, c, d;

    MobiusMap(const F& a_, const F& b_, const F& c_, const F& d_) : a(a_), b(b_), c(c_), d(d_) {
        if (is_zero(a * d - b * c)) throw std::domain_error("MobiusMap: zero determinant");
    }

    static MobiusMap identity() {
        return MobiusMap(field_from_int<F>(1), field_from_int<F>(0), field_from_int<F>(0),
                         field_from_int<F>(1));
    }

    MobiusMap inverse() const { return MobiusMap(d, -b, -c, a); }

    ProjectiveValue<F> operator()(const ProjectiveValue<F>& x) const {
        if (x.is_indeterminate()) return ProjectiveValue<F>::indeterminate();
        Homog<F> h = Homog<F>::from_projective(x);
        return Homog<F>(a * h.u + b * h.v, c * h.u + d * h.v).to_projective();
    }
};

inline MobiusMap<GaussianRational> random_mobius(Rng& rng) {
    for (;;) {
        GaussianRational a = random_gaussian_rational(rng);
        GaussianRational b = random_gaussian_rational(rng);
        GaussianRational c = random_gaussian_rational(rng);
        GaussianRational d = random_gaussian_rational(rng);
        if (!is_zero(a * d - b * c)) return MobiusMap<GaussianRational>(a, b, c, d);
    }
}

using PV = ProjectiveValue<GaussianRational>;

} // namespace dskp
