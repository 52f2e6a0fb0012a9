#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dskp/projective.hpp"

namespace dskp {

// Point of the octahedral-tetrahedral lattice: i+j+k even.
struct LatticePoint {
    int i, j, k;
    bool valid() const { return ((i + j + k) & 1) == 0; }
    friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
        return std::tie(a.k, a.i, a.j) < std::tie(b.k, b.i, b.j);
    }
    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.i == b.i && a.j == b.j && a.k == b.k;
    }
};

struct WindowTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Height function on a finite rectangular window; neighbor steps are +-1
// and (i, j, h(i,j)) always lies on the lattice.
class HeightFunction {
  public:
    HeightFunction(int imin, int imax, int jmin, int jmax, std::function<int(int, int)> h)
        : imin_(imin), imax_(imax), jmin_(jmin), jmax_(jmax) {
        values_.resize(static_cast<size_t>(imax - imin + 1) * (jmax - jmin + 1));
        for (int i = imin; i <= imax; ++i)
            for (int j = jmin; j <= jmax; ++j) values_[index(i, j)] = h(i, j);
        validate();
    }

    static HeightFunction standard(int radius) {
        return HeightFunction(-radius, radius, -radius, radius,
                              [](int i, int j) { return (i + j) & 1; });
    }

    // [i+j]_2 raised by 2 at the given points; the construction used to
    // produce graphs containing wrenches.
    static HeightFunction raised(int radius, const std::vector<std::pair<int, int>>& raises) {
        return HeightFunction(-radius, radius, -radius, radius, [&](int i, int j) {
            int h = (i + j) & 1;
            for (auto& [ri, rj] : raises)
                if (i == ri && j == rj) h += 2;
            return h;
        });
    }

    bool in_window(int i, int j) const {
        return i >= imin_ && i <= imax_ && j >= jmin_ && j <= jmax_;
    }
    int operator()(int i, int j) const {
        if (!in_window(i, j)) throw WindowTooSmall("height requested outside window");
        return values_[index(i, j)];
    }
    int imin() const { return imin_; }
    int imax() const { return imax_; }
    int jmin() const { return jmin_; }
    int jmax() const { return jmax_; }

  private:
    void validate() const {
        for (int i = imin_; i <= imax_; ++i)
            for (int j = jmin_; j <= jmax_; ++j) {
                int h = values_[index(i, j)];
                if (((i + j + h) & 1) != 0)
                    throw std::invalid_argument("height function leaves the lattice");
                if (i < imax_ && std::abs(h - values_[index(i + 1, j)]) != 1)
                    throw std::invalid_argument("height function step != 1");
                if (j < jmax_ && std::abs(h - values_[index(i, j + 1)]) != 1)
                    throw std::invalid_argument("height function step != 1");
            }
    }
    size_t index(int i, int j) const {
        return static_cast<size_t>(i - imin_) * (jmax_ - jmin_ + 1) + (j - jmin_);
    }

    int imin_, imax_, jmin_, jmax_;
    std::vector<int> values_;
};

template <class F>
struct InitialData {
    HeightFunction h;
    std::map<std::pair<int, int>, ProjectiveValue<F>> a;

    const ProjectiveValue<F>& weight(int i, int j) const {
        auto it = a.find({i, j});
        if (it == a.end()) throw WindowTooSmall("initial value missing at requested point");
        return it->second;
    }
};

enum class Recurrence { Dkp, Dskp, Chi3, Chi4, Chi5 };

inline const char* recurrence_name(Recurrence r) {
    switch (r) {
    case Recurrence::Dkp: return "dkp";
    case Recurrence::Dskp: return "dskp";
    case Recurrence::Chi3: return "chi3";
    case Recurrence::Chi4: return "chi4";
    case Recurrence::Chi5: return "chi5";
    }
    return "?";
}

// One octahedron step: given the five known values around a center
// p not on the lattice, produce x_{e3}. All variants are Mobius-linear
// in the unknown, so each has an exact closed-form solve. A failed
// nondegeneracy condition or an indeterminate form yields Indeterminate
// (recorded as a singular value by evolve).

template <class F>
ProjectiveValue<F> dskp_step(const ProjectiveValue<F>& x_pe1, const ProjectiveValue<F>& x_me1,
                             const ProjectiveValue<F>& x_pe2, const ProjectiveValue<F>& x_me2,
                             const ProjectiveValue<F>& x_me3) {
    using P = ProjectiveValue<F>;
    for (const P* v : {&x_pe1, &x_me1, &x_pe2, &x_me2, &x_me3})
        if (v->is_indeterminate()) return P::indeterminate();
    using H = Homog<F>;
    H e1 = H::from_projective(x_pe1), me1 = H::from_projective(x_me1);
    H e2 = H::from_projective(x_pe2), me2 = H::from_projective(x_me2);
    H me3 = H::from_projective(x_me3);
    // nondegeneracy: x_{e1} != x_{e2}, x_{e2} != x_{-e1},
    //                x_{-e1} != x_{-e2}, x_{-e2} != x_{e1}
    if (is_zero(homog_det(e1, e2)) || is_zero(homog_det(e2, me1)) ||
        is_zero(homog_det(me1, me2)) || is_zero(homog_det(me2, e1)))
        return P::indeterminate();
    // relation: A (x_{-e1} - x_{e3}) = -B (x_{e3} - x_{-e2})
    //   with A = (x_{-e3}-x_{e2})(x_{-e2}-x_{e1}),
    //        B = (x_{e2}-x_{-e1})(x_{e1}-x_{-e3})
    F A = homog_det(me3, e2) * homog_det(me2, e1);
    F B = homog_det(e2, me1) * homog_det(e1, me3);
    H out(B * me2.u - A * me1.u, B * me2.v - A * me1.v);
    return out.to_projective();
}

template <class F>
ProjectiveValue<F> dkp_step(const ProjectiveValue<F>& x_pe1, const ProjectiveValue<F>& x_me1,
                            const ProjectiveValue<F>& x_pe2, const ProjectiveValue<F>& x_me2,
                            const ProjectiveValue<F>& x_me3) {
    return (x_pe1 * x_me1 + x_pe2 * x_me2) / x_me3;
}

// chi3: (x_{e3}-x_{-e2}) x_{-e1} + (x_{-e2}-x_{e1}) x_{-e3}
//       + (x_{e1}-x_{e3}) x_{e2} = 0
template <class F>
ProjectiveValue<F> chi3_step(const ProjectiveValue<F>& x_pe1, const ProjectiveValue<F>& x_me1,
                             const ProjectiveValue<F>& x_pe2, const ProjectiveValue<F>& x_me2,
                             const ProjectiveValue<F>& x_me3) {
    using P = ProjectiveValue<F>;
    for (const P* v : {&x_pe1, &x_me1, &x_pe2, &x_me2, &x_me3})
        if (!v->is_finite()) return P::indeterminate();
    P num = x_me1 * x_me2 - x_me2 * x_me3 + x_me3 * x_pe1 - x_pe1 * x_pe2;
    P den = x_me1 - x_pe2;
    return num / den;
}

// chi4: (x_{e3}-x_{-e2})/x_{-e1} + (x_{-e2}-x_{e1})/x_{-e3}
//       + (x_{e1}-x_{e3})/x_{e2} = 0
template <class F>
ProjectiveValue<F> chi4_step(const ProjectiveValue<F>& x_pe1, const ProjectiveValue<F>& x_me1,
                             const ProjectiveValue<F>& x_pe2, const ProjectiveValue<F>& x_me2,
                             const ProjectiveValue<F>& x_me3) {
    using P = ProjectiveValue<F>;
    for (const P* v : {&x_pe1, &x_me1, &x_pe2, &x_me2, &x_me3})
        if (!v->is_finite()) return P::indeterminate();
    P one(field_from_int<F>(1));
    P den = one / x_me1 - one / x_pe2;
    P num = x_me2 / x_me1 - (x_me2 - x_pe1) / x_me3 - x_pe1 / x_pe2;
    return num / den;
}

// chi5: (x_{e3}-x_{e1})/x_{e2} = x_{-e2} (1/x_{-e3} - 1/x_{-e1})
template <class F>
ProjectiveValue<F> chi5_step(const ProjectiveValue<F>& x_pe1, const ProjectiveValue<F>& x_me1,
                             const ProjectiveValue<F>& x_pe2, const ProjectiveValue<F>& x_me2,
                             const ProjectiveValue<F>& x_me3) {
    using P = ProjectiveValue<F>;
    for (const P* v : {&x_pe1, &x_me1, &x_pe2, &x_me2, &x_me3})
        if (!v->is_finite()) return P::indeterminate();
    P one(field_from_int<F>(1));
    return x_pe1 + x_pe2 * x_me2 * (one / x_me3 - one / x_me1);
}

template <class F>
ProjectiveValue<F> recurrence_step(Recurrence r, const ProjectiveValue<F>& x_pe1,
                                   const ProjectiveValue<F>& x_me1, const ProjectiveValue<F>& x_pe2,
                                   const ProjectiveValue<F>& x_me2,
                                   const ProjectiveValue<F>& x_me3) {
    switch (r) {
    case Recurrence::Dkp: return dkp_step(x_pe1, x_me1, x_pe2, x_me2, x_me3);
    case Recurrence::Dskp: return dskp_step(x_pe1, x_me1, x_pe2, x_me2, x_me3);
    case Recurrence::Chi3: return chi3_step(x_pe1, x_me1, x_pe2, x_me2, x_me3);
    case Recurrence::Chi4: return chi4_step(x_pe1, x_me1, x_pe2, x_me2, x_me3);
    case Recurrence::Chi5: return chi5_step(x_pe1, x_me1, x_pe2, x_me2, x_me3);
    }
    throw std::logic_error("unknown recurrence");
}

// Residual of the defining relation at a solved octahedron; zero iff the
// relation holds. Used by the back-substitution oracles.
template <class F>
bool relation_holds(Recurrence r, const ProjectiveValue<F>& x_pe1, const ProjectiveValue<F>& x_me1,
                    const ProjectiveValue<F>& x_pe2, const ProjectiveValue<F>& x_me2,
                    const ProjectiveValue<F>& x_pe3, const ProjectiveValue<F>& x_me3) {
    using P = ProjectiveValue<F>;
    switch (r) {
    case Recurrence::Dskp: {
        P lhs = (x_me3 - x_pe2) * (x_me1 - x_pe3) * (x_me2 - x_pe1);
        P rhs = (x_pe2 - x_me1) * (x_pe3 - x_me2) * (x_pe1 - x_me3);
        P q = lhs / rhs;
        return q.is_finite() && q == P(field_from_int<F>(-1));
    }
    case Recurrence::Dkp: {
        P lhs = x_pe3 * x_me3;
        P rhs = x_pe1 * x_me1 + x_pe2 * x_me2;
        return lhs.is_finite() && rhs.is_finite() && lhs == rhs;
    }
    case Recurrence::Chi3: {
        P s = (x_pe3 - x_me2) * x_me1 + (x_me2 - x_pe1) * x_me3 + (x_pe1 - x_pe3) * x_pe2;
        return s.is_finite() && s.is_zero();
    }
    case Recurrence::Chi4: {
        P s = (x_pe3 - x_me2) / x_me1 + (x_me2 - x_pe1) / x_me3 + (x_pe1 - x_pe3) / x_pe2;
        return s.is_finite() && s.is_zero();
    }
    case Recurrence::Chi5: {
        P one(field_from_int<F>(1));
        P lhs = (x_pe3 - x_pe1) / x_pe2;
        P rhs = x_me2 * (one / x_me3 - one / x_me1);
        return lhs.is_finite() && rhs.is_finite() && lhs == rhs;
    }
    }
    return false;
}

enum class Provenance { InitialDatum, Computed, SingularStep, PropagatedSingular };

template <class F>
struct Solution {
    std::map<LatticePoint, std::pair<ProjectiveValue<F>, Provenance>> values;

    bool has(const LatticePoint& p) const { return values.count(p) > 0; }
    const ProjectiveValue<F>& at(const LatticePoint& p) const { return values.at(p).first; }
    Provenance provenance(const LatticePoint& p) const { return values.at(p).second; }
    bool singular(const LatticePoint& p) const {
        auto pr = values.at(p).second;
        return pr == Provenance::SingularStep || pr == Provenance::PropagatedSingular;
    }
};

// Bottom-up computation of x on the upper set, level by level, up to
// target_level. Every value whose square-cone dependency leaves the
// window raises WindowTooSmall; singular steps are recorded and
// propagated, never silently patched.
template <class F>
Solution<F> evolve(const InitialData<F>& data, Recurrence rec, int target_level) {
    Solution<F> sol;
    const HeightFunction& h = data.h;

    auto available = [&](int i, int j, int k) {
        if (!h.in_window(i, j)) return false;
        if (k == h(i, j)) return true;
        return sol.has({i, j, k});
    };
    auto get = [&](int i, int j, int k) -> std::pair<ProjectiveValue<F>, Provenance> {
        if (k == h(i, j)) return {data.weight(i, j), Provenance::InitialDatum};
        return sol.values.at({i, j, k});
    };

    int kmin = INT32_MAX;
    for (int i = h.imin(); i <= h.imax(); ++i)
        for (int j = h.jmin(); j <= h.jmax(); ++j) kmin = std::min(kmin, h(i, j));

    // Level sweep; a point is computed when its whole octahedron is
    // available, so the computable region shrinks towards the cone tip.
    for (int k = kmin + 1; k <= target_level; ++k) {
        for (int i = h.imin(); i <= h.imax(); ++i) {
            for (int j = h.jmin(); j <= h.jmax(); ++j) {
                if (((i + j + k) & 1) != 0) continue;
                if (k <= h(i, j)) continue;
                if (!available(i + 1, j, k - 1) || !available(i - 1, j, k - 1) ||
                    !available(i, j + 1, k - 1) || !available(i, j - 1, k - 1) ||
                    !available(i, j, k - 2))
                    continue;
                auto pe1 = get(i + 1, j, k - 1);
                auto me1 = get(i - 1, j, k - 1);
                auto pe2 = get(i, j + 1, k - 1);
                auto me2 = get(i, j - 1, k - 1);
                auto me3 = get(i, j, k - 2);
                bool dep_singular = false;
                for (auto* d : {&pe1, &me1, &pe2, &me2, &me3})
                    if (d->second == Provenance::SingularStep ||
                        d->second == Provenance::PropagatedSingular)
                        dep_singular = true;
                ProjectiveValue<F> v = recurrence_step(rec, pe1.first, me1.first, pe2.first,
                                                       me2.first, me3.first);
                Provenance pr = Provenance::Computed;
                if (dep_singular)
                    pr = Provenance::PropagatedSingular;
                else if (v.is_indeterminate())
                    pr = Provenance::SingularStep;
                sol.values[{i, j, k}] = {v, pr};
            }
        }
    }
    return sol;
}

// Evolve exactly one target point, checking that its closed square cone
// intersected with the initial surface stays inside the window.
template <class F>
ProjectiveValue<F> evolve_point(const InitialData<F>& data, Recurrence rec, const LatticePoint& p) {
    const HeightFunction& h = data.h;
    if (!p.valid()) throw std::invalid_argument("evolve_point: not a lattice point");
    // cone check: every (i', j') with h(i',j') <= k - |di| - |dj| must be
    // interior to the window together with its octahedron neighbors
    for (int i = h.imin(); i <= h.imax(); ++i)
        for (int j = h.jmin(); j <= h.jmax(); ++j) {
            bool boundary = (i == h.imin() || i == h.imax() || j == h.jmin() || j == h.jmax());
            if (!boundary) continue;
            if (h(i, j) <= p.k - std::abs(p.i - i) - std::abs(p.j - j))
                throw WindowTooSmall("evolve_point: square cone touches window boundary");
        }
    Solution<F> sol = evolve(data, rec, p.k);
    if (!sol.has(p)) throw WindowTooSmall("evolve_point: target not computed");
    return sol.at(p);
}

// Seeded generic initial data on the window of h.
template <class F>
InitialData<F> random_initial_data(const HeightFunction& h, Rng& rng,
                                   const std::function<F(Rng&)>& gen) {
    InitialData<F> d{h, {}};
    for (int i = h.imin(); i <= h.imax(); ++i)
        for (int j = h.jmin(); j <= h.jmax(); ++j)
            d.a[{i, j}] = ProjectiveValue<F>(gen(rng));
    return d;
}

// x(i,j,k) = i a + j b + k c + d, an exact solution of the Schwarzian
// octahedron recurrence for any parameters.
template <class F>
InitialData<F> linear_solution_data(const HeightFunction& h, const F& a, const F& b, const F& c,
                                    const F& d) {
    InitialData<F> data{h, {}};
    for (int i = h.imin(); i <= h.imax(); ++i)
        for (int j = h.jmin(); j <= h.jmax(); ++j) {
            F v = field_from_int<F>(i) * a + field_from_int<F>(j) * b +
                  field_from_int<F>(h(i, j)) * c + d;
            data.a[{i, j}] = ProjectiveValue<F>(v);
        }
    return data;
}

// x(i,j,k) = a^i b^j c^k d (multiplicative exact solution).
template <class F>
InitialData<F> multiplicative_solution_data(const HeightFunction& h, const F& a, const F& b,
                                            const F& c, const F& d) {
    auto ipow = [](F base, int e) {
        F r = field_from_int<F>(1);
        bool neg = e < 0;
        for (int q = 0; q < std::abs(e); ++q) r *= base;
        return neg ? inverse(r) : r;
    };
    InitialData<F> data{h, {}};
    for (int i = h.imin(); i <= h.imax(); ++i)
        for (int j = h.jmin(); j <= h.jmax(); ++j)
            data.a[{i, j}] = ProjectiveValue<F>(ipow(a, i) * ipow(b, j) * ipow(c, h(i, j)) * d);
    return data;
}

} // namespace dskp
