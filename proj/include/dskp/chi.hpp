#pragma once

#include <map>
#include <optional>

#include "dskp/aztec.hpp"
#include "dskp/dimer.hpp"
#include "dskp/forests.hpp"

namespace dskp {

// Exact sparse Laurent polynomial in two formal markers with field
// coefficients; the substrate for the leading-coefficient limits.
template <class F>
class Series2 {
  public:
    using Key = std::pair<int32_t, int32_t>;

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, F>& terms() const { return terms_; }

    void add(int32_t e1, int32_t e2, const F& c) {
        if (dskp::is_zero(c)) return;
        auto it = terms_.find({e1, e2});
        if (it == terms_.end()) {
            terms_.emplace(Key{e1, e2}, c);
        } else {
            it->second += c;
            if (dskp::is_zero(it->second)) terms_.erase(it);
        }
    }

    Series2& operator+=(const Series2& o) {
        for (auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    friend Series2 operator*(const Series2& a, const Series2& b) {
        Series2 r;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_)
                r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }

    int32_t min_exp1() const {
        if (is_zero()) throw std::domain_error("Series2: zero has no valuation");
        int32_t v = INT32_MAX;
        for (auto& [k, c] : terms_) v = std::min(v, k.first);
        return v;
    }
    // restriction to the given first-marker exponent, as a univariate
    // Laurent polynomial in the second marker
    std::map<int32_t, F> slice1(int32_t e1) const {
        std::map<int32_t, F> out;
        for (auto& [k, c] : terms_)
            if (k.first == e1) out[k.second] = c;
        return out;
    }

  private:
    std::map<Key, F> terms_;
};

// valuation/leading-coefficient of a univariate Laurent polynomial
template <class F>
std::pair<int32_t, F> leading(const std::map<int32_t, F>& p) {
    for (auto& [e, c] : p)
        if (!is_zero(c)) return {e, c};
    throw std::domain_error("leading: zero polynomial");
}

// Lattice gradings of the initial-data faces used by the limits: the
// first marker exponent is i-j+h(i,j), the second i+j+h(i,j).
inline int grade_eps(const FaceLabel& l, int h) { return l.first - l.second + h; }
inline int grade_delta(const FaceLabel& l, int h) { return l.first + l.second + h; }

// Solution of the chi3 / chi4 / chi5 recurrence at p as a leading
// coefficient of the octahedron ratio function with rescaled initial
// data. Exact: the partition functions are evaluated as Laurent
// polynomials, so no truncation is involved.
template <class F>
ProjectiveValue<F> chi_solution_via_limit(Recurrence variant, const HeightFunction& h,
                                          const LatticePoint& p, const InitialData<F>& data) {
    if (variant != Recurrence::Chi3 && variant != Recurrence::Chi4 && variant != Recurrence::Chi5)
        throw std::invalid_argument("chi_solution_via_limit: chi3/chi4/chi5 only");
    CwGraph g = build_cw_graph(h, p);
    auto phi = kasteleyn_orientation(g);
    SymbolicY sy = symbolic_Y(g, phi); // multilinear num/den over face labels

    auto weight = [&](VarId v) -> F {
        auto [i, j] = face_var_label(v);
        const auto& pv = data.weight(i, j);
        if (!pv.is_finite()) throw std::domain_error("chi limit: non-finite weight");
        return pv.value();
    };
    auto grades = [&](VarId v) -> std::pair<int, int> {
        auto [i, j] = face_var_label(v);
        return {grade_eps({i, j}, h(i, j)), grade_delta({i, j}, h(i, j))};
    };

    auto evaluate = [&](const MultiPoly& poly) {
        Series2<F> out;
        for (auto& [mono, coeff] : poly.terms()) {
            // multilinear monomial: product of chosen faces
            F prod = F(Rational(coeff));
            int ge = 0, gd = 0;
            std::vector<VarId> support;
            for (auto& [v, e] : mono.e) {
                support.push_back(v);
                auto [we, wd] = grades(v);
                ge += we;
                gd += wd;
            }
            if (variant == Recurrence::Chi4) {
                for (VarId v : support) prod *= weight(v);
                out.add(ge, 0, prod);
            } else if (variant == Recurrence::Chi5) {
                for (VarId v : support) prod *= weight(v);
                out.add(ge, gd, prod);
            } else {
                // chi3: eps^{w(S)} prod (1 + rho a_f); expand in rho
                Series2<F> term;
                term.add(ge, 0, prod);
                for (VarId v : support) {
                    Series2<F> factor;
                    factor.add(0, 0, field_from_int<F>(1));
                    factor.add(0, 1, weight(v));
                    term = term * factor;
                }
                out += term;
            }
        }
        return out;
    };

    Series2<F> num = evaluate(sy.num);
    Series2<F> den = evaluate(sy.den);
    if (num.is_zero() || den.is_zero()) return ProjectiveValue<F>::indeterminate();

    auto nl = num.slice1(num.min_exp1());
    auto dl = den.slice1(den.min_exp1());

    if (variant == Recurrence::Chi4) {
        return ProjectiveValue<F>(nl.begin()->second) / ProjectiveValue<F>(dl.begin()->second);
    }
    if (variant == Recurrence::Chi5) {
        auto [ne, nc] = leading(nl);
        auto [de, dc] = leading(dl);
        return ProjectiveValue<F>(nc) / ProjectiveValue<F>(dc);
    }
    // chi3: lc_rho(N_lead / D_lead - 1)
    std::map<int32_t, F> diff = nl;
    for (auto& [e, c] : dl) {
        auto it = diff.find(e);
        if (it == diff.end()) diff[e] = -c;
        else {
            it->second -= c;
            if (is_zero(it->second)) diff.erase(it);
        }
    }
    if (diff.empty()) return ProjectiveValue<F>(field_from_int<F>(0));
    auto [en, cn] = leading(diff);
    auto [ed, cd] = leading(dl);
    return ProjectiveValue<F>(cn) / ProjectiveValue<F>(cd);
}

// Observational record for the chi3 pipeline: the constant coefficients
// of the leading numerator/denominator differences vanish.
template <class F>
std::pair<bool, bool> chi3_rho0_vanishes(const HeightFunction& h, const LatticePoint& p,
                                         const InitialData<F>& data) {
    CwGraph g = build_cw_graph(h, p);
    auto phi = kasteleyn_orientation(g);
    SymbolicY sy = symbolic_Y(g, phi);
    auto weight = [&](VarId v) -> F {
        auto [i, j] = face_var_label(v);
        return data.weight(i, j).value();
    };
    auto evaluate = [&](const MultiPoly& poly) {
        Series2<F> out;
        for (auto& [mono, coeff] : poly.terms()) {
            F prod = F(Rational(coeff));
            int ge = 0;
            Series2<F> term;
            std::vector<VarId> support;
            for (auto& [v, e] : mono.e) {
                auto [i, j] = face_var_label(v);
                ge += grade_eps({i, j}, h(i, j));
                support.push_back(v);
            }
            term.add(ge, 0, prod);
            for (VarId v : support) {
                Series2<F> factor;
                factor.add(0, 0, field_from_int<F>(1));
                factor.add(0, 1, weight(v));
                term = term * factor;
            }
            out += term;
        }
        return out;
    };
    Series2<F> num = evaluate(sy.num);
    Series2<F> den = evaluate(sy.den);
    auto nl = num.slice1(num.min_exp1());
    auto dl = den.slice1(den.min_exp1());
    bool den_rho0 = !dl.count(0);
    // numerator of lc Y - 1
    std::map<int32_t, F> diff = nl;
    for (auto& [e, c] : dl) {
        auto it = diff.find(e);
        if (it == diff.end()) diff[e] = -c;
        else {
            it->second -= c;
            if (is_zero(it->second)) diff.erase(it);
        }
    }
    bool num_rho0 = !diff.count(0);
    return {num_rho0, den_rho0};
}

// ---- Monomial counts of the chi solutions on Aztec diamonds ----

struct ChiCounts {
    size_t numerator = 0;
    size_t denominator = 0;
    friend bool operator==(const ChiCounts& a, const ChiCounts& b) {
        return a.numerator == b.numerator && a.denominator == b.denominator;
    }
};

ChiCounts chi_monomial_counts(Recurrence variant, int k);

// Leading polynomials of the chi solutions (numerator, denominator) in
// the face variables; available at small k for golden inspection.
struct ChiPolys {
    MultiPoly numerator, denominator;
};
ChiPolys chi_leading_polynomials(Recurrence variant, int k);

// Independent greedy characterization of the leading configurations:
// every out-edge of the relevant orientation attains the per-vertex
// extremum of its grading. Specified for chi4/chi5 only.
size_t constrained_forest_count(Recurrence variant, int k, bool numerator_side);

} // namespace dskp
