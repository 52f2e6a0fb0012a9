#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <gmpxx.h>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dskp/gaussian_rational.hpp"

namespace dskp {

// Variables are identified by small signed ids. Face variables encode a
// lattice point (i,j); a few reserved negative ids name formal symbols
// (series markers, generating-function variables).
using VarId = int32_t;

constexpr VarId VAR_EPS = -1;
constexpr VarId VAR_RHO = -2;
constexpr VarId VAR_DELTA = -3;
constexpr VarId VAR_U = -4;
constexpr VarId VAR_V = -5;
constexpr VarId VAR_T = -6;

inline VarId face_var(int i, int j) {
    if (i < -4000 || i > 4000 || j < -4000 || j > 4000)
        throw std::out_of_range("face_var: label out of range");
    return ((i + 4096) << 13) | (j + 4096);
}
inline bool is_face_var(VarId v) { return v >= 0; }
inline std::pair<int, int> face_var_label(VarId v) {
    return {(v >> 13) - 4096, (v & 0x1fff) - 4096};
}

inline std::string var_name(VarId v) {
    if (is_face_var(v)) {
        auto [i, j] = face_var_label(v);
        std::ostringstream os;
        os << "a[" << i << "," << j << "]";
        return os.str();
    }
    switch (v) {
    case VAR_EPS: return "eps";
    case VAR_RHO: return "rho";
    case VAR_DELTA: return "delta";
    case VAR_U: return "u";
    case VAR_V: return "v";
    case VAR_T: return "t";
    default: return "x" + std::to_string(-v);
    }
}

// Sparse exponent vector, sorted by variable id; exponents are nonzero
// and may be negative (Laurent monomials).
struct Monomial {
    std::vector<std::pair<VarId, int32_t>> e;

    static Monomial one() { return {}; }
    static Monomial var(VarId v, int32_t k = 1) {
        Monomial m;
        if (k != 0) m.e.push_back({v, k});
        return m;
    }

    int32_t exponent(VarId v) const {
        for (auto& [var, k] : e)
            if (var == v) return k;
        return 0;
    }

    int64_t total_degree() const {
        int64_t d = 0;
        for (auto& [var, k] : e) d += k;
        return d;
    }

    bool multilinear() const {
        for (auto& [var, k] : e)
            if (k < 0 || k > 1) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.e.reserve(a.e.size() + b.e.size());
        size_t i = 0, j = 0;
        while (i < a.e.size() || j < b.e.size()) {
            if (j == b.e.size() || (i < a.e.size() && a.e[i].first < b.e[j].first)) {
                r.e.push_back(a.e[i++]);
            } else if (i == a.e.size() || b.e[j].first < a.e[i].first) {
                r.e.push_back(b.e[j++]);
            } else {
                int32_t k = a.e[i].second + b.e[j].second;
                if (k != 0) r.e.push_back({a.e[i].first, k});
                ++i;
                ++j;
            }
        }
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; } // lex on (var, exp)

    struct Hash {
        size_t operator()(const Monomial& m) const {
            uint64_t h = 0xcbf29ce484222325ull;
            for (auto& [v, k] : m.e) {
                h = (h ^ static_cast<uint64_t>(static_cast<uint32_t>(v))) * 0x100000001b3ull;
                h = (h ^ static_cast<uint64_t>(static_cast<uint32_t>(k))) * 0x100000001b3ull;
            }
            return static_cast<size_t>(h);
        }
    };
};

// Sparse polynomial with exact coefficients, hash-map backed; zero
// coefficients are erased on the fly so that the stored term count is
// the monomial count.
template <class Coeff = mpz_class>
class MultiPolyT {
  public:
    using Map = std::unordered_map<Monomial, Coeff, Monomial::Hash>;

    MultiPolyT() = default;

    static MultiPolyT zero() { return {}; }
    static MultiPolyT constant(const Coeff& c) {
        MultiPolyT p;
        p.add_term(Monomial::one(), c);
        return p;
    }
    static MultiPolyT var(VarId v, int32_t k = 1) {
        MultiPolyT p;
        p.add_term(Monomial::var(v, k), Coeff(1));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    size_t monomial_count() const { return terms_.size(); }
    const Map& terms() const { return terms_; }

    void add_term(const Monomial& m, const Coeff& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Coeff coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    MultiPolyT& operator+=(const MultiPolyT& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPolyT& operator-=(const MultiPolyT& o) {
        for (auto& [m, c] : o.terms_) add_term(m, Coeff(-c));
        return *this;
    }
    friend MultiPolyT operator+(MultiPolyT a, const MultiPolyT& b) { return a += b; }
    friend MultiPolyT operator-(MultiPolyT a, const MultiPolyT& b) { return a -= b; }
    MultiPolyT operator-() const {
        MultiPolyT r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, Coeff(-c));
        return r;
    }

    friend MultiPolyT operator*(const MultiPolyT& a, const MultiPolyT& b) {
        MultiPolyT r;
        if (a.is_zero() || b.is_zero()) return r;
        r.terms_.reserve(a.terms_.size() * 2);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, Coeff(ca * cb));
        return r;
    }

    MultiPolyT& operator*=(const MultiPolyT& o) { return *this = *this * o; }

    void scale(const Coeff& c) {
        if (c == 0) {
            terms_.clear();
            return;
        }
        for (auto& [m, cc] : terms_) cc *= c;
    }

    friend bool operator==(const MultiPolyT& a, const MultiPolyT& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (auto& [m, c] : a.terms_) {
            auto it = b.terms_.find(m);
            if (it == b.terms_.end() || it->second != c) return false;
        }
        return true;
    }
    friend bool operator!=(const MultiPolyT& a, const MultiPolyT& b) { return !(a == b); }

    bool multilinear() const {
        for (auto& [m, c] : terms_)
            if (!m.multilinear()) return false;
        return true;
    }

    // Evaluation homomorphism into a field; negative exponents require
    // invertible assignments.
    template <class F>
    F eval(const std::function<F(VarId)>& assign) const {
        F acc = field_from_int<F>(0);
        for (auto& [m, c] : terms_) {
            F t = coeff_to_field<F>(c);
            for (auto& [v, k] : m.e) {
                F x = assign(v);
                F p = field_from_int<F>(1);
                int32_t n = k < 0 ? -k : k;
                for (int32_t q = 0; q < n; ++q) p *= x;
                if (k < 0) p = inverse(p);
                t *= p;
            }
            acc += t;
        }
        return acc;
    }

    // Canonical text: terms sorted by exponent vector (lex on sorted
    // variable ids, then exponents); used by golden-file tests.
    std::string str() const {
        std::vector<std::pair<Monomial, Coeff>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (v.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : v) {
            std::string cs = coeff_str(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (first) {
                if (neg) os << "- ", cs = cs.substr(1);
            } else {
                os << (neg ? " - " : " + ");
                if (neg) cs = cs.substr(1);
            }
            first = false;
            bool printed = false;
            if (!(cs == "1" && !m.e.empty())) {
                os << cs;
                printed = true;
            }
            for (auto& [var, k] : m.e) {
                if (printed) os << "*";
                os << var_name(var);
                if (k != 1) os << "^" << k;
                printed = true;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiPolyT& p) { return os << p.str(); }

  private:
    template <class F>
    static F coeff_to_field(const mpz_class& c) {
        return F(Rational(c));
    }
    template <class F>
    static F coeff_to_field(const mpq_class& c) {
        return F(c);
    }
    static std::string coeff_str(const mpz_class& c) { return c.get_str(); }
    static std::string coeff_str(const mpq_class& c) { return c.get_str(); }

    Map terms_;
};

using MultiPoly = MultiPolyT<mpz_class>;
using MultiPolyQ = MultiPolyT<mpq_class>;

// gcd of all integer coefficients (content), for normalized fractions.
inline mpz_class content(const MultiPoly& p) {
    mpz_class g = 0;
    for (auto& [m, c] : p.terms()) {
        mpz_class a = abs(c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline void divide_content(MultiPoly& p, const mpz_class& g) {
    if (g == 0 || g == 1) return;
    MultiPoly q;
    for (auto& [m, c] : p.terms()) q.add_term(m, c / g);
    p = q;
}

// Graded-lex monomial order (a proper multiplicative order, unlike the
// raw sparse-vector comparison used for display sorting).
inline bool grlex_less(const Monomial& a, const Monomial& b) {
    int64_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    size_t i = 0, j = 0;
    while (i < a.e.size() || j < b.e.size()) {
        VarId va = i < a.e.size() ? a.e[i].first : INT32_MAX;
        VarId vb = j < b.e.size() ? b.e[j].first : INT32_MAX;
        if (va == vb) {
            if (a.e[i].second != b.e[j].second) return a.e[i].second < b.e[j].second;
            ++i;
            ++j;
        } else if (va < vb) {
            // a has an extra earlier variable: larger in lex
            return a.e[i].second < 0;
        } else {
            return b.e[j].second > 0;
        }
    }
    return false;
}

// Exact division by a nonzero polynomial, assuming divisibility (the
// fraction-free elimination guarantees it).
template <class Coeff>
MultiPolyT<Coeff> exact_divide(const MultiPolyT<Coeff>& num, const MultiPolyT<Coeff>& den) {
    if (den.is_zero()) throw std::domain_error("exact_divide: zero divisor");
    using P = MultiPolyT<Coeff>;
    auto leading = [](const P& p) {
        const Monomial* best = nullptr;
        const Coeff* bc = nullptr;
        for (auto& [m, c] : p.terms()) {
            if (!best || grlex_less(*best, m)) {
                best = &m;
                bc = &c;
            }
        }
        return std::make_pair(*best, *bc);
    };
    auto [dm, dc] = leading(den);
    Monomial dmi;
    for (auto& [v, k] : dm.e) dmi.e.push_back({v, -k});

    P rem = num, quot;
    while (!rem.is_zero()) {
        auto [rm, rc] = leading(rem);
        if (rc % dc != 0) throw std::domain_error("exact_divide: not divisible (coefficient)");
        Monomial qm = rm * dmi;
        Coeff qc = rc / dc;
        P t;
        t.add_term(qm, qc);
        quot += t;
        rem -= t * den;
    }
    return quot;
}

// Multilinear complement: each monomial's support S is replaced by
// F \ S over the given variable universe. Signs are carried along.
inline MultiPoly complement_multilinear(const MultiPoly& p, const std::vector<VarId>& universe) {
    std::vector<VarId> sorted = universe;
    std::sort(sorted.begin(), sorted.end());
    MultiPoly r;
    for (auto& [m, c] : p.terms()) {
        if (!m.multilinear()) throw std::domain_error("complement: polynomial not multilinear");
        Monomial cm;
        for (VarId v : sorted) {
            if (m.exponent(v) == 0) cm.e.push_back({v, 1});
        }
        r.add_term(cm, c);
    }
    return r;
}

// Reduced fraction of integer polynomials (content-normalized; full gcd
// reduction is out of scope). Equality is decided by cross-multiplying.
struct RationalFunction {
    MultiPoly num, den;

    RationalFunction() : num(), den(MultiPoly::constant(1)) {}
    RationalFunction(MultiPoly n, MultiPoly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        normalize();
    }

    void normalize() {
        mpz_class gn = content(num), gd = content(den);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), gn.get_mpz_t(), gd.get_mpz_t());
        if (g > 1) {
            divide_content(num, g);
            divide_content(den, g);
        }
    }

    static bool equivalent(const RationalFunction& a, const RationalFunction& b) {
        return a.num * b.den == b.num * a.den;
    }

    // equality up to a global sign on the pair (num, den)
    static bool equal_up_to_sign(const RationalFunction& a, const RationalFunction& b) {
        return (a.num == b.num && a.den == b.den) || (a.num == -b.num && a.den == -b.den);
    }

    std::string str() const { return "(" + num.str() + ") / (" + den.str() + ")"; }
};

} // namespace dskp
