#pragma once

#include <optional>
#include <vector>

#include "dskp/dimer.hpp"
#include "dskp/forests.hpp"

namespace dskp {

// Face weights of the Aztec diamond in rotated indexing: even faces
// c(i,j), 0 <= i,j <= k, odd faces d(i,j), 0 <= i,j <= k-1.
template <class F>
struct AztecWeights {
    int k = 0;
    std::vector<std::vector<ProjectiveValue<F>>> c; // (k+1) x (k+1)
    std::vector<std::vector<ProjectiveValue<F>>> d; // k x k

    explicit AztecWeights(int kk)
        : k(kk), c(kk + 1, std::vector<ProjectiveValue<F>>(kk + 1)),
          d(kk, std::vector<ProjectiveValue<F>>(kk)) {}

    static AztecWeights random(int k, Rng& rng, const std::function<F(Rng&)>& gen) {
        AztecWeights w(k);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j) w.c[i][j] = ProjectiveValue<F>(gen(rng));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) w.d[i][j] = ProjectiveValue<F>(gen(rng));
        return w;
    }

    bool constant_d_columns() const {
        for (int i = 0; i < k; ++i)
            for (int j = 1; j < k; ++j)
                if (!(d[i][j] == d[i][0])) return false;
        return true;
    }
    bool all_d_equal() const {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (!(d[i][j] == d[0][0])) return false;
        return true;
    }

    WeightMap<F> to_weight_map() const {
        WeightMap<F> w;
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j) w[AztecQuad::c_label(k, i, j)] = c[i][j];
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) w[AztecQuad::d_label(k, i, j)] = d[i][j];
        return w;
    }

    // vertical cyclic shift of the whole weight pattern (modulo the c
    // column height); meaningful when the d columns are constant
    AztecWeights shifted() const {
        AztecWeights s = *this;
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j) s.c[i][j] = c[i][(j + 1) % (k + 1)];
        return s;
    }
};

// Permutation-forest expansion for constant d columns: the sum over
// permutations of signed products of (c - d) factors row by row.
template <class F>
ProjectiveValue<F> z_perm_forest(const AztecWeights<F>& w) {
    if (!w.constant_d_columns())
        throw std::domain_error("z_perm_forest: d columns must be constant");
    int k = w.k;
    if (k > 6) throw SizeGuard("z_perm_forest: (k+1)! over guard");
    std::vector<int> perm(k + 1);
    for (int i = 0; i <= k; ++i) perm[i] = i;
    using P = ProjectiveValue<F>;
    P total(field_from_int<F>(0));
    auto parity = [](const std::vector<int>& p) {
        int n = static_cast<int>(p.size());
        std::vector<bool> used(n, false);
        int t = 0;
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            int len = 0;
            for (int c = i; !used[c]; c = p[c]) {
                used[c] = true;
                ++len;
            }
            t += len - 1;
        }
        return t % 2 == 0 ? 1 : -1;
    };
    do {
        P prod(field_from_int<F>(parity(perm)));
        for (int j = 0; j <= k; ++j) {
            // row j: edges left of the gap point towards the left root,
            // the rest towards the right; tails give the d column index
            for (int i = 0; i < perm[j]; ++i) prod = prod * (w.c[i][j] - w.d[i][0]);
            for (int i = perm[j] + 1; i <= k; ++i) prod = prod * (w.c[i][j] - w.d[i - 1][0]);
        }
        total = total + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

struct VerticalShiftReport {
    bool z_sign_matches = false; // Z(shift) = (-1)^k Z
    bool y_invariant = false;
};

template <class F>
VerticalShiftReport vertical_shift_check(const AztecWeights<F>& w) {
    if (!w.constant_d_columns())
        throw std::domain_error("vertical_shift_check: d columns must be constant");
    CwGraph g = aztec_graph(w.k);
    AztecWeights<F> s = w.shifted();
    ProjectiveValue<F> za = z_det(g, w.to_weight_map());
    ProjectiveValue<F> zs = z_det(g, s.to_weight_map());
    VerticalShiftReport rep;
    ProjectiveValue<F> expect = (w.k % 2 == 0) ? zs : -zs;
    rep.z_sign_matches = (za == expect);
    rep.y_invariant = ratio_function_Y(g, w.to_weight_map()) ==
                      ratio_function_Y(g, s.to_weight_map());
    return rep;
}

// Condensation closed form for all-equal odd faces: Z through det of
// the reciprocal-difference matrix, Y through the sum of its inverse.
template <class F>
struct DodgsonResult {
    Matrix<F> N;
    ProjectiveValue<F> z_closed;  // up to global sign
    ProjectiveValue<F> y_closed;  // exact
};

template <class F>
DodgsonResult<F> dodgson_closed_form(const AztecWeights<F>& w) {
    if (!w.all_d_equal()) throw std::domain_error("dodgson: all d faces must be equal");
    const ProjectiveValue<F>& dpv = w.k > 0 ? w.d[0][0] : ProjectiveValue<F>(field_from_int<F>(0));
    if (!dpv.is_finite()) throw std::domain_error("dodgson: d must be finite");
    F dval = dpv.value();
    int k = w.k;
    DodgsonResult<F> res{Matrix<F>(k + 1, k + 1, field_from_int<F>(0)),
                         ProjectiveValue<F>(field_from_int<F>(0)),
                         ProjectiveValue<F>(field_from_int<F>(0))};
    F prod = field_from_int<F>(1);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
            if (!w.c[i][j].is_finite())
                throw std::domain_error("dodgson: c weights must be finite");
            F diff = w.c[i][j].value() - dval;
            if (is_zero(diff)) throw std::domain_error("dodgson: c equals d somewhere");
            res.N(i, j) = inverse(diff);
            prod *= diff;
        }
    F dn = det(res.N);
    res.z_closed = ProjectiveValue<F>(prod * dn);
    if (is_zero(dn)) {
        res.y_closed = ProjectiveValue<F>::indeterminate();
        return res;
    }
    Matrix<F> ninv = inverse_matrix(res.N);
    res.y_closed = ProjectiveValue<F>(dval + matrix_entry_sum(ninv));
    return res;
}

// Identity through the inverse of the full incidence matrix: Y equals
// the weighted first-row sum of C^{-1} against the right-column faces.
template <class F>
ProjectiveValue<F> y_via_c_inverse(const AztecWeights<F>& w) {
    AztecQuad aq = quadrangulate_aztec(w.k);
    auto wm = w.to_weight_map();
    auto m = build_c_matrices(aq.q, wm);
    Matrix<F> cinv = inverse_matrix(m.C); // throws if det C = 0
    F acc = field_from_int<F>(0);
    for (int j = 0; j <= w.k; ++j) {
        const auto& cv = w.c[w.k][j];
        if (!cv.is_finite()) throw std::domain_error("y_via_c_inverse: non-finite weight");
        acc += cv.value() * cinv(0, static_cast<size_t>(aq.right_column_faces[j]));
    }
    return ProjectiveValue<F>(acc);
}

// Kernel-vector identity: for v in ker D^T (D = C without the extra
// black column), Y = sum c_{k,j} v_j / sum v_j over the right column.
template <class F>
ProjectiveValue<F> y_via_kernel(const AztecWeights<F>& w) {
    AztecQuad aq = quadrangulate_aztec(w.k);
    auto wm = w.to_weight_map();
    auto m = build_c_matrices(aq.q, wm);
    size_t nf = aq.q.faces.size();
    size_t cols = m.C.cols();
    Matrix<F> dt(cols - 1, nf, field_from_int<F>(0));
    for (size_t r = 0; r + 1 < cols; ++r)
        for (size_t f = 0; f < nf; ++f) dt(r, f) = m.C(f, r + 1);
    auto basis = nullspace(dt);
    if (basis.empty()) throw std::logic_error("y_via_kernel: trivial kernel");
    for (auto& v : basis) {
        F den = field_from_int<F>(0), num = field_from_int<F>(0);
        for (int j = 0; j <= w.k; ++j) {
            const F& vj = v[static_cast<size_t>(aq.right_column_faces[j])];
            den += vj;
            num += w.c[w.k][j].value() * vj;
        }
        if (!is_zero(den)) return ProjectiveValue<F>(num / den);
    }
    throw std::domain_error("y_via_kernel: denominator sum vanished for all basis vectors");
}

// (0,m)-periodic weights with every p-th odd column constant, on the
// diamond of size k = mp - 2p + 1.
struct PeriodicColumnsReport {
    int k = 0;
    bool y_invariant = false;
    bool z_invariant_up_to_sign = false; // expected only for p = 1
};

template <class F>
AztecWeights<F> periodic_column_weights(int m, int p, Rng& rng,
                                        const std::function<F(Rng&)>& gen) {
    int k = m * p - 2 * p + 1;
    AztecWeights<F> w(k);
    // free generators: c0[i][j0], d0[i][j0] for j0 < m; constant columns
    // overwrite every p-th d column
    std::vector<std::vector<F>> c0(k + 1), d0(k);
    for (int i = 0; i <= k; ++i) {
        c0[i].resize(m);
        for (int j = 0; j < m; ++j) c0[i][j] = gen(rng);
    }
    for (int i = 0; i < k; ++i) {
        d0[i].resize(m);
        for (int j = 0; j < m; ++j) d0[i][j] = gen(rng);
        if (i % p == 0)
            for (int j = 1; j < m; ++j) d0[i][j] = d0[i][0];
    }
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) w.c[i][j] = ProjectiveValue<F>(c0[i][j % m]);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) w.d[i][j] = ProjectiveValue<F>(d0[i][j % m]);
    return w;
}

// One vertical step of the m-periodic pattern: the (j+1)-st value of
// each column, read through the periodicity. Residues that fall off the
// stored matrix only occur for constant columns, so column head 0 is a
// faithful fallback.
template <class F>
AztecWeights<F> periodic_shift(const AztecWeights<F>& w, int m) {
    AztecWeights<F> s(w.k);
    for (int i = 0; i <= w.k; ++i)
        for (int j = 0; j <= w.k; ++j) {
            int r = (j + 1) % m;
            s.c[i][j] = r <= w.k ? w.c[i][r] : w.c[i][0];
        }
    for (int i = 0; i < w.k; ++i)
        for (int j = 0; j < w.k; ++j) {
            int r = (j + 1) % m;
            s.d[i][j] = r <= w.k - 1 ? w.d[i][r] : w.d[i][0];
        }
    return s;
}

inline PeriodicColumnsReport periodic_columns_check(int m, int p, uint64_t seed) {
    using F = GaussianRational;
    Rng rng(seed);
    AztecWeights<F> w = periodic_column_weights<F>(
        m, p, rng, [](Rng& r) { return random_gaussian_rational(r); });
    PeriodicColumnsReport rep;
    rep.k = w.k;
    CwGraph g = aztec_graph(w.k);
    AztecWeights<F> s = periodic_shift(w, m);
    auto wm = w.to_weight_map(), sm = s.to_weight_map();
    rep.y_invariant = ratio_function_Y(g, wm) == ratio_function_Y(g, sm);
    ProjectiveValue<F> za = z_det(g, wm), zs = z_det(g, sm);
    rep.z_invariant_up_to_sign = (za == zs) || (za == -zs);
    return rep;
}

struct DevronReport {
    std::string kind;
    int predicted_level = 0;
    bool degenerate_at_prediction = false;
    bool earlier_degeneracy = false;
    std::string final_value;       // observed constant (dodgson kinds)
    std::string closed_form_value; // matching closed form, when available
    bool closed_form_matches = false;
    bool pass = false;
};

DevronReport devron_dodgson(int m, uint64_t seed);
DevronReport devron_mp(int m, int p, uint64_t seed);
DevronReport devron_two_periodic(int s, int t, int u, int v, uint64_t seed);

// Constant-row-sum inverse identity used by the harmonic-mean form.
template <class F>
bool constant_row_sum_inverse_identity(const Matrix<F>& n) {
    size_t mdim = n.rows();
    F lambda = field_from_int<F>(0);
    for (size_t j = 0; j < mdim; ++j) lambda += n(0, j);
    for (size_t i = 1; i < mdim; ++i) {
        F s = field_from_int<F>(0);
        for (size_t j = 0; j < mdim; ++j) s += n(i, j);
        if (!(s == lambda)) throw std::invalid_argument("row sums not constant");
    }
    Matrix<F> inv = inverse_matrix(n);
    F total = matrix_entry_sum(inv);
    return total * lambda == field_from_int<F>(static_cast<long>(mdim));
}

} // namespace dskp
