#include "dskp/chi.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>

namespace dskp {

namespace {

struct GradedAztec {
    AztecQuad aq;
    std::vector<int> w_row; // per face: i - j + h in lattice coordinates
    std::vector<int> w_col; // per face: i + j + h
    int ci = 0;

    explicit GradedAztec(int k) : aq(quadrangulate_aztec(k)) {
        ci = (k + 1) & 1;
        for (auto& f : aq.q.faces) {
            int i = ci + f.label.first, j = f.label.second;
            int h = (i + j) & 1;
            w_row.push_back(i - j + h);
            w_col.push_back(i + j + h);
        }
    }

    bool is_even_face(size_t f) const {
        // even ("c") faces sit at initial height 1 in this centering
        const auto& l = aq.q.faces[f].label;
        return ((ci + l.first + l.second) & 1) == 1;
    }
};

Monomial support_monomial(const Quadrangulation& q, const std::vector<int>& faces) {
    std::vector<VarId> vars;
    for (int f : faces) vars.push_back(face_var(q.faces[f].label.first, q.faces[f].label.second));
    std::sort(vars.begin(), vars.end());
    Monomial m;
    for (VarId v : vars) m.e.push_back({v, 1});
    return m;
}

struct LeadSet {
    std::vector<std::pair<int, std::vector<int>>> configs; // (sign, side faces)
    LexCost minimum{0, 0};
};

// Low-degree layers of sum of sign * prod_{f in supp} (1 + rho y_f),
// truncated at total degree max_deg. Supports are face bitmasks; the
// rho-degree of a term equals its popcount, so plain multilinear masks
// carry the whole grading. Configurations sharing a membership prefix
// are merged recursively, which performs the cancellations early
// instead of expanding binomial subsets per configuration.
using MaskPoly = std::vector<std::pair<uint64_t, int64_t>>; // sorted by mask

MaskPoly merge_mask_polys(const MaskPoly& a, const MaskPoly& b) {
    MaskPoly r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            int64_t c = a[i].second + b[j].second;
            if (c != 0) r.push_back({a[i].first, c});
            ++i;
            ++j;
        }
    }
    return r;
}

MaskPoly shifted_low_layers(std::vector<std::pair<int64_t, uint64_t>>& signed_masks, int nfaces,
                            int max_deg) {
    std::function<MaskPoly(size_t, size_t, int)> rec = [&](size_t lo, size_t hi,
                                                           int bit) -> MaskPoly {
        if (lo == hi) return {};
        if (bit == nfaces) {
            int64_t c = 0;
            for (size_t t = lo; t < hi; ++t) c += signed_masks[t].first;
            if (c == 0) return {};
            return {{0ull, c}};
        }
        uint64_t mask = 1ull << bit;
        auto mid = std::partition(signed_masks.begin() + lo, signed_masks.begin() + hi,
                                  [&](const auto& pr) { return (pr.second & mask) == 0; });
        size_t m = static_cast<size_t>(mid - signed_masks.begin());
        MaskPoly without = rec(lo, m, bit + 1);
        MaskPoly with = rec(m, hi, bit + 1);
        // multiply `with` by (1 + rho y_bit): terms keep their mask plus
        // a copy with the bit set, truncated by degree
        MaskPoly shifted;
        shifted.reserve(with.size());
        for (auto& [mk, c] : with)
            if (std::popcount(mk) < max_deg) shifted.push_back({mk | mask, c});
        return merge_mask_polys(merge_mask_polys(without, with), shifted);
    };
    return rec(0, signed_masks.size(), 0);
}

// layers of a mask polynomial by degree
std::map<int, MultiPoly> layers_by_degree(const MaskPoly& poly, const Quadrangulation& q) {
    std::map<int, MultiPoly> out;
    for (auto& [mask, c] : poly) {
        std::vector<VarId> vars;
        for (int f = 0; f < 64; ++f)
            if (mask & (1ull << f))
                vars.push_back(face_var(q.faces[f].label.first, q.faces[f].label.second));
        std::sort(vars.begin(), vars.end());
        Monomial m;
        for (VarId v : vars) m.e.push_back({v, 1});
        out[std::popcount(mask)].add_term(m, static_cast<long>(c));
    }
    return out;
}

std::vector<std::pair<int64_t, uint64_t>> to_masks(const LeadSet& set, int64_t sign_scale = 1) {
    std::vector<std::pair<int64_t, uint64_t>> masks;
    masks.reserve(set.configs.size());
    for (auto& [sign, faces] : set.configs) {
        uint64_t m = 0;
        for (int f : faces) m |= 1ull << f;
        masks.push_back({sign_scale * sign, m});
    }
    return masks;
}

LeadSet leading_set(const GradedAztec& ga, bool numerator, bool lex_with_row) {
    const Quadrangulation& q = ga.aq.q;
    size_t nf = q.faces.size();
    std::vector<LexCost> zero(nf, {0, 0}), graded(nf);
    for (size_t f = 0; f < nf; ++f)
        graded[f] = lex_with_row ? LexCost{ga.w_col[f], ga.w_row[f]} : LexCost{ga.w_col[f], 0};
    LeadSet set;
    auto emit = [&](const TreeForestConfig& cfg) {
        set.configs.push_back({cfg.sign, numerator ? cfg.tree_faces : cfg.forest_faces});
    };
    set.minimum = numerator ? enumerate_min_cost_configs(q, graded, zero, emit)
                            : enumerate_min_cost_configs(q, zero, graded, emit);
    return set;
}

} // namespace

ChiPolys chi_leading_polynomials(Recurrence variant, int k) {
    GradedAztec ga(k);
    const Quadrangulation& q = ga.aq.q;
    ChiPolys out;
    if (variant == Recurrence::Chi4 || variant == Recurrence::Chi5) {
        bool lex = variant == Recurrence::Chi5;
        auto build = [&](bool numerator) {
            LeadSet set = leading_set(ga, numerator, lex);
            MultiPoly acc;
            for (auto& [sign, faces] : set.configs)
                acc.add_term(support_monomial(q, faces), sign);
            return acc;
        };
        out.numerator = build(true);
        out.denominator = build(false);
        return out;
    }
    if (variant != Recurrence::Chi3) throw std::invalid_argument("chi polys: chi3/chi4/chi5 only");

    // chi3: the epsilon-leading sets are the chi4 sets with (1 + rho b)
    // weights; the answer is the lowest nonvanishing layer of the
    // denominator, and of numerator-minus-denominator
    if (q.faces.size() > 63) throw SizeGuard("chi3 counts: face count over mask capacity");
    LeadSet pnum = leading_set(ga, true, false);
    LeadSet pden = leading_set(ga, false, false);
    size_t max_supp = 0;
    for (auto& [s, f] : pnum.configs) max_supp = std::max(max_supp, f.size());

    // observed valuations grow like k(k+1)/2; start there and widen if
    // a run comes back empty
    for (int cap = k * (k + 1) / 2 + 2; cap <= static_cast<int>(max_supp) + 1; cap += 2) {
        auto den_masks = to_masks(pden);
        MaskPoly denp = shifted_low_layers(den_masks, static_cast<int>(q.faces.size()), cap);
        auto diff_masks = to_masks(pnum);
        {
            auto den_neg = to_masks(pden, -1);
            diff_masks.insert(diff_masks.end(), den_neg.begin(), den_neg.end());
        }
        MaskPoly diffp = shifted_low_layers(diff_masks, static_cast<int>(q.faces.size()), cap);
        auto den_layers = layers_by_degree(denp, q);
        auto diff_layers = layers_by_degree(diffp, q);
        if (out.denominator.is_zero() && !den_layers.empty())
            out.denominator = den_layers.begin()->second;
        if (out.numerator.is_zero() && !diff_layers.empty())
            out.numerator = diff_layers.begin()->second;
        if (!out.numerator.is_zero() && !out.denominator.is_zero()) break;
    }
    if (out.numerator.is_zero() || out.denominator.is_zero())
        throw std::logic_error("chi3 leading polynomials vanished at all orders");
    return out;
}

ChiCounts chi_monomial_counts(Recurrence variant, int k) {
    ChiPolys polys = chi_leading_polynomials(variant, k);
    return {polys.numerator.monomial_count(), polys.denominator.monomial_count()};
}

size_t constrained_forest_count(Recurrence variant, int k, bool numerator_side) {
    if (variant != Recurrence::Chi4 && variant != Recurrence::Chi5)
        throw std::invalid_argument("constrained_forest_count: chi4/chi5 only");
    GradedAztec ga(k);
    const Quadrangulation& q = ga.aq.q;

    // directions in the rotated drawing: even faces carry the
    // horizontal black diagonal (corners E=0, W=2) and the vertical
    // white one (N=1, S=3); odd faces the other way around
    auto black_dir = [&](size_t f, int tail) -> char {
        const auto& face = q.faces[f];
        if (ga.is_even_face(f)) return tail == face.corner[2] ? 'E' : 'W';
        return tail == face.corner[3] ? 'N' : 'S';
    };
    auto white_dir = [&](size_t f, int tail) -> char {
        const auto& face = q.faces[f];
        if (ga.is_even_face(f)) return tail == face.corner[3] ? 'N' : 'S';
        return tail == face.corner[2] ? 'E' : 'W';
    };

    size_t count = 0;
    enumerate_tree_forest(q, [&](const TreeForestConfig& cfg) {
        // the white image of the forest is a tree oriented towards w_r
        std::vector<int> white_out(q.vertex_count, -1);
        {
            std::vector<std::vector<std::pair<int, int>>> adj(q.vertex_count);
            for (int f : cfg.forest_faces) {
                auto [a, b] = q.white_diagonal(f);
                adj[a].push_back({b, f});
                adj[b].push_back({a, f});
            }
            std::deque<int> queue{q.w_root};
            std::vector<bool> seen(q.vertex_count, false);
            seen[q.w_root] = true;
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (auto& [o, f] : adj[v]) {
                    if (seen[o]) continue;
                    seen[o] = true;
                    white_out[o] = f;
                    queue.push_back(o);
                }
            }
        }
        bool black_has_E = false, black_has_N = false;
        for (int v = 0; v < q.vertex_count; ++v) {
            int f = cfg.forest_out[v];
            if (f < 0) continue;
            char d = black_dir(static_cast<size_t>(f), v);
            if (d == 'E') black_has_E = true;
            if (d == 'N') black_has_N = true;
        }
        bool white_has_W = false, white_has_S = false;
        for (int v = 0; v < q.vertex_count; ++v) {
            int f = white_out[v];
            if (f < 0) continue;
            char d = white_dir(static_cast<size_t>(f), v);
            if (d == 'W') white_has_W = true;
            if (d == 'S') white_has_S = true;
        }
        bool ok;
        if (variant == Recurrence::Chi4)
            ok = numerator_side ? !white_has_W : !black_has_E;
        else
            ok = numerator_side ? (!white_has_W && !black_has_N) : (!black_has_E && !white_has_S);
        if (ok) ++count;
    });
    return count;
}

} // namespace dskp
