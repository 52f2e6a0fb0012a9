#include "dskp/aztec.hpp"

#include <numeric>
#include <set>

namespace dskp {

namespace {

using F = GaussianRational;
using P = ProjectiveValue<F>;

// distinct small rational values, rejection-sampled so that patterns
// that must differ really do
F fresh_value(Rng& rng, std::set<std::pair<std::string, std::string>>& used) {
    for (;;) {
        F v = random_gaussian_rational(rng);
        auto key = std::make_pair(v.re().get_str(), v.im().get_str());
        if (is_zero(v)) continue;
        if (used.insert(key).second) return v;
    }
}

// values at a given level of an evolved solution, keyed by (i,j)
std::map<std::pair<int, int>, P> level_slice(const Solution<F>& sol, int k) {
    std::map<std::pair<int, int>, P> out;
    for (auto& [p, v] : sol.values)
        if (p.k == k) out[{p.i, p.j}] = v.first;
    return out;
}

bool slice_constant(const std::map<std::pair<int, int>, P>& s) {
    if (s.empty()) return false;
    const P& first = s.begin()->second;
    for (auto& [ij, v] : s) {
        if (v.is_indeterminate()) return false;
        if (!(v == first)) return false;
    }
    return true;
}

} // namespace

DevronReport devron_dodgson(int m, uint64_t seed) {
    DevronReport rep;
    rep.kind = "dodgson(m=" + std::to_string(m) + ")";
    rep.predicted_level = m;

    int radius = 2 * m + 4;
    HeightFunction h = HeightFunction::standard(radius);
    Rng rng(seed);
    std::set<std::pair<std::string, std::string>> used;
    F d = fresh_value(rng, used);

    // odd-height values, doubly periodic with periods (m,m) and (m,-m):
    // classes indexed by ((i+j) mod 2m, (i-j) mod 2m)
    std::map<std::pair<int, int>, F> cls;
    InitialData<F> data{h, {}};
    for (int i = -radius; i <= radius; ++i)
        for (int j = -radius; j <= radius; ++j) {
            if (((i + j) & 1) == 0) {
                data.a[{i, j}] = P(d);
            } else {
                auto mod = [&](int x) { return ((x % (2 * m)) + 2 * m) % (2 * m); };
                auto key = std::make_pair(mod(i + j), mod(i - j));
                auto it = cls.find(key);
                if (it == cls.end()) it = cls.emplace(key, fresh_value(rng, used)).first;
                data.a[{i, j}] = P(it->second);
            }
        }

    Solution<F> sol = evolve(data, Recurrence::Dskp, m);

    rep.earlier_degeneracy = false;
    for (int k = 2; k < m; ++k)
        if (slice_constant(level_slice(sol, k))) rep.earlier_degeneracy = true;

    auto top = level_slice(sol, m);
    rep.degenerate_at_prediction = slice_constant(top);
    if (!top.empty()) rep.final_value = top.begin()->second.str();

    // closed form at a sample point (i,j,m) via the condensation matrix
    // N_{i',j'} = 1/(a_{i-i'+j', j+m-1-i'-j'} - d)
    auto sample = top.begin();
    if (sample != top.end() && sample->second.is_finite()) {
        int i = sample->first.first, j = sample->first.second;
        Matrix<F> n(m, m, F(0));
        bool ok = true;
        for (int ip = 0; ip < m; ++ip)
            for (int jp = 0; jp < m; ++jp) {
                const P& a = data.weight(i - ip + jp, j + m - 1 - ip - jp);
                F diff = a.value() - d;
                if (is_zero(diff)) ok = false;
                else n(ip, jp) = inverse(diff);
            }
        if (ok && !is_zero(det(n))) {
            F y = d + matrix_entry_sum(inverse_matrix(n));
            rep.closed_form_value = P(y).str();
            rep.closed_form_matches = rep.degenerate_at_prediction && P(y) == sample->second;
        }
    }
    rep.pass = rep.degenerate_at_prediction && !rep.earlier_degeneracy && rep.closed_form_matches;
    return rep;
}

DevronReport devron_mp(int m, int p, uint64_t seed) {
    DevronReport rep;
    int kpred = (m - 2) * p + 2;
    rep.kind = "devron(m=" + std::to_string(m) + ",p=" + std::to_string(p) + ")";
    rep.predicted_level = kpred;

    int radius = 2 * kpred + 6;
    HeightFunction h = HeightFunction::standard(radius);
    Rng rng(seed);
    std::set<std::pair<std::string, std::string>> used;

    // m-simply-periodic data: along every diagonal D = i-j, the value
    // depends on (i+j) mod 2m; every p-th even diagonal is constant
    std::map<std::pair<int, int>, F> gen; // (D, s mod 2m) -> value
    std::map<int, F> diag_const;
    InitialData<F> data{h, {}};
    auto mod2m = [&](int x) { return ((x % (2 * m)) + 2 * m) % (2 * m); };
    auto modq = [](int x, int q) { return ((x % q) + q) % q; };
    for (int i = -radius; i <= radius; ++i)
        for (int j = -radius; j <= radius; ++j) {
            int D = i - j;
            if (modq(D, 2 * p) == 0) {
                auto it = diag_const.find(D);
                if (it == diag_const.end())
                    it = diag_const.emplace(D, fresh_value(rng, used)).first;
                data.a[{i, j}] = P(it->second);
            } else {
                auto key = std::make_pair(D, mod2m(i + j));
                auto it = gen.find(key);
                if (it == gen.end()) it = gen.emplace(key, fresh_value(rng, used)).first;
                data.a[{i, j}] = P(it->second);
            }
        }

    Solution<F> sol = evolve(data, Recurrence::Dskp, kpred);

    auto check_level = [&](int k) {
        // does x(i,j,k) = x(i+1,j+1,k) hold whenever [i-j-mp]_{2p} = 0?
        auto slice = level_slice(sol, k);
        int compared = 0;
        for (auto& [ij, v] : slice) {
            if (modq(ij.first - ij.second - m * p, 2 * p) != 0) continue;
            auto it = slice.find({ij.first + 1, ij.second + 1});
            if (it == slice.end()) continue;
            if (v.is_indeterminate() || it->second.is_indeterminate()) return false;
            if (!(v == it->second)) return false;
            ++compared;
        }
        return compared > 0;
    };

    rep.degenerate_at_prediction = check_level(kpred);
    rep.earlier_degeneracy = false;
    for (int k = 2; k < kpred; ++k)
        if (check_level(k)) rep.earlier_degeneracy = true;
    rep.pass = rep.degenerate_at_prediction && !rep.earlier_degeneracy;
    return rep;
}

DevronReport devron_two_periodic(int s, int t, int u, int v, uint64_t seed) {
    DevronReport rep;
    rep.kind = "two_periodic(" + std::to_string(s) + "," + std::to_string(t) + ")x(" +
               std::to_string(u) + "," + std::to_string(v) + ")";
    if (((s + t) & 1) != 0 || ((u + v) & 1) != 0)
        throw std::invalid_argument("two_periodic: vectors must have even coordinate sum");
    long area = std::labs(static_cast<long>(s) * v - static_cast<long>(t) * u);
    if (area == 0) throw std::invalid_argument("two_periodic: collinear vectors");
    long g = std::gcd(std::labs(static_cast<long>(s - t)), std::labs(static_cast<long>(u - v)));
    int kpred = static_cast<int>(area / g);
    rep.predicted_level = kpred;

    int radius = 2 * kpred + 6;
    HeightFunction h = HeightFunction::standard(radius);
    Rng rng(seed);
    std::set<std::pair<std::string, std::string>> used;

    // classes of the window under translations by (s,t), (u,v), plus the
    // diagonal identification a(i,j) = a(i+1,j+1) on even points
    int width = 2 * radius + 1;
    auto vid = [&](int i, int j) { return (i + radius) * width + (j + radius); };
    std::vector<int> parent(width * width);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    auto in_window = [&](int i, int j) {
        return i >= -radius && i <= radius && j >= -radius && j <= radius;
    };
    for (int i = -radius; i <= radius; ++i)
        for (int j = -radius; j <= radius; ++j) {
            if (in_window(i + s, j + t)) unite(vid(i, j), vid(i + s, j + t));
            if (in_window(i + u, j + v)) unite(vid(i, j), vid(i + u, j + v));
            if (((i + j) & 1) == 0 && in_window(i + 1, j + 1)) unite(vid(i, j), vid(i + 1, j + 1));
        }
    std::map<int, F> value;
    InitialData<F> data{h, {}};
    for (int i = -radius; i <= radius; ++i)
        for (int j = -radius; j <= radius; ++j) {
            int r = find(vid(i, j));
            auto it = value.find(r);
            if (it == value.end()) it = value.emplace(r, fresh_value(rng, used)).first;
            data.a[{i, j}] = P(it->second);
        }

    Solution<F> sol = evolve(data, Recurrence::Dskp, kpred);
    auto slice = level_slice(sol, kpred);
    int compared = 0;
    bool ok = true;
    for (auto& [ij, val] : slice) {
        auto it = slice.find({ij.first + 1, ij.second + 1});
        if (it == slice.end()) continue;
        if (val.is_indeterminate() || it->second.is_indeterminate()) ok = false;
        else if (!(val == it->second)) ok = false;
        ++compared;
    }
    rep.degenerate_at_prediction = ok && compared > 0;
    rep.pass = rep.degenerate_at_prediction;
    return rep;
}

} // namespace dskp
