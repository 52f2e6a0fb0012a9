// Command-line front end: exact experiments on the Schwarzian octahedron
// recurrence, its dimer partition functions, tree/forest expansions,
// diamond singularities and sensitivity asymptotics.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "dskp/acceptance.hpp"
#include "dskp/chi.hpp"
#include "dskp/json_io.hpp"
#include "dskp/limitshape.hpp"

using namespace dskp;

namespace {

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
    } else {
        write_text_file(out, content);
    }
}

// "aztec:k" graph specs; the common case for the weighted experiments
int parse_aztec_spec(const std::string& spec) {
    if (spec.rfind("aztec:", 0) != 0)
        throw CLI::ValidationError("--graph", "expected aztec:<k>");
    return std::stoi(spec.substr(6));
}

WeightMap<GaussianRational> load_or_seed_weights(const CwGraph& g, const std::string& file,
                                                 uint64_t seed) {
    WeightMap<GaussianRational> w;
    if (!file.empty()) {
        std::ifstream is(file);
        if (!is) throw CLI::ValidationError("--weights", "cannot open " + file);
        Json j;
        is >> j;
        for (auto& [key, val] : j.items()) {
            auto comma = key.find(',');
            FaceLabel l{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
            w[l] = value_from_string(val.get<std::string>());
        }
        for (auto& [l, f] : g.faces)
            if (!w.count(l))
                throw CLI::ValidationError("--weights", "missing face " + std::to_string(l.first) +
                                                            "," + std::to_string(l.second));
        return w;
    }
    Rng rng(seed);
    return random_weights<GaussianRational>(g, rng,
                                            [](Rng& r) { return random_gaussian_rational(r); });
}

Rational parse_rational(const std::string& s) { return rational_from_string(s); }

Recurrence parse_recurrence(const std::string& s) {
    if (s == "dskp") return Recurrence::Dskp;
    if (s == "dkp") return Recurrence::Dkp;
    if (s == "chi3") return Recurrence::Chi3;
    if (s == "chi4") return Recurrence::Chi4;
    if (s == "chi5") return Recurrence::Chi5;
    throw CLI::ValidationError("--recurrence", "unknown recurrence " + s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solver and verifier for the Schwarzian octahedron recurrence"};
    app.require_subcommand(1);

    // ---- evolve ----
    std::string ev_data, ev_out, ev_rec = "dskp";
    int ev_level = 2, ev_radius = 6;
    uint64_t ev_seed = 1;
    auto* ev = app.add_subcommand("evolve", "iterate a recurrence over seeded or file data");
    ev->add_option("--data", ev_data, "initial data JSON (omit to generate seeded data)");
    ev->add_option("--recurrence", ev_rec, "dskp|dkp|chi3|chi4|chi5")->capture_default_str();
    ev->add_option("--level", ev_level, "target level")->capture_default_str();
    ev->add_option("--radius", ev_radius, "window radius for seeded data")->capture_default_str();
    ev->add_option("--seed", ev_seed, "seed for generated data")->capture_default_str();
    ev->add_option("--out", ev_out, "output path (default stdout)");
    ev->callback([&] {
        InitialData<GaussianRational> data = [&] {
            if (!ev_data.empty()) {
                std::ifstream is(ev_data);
                if (!is) throw CLI::ValidationError("--data", "cannot open " + ev_data);
                Json j;
                is >> j;
                return initial_data_from_json(j);
            }
            HeightFunction h = HeightFunction::standard(ev_radius);
            Rng rng(ev_seed);
            return random_initial_data<GaussianRational>(
                h, rng, [](Rng& r) { return random_gaussian_rational(r); });
        }();
        auto sol = evolve(data, parse_recurrence(ev_rec), ev_level);
        emit(ev_out, solution_to_json(sol).dump(2));
    });

    // ---- graph ----
    std::string g_spec = "aztec:1", g_out;
    auto* gc = app.add_subcommand("graph", "dump a crosses-and-wrenches graph as JSON");
    gc->add_option("--graph", g_spec, "aztec:<k>")->capture_default_str();
    gc->add_option("--out", g_out, "output path (default stdout)");
    gc->callback([&] {
        CwGraph g = aztec_graph(parse_aztec_spec(g_spec));
        auto phi = kasteleyn_orientation(g);
        emit(g_out, graph_to_json(g, &phi).dump(2));
    });

    // ---- z ----
    std::string z_spec = "aztec:1", z_weights, z_mode = "numeric", z_out;
    uint64_t z_seed = 1;
    auto* zc = app.add_subcommand("z", "oriented dimer partition function");
    zc->add_option("--graph", z_spec, "aztec:<k>")->capture_default_str();
    zc->add_option("--weights", z_weights, "face weight JSON {\"i,j\": value}");
    zc->add_option("--mode", z_mode, "numeric|symbolic")->capture_default_str();
    zc->add_option("--seed", z_seed, "seed when no weight file is given")->capture_default_str();
    zc->add_option("--out", z_out, "output path (default stdout)");
    zc->callback([&] {
        CwGraph g = aztec_graph(parse_aztec_spec(z_spec));
        auto phi = kasteleyn_orientation(g);
        Json j;
        if (z_mode == "symbolic") {
            MultiPoly z = z_oriented_symbolic(g, phi);
            j["mode"] = "symbolic";
            j["monomials"] = z.monomial_count();
            j["polynomial"] = z.str();
        } else {
            auto w = load_or_seed_weights(g, z_weights, z_seed);
            j["mode"] = "numeric";
            j["z_oriented"] = value_to_string(z_oriented(g, w, phi));
            j["z_det"] = value_to_string(z_det(g, w));
        }
        emit(z_out, j.dump(2));
    });

    // ---- y ----
    std::string y_spec = "aztec:1", y_weights, y_out;
    uint64_t y_seed = 1;
    auto* yc = app.add_subcommand("y", "ratio function of oriented dimers");
    yc->add_option("--graph", y_spec, "aztec:<k>")->capture_default_str();
    yc->add_option("--weights", y_weights, "face weight JSON");
    yc->add_option("--seed", y_seed, "seed when no weight file is given")->capture_default_str();
    yc->add_option("--out", y_out, "output path (default stdout)");
    yc->callback([&] {
        CwGraph g = aztec_graph(parse_aztec_spec(y_spec));
        auto w = load_or_seed_weights(g, y_weights, y_seed);
        Json j;
        j["y"] = value_to_string(ratio_function_Y(g, w));
        emit(y_out, j.dump(2));
    });

    // ---- forests ----
    int f_k = 1;
    std::string f_out;
    bool f_dump = false;
    auto* fc = app.add_subcommand("forests", "complementary tree/forest configurations");
    fc->add_option("--k", f_k, "diamond size")->capture_default_str();
    fc->add_flag("--dump", f_dump, "include every configuration");
    fc->add_option("--out", f_out, "output path (default stdout)");
    fc->callback([&] {
        AztecQuad aq = quadrangulate_aztec(f_k);
        Json j;
        Json configs = Json::array();
        size_t count = 0;
        enumerate_tree_forest(aq.q, [&](const TreeForestConfig& cfg) {
            ++count;
            if (f_dump) configs.push_back(config_to_json(aq.q, cfg));
        });
        j["k"] = f_k;
        j["configurations"] = count;
        j["polynomial"] = tree_forest_polynomial(aq.q).str();
        if (f_dump) j["list"] = configs;
        emit(f_out, j.dump(2));
    });

    // ---- aztec ----
    int a_k = 2;
    uint64_t a_seed = 1;
    std::string a_op = "identities", a_out;
    auto* ac = app.add_subcommand("aztec", "diamond identity experiments");
    ac->add_option("--k", a_k, "diamond size")->capture_default_str();
    ac->add_option("--op", a_op, "identities|dodgson|perm|shift")->capture_default_str();
    ac->add_option("--seed", a_seed, "weight seed")->capture_default_str();
    ac->add_option("--out", a_out, "output path (default stdout)");
    ac->callback([&] {
        Rng rng(a_seed);
        Json j;
        j["k"] = a_k;
        j["seed"] = a_seed;
        if (a_op == "identities") {
            auto w = AztecWeights<GaussianRational>::random(
                a_k, rng, [](Rng& r) { return random_gaussian_rational(r); });
            PV y = ratio_function_Y(aztec_graph(a_k), w.to_weight_map());
            j["y"] = value_to_string(y);
            j["y_via_c_inverse_matches"] = (y == y_via_c_inverse(w));
            j["y_via_kernel_matches"] = (y == y_via_kernel(w));
        } else if (a_op == "perm" || a_op == "shift") {
            auto w = AztecWeights<GaussianRational>::random(
                a_k, rng, [](Rng& r) { return random_gaussian_rational(r); });
            for (int i = 0; i < a_k; ++i)
                for (int jj = 1; jj < a_k; ++jj) w.d[i][jj] = w.d[i][0];
            if (a_op == "perm") {
                PV zp = z_perm_forest(w);
                PV zd = z_det(aztec_graph(a_k), w.to_weight_map());
                j["z_perm_forest"] = value_to_string(zp);
                j["matches_det_up_to_sign"] = (zp == zd || zp == -zd);
            } else {
                auto rep = vertical_shift_check(w);
                j["z_sign_matches"] = rep.z_sign_matches;
                j["y_invariant"] = rep.y_invariant;
            }
        } else if (a_op == "dodgson") {
            auto w = AztecWeights<GaussianRational>::random(
                a_k, rng, [](Rng& r) { return random_gaussian_rational(r); });
            GaussianRational d = random_gaussian_rational(rng);
            for (int i = 0; i < a_k; ++i)
                for (int jj = 0; jj < a_k; ++jj) w.d[i][jj] = PV(d);
            for (int i = 0; i <= a_k; ++i)
                for (int jj = 0; jj <= a_k; ++jj)
                    while (w.c[i][jj] == PV(d) || w.c[i][jj].is_zero())
                        w.c[i][jj] = PV(random_gaussian_rational(rng));
            auto res = dodgson_closed_form(w);
            j["y_closed_form"] = value_to_string(res.y_closed);
            j["matches_ratio"] =
                (res.y_closed == ratio_function_Y(aztec_graph(a_k), w.to_weight_map()));
        } else {
            throw CLI::ValidationError("--op", "unknown op " + a_op);
        }
        emit(a_out, j.dump(2));
    });

    // ---- devron ----
    std::string d_kind = "dodgson", d_out;
    int d_m = 2, d_p = 1, d_s = 2, d_t = 0, d_u = 0, d_v = 2;
    uint64_t d_seed = 7;
    auto* dc = app.add_subcommand("devron", "singular initial data experiments");
    dc->add_option("--kind", d_kind, "dodgson|devron|two_periodic")->capture_default_str();
    dc->add_option("--m", d_m, "pattern period m")->capture_default_str();
    dc->add_option("--p", d_p, "column period p (devron kind)")->capture_default_str();
    dc->add_option("--s", d_s, "first period vector i")->capture_default_str();
    dc->add_option("--t", d_t, "first period vector j")->capture_default_str();
    dc->add_option("--u", d_u, "second period vector i")->capture_default_str();
    dc->add_option("--v", d_v, "second period vector j")->capture_default_str();
    dc->add_option("--seed", d_seed, "data seed")->capture_default_str();
    dc->add_option("--out", d_out, "output path (default stdout)");
    dc->callback([&] {
        DevronReport rep;
        if (d_kind == "dodgson") rep = devron_dodgson(d_m, d_seed);
        else if (d_kind == "devron") rep = devron_mp(d_m, d_p, d_seed);
        else if (d_kind == "two_periodic") rep = devron_two_periodic(d_s, d_t, d_u, d_v, d_seed);
        else throw CLI::ValidationError("--kind", "unknown kind " + d_kind);
        emit(d_out, devron_report_to_json(rep).dump(2));
        if (!rep.pass) throw CLI::RuntimeError(1);
    });

    // ---- limitshape ----
    std::string l_q = "7/10", l_out, l_grid = "101x101";
    int l_k = 200;
    auto* lc = app.add_subcommand("limitshape", "sensitivity scan as CSV");
    lc->add_option("--q", l_q, "parameter as a rational, e.g. 7/10")->capture_default_str();
    lc->add_option("--k", l_k, "level")->capture_default_str();
    lc->add_option("--grid", l_grid, "grid size, e.g. 101x101")->capture_default_str();
    lc->add_option("--out", l_out, "output path (default stdout)");
    lc->callback([&] {
        auto x = l_grid.find('x');
        if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected <nx>x<ny>");
        int nx = std::stoi(l_grid.substr(0, x)), ny = std::stoi(l_grid.substr(x + 1));
        auto rows = asymptotic_scan(parse_rational(l_q), l_k, nx, ny);
        emit(l_out, scan_csv(rows));
    });

    // ---- chi ----
    std::string c_variant = "chi4", c_out;
    int c_k = 1;
    bool c_counts = false, c_polys = false;
    auto* cc = app.add_subcommand("chi", "solutions and counts for the remaining recurrences");
    cc->add_option("--variant", c_variant, "chi3|chi4|chi5")->capture_default_str();
    cc->add_option("--k", c_k, "diamond size")->capture_default_str();
    cc->add_flag("--counts", c_counts, "numerator/denominator monomial counts");
    cc->add_flag("--emit-polys", c_polys, "canonical polynomial text");
    cc->add_option("--out", c_out, "output path (default stdout)");
    cc->callback([&] {
        Recurrence v = parse_recurrence(c_variant);
        Json j;
        j["variant"] = c_variant;
        j["k"] = c_k;
        if (c_counts || !c_polys) {
            auto counts = chi_monomial_counts(v, c_k);
            j["numerator_monomials"] = counts.numerator;
            j["denominator_monomials"] = counts.denominator;
        }
        if (c_polys) {
            auto polys = chi_leading_polynomials(v, c_k);
            j["numerator"] = polys.numerator.str();
            j["denominator"] = polys.denominator.str();
            j["numerator_monomials"] = polys.numerator.monomial_count();
            j["denominator_monomials"] = polys.denominator.monomial_count();
        }
        emit(c_out, j.dump(2));
    });

    // ---- verify ----
    std::string v_suite = "paper", v_out;
    uint64_t v_seed = 1;
    auto* vc = app.add_subcommand("verify", "run the full verification battery");
    vc->add_option("--suite", v_suite, "paper")->capture_default_str();
    vc->add_option("--seed", v_seed, "seed")->capture_default_str();
    vc->add_option("--out", v_out, "summary JSON path (default stdout)");
    vc->callback([&] {
        if (v_suite != "paper") throw CLI::ValidationError("--suite", "unknown suite " + v_suite);
        auto results = run_acceptance_suite(v_seed);
        Json j;
        Json list = Json::array();
        int failures = 0;
        for (auto& r : results) {
            list.push_back({{"id", r.id},
                            {"name", r.name},
                            {"pass", r.pass},
                            {"seconds", r.seconds},
                            {"details", r.details}});
            failures += !r.pass;
            std::fprintf(stderr, "[%s] %2d %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                         r.name.c_str(), r.seconds);
        }
        j["suite"] = v_suite;
        j["seed"] = v_seed;
        j["criteria"] = list;
        j["failures"] = failures;
        emit(v_out, j.dump(2));
        if (failures > 0) throw CLI::RuntimeError(1);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
