#include "dskp/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace dskp {

std::string value_to_string(const PV& v) {
    if (v.is_indeterminate())
        throw std::domain_error("serialize: indeterminate value has no representation");
    return v.str();
}

PV value_from_string(const std::string& s) {
    if (s == "inf") return PV::infinity();
    return PV(GaussianRational::parse(s));
}

namespace {
std::string key_of(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }

std::pair<int, int> parse_key(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad point key: " + s);
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}
} // namespace

Json initial_data_to_json(const InitialData<GaussianRational>& d) {
    Json j;
    j["window"] = {{"imin", d.h.imin()},
                   {"imax", d.h.imax()},
                   {"jmin", d.h.jmin()},
                   {"jmax", d.h.jmax()}};
    Json hrows = Json::array();
    for (int i = d.h.imin(); i <= d.h.imax(); ++i) {
        Json row = Json::array();
        for (int jj = d.h.jmin(); jj <= d.h.jmax(); ++jj) row.push_back(d.h(i, jj));
        hrows.push_back(row);
    }
    j["h"] = hrows;
    Json a;
    for (auto& [ij, v] : d.a) a[key_of(ij.first, ij.second)] = value_to_string(v);
    j["a"] = a;
    return j;
}

InitialData<GaussianRational> initial_data_from_json(const Json& j) {
    int imin = j.at("window").at("imin"), imax = j.at("window").at("imax");
    int jmin = j.at("window").at("jmin"), jmax = j.at("window").at("jmax");
    const Json& hrows = j.at("h");
    HeightFunction h(imin, imax, jmin, jmax, [&](int i, int jj) {
        return hrows.at(i - imin).at(jj - jmin).get<int>();
    });
    InitialData<GaussianRational> d{h, {}};
    for (auto& [key, val] : j.at("a").items()) {
        auto [i, jj] = parse_key(key);
        d.a[{i, jj}] = value_from_string(val.get<std::string>());
    }
    return d;
}

Json solution_to_json(const Solution<GaussianRational>& s) {
    Json values = Json::array();
    for (auto& [p, v] : s.values) {
        Json entry;
        entry["i"] = p.i;
        entry["j"] = p.j;
        entry["k"] = p.k;
        switch (v.second) {
        case Provenance::InitialDatum: entry["provenance"] = "initial"; break;
        case Provenance::Computed: entry["provenance"] = "computed"; break;
        case Provenance::SingularStep: entry["provenance"] = "singular"; break;
        case Provenance::PropagatedSingular: entry["provenance"] = "singular-propagated"; break;
        }
        if (v.first.is_indeterminate()) entry["value"] = nullptr;
        else entry["value"] = value_to_string(v.first);
        values.push_back(entry);
    }
    Json j;
    j["values"] = values;
    return j;
}

Json graph_to_json(const CwGraph& g, const KasteleynOrientation* phi,
                   const WeightMap<GaussianRational>* w) {
    Json j;
    Json vs = Json::array();
    for (size_t v = 0; v < g.vertices.size(); ++v)
        vs.push_back({{"id", v}, {"color", g.vertices[v].color == 0 ? "white" : "black"}});
    j["vertices"] = vs;
    Json es = Json::array();
    for (size_t e = 0; e < g.edges.size(); ++e) {
        Json ej = {{"u", g.edges[e].u},
                   {"v", g.edges[e].v},
                   {"left", key_of(g.edges[e].left.first, g.edges[e].left.second)},
                   {"right", key_of(g.edges[e].right.first, g.edges[e].right.second)}};
        if (phi) ej["phi_w_to_b"] = phi->sign[e];
        es.push_back(ej);
    }
    j["edges"] = es;
    Json fs = Json::array();
    for (auto& [l, f] : g.faces) {
        Json fj = {{"label", key_of(l.first, l.second)},
                   {"inner", f.inner},
                   {"degree", f.degree()}};
        if (w) fj["weight"] = value_to_string(w->at(l));
        fs.push_back(fj);
    }
    j["faces"] = fs;
    return j;
}

Json config_to_json(const Quadrangulation& q, const TreeForestConfig& cfg) {
    auto face_label = [&](int f) {
        return key_of(q.faces[f].label.first, q.faces[f].label.second);
    };
    Json j;
    Json tree = Json::array(), forest = Json::array();
    for (int v = 0; v < q.vertex_count; ++v) {
        if (cfg.tree_out[v] >= 0)
            tree.push_back({{"vertex", v}, {"through", face_label(cfg.tree_out[v])}});
        if (cfg.forest_out[v] >= 0)
            forest.push_back({{"vertex", v}, {"through", face_label(cfg.forest_out[v])}});
    }
    j["tree"] = tree;
    j["forest"] = forest;
    j["sign"] = cfg.sign;
    return j;
}

Json devron_report_to_json(const DevronReport& r) {
    Json j;
    j["kind"] = r.kind;
    j["predicted_level"] = r.predicted_level;
    j["degenerate_at_prediction"] = r.degenerate_at_prediction;
    j["earlier_degeneracy"] = r.earlier_degeneracy;
    if (!r.final_value.empty()) j["final_value"] = r.final_value;
    if (!r.closed_form_value.empty()) {
        j["closed_form_value"] = r.closed_form_value;
        j["closed_form_matches"] = r.closed_form_matches;
    }
    j["pass"] = r.pass;
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
}

} // namespace dskp
