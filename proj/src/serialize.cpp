/* serialize.cpp -- JSON and DOT encodings */

#include "ssa/serialize.hpp"

#include <sstream>

namespace ssa {

using nlohmann::json;

json automaton_to_json(const Automaton& a) {
    json j;
    j["alphabet_size"] = a.alphabet_size;
    j["states"] = a.states;
    j["identity"] = a.identity ? json(a.states[*a.identity]) : json(nullptr);
    j["sigma"] = a.sigma;
    json tau = json::array();
    for (const auto& row : a.tau) {
        json r = json::array();
        for (std::size_t q : row) r.push_back(a.states[q]);
        tau.push_back(std::move(r));
    }
    j["tau"] = std::move(tau);
    return j;
}

Automaton automaton_from_json(const json& j) {
    auto fail = [](const std::string& msg) -> void { throw domain_error("bad_json", msg); };
    if (!j.is_object()) fail("automaton must be a JSON object");
    for (const char* key : {"alphabet_size", "states", "sigma", "tau"})
        if (!j.contains(key)) fail(std::string("missing key '") + key + "'");

    Automaton a;
    if (!j["alphabet_size"].is_number_integer() || j["alphabet_size"].get<long long>() < 0)
        fail("alphabet_size must be a non-negative integer");
    a.alphabet_size = j["alphabet_size"].get<std::size_t>();
    if (!j["states"].is_array()) fail("states must be an array of names");
    for (const auto& s : j["states"]) {
        if (!s.is_string()) fail("states must be an array of names");
        a.states.push_back(s.get<std::string>());
    }
    if (j.contains("identity") && !j["identity"].is_null()) {
        if (!j["identity"].is_string()) fail("identity must be a state name or null");
        a.identity = a.state_index(j["identity"].get<std::string>());
    }

    auto read_rows = [&](const json& rows, const char* what) {
        if (!rows.is_array() || rows.size() != a.alphabet_size)
            fail(std::string(what) + " must have one row per letter");
        for (const auto& row : rows)
            if (!row.is_array() || row.size() != a.states.size())
                fail(std::string(what) + " rows must have one entry per state");
    };
    read_rows(j["sigma"], "sigma");
    read_rows(j["tau"], "tau");
    for (const auto& row : j["sigma"]) {
        std::vector<std::size_t> r;
        for (const auto& v : row) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                fail("sigma entries must be letters");
            r.push_back(v.get<std::size_t>());
        }
        a.sigma.push_back(std::move(r));
    }
    for (const auto& row : j["tau"]) {
        std::vector<std::size_t> r;
        for (const auto& v : row) {
            if (!v.is_string()) fail("tau entries must be state names");
            r.push_back(a.state_index(v.get<std::string>()));
        }
        a.tau.push_back(std::move(r));
    }
    validate(a);
    return a;
}

std::string automaton_to_text(const Automaton& a) {
    std::ostringstream os;
    os << "alphabet_size: " << a.alphabet_size << "\n";
    for (std::size_t q = 0; q < a.state_count(); ++q) {
        os << a.states[q];
        if (a.identity && *a.identity == q) os << " (identity)";
        os << ":";
        for (std::size_t x = 0; x < a.alphabet_size; ++x)
            os << " " << a.letter_name(x) << "->" << a.letter_name(a.sigma[x][q]) << "/"
               << a.states[a.tau[x][q]];
        os << "\n";
    }
    return os.str();
}

json graph_to_json(const LabeledGraph& g) {
    json j;
    j["vertices"] = g.vertices;
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"source", g.vertices[e.source]},
                         {"target", g.vertices[e.target]},
                         {"label", e.label}});
    j["edges"] = std::move(edges);
    return j;
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string graph_to_dot(const LabeledGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << dot_quote(name) << " {\n";
    for (const auto& v : g.vertices) os << "  " << dot_quote(v) << ";\n";
    for (const auto& e : g.edges)
        os << "  " << dot_quote(g.vertices[e.source]) << " -> " << dot_quote(g.vertices[e.target])
           << " [label=" << dot_quote(e.label) << "];\n";
    os << "}\n";
    return os.str();
}

std::string graph_to_dot_clustered(const LabeledGraph& g,
                                   const std::vector<std::vector<std::size_t>>& classes,
                                   const std::vector<std::string>& class_labels,
                                   const std::string& name) {
    std::ostringstream os;
    os << "digraph " << dot_quote(name) << " {\n";
    std::vector<char> placed(g.vertices.size(), 0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        os << "  subgraph " << dot_quote("cluster_" + std::to_string(c)) << " {\n";
        if (c < class_labels.size()) os << "    label=" << dot_quote(class_labels[c]) << ";\n";
        for (std::size_t v : classes[c]) {
            os << "    " << dot_quote(g.vertices[v]) << ";\n";
            placed[v] = 1;
        }
        os << "  }\n";
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (!placed[v]) os << "  " << dot_quote(g.vertices[v]) << ";\n";
    for (const auto& e : g.edges)
        os << "  " << dot_quote(g.vertices[e.source]) << " -> " << dot_quote(g.vertices[e.target])
           << " [label=" << dot_quote(e.label) << "];\n";
    os << "}\n";
    return os.str();
}

json report_json(const std::string& command, json body) {
    json j;
    j["schema"] = "ssa-report/1";
    j["command"] = command;
    j.update(body);
    return j;
}

}  // namespace ssa
