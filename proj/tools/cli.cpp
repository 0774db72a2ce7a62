/* cli.cpp -- subcommand wiring
 *
 * Construction commands (dual, product, power, minimize, examples dump) print
 * bare automaton documents so they can be piped back into --stdin; graph
 * commands print bare graph documents or DOT; every analysis command prints a
 * report under the "ssa-report/1" envelope.  Output is byte-deterministic:
 * object keys are sorted by the JSON library and all orders derive from state
 * and lexicographic word order.
 */

#include "cli.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ssa/analysis.hpp"
#include "ssa/automaton.hpp"
#include "ssa/examples.hpp"
#include "ssa/group_word.hpp"
#include "ssa/schreier.hpp"
#include "ssa/serialize.hpp"

namespace ssa {

namespace {

using nlohmann::json;

struct CmdState {
    // input selection
    std::string example;
    std::string file;
    bool from_stdin = false;
    bool nucleus_form = false;
    // second operand (product)
    std::string with_example;
    std::string with_file;
    // output
    std::string format = "json";
    // parameters, defaulted per command at registration
    std::size_t exponent = 2;
    std::size_t level = 1;
    std::size_t tile_level = 1;
    std::size_t max_level = 5;
    std::size_t depth_cap = 32;
    std::size_t max_elements = 512;
    std::size_t max_len = 12;
    std::size_t search_len = 8;
    std::size_t level_cap = 100000;
    std::string word;
    std::string input;
    std::string base;
    std::string name;
    bool seedless = false;
};

void add_input_flags(CLI::App* sub, CmdState& st) {
    auto* g = sub->add_option_group("input", "automaton source (exactly one)");
    g->add_option("--example", st.example, "registry example name");
    g->add_option("--file", st.file, "path of an automaton JSON document");
    g->add_flag("--stdin", st.from_stdin, "read an automaton JSON document from standard input");
    g->require_option(1);
    sub->add_flag("--nucleus-form", st.nucleus_form,
                  "with --example: load the stored nucleus automaton instead");
}

void add_common_flags(CLI::App* sub, CmdState& st, const std::vector<std::string>& formats) {
    sub->add_option("--format", st.format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    sub->add_flag("--seedless", st.seedless, "accepted for scripting symmetry; output is always deterministic");
}

std::string read_stream(std::istream& s) {
    std::ostringstream buf;
    buf << s.rdbuf();
    return buf.str();
}

Automaton parse_automaton_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw domain_error("bad_json", origin + ": " + e.what());
    }
    return automaton_from_json(j);
}

Automaton load_from(const std::string& example, const std::string& file, bool from_stdin,
                    bool nucleus_form, std::istream& in) {
    if (!example.empty()) {
        const ExampleEntry& e = find_example(example);
        if (!nucleus_form) return e.generating;
        if (!e.nucleus)
            throw domain_error("no_nucleus_form",
                               "example '" + example + "' stores no nucleus automaton");
        return *e.nucleus;
    }
    if (nucleus_form) throw CLI::ValidationError("--nucleus-form requires --example");
    if (!file.empty()) {
        std::ifstream f(file);
        if (!f) throw domain_error("io", "cannot open '" + file + "'");
        return parse_automaton_text(read_stream(f), file);
    }
    if (from_stdin) return parse_automaton_text(read_stream(in), "stdin");
    throw CLI::ValidationError("no input source given");
}

Automaton load_automaton(const CmdState& st, std::istream& in) {
    return load_from(st.example, st.file, st.from_stdin, st.nucleus_form, in);
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void emit_automaton(std::ostream& out, const Automaton& a, const std::string& fmt,
                    const std::string& dot_name) {
    if (fmt == "dot")
        out << graph_to_dot(graph_of(a), dot_name);
    else if (fmt == "text")
        out << automaton_to_text(a);
    else
        emit_json(out, automaton_to_json(a));
}

void emit_graph(std::ostream& out, const LabeledGraph& g, const std::string& fmt,
                const std::string& dot_name) {
    if (fmt == "dot")
        out << graph_to_dot(g, dot_name);
    else
        emit_json(out, graph_to_json(g));
}

// Unsigned state words (expansion-rule connectors) share the signed text form.
std::string state_word_text(const Automaton& a, const std::vector<std::size_t>& w) {
    RawWord raw;
    for (std::size_t q : w) raw.push_back({q, 1});
    return word_text(a, raw);
}

std::vector<std::size_t> decode_index(std::size_t v, std::size_t k, std::size_t len) {
    std::vector<std::size_t> w(len);
    for (std::size_t i = len; i-- > 0;) {
        w[i] = v % k;
        v /= k;
    }
    return w;
}

std::string vertex_name(const Automaton& a, std::size_t v, std::size_t len) {
    return word_key(decode_index(v, a.alphabet_size, len), a.alphabet_size);
}

json word_texts(const Automaton& a, const std::vector<RawWord>& ws) {
    json arr = json::array();
    for (const RawWord& w : ws) arr.push_back(word_text(a, w));
    return arr;
}

}  // namespace

int cli_run(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"toolkit for invertible Mealy automata and their tree actions"};
    app.name("ssa");
    app.set_version_flag("--version", "ssa 1.0.0");
    app.require_subcommand(1);

    std::deque<CmdState> states;
    auto fresh = [&states]() -> CmdState& { return states.emplace_back(); };

    // ---- constructions -------------------------------------------------

    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("dual", "swap the roles of letters and states");
        add_input_flags(sub, st);
        add_common_flags(sub, st, {"json", "dot", "text"});
        sub->callback([&st, &in, &out] {
            emit_automaton(out, dual(load_automaton(st, in)), st.format, "dual");
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("product", "compose two automata over one alphabet");
        add_input_flags(sub, st);
        auto* g = sub->add_option_group("with", "second operand (exactly one)");
        g->add_option("--with-example", st.with_example, "registry example name");
        g->add_option("--with-file", st.with_file, "path of an automaton JSON document");
        g->require_option(1);
        add_common_flags(sub, st, {"json", "dot", "text"});
        sub->callback([&st, &in, &out] {
            Automaton left = load_automaton(st, in);
            Automaton right = load_from(st.with_example, st.with_file, false, false, in);
            emit_automaton(out, product(left, right), st.format, "product");
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("power", "iterated product of an automaton with itself");
        add_input_flags(sub, st);
        sub->add_option("--exponent", st.exponent, "number of factors")
            ->required()
            ->check(CLI::PositiveNumber);
        add_common_flags(sub, st, {"json", "dot", "text"});
        sub->callback([&st, &in, &out] {
            emit_automaton(out, power(load_automaton(st, in), st.exponent), st.format, "power");
        });
    }
    {
        CmdState& st = fresh();
        st.format = "text";
        auto* sub = app.add_subcommand("act", "apply a group word to a letter word");
        add_input_flags(sub, st);
        sub->add_option("--word", st.word, "group word, e.g. \"a·b^-1\"")->required();
        sub->add_option("--input", st.input, "letter word, e.g. \"0110\"")->required();
        add_common_flags(sub, st, {"json", "text"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            GroupOps ops(a);
            RawWord w = parse_word_text(a, st.word);
            std::vector<std::size_t> letters = parse_word_key(st.input, a.alphabet_size);
            std::string output = word_key(ops.apply(w, letters), a.alphabet_size);
            if (st.format == "text") {
                out << output << "\n";
                return;
            }
            json body;
            body["word"] = word_text(a, w);
            body["input"] = word_key(letters, a.alphabet_size);
            body["output"] = output;
            body["transition"] = word_text(a, ops.free_reduce(ops.restrict(w, letters)));
            emit_json(out, report_json("act", body));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("minimize", "merge states acting identically on the tree");
        add_input_flags(sub, st);
        add_common_flags(sub, st, {"json", "dot", "text"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            MinimizeResult m = minimize(a);
            if (st.format != "json") {
                emit_automaton(out, m.automaton, st.format, "minimize");
                return;
            }
            json map;
            for (std::size_t q = 0; q < a.state_count(); ++q)
                map[a.states[q]] = m.automaton.states[m.state_map[q]];
            emit_json(out, json{{"automaton", automaton_to_json(m.automaton)},
                                {"state_map", map}});
        });
    }
    {
        CmdState& st = fresh();
        st.format = "text";
        auto* sub = app.add_subcommand("tiles-ascii", "render the transition table as labeled squares");
        add_input_flags(sub, st);
        add_common_flags(sub, st, {"json", "text"});
        sub->callback([&st, &in, &out] {
            std::string art = render_square_tiles(load_automaton(st, in));
            if (st.format == "text")
                out << art;
            else
                emit_json(out, report_json("tiles-ascii", json{{"rendering", art}}));
        });
    }

    // ---- element / analysis reports ------------------------------------

    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("invertible", "test whether every state permutes the letters");
        add_input_flags(sub, st);
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            emit_json(out, report_json("invertible",
                                       json{{"invertible", is_invertible(load_automaton(st, in))}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("nucleus", "close the generators under deep restrictions");
        add_input_flags(sub, st);
        sub->add_option("--max-elements", st.max_elements, "element cap")->capture_default_str();
        sub->add_option("--max-len", st.max_len, "raw word length cap")->capture_default_str();
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            NucleusReport r = nucleus(a, st.max_elements, st.max_len);
            json body;
            body["max_elements"] = r.max_elements;
            body["max_len"] = r.max_len;
            if (r.status == NucleusReport::Status::Contracting) {
                body["status"] = "contracting";
                body["size"] = r.nucleus.size();
                body["nucleus"] = word_texts(a, r.nucleus);
                body["nuclear_automaton"] = automaton_to_json(*r.nuclear_automaton);
            } else {
                body["status"] = "exceeded_bound";
                body["witness"] = r.witness;
            }
            emit_json(out, report_json("nucleus", body));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("nuclear", "test whether the states are exactly their own nucleus");
        add_input_flags(sub, st);
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            emit_json(out, report_json("nuclear",
                                       json{{"nuclear", is_nuclear(load_automaton(st, in))}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("smooth", "test transition surjectivity plus connected trivial-restriction letter graph");
        add_input_flags(sub, st);
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            emit_json(out, report_json("smooth",
                                       json{{"smooth", is_smooth(load_automaton(st, in))}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("expansion-rule", "entry pairs and trivially-restricting connector words, when smooth");
        add_input_flags(sub, st);
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            ExpansionRule r = expansion_rule(a);
            json body{{"present", r.present}};
            if (r.present) {
                json entries = json::array();
                for (std::size_t q = 0; q < a.state_count(); ++q)
                    entries.push_back(json{{"state", a.states[q]},
                                           {"entry_letter", a.letter_name(r.entry_letter[q])},
                                           {"entry_state", a.states[r.entry_state[q]]}});
                body["entries"] = std::move(entries);
                json rows = json::array();
                for (std::size_t x = 0; x < a.alphabet_size; ++x) {
                    json row = json::array();
                    for (std::size_t y = 0; y < a.alphabet_size; ++y)
                        row.push_back(state_word_text(a, r.connector[x][y]));
                    rows.push_back(std::move(row));
                }
                body["connectors"] = std::move(rows);
            }
            emit_json(out, report_json("expansion-rule", body));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("open-set", "test whether every state reaches a trivially-acting state");
        add_input_flags(sub, st);
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            emit_json(out, report_json("open-set",
                                       json{{"open_set_condition",
                                             open_set_condition(load_automaton(st, in))}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("recurrent", "test whether vertex stabilizers restrict onto the whole group");
        add_input_flags(sub, st);
        sub->add_option("--search-len", st.search_len, "product search depth")->capture_default_str();
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            RecurrenceReport r = recurrence(a, st.search_len);
            std::vector<std::size_t> gens = generator_states(a);
            json body;
            body["status"] = r.status == RecurrenceReport::Status::Verified ? "verified" : "unknown";
            body["search_len"] = r.search_len;
            json letters = json::array();
            for (const RecurrenceLetter& rl : r.per_letter) {
                json lj;
                lj["letter"] = a.letter_name(rl.letter);
                json orbit = json::array();
                for (std::size_t x : rl.orbit) orbit.push_back(a.letter_name(x));
                lj["orbit"] = std::move(orbit);
                lj["schreier_generators"] = word_texts(a, rl.schreier_generators);
                lj["restricted"] = word_texts(a, rl.restricted);
                json wits = json::array();
                for (std::size_t i = 0; i < gens.size(); ++i)
                    wits.push_back(json{{"generator", a.states[gens[i]]},
                                        {"word", rl.witness[i] ? json(word_text(a, *rl.witness[i]))
                                                               : json(nullptr)}});
                lj["witnesses"] = std::move(wits);
                letters.push_back(std::move(lj));
            }
            body["letters"] = std::move(letters);
            emit_json(out, report_json("recurrent", body));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("transitive", "single-orbit test on each level up to a bound");
        add_input_flags(sub, st);
        sub->add_option("--max-level", st.max_level, "deepest level tested")->capture_default_str();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            std::vector<bool> v = spherical_transitivity(a, st.max_level, st.level_cap);
            bool all = std::all_of(v.begin(), v.end(), [](bool b) { return b; });
            emit_json(out, report_json("transitive", json{{"max_level", st.max_level},
                                                          {"levels", v},
                                                          {"all", all}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("restriction-depth", "depth at which every restriction of a word lands in the nucleus");
        add_input_flags(sub, st);
        sub->add_option("--word", st.word, "group word, e.g. \"a·b^-1\"")->required();
        sub->add_option("--depth-cap", st.depth_cap, "deepest level examined")->capture_default_str();
        sub->add_option("--max-elements", st.max_elements, "nucleus element cap")->capture_default_str();
        sub->add_option("--max-len", st.max_len, "nucleus word length cap")->capture_default_str();
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            NucleusReport nr = nucleus(a, st.max_elements, st.max_len);
            if (nr.status != NucleusReport::Status::Contracting)
                throw domain_error("not_contracting",
                                   "nucleus computation exceeded its bounds; restriction depth needs a nucleus");
            GroupOps ops(a);
            RawWord g = parse_word_text(a, st.word);
            RestrictionDepth rd = restriction_depth(ops, g, nr.nucleus, st.depth_cap);
            emit_json(out, report_json("restriction-depth", json{{"word", word_text(a, g)},
                                                                 {"bounded", rd.bounded},
                                                                 {"depth", rd.depth},
                                                                 {"depth_cap", st.depth_cap}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("quotient-order", "order of the permutation group induced on one level");
        add_input_flags(sub, st);
        sub->add_option("--level", st.level, "tree level")->required();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            BigUint order = level_quotient_order(a, st.level, st.level_cap);
            emit_json(out, report_json("quotient-order", json{{"level", st.level},
                                                              {"order", order.to_string()}}));
        });
    }

    // ---- level graphs ---------------------------------------------------

    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("schreier", "generator-action graph on one tree level");
        add_input_flags(sub, st);
        sub->add_option("--level", st.level, "tree level")->required();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json", "dot"});
        sub->callback([&st, &in, &out] {
            SchreierLevel s = schreier_graph(load_automaton(st, in), st.level, st.level_cap);
            emit_graph(out, s.graph, st.format, "schreier_" + std::to_string(st.level));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("dual-power", "the same level graph read off the power of the dual");
        add_input_flags(sub, st);
        sub->add_option("--level", st.level, "tree level")->required();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json", "dot"});
        sub->callback([&st, &in, &out] {
            LabeledGraph g = dual_power_graph(load_automaton(st, in), st.level, st.level_cap);
            emit_graph(out, g, st.format, "dual_power_" + std::to_string(st.level));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("covering", "level+1 -> level map forgetting the last letter");
        add_input_flags(sub, st);
        sub->add_option("--level", st.level, "target level (source is one deeper)")->required();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            CoveringMap c = covering_map(a, st.level, st.level_cap);
            json vmap;
            for (std::size_t v = 0; v < c.vertex_map.size(); ++v)
                vmap[vertex_name(a, v, c.from_level)] = vertex_name(a, c.vertex_map[v], c.to_level);
            emit_json(out, report_json("covering", json{{"from_level", c.from_level},
                                                        {"to_level", c.to_level},
                                                        {"vertex_map", vmap}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("projection", "level+1 -> level map forgetting the first letter");
        add_input_flags(sub, st);
        sub->add_option("--level", st.level, "target level (source is one deeper)")->required();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            ProjectionMap p = projection_map(a, st.level, st.level_cap);
            std::vector<std::size_t> gens = generator_states(a);
            json vmap;
            for (std::size_t v = 0; v < p.vertex_map.size(); ++v)
                vmap[vertex_name(a, v, p.from_level)] = vertex_name(a, p.vertex_map[v], p.to_level);
            json edges = json::array();
            for (std::size_t v = 0; v < p.vertex_map.size(); ++v)
                for (std::size_t gi = 0; gi < gens.size(); ++gi)
                    edges.push_back(json{{"source", vertex_name(a, v, p.from_level)},
                                         {"generator", a.states[gens[gi]]},
                                         {"label", a.states[p.edge_label[v][gi]]},
                                         {"degenerate", static_cast<bool>(p.degenerate[v][gi])}});
            emit_json(out, report_json("projection", json{{"from_level", p.from_level},
                                                          {"to_level", p.to_level},
                                                          {"vertex_map", vmap},
                                                          {"edges", edges}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("tile-partition", "suffix classes and critical edges on one level");
        add_input_flags(sub, st);
        sub->add_option("--level", st.level, "ambient level")->required();
        sub->add_option("--tile-level", st.tile_level, "suffix length defining the tiles")->capture_default_str();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json", "dot"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            TilePartition t = tile_partition(a, st.level, st.tile_level, st.level_cap);
            std::vector<std::size_t> gens = generator_states(a);
            if (st.format == "dot") {
                SchreierLevel s = schreier_graph(a, st.level, st.level_cap);
                std::vector<std::string> labels;
                for (std::size_t c = 0; c < t.classes.size(); ++c)
                    labels.push_back(vertex_name(a, c, st.tile_level));
                out << graph_to_dot_clustered(s.graph, t.classes, labels,
                                              "tiles_" + std::to_string(st.level));
                return;
            }
            json classes;
            for (std::size_t c = 0; c < t.classes.size(); ++c) {
                json members = json::array();
                for (std::size_t v : t.classes[c]) members.push_back(vertex_name(a, v, st.level));
                classes[vertex_name(a, c, st.tile_level)] = std::move(members);
            }
            json crit = json::array();
            for (std::size_t v = 0; v < t.class_of.size(); ++v)
                for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                    if (!t.critical[v][gi]) continue;
                    std::vector<std::size_t> w = decode_index(v, a.alphabet_size, st.level);
                    std::vector<std::size_t> img = act(a, {gens[gi]}, w).output;
                    crit.push_back(json{{"source", word_key(w, a.alphabet_size)},
                                        {"generator", a.states[gens[gi]]},
                                        {"target", word_key(img, a.alphabet_size)}});
                }
            emit_json(out, report_json("tile-partition", json{{"level", t.level},
                                                              {"tile_level", t.suffix_depth},
                                                              {"classes", classes},
                                                              {"critical_edges", crit}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("tile-adjacency", "quotient graph of the tiles along critical edges");
        add_input_flags(sub, st);
        sub->add_option("--level", st.level, "ambient level")->required();
        sub->add_option("--tile-level", st.tile_level, "suffix length defining the tiles")->capture_default_str();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json", "dot"});
        sub->callback([&st, &in, &out] {
            LabeledGraph g =
                tile_adjacency(load_automaton(st, in), st.level, st.tile_level, st.level_cap);
            emit_graph(out, g, st.format, "tile_adjacency_" + std::to_string(st.tile_level));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("tile-connectivity", "connected components of each tile under non-critical edges");
        add_input_flags(sub, st);
        sub->add_option("--level", st.level, "ambient level")->required();
        sub->add_option("--tile-level", st.tile_level, "suffix length defining the tiles")->capture_default_str();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            TileConnectivity t = tile_connectivity(a, st.level, st.tile_level, st.level_cap);
            json tiles = json::array();
            for (std::size_t c = 0; c < t.components.size(); ++c)
                tiles.push_back(json{{"tile", vertex_name(a, c, st.tile_level)},
                                     {"components", t.components[c]}});
            emit_json(out, report_json("tile-connectivity",
                                       json{{"level", st.level},
                                            {"tile_level", st.tile_level},
                                            {"all_connected", t.all_connected},
                                            {"tiles", tiles}}));
        });
    }
    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("orbit", "generator-action graph restricted to one orbit");
        add_input_flags(sub, st);
        sub->add_option("--base", st.base, "start word, e.g. \"00\"")->required();
        sub->add_option("--level-cap", st.level_cap, "largest level size handled")->capture_default_str();
        add_common_flags(sub, st, {"json", "dot"});
        sub->callback([&st, &in, &out] {
            Automaton a = load_automaton(st, in);
            LabeledGraph g =
                orbit_schreier(a, parse_word_key(st.base, a.alphabet_size), st.level_cap);
            emit_graph(out, g, st.format, "orbit");
        });
    }

    // ---- registry -------------------------------------------------------

    {
        CmdState& st = fresh();
        auto* sub = app.add_subcommand("examples", "bundled automata");
        sub->require_subcommand(1);
        auto* list = sub->add_subcommand("list", "every registry entry with its documents");
        list->add_option("--format", st.format, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        list->add_flag("--seedless", st.seedless, "accepted for scripting symmetry");
        list->callback([&st, &out] {
            if (st.format == "text") {
                for (const ExampleEntry& e : examples())
                    out << e.name << ": " << e.description << "\n";
                return;
            }
            json arr = json::array();
            for (const ExampleEntry& e : examples())
                arr.push_back(json{{"name", e.name},
                                   {"description", e.description},
                                   {"generating", automaton_to_json(e.generating)},
                                   {"nucleus", e.nucleus ? automaton_to_json(*e.nucleus)
                                                         : json(nullptr)}});
            emit_json(out, arr);
        });
        CmdState& st2 = fresh();
        auto* dump = sub->add_subcommand("dump", "one automaton document, for piping into --stdin");
        dump->add_option("name", st2.name, "registry example name")->required();
        dump->add_flag("--nucleus", st2.nucleus_form, "dump the stored nucleus automaton instead");
        dump->add_option("--format", st2.format, "output format")
            ->check(CLI::IsMember({"json", "dot", "text"}))
            ->capture_default_str();
        dump->add_flag("--seedless", st2.seedless, "accepted for scripting symmetry");
        dump->callback([&st2, &out] {
            const ExampleEntry& e = find_example(st2.name);
            if (st2.nucleus_form && !e.nucleus)
                throw domain_error("no_nucleus_form",
                                   "example '" + st2.name + "' stores no nucleus automaton");
            emit_automaton(out, st2.nucleus_form ? *e.nucleus : e.generating, st2.format,
                           st2.name);
        });
    }

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(e, out, err);
        emit_json(err, json{{"code", "usage"}, {"message", e.what()}, {"context", e.get_name()}});
        return 2;
    } catch (const domain_error& e) {
        auto subs = app.get_subcommands();
        emit_json(err, json{{"code", e.code()},
                            {"message", e.what()},
                            {"context", subs.empty() ? "" : subs[0]->get_name()}});
        return 1;
    } catch (const std::exception& e) {
        emit_json(err, json{{"code", "internal"}, {"message", e.what()}, {"context", ""}});
        return 1;
    }
    return 0;
}

}  // namespace ssa
