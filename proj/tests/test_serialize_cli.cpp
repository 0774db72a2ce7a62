/* test_serialize_cli.cpp -- JSON/text/DOT serialization and the command-line
 * surface: exit codes, document round trips, per-command report shapes,
 * deterministic output.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "helpers.hpp"
#include "json.hpp"
#include "ssa/examples.hpp"
#include "ssa/serialize.hpp"

using namespace ssa;
using namespace ssa::test;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    RunResult r;
    r.code = cli_run(std::move(args), in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1))
        ++n;
    return n;
}

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const domain_error& e) {
        return e.code();
    }
    return "";
}

}  // namespace

TEST_CASE("automaton documents round trip") {
    for (const ExampleEntry& e : examples()) {
        CHECK(structurally_equal(automaton_from_json(automaton_to_json(e.generating)),
                                 e.generating));
        if (e.nucleus)
            CHECK(structurally_equal(automaton_from_json(automaton_to_json(*e.nucleus)),
                                     *e.nucleus));
    }
}

TEST_CASE("document shape") {
    json j = automaton_to_json(ex("odometer"));
    CHECK(j["alphabet_size"] == 2);
    CHECK(j["states"] == json::array({"τ", "ε"}));
    CHECK(j["identity"] == "ε");
    CHECK(j["sigma"] == json::array({{1, 0}, {0, 1}}));
    CHECK(j["tau"] == json::array({{"ε", "ε"}, {"τ", "ε"}}));
    CHECK(automaton_to_json(ex("lamplighter"))["identity"].is_null());
}

TEST_CASE("malformed documents raise stable codes") {
    json good = automaton_to_json(ex("odometer"));

    CHECK(code_of([] { automaton_from_json(json::object()); }) == "bad_json");
    CHECK(code_of([] { automaton_from_json(json::array()); }) == "bad_json");

    json j = good;
    j.erase("tau");
    CHECK(code_of([&] { automaton_from_json(j); }) == "bad_json");

    j = good;
    j["states"] = "τ";
    CHECK(code_of([&] { automaton_from_json(j); }) == "bad_json");

    j = good;
    j["tau"][0][0] = "missing";
    CHECK(code_of([&] { automaton_from_json(j); }) == "unknown_state");

    j = good;
    j["sigma"][0][0] = 7;
    CHECK(code_of([&] { automaton_from_json(j); }) == "bad_tables");

    j = good;
    j["identity"] = "τ";
    CHECK(code_of([&] { automaton_from_json(j); }) == "bad_identity");
}

TEST_CASE("text form") {
    CHECK(automaton_to_text(ex("odometer")) ==
          "alphabet_size: 2\n"
          "τ: 0->1/ε 1->0/τ\n"
          "ε (identity): 0->0/ε 1->1/ε\n");
}

TEST_CASE("graph documents") {
    json j = graph_to_json(graph_of(ex("odometer")));
    CHECK(j["vertices"] == json::array({"τ", "ε"}));
    REQUIRE(j["edges"].size() == 4);
    CHECK(j["edges"][0] == json({{"source", "τ"}, {"target", "ε"}, {"label", "0/1"}}));
    CHECK(j["edges"][1] == json({{"source", "τ"}, {"target", "τ"}, {"label", "1/0"}}));
}

TEST_CASE("dot output quotes and escapes") {
    LabeledGraph g;
    g.vertices = {"plain", "has \"quote\"", "back\\slash"};
    g.edges = {{0, 1, "lbl"}};
    std::string dot = graph_to_dot(g, "demo");
    CHECK(dot.find("digraph \"demo\"") != std::string::npos);
    CHECK(dot.find("\"has \\\"quote\\\"\"") != std::string::npos);
    CHECK(dot.find("\"back\\\\slash\"") != std::string::npos);
    CHECK(dot.find("\"plain\" -> \"has \\\"quote\\\"\" [label=\"lbl\"]") != std::string::npos);
    CHECK(dot.back() == '\n');
}

TEST_CASE("clustered dot groups the classes") {
    LabeledGraph g;
    g.vertices = {"00", "01", "10", "11"};
    g.edges = {{0, 1, "x"}};
    std::string dot = graph_to_dot_clustered(g, {{0, 2}, {1, 3}}, {"0", "1"}, "tiles");
    CHECK(dot.find("subgraph \"cluster_0\"") != std::string::npos);
    CHECK(dot.find("subgraph \"cluster_1\"") != std::string::npos);
    CHECK(dot.find("label=\"0\"") != std::string::npos);
    CHECK(count(dot, "\"00\"") >= 1);
}

TEST_CASE("report envelope") {
    json r = report_json("demo", json{{"x", 1}});
    CHECK(r["schema"] == "ssa-report/1");
    CHECK(r["command"] == "demo");
    CHECK(r["x"] == 1);
}

// ---- command line -----------------------------------------------------

TEST_CASE("act prints the image word") {
    RunResult r = run({"act", "--example", "odometer", "--word", "τ", "--input", "00"});
    CHECK(r.code == 0);
    CHECK(r.out == "10\n");
    CHECK(r.err.empty());

    RunResult rj = run({"act", "--example", "odometer", "--word", "τ·τ·τ", "--input", "110",
                        "--format", "json"});
    REQUIRE(rj.code == 0);
    json j = json::parse(rj.out);
    CHECK(j["schema"] == "ssa-report/1");
    CHECK(j["command"] == "act");
    CHECK(j["output"] == "011");  // 3 + 3 = 6, least significant letter first
    CHECK(j["transition"] == "ε");
}

TEST_CASE("construction commands emit automaton documents") {
    RunResult dual_r = run({"dual", "--example", "lamplighter"});
    REQUIRE(dual_r.code == 0);
    json d = json::parse(dual_r.out);
    CHECK(d["states"] == json::array({"0", "1"}));
    // The emitted document is itself valid input.
    RunResult inv = run({"invertible", "--stdin"}, dual_r.out);
    REQUIRE(inv.code == 0);
    CHECK(json::parse(inv.out)["invertible"] == true);

    RunResult prod = run({"product", "--example", "odometer", "--with-example", "odometer"});
    RunResult pow = run({"power", "--example", "odometer", "--exponent", "2"});
    REQUIRE(prod.code == 0);
    REQUIRE(pow.code == 0);
    CHECK(prod.out == pow.out);
    CHECK(json::parse(prod.out)["states"].size() == 4);

    RunResult min = run({"minimize", "--example", "basilica"});
    REQUIRE(min.code == 0);
    json m = json::parse(min.out);
    CHECK(m["automaton"]["states"].size() == 3);
    CHECK(m["state_map"]["a"] == "a");
}

TEST_CASE("tiles-ascii defaults to the raw rendering") {
    RunResult r = run({"tiles-ascii", "--example", "lamplighter"});
    REQUIRE(r.code == 0);
    CHECK(r.out == render_square_tiles(ex("lamplighter")));
    RunResult rj = run({"tiles-ascii", "--example", "lamplighter", "--format", "json"});
    CHECK(json::parse(rj.out)["rendering"] == render_square_tiles(ex("lamplighter")));
}

TEST_CASE("nucleus report") {
    RunResult r = run({"nucleus", "--example", "basilica"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["status"] == "contracting");
    CHECK(j["size"] == 7);
    CHECK(j["nucleus"] ==
          json::array({"ε", "a", "a^-1", "b", "b^-1", "a^-1·b", "b^-1·a"}));
    CHECK(structurally_equal(automaton_from_json(j["nuclear_automaton"]),
                             ex_nucleus("basilica")));

    RunResult lamp = run({"nucleus", "--example", "lamplighter"});
    REQUIRE(lamp.code == 0);  // a negative analysis is still a successful run
    json lj = json::parse(lamp.out);
    CHECK(lj["status"] == "exceeded_bound");
    CHECK(lj["witness"].is_string());
    CHECK(lj.contains("size") == false);

    RunResult tiny = run({"nucleus", "--example", "basilica", "--max-elements", "3"});
    CHECK(json::parse(tiny.out)["status"] == "exceeded_bound");
    CHECK(json::parse(tiny.out)["max_elements"] == 3);
}

TEST_CASE("analysis verdict commands") {
    CHECK(json::parse(run({"nuclear", "--example", "nonsmooth3"}).out)["nuclear"] == true);
    CHECK(json::parse(run({"nuclear", "--example", "odometer"}).out)["nuclear"] == false);

    RunResult sm = run({"smooth", "--example", "lamplighter"});
    CHECK(sm.code == 0);
    CHECK(json::parse(sm.out)["smooth"] == false);
    CHECK(json::parse(run({"smooth", "--example", "odometer", "--nucleus-form"}).out)["smooth"] ==
          true);

    CHECK(json::parse(run({"open-set", "--example", "nonsmooth3"}).out)["open_set_condition"] ==
          false);
    CHECK(json::parse(run({"open-set", "--example", "basilica"}).out)["open_set_condition"] ==
          true);

    json exp = json::parse(run({"expansion-rule", "--example", "odometer", "--nucleus-form"}).out);
    CHECK(exp["present"] == true);
    CHECK(exp.contains("entries"));
    CHECK(exp.contains("connectors"));
    CHECK(json::parse(run({"expansion-rule", "--example", "bs13"}).out)["present"] == false);
}

TEST_CASE("recurrent and transitive reports") {
    json odo = json::parse(run({"recurrent", "--example", "odometer"}).out);
    CHECK(odo["status"] == "verified");
    REQUIRE(odo["letters"].size() == 2);
    CHECK(odo["letters"][0]["letter"] == "0");
    CHECK(odo["letters"][0]["orbit"].size() == 2);
    for (const json& w : odo["letters"][0]["witnesses"]) CHECK(w["word"].is_string());

    json non = json::parse(run({"recurrent", "--example", "nonrecurrent3"}).out);
    CHECK(non["status"] == "unknown");
    bool missing = false;
    for (const json& w : non["letters"][0]["witnesses"]) missing = missing || w["word"].is_null();
    CHECK(missing);

    json tr = json::parse(run({"transitive", "--example", "basilica", "--max-level", "4"}).out);
    CHECK(tr["max_level"] == 4);
    CHECK(tr["all"] == true);
    CHECK(tr["levels"] == json::array({true, true, true, true}));
}

TEST_CASE("restriction-depth needs a contracting automaton") {
    json ok = json::parse(
        run({"restriction-depth", "--example", "odometer", "--word", "τ·τ·τ"}).out);
    CHECK(ok["bounded"] == true);
    CHECK(ok["depth"] == 2);

    RunResult bad = run({"restriction-depth", "--example", "lamplighter", "--word", "a"});
    CHECK(bad.code == 1);
    CHECK(bad.out.empty());
    json err = json::parse(bad.err);
    CHECK(err["code"] == "not_contracting");
    CHECK(err["context"] == "restriction-depth");
}

TEST_CASE("quotient-order prints a decimal string") {
    json j = json::parse(run({"quotient-order", "--example", "odometer", "--level", "4"}).out);
    CHECK(j["order"] == "16");
    json big = json::parse(run({"quotient-order", "--example", "lamplighter", "--level", "8"}).out);
    CHECK(big["order"].is_string());
}

TEST_CASE("level graph commands") {
    RunResult r = run({"schreier", "--example", "basilica", "--level", "2"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["vertices"].size() == 4);
    CHECK(j["edges"].size() == 8);
    CHECK(run({"dual-power", "--example", "basilica", "--level", "2"}).out == r.out);

    RunResult dot = run({"schreier", "--example", "basilica", "--level", "2", "--format", "dot"});
    CHECK(dot.out.find("digraph \"schreier_2\"") != std::string::npos);
    CHECK(count(dot.out, "->") == 8);

    RunResult capped = run({"schreier", "--example", "odometer", "--level", "9", "--level-cap",
                            "100"});
    CHECK(capped.code == 1);
    CHECK(json::parse(capped.err)["code"] == "level_cap");
}

TEST_CASE("covering and projection maps") {
    json c = json::parse(run({"covering", "--example", "odometer", "--level", "1"}).out);
    CHECK(c["from_level"] == 2);
    CHECK(c["to_level"] == 1);
    CHECK(c["vertex_map"] ==
          json({{"00", "0"}, {"01", "0"}, {"10", "1"}, {"11", "1"}}));

    json p = json::parse(
        run({"projection", "--example", "odometer", "--nucleus-form", "--level", "1"}).out);
    CHECK(p["vertex_map"]["10"] == "0");
    REQUIRE(p["edges"].is_array());
    CHECK(p["edges"][0] == json({{"source", "00"},
                                 {"generator", "τ"},
                                 {"label", "ε"},
                                 {"degenerate", true}}));
}

TEST_CASE("tile commands") {
    json t = json::parse(
        run({"tile-partition", "--example", "odometer", "--level", "2", "--tile-level", "1"}).out);
    CHECK(t["classes"] == json({{"0", {"00", "10"}}, {"1", {"01", "11"}}}));
    CHECK(t["critical_edges"] ==
          json::array({{{"source", "10"}, {"generator", "τ"}, {"target", "01"}},
                       {{"source", "11"}, {"generator", "τ"}, {"target", "00"}}}));

    json adj = json::parse(
        run({"tile-adjacency", "--example", "odometer", "--level", "3", "--tile-level", "1"}).out);
    json lvl1 = json::parse(run({"schreier", "--example", "odometer", "--level", "1"}).out);
    CHECK(adj == lvl1);

    json conn = json::parse(run({"tile-connectivity", "--example", "nonsmooth3b", "--level", "4",
                                 "--tile-level", "1"}).out);
    CHECK(conn["all_connected"] == false);
    REQUIRE(conn["tiles"].size() == 3);

    RunResult dot = run({"tile-partition", "--example", "odometer", "--level", "2", "--tile-level",
                         "1", "--format", "dot"});
    CHECK(dot.out.find("subgraph \"cluster_0\"") != std::string::npos);
}

TEST_CASE("orbit command") {
    json j = json::parse(run({"orbit", "--example", "odometer", "--base", "00"}).out);
    CHECK(j["vertices"] == json::array({"00", "10", "11", "01"}));
    CHECK(j["edges"].size() == 4);
}

TEST_CASE("examples registry commands") {
    RunResult list = run({"examples", "list"});
    REQUIRE(list.code == 0);
    json arr = json::parse(list.out);
    REQUIRE(arr.size() == 7);
    CHECK(arr[0]["name"] == "lamplighter");
    CHECK(arr[0]["nucleus"].is_null());
    CHECK(arr[2]["name"] == "odometer");
    CHECK(arr[2]["nucleus"].is_object());

    RunResult text = run({"examples", "list", "--format", "text"});
    CHECK(count(text.out, "\n") == 7);
    CHECK(text.out.find("basilica: ") != std::string::npos);

    RunResult dump = run({"examples", "dump", "odometer"});
    CHECK(json::parse(dump.out) == automaton_to_json(ex("odometer")));
    RunResult dumpn = run({"examples", "dump", "odometer", "--nucleus"});
    CHECK(json::parse(dumpn.out) == automaton_to_json(ex_nucleus("odometer")));

    // Dumped documents feed straight back in.
    RunResult round = run({"smooth", "--stdin"}, dumpn.out);
    CHECK(json::parse(round.out)["smooth"] == true);

    CHECK(run({"examples", "dump", "nosuch"}).code == 1);
    RunResult nonuc = run({"examples", "dump", "lamplighter", "--nucleus"});
    CHECK(nonuc.code == 1);
    CHECK(json::parse(nonuc.err)["code"] == "no_nucleus_form");
}

TEST_CASE("file input") {
    std::string path = "/tmp/ssa_test_automaton.json";
    {
        std::ofstream f(path);
        f << automaton_to_json(ex("basilica")).dump(2) << "\n";
    }
    json j = json::parse(run({"nucleus", "--file", path}).out);
    CHECK(j["size"] == 7);

    RunResult missing = run({"nucleus", "--file", "/tmp/ssa_no_such_file.json"});
    CHECK(missing.code == 1);
    CHECK(json::parse(missing.err)["code"] == "io");
}

TEST_CASE("exit codes separate usage from domain errors") {
    CHECK(run({}).code == 2);                                     // a subcommand is required
    CHECK(run({"frobnicate"}).code == 2);                         // unknown subcommand
    CHECK(run({"act", "--example", "odometer"}).code == 2);       // missing --word/--input
    CHECK(run({"smooth"}).code == 2);                             // no input source
    CHECK(run({"smooth", "--example", "odometer", "--stdin"}).code == 2);  // two sources
    CHECK(run({"smooth", "--example", "odometer", "--format", "yaml"}).code == 2);
    CHECK(run({"smooth", "--stdin", "--nucleus-form"}, "{}").code == 2);
    CHECK(run({"power", "--example", "odometer", "--exponent", "0"}).code == 2);

    RunResult unknown = run({"smooth", "--example", "nosuch"});
    CHECK(unknown.code == 1);
    CHECK(json::parse(unknown.err)["code"] == "unknown_example");

    RunResult badjson = run({"smooth", "--stdin"}, "not json");
    CHECK(badjson.code == 1);
    CHECK(json::parse(badjson.err)["code"] == "bad_json");

    RunResult badword = run({"act", "--example", "odometer", "--word", "zz", "--input", "0"});
    CHECK(badword.code == 1);
    CHECK(json::parse(badword.err)["code"] == "bad_word");
}

TEST_CASE("help and version exit cleanly") {
    RunResult v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out == "ssa 1.0.0\n");
    RunResult h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("schreier") != std::string::npos);
    CHECK(run({"act", "--help"}).code == 0);
}

TEST_CASE("output is deterministic") {
    for (std::vector<std::string> args :
         {std::vector<std::string>{"nucleus", "--example", "basilica"},
          {"recurrent", "--example", "bs13"},
          {"examples", "list"},
          {"tile-partition", "--example", "basilica", "--level", "3", "--tile-level", "1"},
          {"schreier", "--example", "nonsmooth3", "--level", "2"}}) {
        RunResult a = run(args);
        RunResult b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    // --seedless is accepted everywhere and changes nothing.
    RunResult plain = run({"nucleus", "--example", "basilica"});
    RunResult seeded = run({"nucleus", "--example", "basilica", "--seedless"});
    CHECK(seeded.code == 0);
    CHECK(seeded.out == plain.out);
    CHECK(run({"examples", "list", "--seedless"}).code == 0);
}

TEST_CASE("every subcommand smokes") {
    for (std::vector<std::string> args :
         {std::vector<std::string>{"dual", "--example", "bs13"},
          {"product", "--example", "bs13", "--with-example", "lamplighter"},
          {"power", "--example", "bs13", "--exponent", "3"},
          {"act", "--example", "bs13", "--word", "b·c^-1", "--input", "0110"},
          {"minimize", "--example", "nonsmooth3b"},
          {"tiles-ascii", "--example", "nonrecurrent3"},
          {"invertible", "--example", "nonsmooth3"},
          {"nucleus", "--example", "odometer"},
          {"nuclear", "--example", "basilica"},
          {"smooth", "--example", "nonsmooth3"},
          {"expansion-rule", "--example", "nonsmooth3"},
          {"open-set", "--example", "nonrecurrent3"},
          {"recurrent", "--example", "basilica"},
          {"transitive", "--example", "nonsmooth3b", "--max-level", "3"},
          {"restriction-depth", "--example", "basilica", "--word", "a·b"},
          {"quotient-order", "--example", "bs13", "--level", "3"},
          {"schreier", "--example", "lamplighter", "--level", "3"},
          {"dual-power", "--example", "nonrecurrent3", "--level", "2"},
          {"covering", "--example", "basilica", "--level", "2"},
          {"projection", "--example", "basilica", "--nucleus-form", "--level", "2"},
          {"tile-partition", "--example", "nonsmooth3", "--level", "2", "--tile-level", "1"},
          {"tile-adjacency", "--example", "basilica", "--nucleus-form", "--level", "3",
           "--tile-level", "1"},
          {"tile-connectivity", "--example", "odometer", "--level", "3", "--tile-level", "1"},
          {"orbit", "--example", "bs13", "--base", "000"},
          {"examples", "dump", "nonsmooth3b", "--format", "text"}}) {
        RunResult r = run(args);
        INFO(args[0]);
        CHECK(r.code == 0);
        CHECK_FALSE(r.out.empty());
    }
}
