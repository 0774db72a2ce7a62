/* test_render.cpp -- ASCII square-tile tables, frozen against an independent
 * renderer.
 *
 * The expected strings were produced by a separate script that lays the cells
 * out from the documented geometry (uniform width, centered letters, state on
 * the left / restriction on the right) and the example tables; any drift in
 * either the renderer or the registry shows up as a diff here.  The display
 * automata rebuild the same rows in their customary display order, which the
 * consistency case below ties back to the registry.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "helpers.hpp"
#include "render_literals.hpp"
#include "ssa/automaton.hpp"
#include "ssa/examples.hpp"

using namespace ssa;
using namespace ssa::test;

namespace {

std::size_t codepoints(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

}  // namespace

TEST_CASE("frozen renderings, binary examples") {
    CHECK(render_square_tiles(ex("lamplighter")) == k_render_lamplighter);
    CHECK(render_square_tiles(ex("bs13")) == k_render_bs13);
    CHECK(render_square_tiles(display_form("odometer")) == k_render_odometer);
}

TEST_CASE("frozen renderings, ternary examples") {
    CHECK(render_square_tiles(display_form("nonrecurrent3")) == k_render_nonrecurrent3);
    CHECK(render_square_tiles(display_form("nonsmooth3")) == k_render_nonsmooth3);
    CHECK(render_square_tiles(display_form("nonsmooth3b")) == k_render_nonsmooth3b);
}

TEST_CASE("display forms carry exactly the registry rows") {
    for (const char* name : {"odometer", "nonrecurrent3", "nonsmooth3", "nonsmooth3b"}) {
        Automaton d = display_form(name);
        const Automaton& reg =
            std::string(name) == "odometer" ? ex_nucleus("odometer") : ex(name);
        REQUIRE(d.states.size() == reg.states.size());
        for (const std::string& s : d.states) {
            std::size_t dq = d.state_index(s), rq = reg.state_index(s);
            for (std::size_t l = 0; l < reg.alphabet_size; ++l) {
                CHECK(d.sigma[l][dq] == reg.sigma[l][rq]);
                CHECK(d.states[d.tau[l][dq]] == reg.states[reg.tau[l][rq]]);
            }
        }
    }
}

TEST_CASE("renderings are rectangular with uniform cell geometry") {
    for (const ExampleEntry& e : examples()) {
        std::string r = render_square_tiles(e.generating);
        REQUIRE(!r.empty());
        CHECK(r.back() == '\n');
        std::vector<std::string> lines;
        std::size_t pos = 0;
        while (pos < r.size()) {
            std::size_t nl = r.find('\n', pos);
            lines.push_back(r.substr(pos, nl - pos));
            pos = nl + 1;
        }
        // 4 lines per state block plus the opening border.
        CHECK(lines.size() == 4 * e.generating.states.size() + 1);
        std::size_t want = codepoints(lines[0]);
        for (const std::string& line : lines) {
            CHECK(codepoints(line) == want);
            CHECK((line.front() == '+' || line.front() == '|'));
            CHECK(line.front() == line.back());
        }
    }
}

TEST_CASE("cells scale to the widest state pair") {
    Automaton wide = from_wreath(2, {row("long_name", {"long_name", "ε"}, {1, 0})});
    std::string r = render_square_tiles(wide);
    // width = len("long_name") * 2 + 1 + 2 = 21
    std::size_t first_line = r.find('\n');
    CHECK(r.substr(0, first_line) == "+" + std::string(21, '-') + "+" + std::string(21, '-') + "+");
    CHECK(r.find("|long_name   long_name|") != std::string::npos);
}
