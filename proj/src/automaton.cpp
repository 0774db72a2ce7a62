/* automaton.cpp -- core constructions on Mealy automata */

#include "ssa/automaton.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace ssa {

const std::string& Automaton::letter_name(std::size_t a) const {
    static const std::string digits[10] = {"0", "1", "2", "3", "4", "5", "6", "7", "8", "9"};
    if (a < letter_names.size()) return letter_names[a];
    if (a < 10) return digits[a];
    // Silent fallback would need storage; validate() keeps display names in sync
    // for big alphabets, so reaching this is a programming error.
    throw domain_error("letter_out_of_range", "no display name for letter " + std::to_string(a));
}

std::size_t Automaton::state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return i;
    throw domain_error("unknown_state", "no state named '" + name + "'");
}

void validate(const Automaton& a) {
    if (a.alphabet_size == 0) throw domain_error("bad_alphabet", "alphabet_size must be positive");
    if (a.states.empty()) throw domain_error("bad_states", "state set must be non-empty");
    {
        std::vector<std::string> names = a.states;
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw domain_error("bad_states", "state names must be unique");
    }
    for (const std::string& name : a.states)
        if (name.empty()) throw domain_error("bad_states", "state names must be non-empty");
    if (a.sigma.size() != a.alphabet_size || a.tau.size() != a.alphabet_size)
        throw domain_error("bad_tables", "sigma/tau must have one row per letter");
    for (std::size_t l = 0; l < a.alphabet_size; ++l) {
        if (a.sigma[l].size() != a.states.size() || a.tau[l].size() != a.states.size())
            throw domain_error("bad_tables", "sigma/tau rows must have one column per state");
        for (std::size_t q = 0; q < a.states.size(); ++q) {
            if (a.sigma[l][q] >= a.alphabet_size)
                throw domain_error("bad_tables", "sigma entry out of letter range");
            if (a.tau[l][q] >= a.states.size())
                throw domain_error("bad_tables", "tau entry out of state range");
        }
    }
    if (a.identity) {
        std::size_t e = *a.identity;
        if (e >= a.states.size()) throw domain_error("bad_identity", "identity index out of range");
        for (std::size_t l = 0; l < a.alphabet_size; ++l)
            if (a.sigma[l][e] != l || a.tau[l][e] != e)
                throw domain_error("bad_identity", "designated identity state must fix letters and itself");
    }
    if (!a.letter_names.empty() && a.letter_names.size() != a.alphabet_size)
        throw domain_error("bad_alphabet", "letter display names must cover the alphabet");
    if (a.letter_names.empty() && a.alphabet_size > 10)
        throw domain_error("bad_alphabet", "alphabets beyond 10 letters need explicit display names");
}

bool structurally_equal(const Automaton& x, const Automaton& y) {
    return x.alphabet_size == y.alphabet_size && x.states == y.states &&
           x.identity == y.identity && x.sigma == y.sigma && x.tau == y.tau;
}

Automaton from_wreath(std::size_t alphabet_size, const std::vector<WreathRow>& rows,
                      const std::string& identity_name) {
    Automaton a;
    a.alphabet_size = alphabet_size;
    std::unordered_map<std::string, std::size_t> index;
    for (const WreathRow& row : rows) {
        if (index.count(row.name))
            throw domain_error("bad_states", "duplicate wreath row for '" + row.name + "'");
        index.emplace(row.name, a.states.size());
        a.states.push_back(row.name);
    }
    bool need_identity = false;
    for (const WreathRow& row : rows) {
        if (row.restrictions.size() != alphabet_size || row.root_image.size() != alphabet_size)
            throw domain_error("bad_tables", "wreath row '" + row.name + "' must cover every letter");
        for (const std::string& r : row.restrictions)
            if (!index.count(r)) {
                if (r == identity_name)
                    need_identity = true;
                else
                    throw domain_error("unknown_state",
                                       "restriction '" + r + "' of '" + row.name + "' has no row");
            }
    }
    if (need_identity) {
        index.emplace(identity_name, a.states.size());
        a.states.push_back(identity_name);
    }
    a.sigma.assign(alphabet_size, std::vector<std::size_t>(a.states.size()));
    a.tau.assign(alphabet_size, std::vector<std::size_t>(a.states.size()));
    for (std::size_t q = 0; q < rows.size(); ++q)
        for (std::size_t l = 0; l < alphabet_size; ++l) {
            a.sigma[l][q] = rows[q].root_image[l];
            a.tau[l][q] = index.at(rows[q].restrictions[l]);
        }
    if (auto it = index.find(identity_name); it != index.end()) {
        a.identity = it->second;
        if (need_identity)  // adjoined above: fill the fresh identity row
            for (std::size_t l = 0; l < alphabet_size; ++l) {
                a.sigma[l][it->second] = l;
                a.tau[l][it->second] = it->second;
            }
        // A user-declared identity row is checked, not rewritten, by validate().
    }
    validate(a);
    return a;
}

LabeledGraph graph_of(const Automaton& a) {
    LabeledGraph g;
    g.vertices = a.states;
    for (std::size_t q = 0; q < a.states.size(); ++q)
        for (std::size_t l = 0; l < a.alphabet_size; ++l)
            g.edges.push_back({q, a.tau[l][q], a.letter_name(l) + "/" + a.letter_name(a.sigma[l][q])});
    return g;
}

Automaton dual(const Automaton& a) {
    Automaton d;
    d.alphabet_size = a.states.size();
    d.letter_names = a.states;
    for (std::size_t l = 0; l < a.alphabet_size; ++l) d.states.push_back(a.letter_name(l));
    d.sigma.assign(d.alphabet_size, std::vector<std::size_t>(d.states.size()));
    d.tau.assign(d.alphabet_size, std::vector<std::size_t>(d.states.size()));
    // Dual letter q reading dual state a: outputs tau(a,q), moves to sigma(a,q).
    for (std::size_t q = 0; q < a.states.size(); ++q)
        for (std::size_t l = 0; l < a.alphabet_size; ++l) {
            d.sigma[q][l] = a.tau[l][q];
            d.tau[q][l] = a.sigma[l][q];
        }
    // The identity designation cannot be carried over (the old identity is a
    // letter now), so re-derive it from the tables; this makes the double
    // dual restore the designation exactly.
    for (std::size_t s = 0; s < d.states.size() && !d.identity; ++s) {
        bool trivial = true;
        for (std::size_t q = 0; q < d.alphabet_size; ++q)
            trivial = trivial && d.sigma[q][s] == q && d.tau[q][s] == s;
        if (trivial) d.identity = s;
    }
    // Drop letter names that merely restate the positional defaults, again so
    // that dualizing twice reproduces the original field for field.  Larger
    // alphabets have no positional defaults and keep their names.
    bool positional = d.alphabet_size <= 10;
    for (std::size_t l = 0; positional && l < d.alphabet_size; ++l)
        positional = d.letter_names[l] == std::to_string(l);
    if (positional) d.letter_names.clear();
    validate(d);
    return d;
}

Automaton product(const Automaton& left, const Automaton& right) {
    if (left.alphabet_size != right.alphabet_size)
        throw domain_error("incompatible_alphabets", "incompatible alphabets");
    Automaton p;
    p.alphabet_size = left.alphabet_size;
    p.letter_names = left.letter_names;
    p.states.reserve(left.states.size() * right.states.size());
    for (const std::string& q : left.states)
        for (const std::string& r : right.states) p.states.push_back("(" + q + "," + r + ")");
    const std::size_t nr = right.states.size();
    p.sigma.assign(p.alphabet_size, std::vector<std::size_t>(p.states.size()));
    p.tau.assign(p.alphabet_size, std::vector<std::size_t>(p.states.size()));
    for (std::size_t q = 0; q < left.states.size(); ++q)
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t l = 0; l < p.alphabet_size; ++l) {
                std::size_t mid = left.sigma[l][q];  // letter handed to the right factor
                p.sigma[l][q * nr + r] = right.sigma[mid][r];
                p.tau[l][q * nr + r] = left.tau[l][q] * nr + right.tau[mid][r];
            }
    if (left.identity && right.identity) p.identity = *left.identity * nr + *right.identity;
    validate(p);
    return p;
}

Automaton power(const Automaton& a, std::size_t n) {
    if (n == 0) throw domain_error("bad_power", "power requires n >= 1");
    Automaton result = a;
    for (std::size_t i = 1; i < n; ++i) result = product(result, a);
    return result;
}

ActResult act(const Automaton& a, const std::vector<std::size_t>& state_word,
              const std::vector<std::size_t>& input) {
    ActResult res;
    res.transition = state_word;
    for (std::size_t q : state_word)
        if (q >= a.states.size()) throw domain_error("unknown_state", "state index out of range");
    res.output.reserve(input.size());
    for (std::size_t letter : input) {
        if (letter >= a.alphabet_size)
            throw domain_error("letter_out_of_range", "letter out of alphabet range");
        // Feed the letter through the whole state word, left factor first.
        for (std::size_t& q : res.transition) {
            std::size_t out = a.sigma[letter][q];
            q = a.tau[letter][q];
            letter = out;
        }
        res.output.push_back(letter);
    }
    return res;
}

bool is_invertible(const Automaton& a) {
    for (std::size_t q = 0; q < a.states.size(); ++q) {
        std::vector<bool> seen(a.alphabet_size, false);
        for (std::size_t l = 0; l < a.alphabet_size; ++l) {
            std::size_t img = a.sigma[l][q];
            if (seen[img]) return false;
            seen[img] = true;
        }
    }
    return true;
}

Automaton inverse_automaton(const Automaton& a) {
    if (!is_invertible(a))
        throw domain_error("not_invertible", "inverse_automaton requires an invertible automaton");
    Automaton inv;
    inv.alphabet_size = a.alphabet_size;
    inv.letter_names = a.letter_names;
    for (std::size_t q = 0; q < a.states.size(); ++q)
        inv.states.push_back(a.identity && *a.identity == q ? a.states[q] : a.states[q] + "^-1");
    inv.identity = a.identity;
    inv.sigma.assign(a.alphabet_size, std::vector<std::size_t>(a.states.size()));
    inv.tau.assign(a.alphabet_size, std::vector<std::size_t>(a.states.size()));
    for (std::size_t q = 0; q < a.states.size(); ++q)
        for (std::size_t b = 0; b < a.alphabet_size; ++b) {
            std::size_t out = a.sigma[b][q];  // q maps b to out, so q^-1 maps out to b
            inv.sigma[out][q] = b;
            inv.tau[out][q] = a.tau[b][q];  // (q^-1)|_out = (q|_b)^-1, same index in inv
        }
    validate(inv);
    return inv;
}

MinimizeResult minimize(const Automaton& a) {
    const std::size_t n = a.states.size();
    // Seed classes by the output column (the root action of each state).
    std::vector<std::size_t> cls(n);
    {
        std::map<std::vector<std::size_t>, std::size_t> seed;
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<std::size_t> col(a.alphabet_size);
            for (std::size_t l = 0; l < a.alphabet_size; ++l) col[l] = a.sigma[l][q];
            cls[q] = seed.emplace(std::move(col), seed.size()).first->second;
        }
    }
    // Split on tau successor classes until stable.
    for (;;) {
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> next;
        std::vector<std::size_t> refined(n);
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<std::size_t> succ(a.alphabet_size);
            for (std::size_t l = 0; l < a.alphabet_size; ++l) succ[l] = cls[a.tau[l][q]];
            refined[q] = next.emplace(std::make_pair(cls[q], std::move(succ)), next.size()).first->second;
        }
        if (refined == cls) break;
        cls = std::move(refined);
    }
    // Renumber classes by first occurrence so representative names keep the original order.
    std::vector<std::size_t> order(n, SIZE_MAX);
    std::size_t classes = 0;
    for (std::size_t q = 0; q < n; ++q)
        if (order[cls[q]] == SIZE_MAX) order[cls[q]] = classes++;
    MinimizeResult res;
    res.state_map.resize(n);
    for (std::size_t q = 0; q < n; ++q) res.state_map[q] = order[cls[q]];
    Automaton& m = res.automaton;
    m.alphabet_size = a.alphabet_size;
    m.letter_names = a.letter_names;
    m.states.resize(classes);
    std::vector<std::size_t> rep(classes, SIZE_MAX);
    for (std::size_t q = 0; q < n; ++q)
        if (rep[res.state_map[q]] == SIZE_MAX) {
            rep[res.state_map[q]] = q;
            m.states[res.state_map[q]] = a.states[q];
        }
    m.sigma.assign(a.alphabet_size, std::vector<std::size_t>(classes));
    m.tau.assign(a.alphabet_size, std::vector<std::size_t>(classes));
    for (std::size_t c = 0; c < classes; ++c)
        for (std::size_t l = 0; l < a.alphabet_size; ++l) {
            m.sigma[l][c] = a.sigma[l][rep[c]];
            m.tau[l][c] = res.state_map[a.tau[l][rep[c]]];
        }
    if (a.identity) m.identity = res.state_map[*a.identity];
    validate(m);
    return res;
}

namespace {

std::size_t codepoints(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;  // count non-continuation bytes
    return n;
}

void put_centered(std::string& line, const std::string& text, std::size_t width) {
    std::size_t len = codepoints(text);
    std::size_t pad = width > len ? (width - len) / 2 : 0;
    line.append(pad, ' ');
    line += text;
    line.append(width - pad - std::min(len, width), ' ');
}

}  // namespace

std::string render_square_tiles(const Automaton& a) {
    const std::size_t k = a.alphabet_size;
    // Uniform cell width: widest top/bottom label, or widest left+right pair plus a gap.
    std::size_t width = 1;
    for (std::size_t q = 0; q < a.states.size(); ++q)
        for (std::size_t l = 0; l < k; ++l) {
            width = std::max(width, codepoints(a.letter_name(l)));
            width = std::max(width, codepoints(a.letter_name(a.sigma[l][q])));
            width = std::max(width,
                             codepoints(a.states[q]) + codepoints(a.states[a.tau[l][q]]) + 1);
        }
    width += 2;  // one blank column against each border
    std::string border = "+";
    for (std::size_t l = 0; l < k; ++l) border += std::string(width, '-') + "+";
    std::string out = border + "\n";
    for (std::size_t q = 0; q < a.states.size(); ++q) {
        std::string top, mid, bot;
        for (std::size_t l = 0; l < k; ++l) {
            top += "|";
            put_centered(top, a.letter_name(a.sigma[l][q]), width);
            mid += "|";
            const std::string& lhs = a.states[q];
            const std::string& rhs = a.states[a.tau[l][q]];
            mid += lhs;
            mid.append(width - codepoints(lhs) - codepoints(rhs), ' ');
            mid += rhs;
            bot += "|";
            put_centered(bot, a.letter_name(l), width);
        }
        out += top + "|\n" + mid + "|\n" + bot + "|\n" + border + "\n";
    }
    return out;
}

bool graphs_equal(const LabeledGraph& x, const LabeledGraph& y) {
    std::vector<std::string> xv = x.vertices, yv = y.vertices;
    std::sort(xv.begin(), xv.end());
    std::sort(yv.begin(), yv.end());
    if (xv != yv) return false;
    auto triples = [](const LabeledGraph& g) {
        std::vector<std::tuple<std::string, std::string, std::string>> ts;
        ts.reserve(g.edges.size());
        for (const auto& e : g.edges)
            ts.emplace_back(g.vertices[e.source], g.vertices[e.target], e.label);
        std::sort(ts.begin(), ts.end());
        return ts;
    };
    return triples(x) == triples(y);
}

std::string word_key(const std::vector<std::size_t>& word, std::size_t alphabet_size) {
    std::ostringstream os;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (alphabet_size > 10 && i > 0) os << ',';
        os << word[i];
    }
    return os.str();
}

std::vector<std::size_t> parse_word_key(const std::string& key, std::size_t alphabet_size) {
    std::vector<std::size_t> word;
    if (key.empty()) return word;
    if (alphabet_size > 10 || key.find(',') != std::string::npos) {
        std::istringstream is(key);
        std::string item;
        while (std::getline(is, item, ','))
            word.push_back(static_cast<std::size_t>(std::stoul(item)));
    } else {
        for (char c : key) {
            if (c < '0' || c > '9') throw domain_error("bad_word", "letter words use digits 0-9");
            word.push_back(static_cast<std::size_t>(c - '0'));
        }
    }
    for (std::size_t l : word)
        if (l >= alphabet_size) throw domain_error("letter_out_of_range", "letter out of alphabet range");
    return word;
}

}  // namespace ssa
