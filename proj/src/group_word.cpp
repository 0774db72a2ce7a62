/* group_word.cpp -- signed-word evaluation and the equality decision */

#include "ssa/group_word.hpp"

#include <algorithm>
#include <unordered_map>

namespace ssa {

namespace {

struct RawWordHash {
    std::size_t operator()(const RawWord& w) const {
        std::size_t h = 1469598103934665603ull;
        for (const SignedState& s : w) {
            h ^= s.state * 2 + (s.sign < 0 ? 1 : 0);
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

GroupOps::GroupOps(const Automaton& a) : aut_(&a) {
    if (!is_invertible(a))
        throw domain_error("not_invertible", "group elements need an invertible automaton");
    inv_sigma_.assign(a.alphabet_size, std::vector<std::size_t>(a.states.size()));
    inv_tau_.assign(a.alphabet_size, std::vector<std::size_t>(a.states.size()));
    for (std::size_t q = 0; q < a.states.size(); ++q)
        for (std::size_t b = 0; b < a.alphabet_size; ++b) {
            std::size_t out = a.sigma[b][q];
            inv_sigma_[out][q] = b;
            inv_tau_[out][q] = a.tau[b][q];
        }
}

std::pair<std::size_t, SignedState> GroupOps::step(SignedState s, std::size_t letter) const {
    if (letter >= aut_->alphabet_size)
        throw domain_error("letter_out_of_range", "letter out of alphabet range");
    if (s.state >= aut_->states.size())
        throw domain_error("unknown_state", "state index out of range");
    if (s.sign > 0) return {aut_->sigma[letter][s.state], {aut_->tau[letter][s.state], 1}};
    return {inv_sigma_[letter][s.state], {inv_tau_[letter][s.state], -1}};
}

std::vector<std::size_t> GroupOps::apply(const RawWord& w,
                                         const std::vector<std::size_t>& input) const {
    std::vector<std::size_t> out;
    out.reserve(input.size());
    RawWord cur = w;
    for (std::size_t letter : input) {
        for (SignedState& s : cur) {
            auto [o, next] = step(s, letter);
            s = next;
            letter = o;
        }
        out.push_back(letter);
    }
    return out;
}

RawWord GroupOps::restrict(const RawWord& w, const std::vector<std::size_t>& input) const {
    RawWord cur = w;
    for (std::size_t letter : input)
        for (SignedState& s : cur) {
            auto [o, next] = step(s, letter);
            s = next;
            letter = o;
        }
    return cur;
}

std::vector<std::size_t> GroupOps::root_permutation(const RawWord& w) const {
    std::vector<std::size_t> perm(aut_->alphabet_size);
    for (std::size_t a = 0; a < perm.size(); ++a) {
        std::size_t letter = a;
        for (const SignedState& s : w) letter = step(s, letter).first;
        perm[a] = letter;
    }
    return perm;
}

RawWord GroupOps::free_reduce(const RawWord& w) const {
    RawWord out;
    for (const SignedState& s : w) {
        if (aut_->identity && s.state == *aut_->identity) continue;
        if (!out.empty() && out.back().state == s.state && out.back().sign == -s.sign)
            out.pop_back();
        else
            out.push_back(s);
    }
    return out;
}

RawWord GroupOps::inverse(const RawWord& w) const {
    RawWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->state, -it->sign});
    return out;
}

bool GroupOps::equals(const RawWord& v, const RawWord& w, std::size_t pair_cap) const {
    // Intern raw words; union ids assumed equal; contradiction = root mismatch.
    std::unordered_map<RawWord, std::size_t, RawWordHash> ids;
    std::vector<std::size_t> parent;
    std::vector<const RawWord*> words;
    std::vector<std::vector<std::size_t>> roots;  // root permutation per id, filled lazily
    auto intern = [&](const RawWord& x) {
        auto [it, fresh] = ids.emplace(x, parent.size());
        if (fresh) {
            parent.push_back(it->second);
            words.push_back(&it->first);
            roots.push_back(root_permutation(it->first));
        }
        return it->second;
    };
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<std::pair<std::size_t, std::size_t>> stack{{intern(v), intern(w)}};
    std::size_t processed = 0;
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        x = find(x);
        y = find(y);
        if (x == y) continue;
        if (++processed > pair_cap)
            throw domain_error("equals_cap", "equality closure exceeded the visited-pair cap");
        if (roots[x] != roots[y]) return false;
        parent[y] = x;
        for (std::size_t a = 0; a < aut_->alphabet_size; ++a) {
            std::vector<std::size_t> letter{a};
            stack.emplace_back(intern(restrict(*words[x], letter)),
                               intern(restrict(*words[y], letter)));
        }
    }
    return true;
}

std::vector<std::size_t> GroupOps::signature(const RawWord& w, std::size_t depth) const {
    std::vector<std::size_t> sig;
    std::vector<std::size_t> input(depth, 0);
    for (;;) {
        std::vector<std::size_t> out = apply(w, input);
        sig.insert(sig.end(), out.begin(), out.end());
        std::size_t i = depth;
        while (i > 0 && ++input[i - 1] == aut_->alphabet_size) input[--i] = 0;
        if (i == 0) break;
    }
    return sig;
}

std::uint64_t GroupOps::signature_hash(const RawWord& w, std::size_t depth) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t v : signature(w, depth)) {
        h ^= v + 1;
        h *= 1099511628211ull;
    }
    return h;
}

WreathDecomposition wreath_decomposition(const GroupOps& ops, const RawWord& w) {
    WreathDecomposition d;
    d.root_permutation = ops.root_permutation(w);
    d.restrictions.reserve(ops.automaton().alphabet_size);
    for (std::size_t a = 0; a < ops.automaton().alphabet_size; ++a)
        d.restrictions.push_back(ops.restrict(w, {a}));
    return d;
}

namespace {

// Inverse of a factor-form name: reverse the "·"-separated pieces and toggle
// each piece's "^-1".  Closure-generated composite names are themselves in
// factor form, so appending "^-1" to the whole name would re-parse as the
// product of inverted pieces in the wrong order.
std::string invert_name(const std::string& name) {
    const std::string sep = "·";
    std::vector<std::string> pieces;
    std::size_t pos = 0;
    while (pos <= name.size()) {
        std::size_t next = name.find(sep, pos);
        if (next == std::string::npos) next = name.size();
        pieces.push_back(name.substr(pos, next - pos));
        if (next == name.size()) break;
        pos = next + sep.size();
    }
    std::string out;
    for (std::size_t i = pieces.size(); i-- > 0;) {
        if (!out.empty()) out += sep;
        std::string& p = pieces[i];
        if (p.size() >= 3 && p.compare(p.size() - 3, 3, "^-1") == 0)
            out += p.substr(0, p.size() - 3);
        else
            out += p + "^-1";
    }
    return out;
}

}  // namespace

std::string word_text(const Automaton& a, const RawWord& w) {
    if (w.empty()) return a.identity ? a.states[*a.identity] : "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += "·";
        const std::string& name = a.states[w[i].state];
        if (w[i].sign >= 0)
            out += name;
        else if (name.find("·") == std::string::npos)
            out += name + "^-1";
        else
            out += invert_name(name);
    }
    return out;
}

/* "·" always separates factors, so a state whose own name contains "·"
 * (e.g. "a^-1·b" in a closure-generated automaton) parses as the product of
 * its factors -- by construction the same group element. */
RawWord parse_word_text(const Automaton& a, const std::string& text) {
    RawWord out;
    if (text.empty() || text == "1") return out;
    std::size_t pos = 0;
    const std::string sep = "·";
    while (pos <= text.size()) {
        std::size_t next = text.find(sep, pos);
        std::string factor =
            next == std::string::npos ? text.substr(pos) : text.substr(pos, next - pos);
        bool matched = false;
        for (std::size_t q = 0; q < a.states.size() && !matched; ++q)
            if (a.states[q] == factor) {
                if (!a.identity || q != *a.identity) out.push_back({q, 1});
                matched = true;
            }
        if (!matched && factor.size() > 3 && factor.substr(factor.size() - 3) == "^-1") {
            std::string base = factor.substr(0, factor.size() - 3);
            for (std::size_t q = 0; q < a.states.size() && !matched; ++q)
                if (a.states[q] == base) {
                    if (!a.identity || q != *a.identity) out.push_back({q, -1});
                    matched = true;
                }
        }
        if (!matched && factor == "1") matched = true;  // bare identity factor
        if (!matched)
            throw domain_error("bad_word", "unknown state in word: '" + factor + "'");
        if (next == std::string::npos) break;
        pos = next + sep.size();
    }
    return out;
}

}  // namespace ssa
