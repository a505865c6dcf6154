#pragma once

#include "descc/automaton.hpp"
#include "descc/events.hpp"

#include <functional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace testing {

using descc::Alphabet;
using descc::Automaton;
using descc::EventSet;
using descc::Trace;
using Edge = std::tuple<std::string, std::string, std::string>;
using Language = std::set<Trace>;

// Events listed in `uc` are uncontrollable, those in `uo` unobservable.
inline Alphabet alphabet(const EventSet& events, const EventSet& uc = {}, const EventSet& uo = {}) {
    Alphabet a;
    for (const auto& e : events) a.add(e, !uc.count(e), !uo.count(e));
    return a;
}

inline Automaton build(const Alphabet& alpha, const std::string& initial, const std::vector<Edge>& edges,
                       const std::vector<std::string>& extra_states = {}) {
    Automaton a(alpha);
    a.add_state(initial);
    for (const auto& s : extra_states)
        if (!a.has_state(s)) a.add_state(s);
    for (const auto& [s, e, d] : edges) {
        if (!a.has_state(s)) a.add_state(s);
        if (!a.has_state(d)) a.add_state(d);
        a.add_transition(s, e, d);
    }
    a.set_initial(a.state(initial));
    return a;
}

inline Automaton chain(const Alphabet& alpha, const Trace& word) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < word.size(); ++k) edges.emplace_back(std::to_string(k), word[k], std::to_string(k + 1));
    return build(alpha, "0", edges);
}

// ---- string-set oracles -------------------------------------------------

inline Language words(const Automaton& a, std::size_t n) {
    Language out;
    if (a.empty()) return out;
    std::function<void(int, Trace&)> walk = [&](int s, Trace& t) {
        out.insert(t);
        if (t.size() == n) return;
        for (const auto& [e, d] : a.out(s)) {
            t.push_back(e);
            walk(d, t);
            t.pop_back();
        }
    };
    Trace t;
    walk(a.initial(), t);
    return out;
}

inline Language marked_words(const Automaton& a, std::size_t n) {
    Language out;
    for (const auto& w : words(a, n))
        if (a.is_marked(a.run(w))) out.insert(w);
    return out;
}

inline Trace restrict(const Trace& t, const EventSet& keep) { return descc::project_trace(t, keep); }

// Strings over Σa ∪ Σb of length ≤ n whose projections lie in L(a) and L(b).
inline Language product_words(const Automaton& a, const Automaton& b, std::size_t n) {
    Language la = words(a, n), lb = words(b, n), out;
    EventSet all = a.alphabet.names();
    for (const auto& e : b.alphabet.names()) all.insert(e);
    EventSet ea = a.alphabet.names(), eb = b.alphabet.names();
    std::function<void(Trace&)> grow = [&](Trace& t) {
        out.insert(t);
        if (t.size() == n) return;
        for (const auto& e : all) {
            t.push_back(e);
            if (la.count(restrict(t, ea)) && lb.count(restrict(t, eb))) grow(t);
            t.pop_back();
        }
    };
    Trace t;
    if (!a.empty() && !b.empty()) grow(t);
    return out;
}

// v ∈ P(L(a)): search over (state, matched prefix length) pairs.
inline bool has_preimage(const Automaton& a, const Trace& v, const EventSet& keep) {
    if (a.empty()) return false;
    std::set<std::pair<int, std::size_t>> seen;
    std::vector<std::pair<int, std::size_t>> stack{{a.initial(), 0}};
    while (!stack.empty()) {
        auto [s, i] = stack.back();
        stack.pop_back();
        if (!seen.insert({s, i}).second) continue;
        if (i == v.size()) return true;
        for (const auto& [e, d] : a.out(s)) {
            if (!keep.count(e))
                stack.push_back({d, i});
            else if (e == v[i])
                stack.push_back({d, i + 1});
        }
    }
    return false;
}

inline Language quotient(const Language& l, const Trace& t) {
    Language out;
    for (const auto& w : l)
        if (w.size() >= t.size() && std::equal(t.begin(), t.end(), w.begin())) out.insert(Trace(w.begin() + t.size(), w.end()));
    return out;
}

inline Language truncate(const Language& l, std::size_t n) {
    Language out;
    for (const auto& w : l)
        if (w.size() <= n) out.insert(w);
    return out;
}

// ---- random fixtures ------------------------------------------------------

struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

    EventSet events(int k, const std::string& prefix = "e") {
        EventSet out;
        for (int i = 0; i < k; ++i) out.insert(prefix + std::to_string(i));
        return out;
    }

    // Accessible DFA; each state gets a spanning-tree parent first so every state is reachable.
    Automaton dfa(const Alphabet& alpha, int max_states, double density = 0.45, double marked = 0.7) {
        int n = pick(1, max_states);
        EventSet names = alpha.names();
        std::vector<std::string> ev(names.begin(), names.end());
        Automaton a(alpha);
        for (int s = 0; s < n; ++s) a.add_state("q" + std::to_string(s), coin(marked));
        a.set_initial(0);
        for (int s = 1; s < n; ++s) {
            for (int tries = 0; tries < 20; ++tries) {
                int p = pick(0, s - 1);
                const std::string& e = ev[pick(0, static_cast<int>(ev.size()) - 1)];
                if (a.step(p, e) < 0) {
                    a.add_transition(p, e, s);
                    break;
                }
            }
        }
        for (int s = 0; s < n; ++s)
            for (const auto& e : ev)
                if (a.step(s, e) < 0 && coin(density)) a.add_transition(s, e, pick(0, n - 1));
        return descc::accessible(a);
    }
};

}  // namespace testing
