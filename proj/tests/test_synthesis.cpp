#include "support.hpp"

#include "descc/synthesis.hpp"

#include <doctest.h>

using namespace descc;
using namespace testing;

namespace {

// Strings of h that stay inside the state subset `mask`.
Language words_within(const Automaton& h, unsigned mask, std::size_t n) {
    Automaton cut(h.alphabet);
    for (int s = 0; s < static_cast<int>(h.size()); ++s) cut.add_state(h.name(s));
    cut.set_initial(h.initial());
    for (int s = 0; s < static_cast<int>(h.size()); ++s)
        for (const auto& [e, d] : h.out(s))
            if ((mask >> s & 1) && (mask >> d & 1)) cut.add_transition(s, e, d);
    if (!(mask >> h.initial() & 1)) return {};
    return words(cut, n);
}

bool controllable_by_strings(const Language& k, const Language& g, const EventSet& uc, std::size_t n) {
    for (const auto& s : k) {
        if (s.size() >= n) continue;
        for (const auto& e : uc) {
            Trace t = s;
            t.push_back(e);
            if (g.count(t) && !k.count(t)) return false;
        }
    }
    return true;
}

bool normal_by_strings(const Language& k, const Language& g, const EventSet& obs) {
    std::set<Trace> seen;
    for (const auto& s : k) seen.insert(restrict(s, obs));
    for (const auto& t : g)
        if (seen.count(restrict(t, obs)) && !k.count(t)) return false;
    return true;
}

}  // namespace

TEST_CASE("supremal supervisor disables a controllable event ahead of an uncontrollable violation") {
    Alphabet a = alphabet({"a", "b", "u"}, {"u"});
    Automaton g = build(a, "0", {{"0", "a", "1"}, {"1", "u", "2"}, {"0", "b", "3"}});
    Automaton k = build(a, "0", {{"0", "a", "1"}, {"0", "b", "3"}});
    Supervisor s = supremal_supervisor(g, k);
    Automaton cl = closed_loop(s, g);
    CHECK_FALSE(s.trivial);
    CHECK(cl.generates({"b"}));
    CHECK_FALSE(cl.generates({"a"}));
}

TEST_CASE("supremal supervisor is trivial when an uncontrollable prefix leaves the spec") {
    Alphabet a = alphabet({"a", "u"}, {"u"});
    Automaton g = build(a, "0", {{"0", "u", "1"}, {"1", "a", "2"}});
    Automaton k = build(a, "0", {});
    Supervisor s = supremal_supervisor(g, k);
    CHECK(s.trivial);
}

TEST_CASE("synthesis refuses controllable unobservable events") {
    Alphabet a = alphabet({"a"}, {}, {"a"});
    Automaton g = build(a, "0", {{"0", "a", "0"}});
    CHECK_THROWS_AS(supremal_supervisor(g, g), Error);
}

TEST_CASE("controllability and observability checks return witnesses") {
    Alphabet a = alphabet({"a", "u", "b"}, {"u"}, {"u"});
    Automaton g = build(a, "0", {{"0", "a", "1"}, {"1", "u", "2"}, {"0", "u", "3"}, {"3", "a", "4"}, {"4", "b", "5"}});
    Automaton k1 = build(a, "0", {{"0", "a", "1"}});
    auto c = check_controllable(k1, g, {"u"});
    CHECK_FALSE(c.holds);
    CHECK(c.prefix == Trace{});
    CHECK(c.event == "u");
    Automaton k3 = build(a, "0", {{"0", "a", "1"}, {"1", "u", "2"}, {"0", "u", "3"}, {"3", "a", "4"}});
    Automaton g3 = build(a, "0", {{"0", "a", "1"}, {"1", "u", "2"}, {"2", "b", "6"}, {"0", "u", "3"}, {"3", "a", "4"},
                                  {"4", "b", "5"}});
    Automaton k4 = build(a, "0", {{"0", "a", "1"}, {"1", "u", "2"}, {"2", "b", "6"}, {"0", "u", "3"}, {"3", "a", "4"}});
    auto o2 = check_observable(k4, g3, {"a", "b"});
    CHECK_FALSE(o2.holds);
    CHECK(o2.event == "b");
    CHECK(check_observable(k3, g3, {"a", "b"}).holds);
}

TEST_CASE("inf_c is uc* intersected with the plant language") {
    Gen gen(21);
    for (int round = 0; round < 200; ++round) {
        Alphabet a = alphabet({"a", "b", "u", "v"}, {"u", "v"});
        Automaton g = gen.dfa(a, 6);
        EventSet uc = {"u", "v"};
        Language expected;
        for (const auto& w : words(g, 6))
            if (restrict(w, uc) == w) expected.insert(w);
        CHECK(words(inf_c(g, uc), 6) == expected);
    }
}

TEST_CASE("supremal supervisor under full observation equals the largest controllable state subset") {
    Gen gen(22);
    int nontrivial = 0;
    for (int round = 0; round < 150; ++round) {
        Alphabet a = alphabet({"a", "b", "u", "v"}, {"u", "v"});
        Automaton g = gen.dfa(a, 4, 0.5);
        Automaton k = gen.dfa(a, 3, 0.6);
        Product h = compose_tracked(k, g);
        const Automaton& hp = h.automaton;
        if (hp.size() > 12) continue;
        unsigned best = 0;
        for (unsigned mask = 1; mask < (1u << hp.size()); ++mask) {
            bool ok = true;
            for (int s = 0; s < static_cast<int>(hp.size()) && ok; ++s) {
                if (!(mask >> s & 1)) continue;
                for (const auto& e : a.uncontrollable()) {
                    if (g.step(h.pairs[s].second, e) < 0) continue;
                    int d = hp.step(s, e);
                    if (d < 0 || !(mask >> d & 1)) ok = false;
                }
            }
            if (ok) best |= mask;
        }
        Supervisor s = supremal_supervisor(g, k);
        Language got = s.trivial ? Language{} : words(closed_loop(s, g), 6);
        CHECK(got == words_within(hp, best, 6));
        if (!got.empty()) ++nontrivial;
    }
    CHECK(nontrivial > 20);
}

TEST_CASE("supremal supervisor under partial observation is controllable, normal and contains every admissible candidate") {
    Gen gen(23);
    for (int round = 0; round < 150; ++round) {
        Alphabet a = alphabet({"a", "b", "u", "v"}, {"u", "v"}, {"u"});
        Automaton g = gen.dfa(a, 4, 0.5);
        Automaton k = gen.dfa(a, 3, 0.6);
        Product h = compose_tracked(k, g);
        const Automaton& hp = h.automaton;
        if (hp.size() > 12) continue;
        const std::size_t n = 6;
        Language lg = words(g, n), lk = words(k, n);
        Supervisor s = supremal_supervisor(g, k);
        Language sup = s.trivial ? Language{} : words(closed_loop(s, g), n);
        for (const auto& w : sup) CHECK(lk.count(w));
        CHECK(controllable_by_strings(sup, lg, {"u", "v"}, n));
        CHECK(normal_by_strings(truncate(sup, n - 2), truncate(lg, n - 2), {"a", "b", "v"}));
        for (unsigned mask = 1; mask < (1u << hp.size()); ++mask) {
            Language cand = words_within(hp, mask, n);
            if (cand.empty()) continue;
            if (!controllable_by_strings(cand, lg, {"u", "v"}, n)) continue;
            if (!normal_by_strings(cand, lg, {"a", "b", "v"})) continue;
            CHECK(std::includes(sup.begin(), sup.end(), cand.begin(), cand.end()));
        }
    }
}
