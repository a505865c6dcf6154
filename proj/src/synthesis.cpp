#include "descc/synthesis.hpp"

#include "descc/events.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>

namespace descc {

namespace {

Automaton renumber(const Automaton& a) {
    Automaton out(a.alphabet);
    for (int s = 0; s < static_cast<int>(a.size()); ++s) out.add_state(std::to_string(s), a.is_marked(s));
    if (!a.empty()) out.set_initial(a.initial());
    for (int s = 0; s < static_cast<int>(a.size()); ++s)
        for (const auto& [e, d] : a.out(s)) out.add_transition(s, e, d);
    return out;
}

// Keeps states with keep[s] set, then takes the accessible part.
Automaton restrict_states(const Automaton& a, const std::vector<char>& keep) {
    Automaton out(a.alphabet);
    if (a.empty() || !keep[a.initial()]) return out;
    std::vector<int> map(a.size(), -1);
    for (int s = 0; s < static_cast<int>(a.size()); ++s)
        if (keep[s]) map[s] = out.add_state(a.name(s), a.is_marked(s));
    out.set_initial(map[a.initial()]);
    for (int s = 0; s < static_cast<int>(a.size()); ++s) {
        if (!keep[s]) continue;
        for (const auto& [e, d] : a.out(s))
            if (keep[d]) out.add_transition(map[s], e, map[d]);
    }
    return accessible(out);
}

Trace unwind(const std::map<std::pair<int, int>, std::pair<std::pair<int, int>, std::string>>& parent,
             std::pair<int, int> k) {
    Trace t;
    for (;;) {
        const auto& [prev, e] = parent.at(k);
        if (prev.first < 0) break;
        t.push_back(e);
        k = prev;
    }
    std::reverse(t.begin(), t.end());
    return t;
}

// Largest controllable sublanguage of L(k) ∩ L(g) by iterated removal of
// states where the plant enables an uncontrollable event the product lacks.
Automaton sup_controllable(const Automaton& k, const Automaton& g, const EventSet& uc) {
    Product h = compose_tracked(k, g);
    const Automaton& a = h.automaton;
    std::vector<char> keep(a.size(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (int s = 0; s < static_cast<int>(a.size()); ++s) {
            if (!keep[s]) continue;
            int gs = h.pairs[s].second;
            for (const auto& e : uc) {
                if (g.step(gs, e) < 0) continue;
                int d = a.step(s, e);
                if (d < 0 || !keep[d]) {
                    keep[s] = 0;
                    changed = true;
                    break;
                }
            }
        }
    }
    return renumber(restrict_states(a, keep));
}

// Largest normal sublanguage of the prefix-closed L(k) ⊆ L(g): drop every
// string sharing an observation with some string of L(g) − L(k).
Automaton sup_normal(const Automaton& k, const Automaton& g, const EventSet& obs) {
    if (k.empty()) return k;
    Automaton c = completion(k);
    Product d = compose_tracked(g, c);
    Observer o = observer(d.automaton, obs);
    std::vector<char> bad_obs(o.automaton.size(), 0);
    for (std::size_t i = 0; i < o.members.size(); ++i)
        for (int m : o.members[i])
            if (d.pairs[m].second == *c.error_state) bad_obs[i] = 1;
    Product p = compose_tracked(k, o.automaton);
    std::vector<char> keep(p.automaton.size(), 1);
    for (std::size_t s = 0; s < keep.size(); ++s)
        if (bad_obs[p.pairs[s].second]) keep[s] = 0;
    Automaton r = restrict_states(p.automaton, keep);
    r.alphabet = k.alphabet;
    return renumber(r);
}

}  // namespace

ControllabilityVerdict check_controllable(const Automaton& k, const Automaton& g, const EventSet& uc) {
    ControllabilityVerdict v;
    if (k.empty() || g.empty()) return v;
    using Key = std::pair<int, int>;
    std::map<Key, std::pair<Key, std::string>> parent;
    std::deque<Key> queue;
    Key start{k.initial(), g.initial()};
    parent.emplace(start, std::make_pair(Key{-1, -1}, std::string()));
    queue.push_back(start);
    while (!queue.empty()) {
        Key cur = queue.front();
        queue.pop_front();
        for (const auto& e : uc)
            if (g.step(cur.second, e) >= 0 && k.step(cur.first, e) < 0) {
                v.holds = false;
                v.prefix = unwind(parent, cur);
                v.event = e;
                return v;
            }
        for (const auto& [e, d] : k.out(cur.first)) {
            int gd = g.step(cur.second, e);
            if (gd < 0) throw Error("spec not a sublanguage: plant cannot follow " + to_string(unwind(parent, cur)) + " " + e);
            Key next{d, gd};
            if (parent.emplace(next, std::make_pair(cur, e)).second) queue.push_back(next);
        }
    }
    return v;
}

ObservabilityVerdict check_observable(const Automaton& k, const Automaton& g, const EventSet& obs) {
    ObservabilityVerdict v;
    if (k.empty() || g.empty()) return v;
    using Key = std::array<int, 4>;
    struct Link {
        Key prev;
        std::string event;
        int side;  // 0 left only, 1 right only, 2 both
    };
    std::map<Key, Link> parent;
    std::deque<Key> queue;
    Key start{k.initial(), g.initial(), k.initial(), g.initial()};
    parent.emplace(start, Link{{-1, -1, -1, -1}, "", -1});
    queue.push_back(start);
    auto follow = [&](int x, int y, const std::string& e) {
        int nx = k.step(x, e);
        if (nx < 0) return std::make_pair(-1, -1);
        int ny = g.step(y, e);
        if (ny < 0) throw Error("spec not a sublanguage: plant cannot follow '" + e + "'");
        return std::make_pair(nx, ny);
    };
    while (!queue.empty()) {
        Key cur = queue.front();
        queue.pop_front();
        for (const auto& [e, d] : k.out(cur[0]))
            if (g.step(cur[3], e) >= 0 && k.step(cur[2], e) < 0) {
                v.holds = false;
                v.event = e;
                for (Key at = cur; parent.at(at).side >= 0; at = parent.at(at).prev) {
                    const Link& l = parent.at(at);
                    if (l.side != 1) v.s.push_back(l.event);
                    if (l.side != 0) v.t.push_back(l.event);
                }
                std::reverse(v.s.begin(), v.s.end());
                std::reverse(v.t.begin(), v.t.end());
                return v;
            }
        auto push = [&](const Key& next, const std::string& e, int side) {
            if (parent.emplace(next, Link{cur, e, side}).second) queue.push_back(next);
        };
        for (const auto& [e, ev] : g.alphabet) {
            if (obs.count(e)) {
                auto l = follow(cur[0], cur[1], e);
                auto r = follow(cur[2], cur[3], e);
                if (l.first >= 0 && r.first >= 0) push({l.first, l.second, r.first, r.second}, e, 2);
            } else {
                auto l = follow(cur[0], cur[1], e);
                if (l.first >= 0) push({l.first, l.second, cur[2], cur[3]}, e, 0);
                auto r = follow(cur[2], cur[3], e);
                if (r.first >= 0) push({cur[0], cur[1], r.first, r.second}, e, 1);
            }
        }
    }
    return v;
}

Supervisor identity_supervisor(const Alphabet& alphabet) { return Supervisor{universal(alphabet), false}; }

Supervisor realize(const Automaton& language, const Alphabet& plant_alphabet, const EventSet& obs) {
    if (language.empty()) return Supervisor{epsilon_automaton(plant_alphabet), true};
    EventSet keep;
    for (const auto& e : obs)
        if (language.alphabet.contains(e)) keep.insert(e);
    Automaton o = project(language, keep);
    Automaton s(plant_alphabet);
    for (int x = 0; x < static_cast<int>(o.size()); ++x) s.add_state(o.name(x), true);
    s.set_initial(o.initial());
    for (int x = 0; x < static_cast<int>(o.size()); ++x) {
        for (const auto& [e, d] : o.out(x)) s.add_transition(x, e, d);
        for (const auto& [e, ev] : plant_alphabet)
            if (!obs.count(e)) s.add_transition(x, e, x);
    }
    return Supervisor{s, false};
}

Supervisor supremal_supervisor(const Automaton& g, const Automaton& k, const EventSet& uc, const EventSet& obs) {
    for (const auto& [e, ev] : g.alphabet)
        if (!uc.count(e) && !obs.count(e))
            throw Error("synthesis requires observable controllables: '" + e + "' is controllable but unobservable");
    for (const auto& [e, ev] : k.alphabet)
        if (!g.alphabet.contains(e)) throw Error("specification event '" + e + "' not in plant alphabet");
    EventSet plant_obs;
    for (const auto& e : obs)
        if (g.alphabet.contains(e)) plant_obs.insert(e);

    Automaton cur = retag(k, g.alphabet);
    for (;;) {
        Automaton kc = sup_controllable(cur, g, uc);
        if (kc.empty()) return Supervisor{epsilon_automaton(g.alphabet), true};
        Automaton kn = sup_normal(kc, g, plant_obs);
        if (kn.empty()) return Supervisor{epsilon_automaton(g.alphabet), true};
        if (language_equal(kn, kc)) return realize(kc, g.alphabet, plant_obs);
        cur = kn;
    }
}

Supervisor supremal_supervisor(const Automaton& g, const Automaton& k) {
    return supremal_supervisor(g, k, g.alphabet.uncontrollable(), g.alphabet.observable());
}

Automaton inf_c(const Automaton& g, const EventSet& uc) {
    Automaton out(g.alphabet);
    for (int s = 0; s < static_cast<int>(g.size()); ++s) out.add_state(g.name(s), g.is_marked(s));
    if (!g.empty()) out.set_initial(g.initial());
    for (int s = 0; s < static_cast<int>(g.size()); ++s)
        for (const auto& [e, d] : g.out(s))
            if (uc.count(e)) out.add_transition(s, e, d);
    return accessible(out);
}

Automaton closed_loop(const Supervisor& s, const Automaton& g) {
    if (s.realization.alphabet.names() != g.alphabet.names())
        throw Error("closed_loop: supervisor and plant alphabets differ");
    return compose(retag(s.realization, g.alphabet), g);
}

}  // namespace descc
