#include "descc/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace descc {

std::string to_string(const Trace& t) {
    if (t.empty()) return "ε";
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ' ';
        s += t[i];
    }
    return s;
}

std::string to_string(const EventSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& e : s) {
        if (!first) out += ',';
        out += e;
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------- Alphabet

void Alphabet::add(const std::string& name, bool controllable, bool observable, std::set<int> owners) {
    add(name, Event{controllable, observable, std::move(owners)});
}

void Alphabet::add(const std::string& name, const Event& e) {
    if (name.empty()) throw Error("event name must be non-empty");
    auto it = events_.find(name);
    if (it == events_.end()) {
        events_.emplace(name, e);
        return;
    }
    if (it->second.controllable != e.controllable)
        throw Error("event '" + name + "' is controllable in one alphabet and uncontrollable in another");
    it->second.observable = it->second.observable || e.observable;
    it->second.owners.insert(e.owners.begin(), e.owners.end());
}

const Event& Alphabet::at(const std::string& name) const {
    auto it = events_.find(name);
    if (it == events_.end()) throw Error("unknown event '" + name + "'");
    return it->second;
}

Event& Alphabet::at(const std::string& name) {
    auto it = events_.find(name);
    if (it == events_.end()) throw Error("unknown event '" + name + "'");
    return it->second;
}

EventSet Alphabet::names() const {
    EventSet s;
    for (const auto& [n, e] : events_) s.insert(n);
    return s;
}

EventSet Alphabet::controllable() const {
    EventSet s;
    for (const auto& [n, e] : events_)
        if (e.controllable) s.insert(n);
    return s;
}

EventSet Alphabet::uncontrollable() const {
    EventSet s;
    for (const auto& [n, e] : events_)
        if (!e.controllable) s.insert(n);
    return s;
}

EventSet Alphabet::observable() const {
    EventSet s;
    for (const auto& [n, e] : events_)
        if (e.observable) s.insert(n);
    return s;
}

EventSet Alphabet::unobservable() const {
    EventSet s;
    for (const auto& [n, e] : events_)
        if (!e.observable) s.insert(n);
    return s;
}

Alphabet merge(const Alphabet& a, const Alphabet& b) {
    Alphabet out = a;
    for (const auto& [n, e] : b) out.add(n, e);
    return out;
}

// ---------------------------------------------------------------- Automaton

int Automaton::add_state(const std::string& name, bool marked) {
    if (index_.count(name)) throw Error("duplicate state '" + name + "'");
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    marked_.push_back(marked);
    delta_.emplace_back();
    if (initial_ < 0) initial_ = id;
    return id;
}

int Automaton::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int Automaton::state(const std::string& name) const {
    int s = find(name);
    if (s < 0) throw Error("unknown state '" + name + "'");
    return s;
}

void Automaton::set_initial(int s) {
    if (s < 0 || s >= static_cast<int>(size())) throw Error("initial state out of range");
    initial_ = s;
}

void Automaton::add_transition(int src, const std::string& event, int dst) {
    if (!alphabet.contains(event)) throw Error("transition on undeclared event '" + event + "'");
    if (src < 0 || dst < 0 || src >= static_cast<int>(size()) || dst >= static_cast<int>(size()))
        throw Error("transition endpoint out of range");
    auto [it, inserted] = delta_[src].emplace(event, dst);
    if (!inserted && it->second != dst)
        throw Error("nondeterministic transition from '" + names_[src] + "' on '" + event + "'");
}

void Automaton::add_transition(const std::string& src, const std::string& event, const std::string& dst) {
    add_transition(state(src), event, state(dst));
}

void Automaton::remove_transition(int src, const std::string& event) { delta_.at(src).erase(event); }

int Automaton::step(int s, const std::string& event) const {
    if (s < 0) return -1;
    const auto& m = delta_[s];
    auto it = m.find(event);
    return it == m.end() ? -1 : it->second;
}

int Automaton::run(const Trace& t) const {
    int s = initial_;
    for (const auto& e : t) {
        s = step(s, e);
        if (s < 0) return -1;
    }
    return s;
}

std::size_t Automaton::transition_count() const {
    std::size_t n = 0;
    for (const auto& m : delta_) n += m.size();
    return n;
}

// ---------------------------------------------------------------- basic ops

Automaton accessible(const Automaton& a) {
    Automaton out(a.alphabet);
    if (a.empty()) return out;
    std::vector<int> map(a.size(), -1);
    std::deque<int> queue{a.initial()};
    map[a.initial()] = out.add_state(a.name(a.initial()), a.is_marked(a.initial()));
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (const auto& [e, d] : a.out(s)) {
            if (map[d] < 0) {
                map[d] = out.add_state(a.name(d), a.is_marked(d));
                queue.push_back(d);
            }
            out.add_transition(map[s], e, map[d]);
        }
    }
    if (a.error_state && map[*a.error_state] >= 0) out.error_state = map[*a.error_state];
    return out;
}

Automaton universal(const Alphabet& alphabet) {
    Automaton u(alphabet);
    int s = u.add_state("u");
    for (const auto& [e, ev] : alphabet) u.add_transition(s, e, s);
    return u;
}

Automaton epsilon_automaton(const Alphabet& alphabet) {
    Automaton u(alphabet);
    u.add_state("e");
    return u;
}

Product compose_tracked(const Automaton& a, const Automaton& b) {
    Product p;
    p.automaton = Automaton(merge(a.alphabet, b.alphabet));
    if (a.empty() || b.empty()) return p;
    auto& out = p.automaton;
    std::map<std::pair<int, int>, int> index;
    std::deque<std::pair<int, int>> queue;
    auto visit = [&](int x, int y) {
        auto key = std::make_pair(x, y);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = out.add_state("(" + a.name(x) + "," + b.name(y) + ")", a.is_marked(x) && b.is_marked(y));
        index.emplace(key, id);
        p.pairs.push_back(key);
        queue.push_back(key);
        return id;
    };
    visit(a.initial(), b.initial());
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        int src = index.at({x, y});
        for (const auto& [e, ev] : out.alphabet) {
            bool in_a = a.alphabet.contains(e), in_b = b.alphabet.contains(e);
            int nx = in_a ? a.step(x, e) : x;
            int ny = in_b ? b.step(y, e) : y;
            if (nx < 0 || ny < 0) continue;
            out.add_transition(src, e, visit(nx, ny));
        }
    }
    return p;
}

Automaton compose(const Automaton& a, const Automaton& b) { return compose_tracked(a, b).automaton; }

Automaton compose_all(const std::vector<Automaton>& parts) {
    if (parts.empty()) throw Error("compose_all needs at least one automaton");
    Automaton acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = compose(acc, parts[i]);
    return acc;
}

// ---------------------------------------------------------------- subset construction

namespace {

struct Nfa {
    const Automaton* src = nullptr;
    std::vector<std::multimap<std::string, int>> delta;
    std::vector<std::vector<int>> eps;
};

std::vector<int> closure(const Nfa& n, std::vector<int> set) {
    std::vector<char> seen(n.src->size(), 0);
    for (int s : set) seen[s] = 1;
    std::vector<int> stack = set;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int d : n.eps[s])
            if (!seen[d]) {
                seen[d] = 1;
                set.push_back(d);
                stack.push_back(d);
            }
    }
    std::sort(set.begin(), set.end());
    return set;
}

std::string subset_name(const Automaton& a, const std::vector<int>& set) {
    std::vector<std::string> names;
    for (int s : set) names.push_back(a.name(s));
    std::sort(names.begin(), names.end());
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    return out + "}";
}

Observer determinize(const Nfa& n, Alphabet alphabet) {
    const Automaton& a = *n.src;
    Observer obs{Automaton(std::move(alphabet)), {}};
    Automaton& out = obs.automaton;
    if (a.empty()) return obs;
    std::map<std::vector<int>, int> index;
    std::deque<std::vector<int>> queue;
    auto visit = [&](const std::vector<int>& set) {
        auto it = index.find(set);
        if (it != index.end()) return it->second;
        bool marked = std::any_of(set.begin(), set.end(), [&](int s) { return a.is_marked(s); });
        int id = out.add_state(subset_name(a, set), marked);
        index.emplace(set, id);
        obs.members.push_back(set);
        queue.push_back(set);
        return id;
    };
    visit(closure(n, {a.initial()}));
    while (!queue.empty()) {
        std::vector<int> set = queue.front();
        queue.pop_front();
        int src = index.at(set);
        for (const auto& [e, ev] : out.alphabet) {
            std::vector<int> next;
            for (int s : set) {
                auto [lo, hi] = n.delta[s].equal_range(e);
                for (auto it = lo; it != hi; ++it) next.push_back(it->second);
            }
            if (next.empty()) continue;
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            out.add_transition(src, e, visit(closure(n, next)));
        }
    }
    return obs;
}

}  // namespace

Automaton project(const Automaton& a, const EventSet& keep) { return observer(a, keep).automaton; }

Observer observer(const Automaton& a, const EventSet& keep) {
    Alphabet alpha;
    for (const auto& e : keep) {
        if (!a.alphabet.contains(e)) throw Error("projection keeps undeclared event '" + e + "'");
        alpha.add(e, a.alphabet.at(e));
    }
    Nfa n{&a, std::vector<std::multimap<std::string, int>>(a.size()), std::vector<std::vector<int>>(a.size())};
    for (int s = 0; s < static_cast<int>(a.size()); ++s)
        for (const auto& [e, d] : a.out(s)) {
            if (keep.count(e))
                n.delta[s].emplace(e, d);
            else
                n.eps[s].push_back(d);
        }
    return determinize(n, std::move(alpha));
}

Automaton relabel(const Automaton& a, const std::map<std::string, std::string>& map) {
    auto image = [&](const std::string& e) {
        auto it = map.find(e);
        return it == map.end() ? e : it->second;
    };
    Alphabet alpha;
    for (const auto& [e, ev] : a.alphabet)
        if (!map.count(e) || map.at(e) == e) alpha.add(e, ev);
    for (const auto& [from, to] : map) {
        if (!a.alphabet.contains(from) || from == to) continue;
        if (!alpha.contains(to)) {
            const Event& src = a.alphabet.contains(to) ? a.alphabet.at(to) : a.alphabet.at(from);
            alpha.add(to, src);
        }
    }
    bool deterministic = true;
    for (int s = 0; s < static_cast<int>(a.size()) && deterministic; ++s) {
        std::map<std::string, int> seen;
        for (const auto& [e, d] : a.out(s)) {
            auto [it, inserted] = seen.emplace(image(e), d);
            if (!inserted && it->second != d) deterministic = false;
        }
    }
    if (deterministic) {
        Automaton out(alpha);
        for (int s = 0; s < static_cast<int>(a.size()); ++s) out.add_state(a.name(s), a.is_marked(s));
        if (!a.empty()) out.set_initial(a.initial());
        for (int s = 0; s < static_cast<int>(a.size()); ++s)
            for (const auto& [e, d] : a.out(s)) out.add_transition(s, image(e), d);
        out.error_state = a.error_state;
        return out;
    }
    Nfa n{&a, std::vector<std::multimap<std::string, int>>(a.size()), std::vector<std::vector<int>>(a.size())};
    for (int s = 0; s < static_cast<int>(a.size()); ++s)
        for (const auto& [e, d] : a.out(s)) n.delta[s].emplace(image(e), d);
    return determinize(n, std::move(alpha)).automaton;
}

Automaton suffix(const Automaton& a, const Trace& t) {
    int s = a.run(t);
    if (s < 0) throw Error("trace not generated: " + to_string(t));
    Automaton copy = a;
    copy.set_initial(s);
    return accessible(copy);
}

Automaton completion(const Automaton& a) {
    Automaton out = a;
    std::string name = "q_e";
    while (out.has_state(name)) name += "'";
    int qe = out.add_state(name, false);
    if (a.empty()) out.set_initial(qe);
    for (int s = 0; s < static_cast<int>(out.size()); ++s)
        for (const auto& [e, ev] : out.alphabet)
            if (out.step(s, e) < 0) out.add_transition(s, e, qe);
    out.error_state = qe;
    return out;
}

Automaton complement(const Automaton& a) {
    Automaton out = completion(a);
    for (int s = 0; s < static_cast<int>(out.size()); ++s) out.set_marked(s, !out.is_marked(s));
    return out;
}

// ---------------------------------------------------------------- verification

namespace {

// Breadth-first search over (m-state, p-state) with p-state -1 for the error
// sink. Successors in event-name order, so the first hit is the shortest
// witness with alphabet-order tie-break.
template <class Bad>
Verdict search(const Automaton& m, const Automaton& p, Bad bad) {
    Verdict v;
    if (m.empty()) return v;
    const EventSet p_events = p.alphabet.names();
    using Key = std::pair<int, int>;
    std::map<Key, std::pair<Key, std::string>> parent;
    std::deque<Key> queue;
    Key start{m.initial(), p.empty() ? -1 : p.initial()};
    parent.emplace(start, std::make_pair(Key{-2, -2}, std::string()));
    queue.push_back(start);
    while (!queue.empty()) {
        Key k = queue.front();
        queue.pop_front();
        if (bad(k.first, k.second)) {
            v.holds = false;
            for (Key cur = k; cur != start;) {
                const auto& [prev, e] = parent.at(cur);
                v.witness.push_back(e);
                cur = prev;
            }
            std::reverse(v.witness.begin(), v.witness.end());
            return v;
        }
        for (const auto& [e, d] : m.out(k.first)) {
            int np = k.second;
            if (np >= 0 && p_events.count(e)) np = p.step(np, e);
            Key next{d, np};
            if (parent.emplace(next, std::make_pair(k, e)).second) queue.push_back(next);
        }
    }
    return v;
}

void require_subset(const Alphabet& small, const Alphabet& big, const char* what) {
    for (const auto& [e, ev] : small)
        if (!big.contains(e)) throw Error(std::string(what) + ": event '" + e + "' missing from the checked system");
}

}  // namespace

Verdict satisfies(const Automaton& m, const Automaton& p, Semantics sem) {
    require_subset(p.alphabet, m.alphabet, "satisfies");
    if (sem == Semantics::generated) return search(m, p, [](int, int y) { return y < 0; });
    return search(m, p, [&](int x, int y) { return m.is_marked(x) && (y < 0 || !p.is_marked(y)); });
}

Verdict marked_inclusion(const Automaton& a, const Automaton& b) {
    require_subset(b.alphabet, a.alphabet, "marked_inclusion");
    return search(a, b, [&](int x, int y) { return a.is_marked(x) && y < 0; });
}

bool language_included(const Automaton& a, const Automaton& b) {
    if (a.empty()) return true;
    if (b.empty()) return false;
    std::set<std::pair<int, int>> seen{{a.initial(), b.initial()}};
    std::deque<std::pair<int, int>> queue{{a.initial(), b.initial()}};
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        for (const auto& [e, d] : a.out(x)) {
            int ny = b.step(y, e);
            if (ny < 0) return false;
            if (seen.insert({d, ny}).second) queue.push_back({d, ny});
        }
    }
    return true;
}

bool language_equal(const Automaton& a, const Automaton& b) {
    return language_included(a, b) && language_included(b, a);
}

bool isomorphic(const Automaton& a0, const Automaton& b0, bool compare_marking) {
    Automaton a = accessible(a0), b = accessible(b0);
    if (a.size() != b.size() || a.transition_count() != b.transition_count()) return false;
    if (a.empty()) return true;
    std::vector<int> fwd(a.size(), -1), bwd(b.size(), -1);
    std::deque<int> queue{a.initial()};
    fwd[a.initial()] = b.initial();
    bwd[b.initial()] = a.initial();
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        int y = fwd[x];
        if (compare_marking && a.is_marked(x) != b.is_marked(y)) return false;
        const auto& ox = a.out(x);
        const auto& oy = b.out(y);
        if (ox.size() != oy.size()) return false;
        for (const auto& [e, dx] : ox) {
            auto it = oy.find(e);
            if (it == oy.end()) return false;
            int dy = it->second;
            if (fwd[dx] < 0 && bwd[dy] < 0) {
                fwd[dx] = dy;
                bwd[dy] = dx;
                queue.push_back(dx);
            } else if (fwd[dx] != dy || bwd[dy] != dx) {
                return false;
            }
        }
    }
    return true;
}

Trace project_trace(const Trace& t, const EventSet& keep) {
    Trace out;
    for (const auto& e : t)
        if (keep.count(e)) out.push_back(e);
    return out;
}

}  // namespace descc
