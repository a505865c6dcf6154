#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace descc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Trace = std::vector<std::string>;
using EventSet = std::set<std::string>;

std::string to_string(const Trace& t);
std::string to_string(const EventSet& s);

struct Event {
    bool controllable = true;
    bool observable = true;
    std::set<int> owners;

    bool operator==(const Event&) const = default;
};

// Events ordered by name; the name order is the tie-break order everywhere.
class Alphabet {
public:
    using const_iterator = std::map<std::string, Event>::const_iterator;

    void add(const std::string& name, bool controllable, bool observable, std::set<int> owners = {});
    void add(const std::string& name, const Event& e);
    void erase(const std::string& name) { events_.erase(name); }

    bool contains(const std::string& name) const { return events_.count(name) != 0; }
    const Event& at(const std::string& name) const;
    Event& at(const std::string& name);

    EventSet names() const;
    EventSet controllable() const;
    EventSet uncontrollable() const;
    EventSet observable() const;
    EventSet unobservable() const;

    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }
    const_iterator begin() const { return events_.begin(); }
    const_iterator end() const { return events_.end(); }

    bool operator==(const Alphabet&) const = default;

private:
    std::map<std::string, Event> events_;
};

// Union of two alphabets. Throws if a shared event is controllable in one and
// uncontrollable in the other.
Alphabet merge(const Alphabet& a, const Alphabet& b);

// Deterministic automaton with partial transitions. A state-less automaton
// generates the empty language.
class Automaton {
public:
    Automaton() = default;
    explicit Automaton(Alphabet a) : alphabet(std::move(a)) {}

    Alphabet alphabet;
    std::optional<int> error_state;

    int add_state(const std::string& name, bool marked = true);
    int find(const std::string& name) const;
    int state(const std::string& name) const;
    bool has_state(const std::string& name) const { return find(name) >= 0; }

    void add_transition(int src, const std::string& event, int dst);
    void add_transition(const std::string& src, const std::string& event, const std::string& dst);
    void remove_transition(int src, const std::string& event);

    int step(int s, const std::string& event) const;
    int run(const Trace& t) const;
    bool generates(const Trace& t) const { return run(t) >= 0; }

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    std::size_t transition_count() const;

    const std::string& name(int s) const { return names_.at(s); }
    const std::vector<std::string>& names() const { return names_; }
    bool is_marked(int s) const { return marked_.at(s); }
    void set_marked(int s, bool m) { marked_.at(s) = m; }
    int initial() const { return initial_; }
    void set_initial(int s);
    const std::map<std::string, int>& out(int s) const { return delta_.at(s); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<bool> marked_;
    std::vector<std::map<std::string, int>> delta_;
    int initial_ = -1;
};

struct Verdict {
    bool holds = true;
    Trace witness;

    explicit operator bool() const { return holds; }
};

enum class Semantics { generated, marked };

Automaton accessible(const Automaton& a);
Automaton universal(const Alphabet& alphabet);
Automaton epsilon_automaton(const Alphabet& alphabet);

struct Product {
    Automaton automaton;
    std::vector<std::pair<int, int>> pairs;
};
Product compose_tracked(const Automaton& a, const Automaton& b);
Automaton compose(const Automaton& a, const Automaton& b);
Automaton compose_all(const std::vector<Automaton>& parts);

// Subset construction over `keep`; members[i] lists the states of `a` in
// observer state i.
struct Observer {
    Automaton automaton;
    std::vector<std::vector<int>> members;
};
Observer observer(const Automaton& a, const EventSet& keep);
Automaton project(const Automaton& a, const EventSet& keep);
Automaton relabel(const Automaton& a, const std::map<std::string, std::string>& map);
Automaton suffix(const Automaton& a, const Trace& t);
Automaton completion(const Automaton& a);
Automaton complement(const Automaton& a);

Verdict satisfies(const Automaton& m, const Automaton& p, Semantics sem = Semantics::generated);
Verdict marked_inclusion(const Automaton& a, const Automaton& b);

// Same event names required. Compares generated languages.
bool language_included(const Automaton& a, const Automaton& b);
bool language_equal(const Automaton& a, const Automaton& b);
bool isomorphic(const Automaton& a, const Automaton& b, bool compare_marking = false);

Trace project_trace(const Trace& t, const EventSet& keep);

}  // namespace descc
