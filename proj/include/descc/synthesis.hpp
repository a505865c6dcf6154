#pragma once

#include "descc/automaton.hpp"

namespace descc {

// Realization over the plant alphabet. Unobservable events self-loop at
// every state. `trivial` marks the {ε} supervisor returned when nothing
// survives synthesis.
struct Supervisor {
    Automaton realization;
    bool trivial = false;
};

struct ControllabilityVerdict {
    bool holds = true;
    Trace prefix;
    std::string event;

    explicit operator bool() const { return holds; }
};

struct ObservabilityVerdict {
    bool holds = true;
    Trace s;
    Trace t;
    std::string event;

    explicit operator bool() const { return holds; }
};

ControllabilityVerdict check_controllable(const Automaton& k, const Automaton& g, const EventSet& uc);
ObservabilityVerdict check_observable(const Automaton& k, const Automaton& g, const EventSet& obs);

// Supremal controllable and normal sublanguage of L(k) ∩ L(g). Requires every
// controllable event (plant events outside `uc`) to be in `obs`.
Supervisor supremal_supervisor(const Automaton& g, const Automaton& k, const EventSet& uc, const EventSet& obs);
Supervisor supremal_supervisor(const Automaton& g, const Automaton& k);

// uc* ∩ L(g).
Automaton inf_c(const Automaton& g, const EventSet& uc);

Automaton closed_loop(const Supervisor& s, const Automaton& g);

// Supervisor that disables nothing.
Supervisor identity_supervisor(const Alphabet& alphabet);

// Supervisor realizing a language that is already controllable and normal
// with respect to a plant over `plant_alphabet`, observing `obs`.
Supervisor realize(const Automaton& language, const Alphabet& plant_alphabet, const EventSet& obs);

}  // namespace descc
