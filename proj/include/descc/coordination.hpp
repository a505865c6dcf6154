#pragma once

#include "descc/automaton.hpp"
#include "descc/synthesis.hpp"

#include <string>
#include <vector>

namespace descc {

struct AGModule {
    Automaton automaton;
    EventSet interface;
};

// Interface of module i: (Σ_i ∩ Σ_{-i}) ∪ Σ_P, where Σ_{-i} is the union of
// the other module alphabets. Property events private to module i stay
// visible to its assumption; without them the symmetric rule is incomplete.
std::vector<EventSet> interfaces(const std::vector<Automaton>& modules, const Alphabet& property);
std::vector<AGModule> make_modules(const std::vector<Automaton>& modules, const Automaton& property);

// Prefix-closed assumption over the interface: exactly the environment
// traces under which the module keeps the property. Blocked interface
// events lead to an all-accepting sink "top".
Automaton weakest_assumption(const AGModule& m, const Automaton& property);

// L_m(coA_1 ∥ ... ∥ coA_n) ⊆ L(P); the witness is the shortest marked
// violating trace of the complement product.
Verdict check_symn(const std::vector<Automaton>& assumptions, const Automaton& property);

struct AGCheck {
    std::vector<Automaton> assumptions;
    Verdict symn;
    Verdict direct;  // satisfies() on the full module composition

    explicit operator bool() const { return symn.holds; }
};

AGCheck check_assume_guarantee(const std::vector<Automaton>& modules, const Automaton& property,
                               bool with_direct = true);

// Nominal modules with module `faulty` replaced by its post-fault counterpart.
AGCheck check_post_fault_coordination(const std::vector<Automaton>& nominal_modules, int faulty,
                                      const Automaton& faulty_module, const Automaton& property);

// Modules built from inf_c of every plant (the faulty one on its staged loop).
AGCheck check_coordination_existence(const std::vector<Automaton>& infimal_modules, const Automaton& property);

// Occurrence view of a staged faulty loop, restricted to the nominal alphabet.
Automaton faulty_module(const Automaton& staged, const Alphabet& nominal);

struct CoordinationInput {
    std::vector<Automaton> plants;           // G_j
    std::vector<Supervisor> nominal;         // S_j
    int faulty = -1;                         // index of the faulty subsystem
    Automaton staged;                        // S_i^F ∥ G_i^F
    Supervisor faulty_supervisor;            // S_i^F, returned by the trivial-solution guard
};

struct SynCoResult {
    std::string verdict;  // "holds", "coordinated", "tolerable-only", "failed"
    int iterations = 0;
    std::vector<Trace> counterexamples;
    std::vector<Supervisor> supervisors;
    std::vector<Automaton> modules;
    std::vector<std::size_t> state_counts;  // total module states before each loop pass, then final
    std::vector<std::string> notes;
    bool final_holds = false;
};

// L(m) minus every string having `s` as a prefix; marking follows m.
Automaton delete_string(const Automaton& m, const Trace& s);

SynCoResult syn_co(const CoordinationInput& in, const Automaton& property, int max_iterations = 200);

std::size_t total_states(const std::vector<Automaton>& modules);

}  // namespace descc
