#pragma once

#include "descc/automaton.hpp"
#include "descc/synthesis.hpp"

#include <map>
#include <string>
#include <vector>

namespace descc {

struct FaultConfig {
    int subsystem = 0;
    EventSet actuators;
    EventSet sensors;

    // Mode m >= 1 is the loss of the m-th actuator in name order; 0 is nominal.
    int mode_of(const std::string& actuator) const;
    std::vector<std::string> actuator_fault_events() const;
    std::vector<std::string> mode_switch_events() const;
    std::vector<std::string> sensor_fault_events() const;
    std::vector<std::string> faulty_readings() const;
};

// Throws on: actuator outside Σc ∩ Σo or shared with another subsystem,
// sensor outside Σo ∩ Σuc, or a derived fault name already used by the plant.
void validate(const FaultConfig& cfg, const Alphabet& plant);

Automaton post_fault_plant_single(const Automaton& g, const Trace& t0, const FaultConfig& cfg,
                                  const std::string& actuator);
Automaton post_fault_plant_multi(const Automaton& g, const Trace& t0, const FaultConfig& cfg);
Automaton post_fault_spec(const Automaton& safe, const Trace& t0);

Verdict check_actuator_tolerance(const Automaton& plant_f, const Automaton& post_spec);

// One entry per actuator plus "ALL" with every actuator uncontrollable.
std::map<std::string, Supervisor> safety_bank(const Automaton& g, const Automaton& safe, const FaultConfig& cfg);

Supervisor post_fault_supervisor(const Supervisor& bank_entry, const Automaton& g, const Automaton& plant_f,
                                 const Automaton& post_spec, const Trace& t0);

// Nominal supervision along t0, the fault event, then the post-fault loop.
struct ActuatorStage {
    bool tolerant = true;
    Trace witness;
    Automaton plant_f;
    Automaton post_spec;
    Supervisor post;
    bool fresh_synthesis = false;
    Automaton staged;
};

// `faulted` lists the actuators lost at t0; more than one uses the
// all-actuator bank entry and the mode-switch partition.
ActuatorStage actuator_fault_stage(const Automaton& g, const Supervisor& nominal, const Automaton& safe,
                                   const FaultConfig& cfg, const EventSet& faulted, const Trace& t0);

// Staged automaton: the path of t0, then `link` into the initial state of
// `post`. State names of the prefix are "t0:<k>".
Automaton chain_after(const Trace& t0, const std::string& link, const Automaton& post, const Alphabet& alphabet);

}  // namespace descc
