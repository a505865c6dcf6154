#pragma once

#include "descc/actuator.hpp"
#include "descc/automaton.hpp"
#include "descc/synthesis.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace descc {

// single_layer: one faulty copy entered by any sensor fault, in which every
// listed reading may also fire as its faulty twin. layered: one copy per
// subset of faulted sensors.
enum class SensorModel { single_layer, layered };

Automaton build_faulty_plant(const Automaton& g, const FaultConfig& cfg, const EventSet& which,
                             SensorModel model = SensorModel::single_layer);
Automaton build_faulty_supervisor(const Automaton& s, const FaultConfig& cfg, const EventSet& which,
                                  SensorModel model = SensorModel::single_layer);
Product closed_loop_fault_model_tracked(const Automaton& s_f, const Automaton& g_f);
Automaton closed_loop_fault_model(const Automaton& s_f, const Automaton& g_f);

// States of gks reached by some string whose occurrence view leaves L(safe).
std::set<int> unsafe_states(const Automaton& gks, const Automaton& safe);

struct DiagnoserMember {
    int state = 0;       // index into the diagnosed automaton
    std::string labels;  // one N/Y per tracked sensor-fault event
    bool unsafe = false;

    bool faulty() const { return labels.find('Y') != std::string::npos; }
    auto operator<=>(const DiagnoserMember&) const = default;
};

struct DiagnoserState {
    std::vector<DiagnoserMember> members;

    bool normal() const;
    bool certain() const;
    bool uncertain() const { return !normal() && !certain(); }
};

struct Diagnoser {
    Automaton automaton;  // over the observable events; names encode members
    std::vector<DiagnoserState> states;
    std::vector<std::string> fault_events;
    std::vector<Trace> observation;  // shortest observation reaching each state
};

// Member encoding: "<state>:<labels>" followed by "!" when any label is Y
// and "U" when the member is unsafe, e.g. "{(3,3):N,(3',3'):Y!,(3',5'):Y!U}".
std::string diagnoser_state_name(const Automaton& gks, const DiagnoserState& d);

Diagnoser build_safe_diagnoser(const Automaton& gks, const Automaton& safe);
std::vector<int> first_entered_certain(const Diagnoser& diag);

struct SfSafeVerdict {
    bool holds = true;
    int condition = 0;  // 1, 2 or 3 when violated
    int state = -1;     // offending diagnoser state
    Trace observation;
    std::string member;
    Trace uncontrollable_path;  // condition 3 only

    explicit operator bool() const { return holds; }
};

SfSafeVerdict check_sf_safe(const Automaton& gks, const Automaton& safe);
SfSafeVerdict check_sf_safe(const Automaton& gks, const Diagnoser& diag);

struct CertainEntryPlant {
    Automaton plant;
    std::vector<std::string> detect_events;
    std::vector<Trace> entry_traces;  // shortest trace of gks reaching each member
    Automaton spec;                   // union of detect_j followed by the safe suffix
};

// gks must be the tracked product of the faulty supervisor with g_f.
CertainEntryPlant certain_entry_plant(const Automaton& g_f, const Product& gks, const Diagnoser& diag, int qY,
                                      const Automaton& safe, int subsystem);

Verdict check_sensor_tolerance(const CertainEntryPlant& entry, const Automaton& post_spec);
Supervisor synth_sensor_post_supervisor(const CertainEntryPlant& entry, const Automaton& post_spec);

// Nominal supervision with the faulty readings possible, switching to the
// post-detection supervisor when the diagnoser first becomes certain.
struct SensorStage {
    bool ok = true;
    std::string failure;
    Trace witness;
    Automaton plant_f;
    Automaton supervisor_f;
    Product closed;
    Diagnoser diagnoser;
    SfSafeVerdict sf_safe;
    std::vector<int> first_entered;
    std::map<int, CertainEntryPlant> entries;
    std::map<int, Supervisor> post;
    Automaton staged;
    std::vector<int> plant_state;  // staged state -> plant_f state
};

SensorStage sensor_fault_stage(const Automaton& g, const Supervisor& nominal, const Automaton& safe,
                               const FaultConfig& cfg, const EventSet& which,
                               SensorModel model = SensorModel::single_layer);

struct FaultPlan {
    EventSet sensors;
    EventSet actuators;
    Trace actuator_after;
};

struct StagedChain {
    bool ok = true;
    std::string failed_stage;
    Trace witness;
    std::vector<std::string> stages;
    std::vector<Supervisor> supervisors;
    Automaton staged;
    bool safe = true;  // staged loop re-checked against the safety automaton
};

// Nominal, then sensor faults, then actuator faults.
StagedChain combined_fault_pipeline(const Automaton& g, const Supervisor& nominal, const Automaton& safe,
                                    const FaultConfig& cfg, const FaultPlan& plan,
                                    SensorModel model = SensorModel::single_layer);

}  // namespace descc
