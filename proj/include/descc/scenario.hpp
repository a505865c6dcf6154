#pragma once

#include "descc/actuator.hpp"
#include "descc/automaton.hpp"
#include "descc/coordination.hpp"
#include "descc/io.hpp"
#include "descc/sensor.hpp"
#include "descc/synthesis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace descc {

struct Subsystem {
    int id = 0;
    Automaton plant;
    Automaton safety;
    Automaton local_spec;
    Supervisor nominal;
    bool nominal_given = false;
    FaultConfig faults;
};

struct FaultEvent {
    enum class Kind { actuator, sensor };
    Kind kind = Kind::actuator;
    int subsystem = 0;
    std::string target;
    Trace after;
};

struct Scenario {
    std::vector<Subsystem> subsystems;
    Automaton global_spec;
    std::vector<FaultEvent> fault_script;
    SensorModel sensor_model = SensorModel::single_layer;

    int index_of(int id) const;
};

// Automaton values may be inline documents or paths relative to base_dir.
Scenario scenario_from_json(const json& doc, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

// Throws Error naming the offending events.
void validate_scenario(Scenario& s);

struct PipelineReport {
    std::string verdict;  // nominal-ok, coordinated, tolerable-only, intolerant
    AGCheck nominal;
    int faulty_id = -1;
    std::optional<StagedChain> chain;
    std::optional<AGCheck> post_fault;
    std::optional<AGCheck> existence;
    std::optional<SynCoResult> synco;
    std::vector<Supervisor> supervisors;  // per subsystem, in scenario order
    std::vector<Automaton> modules;
    std::vector<bool> locally_safe;
    std::vector<std::string> notes;
    Trace witness;
};

PipelineReport run_pipeline(const Scenario& s);
json report_to_json(const Scenario& s, const PipelineReport& r);
int exit_code(const std::string& verdict);

}  // namespace descc
