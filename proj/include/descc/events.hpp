#pragma once

#include "descc/automaton.hpp"

#include <string>

namespace descc {

// Names minted for fault bookkeeping. Plant events may not use these shapes.
std::string actuator_fault_event(int subsystem, const std::string& actuator);
std::string mode_switch_event(int subsystem, int from_mode, int to_mode);
std::string sensor_fault_event(int subsystem, const std::string& reading);
std::string faulty_reading(const std::string& reading);
std::string detect_event(int subsystem, const std::string& tag, int j);

enum class EventRole { plain, faulty_reading, sensor_fault, actuator_fault, mode_switch, detect };

EventRole role_of(const std::string& name);
bool is_bookkeeping(const std::string& name);
bool is_reserved_name(const std::string& name);
// "b^f" -> "b"; plain names returned unchanged.
std::string nominal_of(const std::string& name);

// Occurrence semantics: faulty readings count as their nominal event, and
// bookkeeping events are erased. Result alphabet holds plain events only
// (plus detect events when keep_detect is set).
Automaton occurrence_view(const Automaton& a, bool keep_detect = false);
Trace occurrence_trace(const Trace& t, bool keep_detect = false);

// Extends a specification over plain events to `target` so that every
// faulty reading in `target` is constrained exactly like its nominal event.
Automaton lift_occurrence(const Automaton& spec, const Alphabet& target);

// Copy of `a` whose shared events take their attributes from `reference`.
Automaton retag(const Automaton& a, const Alphabet& reference);

std::string stable_hash(const std::string& s);

}  // namespace descc
