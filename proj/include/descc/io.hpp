#pragma once

#include "descc/automaton.hpp"
#include "descc/sensor.hpp"
#include "descc/synthesis.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace descc {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "descc/1";

// Automaton document: {format?, alphabet, states, initial, marked?, transitions}.
// `marked` defaults to every state. Unknown keys are rejected.
json to_json(const Automaton& a);
Automaton automaton_from_json(const json& doc);

json bank_to_json(const std::map<std::string, Supervisor>& bank);
json diagnoser_to_json(const Diagnoser& diag);
json trace_to_json(const Trace& t);

json read_json(const std::string& path);
void write_json(const std::string& path, const json& doc);
Automaton load_automaton(const std::string& path);

std::string to_dot(const Automaton& a, const std::string& title = "A");

}  // namespace descc
