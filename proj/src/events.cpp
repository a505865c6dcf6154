#include "descc/events.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>

namespace descc {

std::string actuator_fault_event(int subsystem, const std::string& actuator) {
    return "h(" + std::to_string(subsystem) + "," + actuator + ")";
}

std::string mode_switch_event(int subsystem, int from_mode, int to_mode) {
    return "h(" + std::to_string(subsystem) + "," + std::to_string(from_mode) + "," + std::to_string(to_mode) + ")";
}

std::string sensor_fault_event(int subsystem, const std::string& reading) {
    return "f(" + std::to_string(subsystem) + "," + reading + ")";
}

std::string faulty_reading(const std::string& reading) { return reading + "^f"; }

std::string detect_event(int subsystem, const std::string& tag, int j) {
    return "detect(" + std::to_string(subsystem) + "," + tag + "," + std::to_string(j) + ")";
}

namespace {

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

bool ends_with(const std::string& s, const std::string& p) {
    return s.size() > p.size() && s.compare(s.size() - p.size(), p.size(), p) == 0;
}

}  // namespace

EventRole role_of(const std::string& name) {
    if (starts_with(name, "detect(")) return EventRole::detect;
    if (starts_with(name, "f(")) return EventRole::sensor_fault;
    if (starts_with(name, "h(")) {
        auto commas = std::count(name.begin(), name.end(), ',');
        return commas >= 2 ? EventRole::mode_switch : EventRole::actuator_fault;
    }
    if (ends_with(name, "^f")) return EventRole::faulty_reading;
    return EventRole::plain;
}

bool is_bookkeeping(const std::string& name) {
    auto r = role_of(name);
    return r != EventRole::plain && r != EventRole::faulty_reading;
}

bool is_reserved_name(const std::string& name) { return role_of(name) != EventRole::plain; }

std::string nominal_of(const std::string& name) {
    if (role_of(name) == EventRole::faulty_reading) return name.substr(0, name.size() - 2);
    return name;
}

Automaton occurrence_view(const Automaton& a, bool keep_detect) {
    std::map<std::string, std::string> map;
    for (const auto& [e, ev] : a.alphabet)
        if (role_of(e) == EventRole::faulty_reading) map.emplace(e, nominal_of(e));
    Automaton r = map.empty() ? a : relabel(a, map);
    EventSet keep;
    for (const auto& [e, ev] : r.alphabet) {
        auto role = role_of(e);
        if (role == EventRole::plain || (keep_detect && role == EventRole::detect)) keep.insert(e);
    }
    if (keep.size() == r.alphabet.size()) return r;
    return project(r, keep);
}

Trace occurrence_trace(const Trace& t, bool keep_detect) {
    Trace out;
    for (const auto& e : t) {
        auto role = role_of(e);
        if (role == EventRole::faulty_reading)
            out.push_back(nominal_of(e));
        else if (role == EventRole::plain || (keep_detect && role == EventRole::detect))
            out.push_back(e);
    }
    return out;
}

Automaton lift_occurrence(const Automaton& spec, const Alphabet& target) {
    Automaton out = spec;
    std::vector<std::pair<std::string, std::string>> copies;
    for (const auto& [e, ev] : target)
        if (role_of(e) == EventRole::faulty_reading && spec.alphabet.contains(nominal_of(e)) &&
            !spec.alphabet.contains(e)) {
            out.alphabet.add(e, ev);
            copies.emplace_back(e, nominal_of(e));
        }
    for (int s = 0; s < static_cast<int>(out.size()); ++s)
        for (const auto& [fe, base] : copies) {
            int d = out.step(s, base);
            if (d >= 0) out.add_transition(s, fe, d);
        }
    return out;
}

Automaton retag(const Automaton& a, const Alphabet& reference) {
    Automaton out = a;
    Alphabet alpha;
    for (const auto& [e, ev] : a.alphabet) alpha.add(e, reference.contains(e) ? reference.at(e) : ev);
    out.alphabet = alpha;
    return out;
}

std::string stable_hash(const std::string& s) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : s) {
        h ^= c;
        h *= 16777619u;
    }
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", h);
    return buf;
}

}  // namespace descc
