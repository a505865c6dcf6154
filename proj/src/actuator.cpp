#include "descc/actuator.hpp"

#include "descc/events.hpp"

#include <algorithm>

namespace descc {

int FaultConfig::mode_of(const std::string& actuator) const {
    auto it = actuators.find(actuator);
    if (it == actuators.end()) throw Error("'" + actuator + "' is not a declared actuator");
    return static_cast<int>(std::distance(actuators.begin(), it)) + 1;
}

std::vector<std::string> FaultConfig::actuator_fault_events() const {
    std::vector<std::string> out;
    for (const auto& a : actuators) out.push_back(actuator_fault_event(subsystem, a));
    return out;
}

std::vector<std::string> FaultConfig::mode_switch_events() const {
    std::vector<std::string> out;
    int k = static_cast<int>(actuators.size());
    for (int m1 = 0; m1 <= k; ++m1)
        for (int m2 = 1; m2 <= k; ++m2)
            if (m1 != m2) out.push_back(mode_switch_event(subsystem, m1, m2));
    return out;
}

std::vector<std::string> FaultConfig::sensor_fault_events() const {
    std::vector<std::string> out;
    for (const auto& s : sensors) out.push_back(sensor_fault_event(subsystem, s));
    return out;
}

std::vector<std::string> FaultConfig::faulty_readings() const {
    std::vector<std::string> out;
    for (const auto& s : sensors) out.push_back(faulty_reading(s));
    return out;
}

void validate(const FaultConfig& cfg, const Alphabet& plant) {
    for (const auto& a : cfg.actuators) {
        if (!plant.contains(a)) throw Error("actuator '" + a + "' is not a plant event");
        const Event& e = plant.at(a);
        if (!e.controllable || !e.observable)
            throw Error("actuator '" + a + "' must be controllable and observable");
        if (!e.owners.empty() && e.owners != std::set<int>{cfg.subsystem})
            throw Error("actuator '" + a + "' is shared with another subsystem");
    }
    for (const auto& s : cfg.sensors) {
        if (!plant.contains(s)) throw Error("sensor '" + s + "' is not a plant event");
        const Event& e = plant.at(s);
        if (e.controllable || !e.observable) throw Error("sensor '" + s + "' must be uncontrollable and observable");
    }
    std::vector<std::string> derived = cfg.actuator_fault_events();
    for (auto v : {cfg.mode_switch_events(), cfg.sensor_fault_events(), cfg.faulty_readings()})
        derived.insert(derived.end(), v.begin(), v.end());
    for (const auto& d : derived)
        if (plant.contains(d)) throw Error("fault event name '" + d + "' collides with a plant event");
}

Automaton post_fault_plant_single(const Automaton& g, const Trace& t0, const FaultConfig& cfg,
                                  const std::string& actuator) {
    if (!cfg.actuators.count(actuator)) throw Error("'" + actuator + "' is not a declared actuator");
    Automaton out = suffix(g, t0);
    out.alphabet.at(actuator).controllable = false;
    out.alphabet.add(actuator_fault_event(cfg.subsystem, actuator), false, true, {cfg.subsystem});
    return out;
}

Automaton post_fault_plant_multi(const Automaton& g, const Trace& t0, const FaultConfig& cfg) {
    if (cfg.actuators.empty()) throw Error("multi-fault plant needs at least one actuator");
    Automaton out = suffix(g, t0);
    for (const auto& a : cfg.actuators) out.alphabet.at(a).controllable = false;
    for (const auto& h : cfg.mode_switch_events()) out.alphabet.add(h, false, true, {cfg.subsystem});
    return out;
}

Automaton post_fault_spec(const Automaton& safe, const Trace& t0) {
    if (!safe.generates(t0)) throw Error("nominal run already unsafe: " + to_string(t0));
    return suffix(safe, t0);
}

Verdict check_actuator_tolerance(const Automaton& plant_f, const Automaton& post_spec) {
    Automaton inf = inf_c(plant_f, plant_f.alphabet.uncontrollable());
    return satisfies(inf, lift_occurrence(post_spec, inf.alphabet));
}

std::map<std::string, Supervisor> safety_bank(const Automaton& g, const Automaton& safe, const FaultConfig& cfg) {
    std::map<std::string, Supervisor> bank;
    EventSet obs = g.alphabet.observable();
    EventSet all = g.alphabet.uncontrollable();
    for (const auto& a : cfg.actuators) {
        EventSet uc = g.alphabet.uncontrollable();
        uc.insert(a);
        all.insert(a);
        bank.emplace(a, supremal_supervisor(g, safe, uc, obs));
    }
    bank.emplace("ALL", supremal_supervisor(g, safe, all, obs));
    return bank;
}

Supervisor post_fault_supervisor(const Supervisor& bank_entry, const Automaton& g, const Automaton& plant_f,
                                 const Automaton& post_spec, const Trace& t0) {
    Verdict tol = check_actuator_tolerance(plant_f, post_spec);
    if (!tol) throw Error("post-fault supervisor requested for an intolerant fault; escape " + to_string(tol.witness));
    if (!bank_entry.trivial && closed_loop(bank_entry, g).generates(t0)) {
        Automaton s = suffix(bank_entry.realization, t0);
        Alphabet alpha = plant_f.alphabet;
        s.alphabet = alpha;
        return Supervisor{s, false};
    }
    return supremal_supervisor(plant_f, lift_occurrence(post_spec, plant_f.alphabet),
                               plant_f.alphabet.uncontrollable(), plant_f.alphabet.observable());
}

Automaton chain_after(const Trace& t0, const std::string& link, const Automaton& post, const Alphabet& alphabet) {
    Automaton out(alphabet);
    if (!out.alphabet.contains(link)) throw Error("link event '" + link + "' missing from staged alphabet");
    for (std::size_t k = 0; k <= t0.size(); ++k) out.add_state("t0:" + std::to_string(k));
    for (std::size_t k = 0; k < t0.size(); ++k)
        out.add_transition(static_cast<int>(k), t0[k], static_cast<int>(k + 1));
    if (post.empty()) return out;
    int base = static_cast<int>(out.size());
    for (int s = 0; s < static_cast<int>(post.size()); ++s) out.add_state("F:" + post.name(s), post.is_marked(s));
    for (int s = 0; s < static_cast<int>(post.size()); ++s)
        for (const auto& [e, d] : post.out(s)) out.add_transition(base + s, e, base + d);
    out.add_transition(static_cast<int>(t0.size()), link, base + post.initial());
    return out;
}

ActuatorStage actuator_fault_stage(const Automaton& g, const Supervisor& nominal, const Automaton& safe,
                                   const FaultConfig& cfg, const EventSet& faulted, const Trace& t0) {
    if (faulted.empty()) throw Error("actuator stage needs at least one faulted actuator");
    for (const auto& a : faulted)
        if (!cfg.actuators.count(a)) throw Error("'" + a + "' is not a declared actuator");
    if (!closed_loop(nominal, g).generates(t0))
        throw Error("fault injection trace not generated by the nominal closed loop: " + to_string(t0));
    ActuatorStage st;
    bool multi = faulted.size() > 1;
    std::string key = multi ? "ALL" : *faulted.begin();
    std::string link = multi ? mode_switch_event(cfg.subsystem, 0, cfg.mode_of(*faulted.begin()))
                             : actuator_fault_event(cfg.subsystem, *faulted.begin());
    st.plant_f = multi ? post_fault_plant_multi(g, t0, cfg) : post_fault_plant_single(g, t0, cfg, key);
    st.post_spec = post_fault_spec(safe, t0);
    Verdict tol = check_actuator_tolerance(st.plant_f, st.post_spec);
    if (!tol) {
        st.tolerant = false;
        st.witness = tol.witness;
        return st;
    }
    auto bank = safety_bank(g, safe, cfg);
    const Supervisor& entry = bank.at(key);
    st.fresh_synthesis = entry.trivial || !closed_loop(entry, g).generates(t0);
    st.post = post_fault_supervisor(entry, g, st.plant_f, st.post_spec, t0);
    Automaton post_loop = closed_loop(st.post, st.plant_f);
    Alphabet alpha = st.plant_f.alphabet;
    alpha.add(link, false, true, {cfg.subsystem});
    st.staged = chain_after(t0, link, post_loop, alpha);
    return st;
}

}  // namespace descc
