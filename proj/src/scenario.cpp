#include "descc/scenario.hpp"

#include "descc/events.hpp"

#include <filesystem>
#include <map>

namespace descc {

int Scenario::index_of(int id) const {
    for (std::size_t k = 0; k < subsystems.size(); ++k)
        if (subsystems[k].id == id) return static_cast<int>(k);
    throw Error("unknown subsystem " + std::to_string(id));
}

namespace {

Automaton automaton_value(const json& v, const std::string& base_dir, const std::string& what) {
    try {
        if (v.is_string()) return load_automaton((std::filesystem::path(base_dir) / v.get<std::string>()).string());
        return automaton_from_json(v);
    } catch (const Error& e) {
        throw Error(what + ": " + e.what());
    } catch (const json::exception& e) {
        throw Error(what + ": " + e.what());
    }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw Error(where + ": expected an object");
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw Error(where + ": unknown key '" + k + "'");
    }
}

// Extends `a` to `alphabet`; events it did not mention get no transitions.
// Events the supervisor never mentions are left enabled everywhere.
Automaton over(const Automaton& a, const Alphabet& alphabet) {
    for (const auto& [e, ev] : a.alphabet)
        if (!alphabet.contains(e)) throw Error("event '" + e + "' is not in the plant alphabet");
    Automaton out = a;
    out.alphabet = alphabet;
    for (const auto& [e, ev] : alphabet)
        if (!a.alphabet.contains(e))
            for (int s = 0; s < static_cast<int>(out.size()); ++s) out.add_transition(s, e, s);
    return out;
}

}  // namespace

Scenario scenario_from_json(const json& doc, const std::string& base_dir) {
    reject_unknown(doc, {"format", "description", "sensor_model", "subsystems", "global_spec", "fault_script"},
                   "scenario");
    if (doc.contains("format") && doc["format"] != kFormat)
        throw Error("scenario: unsupported format " + doc["format"].dump());
    Scenario s;
    try {
        std::string model = doc.value("sensor_model", std::string("single_layer"));
        if (model == "layered")
            s.sensor_model = SensorModel::layered;
        else if (model != "single_layer")
            throw Error("scenario: sensor_model must be single_layer or layered");
        if (!doc.contains("subsystems") || !doc["subsystems"].is_array() || doc["subsystems"].empty())
            throw Error("scenario: 'subsystems' must be a nonempty array");
        for (const auto& sub : doc["subsystems"]) {
            reject_unknown(sub, {"id", "plant", "safety", "local_spec", "nominal_supervisor", "fault_config"},
                           "subsystem");
            Subsystem x;
            if (!sub.contains("id")) throw Error("subsystem: missing 'id'");
            x.id = sub["id"].get<int>();
            std::string tag = "subsystem " + std::to_string(x.id);
            if (!sub.contains("plant")) throw Error(tag + ": missing 'plant'");
            x.plant = automaton_value(sub["plant"], base_dir, tag + " plant");
            x.safety = sub.contains("safety") ? automaton_value(sub["safety"], base_dir, tag + " safety") : x.plant;
            x.local_spec =
                sub.contains("local_spec") ? automaton_value(sub["local_spec"], base_dir, tag + " local_spec") : x.plant;
            if (sub.contains("nominal_supervisor")) {
                x.nominal.realization = automaton_value(sub["nominal_supervisor"], base_dir, tag + " supervisor");
                x.nominal_given = true;
            }
            x.faults.subsystem = x.id;
            if (sub.contains("fault_config")) {
                const json& fc = sub["fault_config"];
                reject_unknown(fc, {"actuators", "sensors"}, tag + " fault_config");
                x.faults.actuators = fc.value("actuators", EventSet{});
                x.faults.sensors = fc.value("sensors", EventSet{});
            }
            s.subsystems.push_back(std::move(x));
        }
        if (!doc.contains("global_spec")) throw Error("scenario: missing 'global_spec'");
        s.global_spec = automaton_value(doc["global_spec"], base_dir, "global_spec");
        for (const auto& f : doc.value("fault_script", json::array())) {
            reject_unknown(f, {"kind", "subsystem", "target", "after"}, "fault_script entry");
            FaultEvent ev;
            std::string kind = f.at("kind").get<std::string>();
            if (kind == "actuator")
                ev.kind = FaultEvent::Kind::actuator;
            else if (kind == "sensor")
                ev.kind = FaultEvent::Kind::sensor;
            else
                throw Error("fault_script: kind must be actuator or sensor, got '" + kind + "'");
            ev.subsystem = f.at("subsystem").get<int>();
            ev.target = f.at("target").get<std::string>();
            ev.after = f.value("after", Trace{});
            s.fault_script.push_back(ev);
        }
    } catch (const json::exception& e) {
        throw Error(std::string("scenario: ") + e.what());
    }
    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    json doc = read_json(path);
    return scenario_from_json(doc, std::filesystem::path(path).parent_path().string());
}

void validate_scenario(Scenario& s) {
    std::set<int> ids;
    for (const auto& x : s.subsystems)
        if (!ids.insert(x.id).second) throw Error("duplicate subsystem id " + std::to_string(x.id));

    for (const auto& x : s.subsystems)
        for (const auto& [e, ev] : x.plant.alphabet)
            if (is_reserved_name(e)) throw Error("subsystem " + std::to_string(x.id) + ": event '" + e +
                                                 "' uses a name reserved for fault bookkeeping");

    // An event uncontrollable in one subsystem may not be controllable in another.
    for (const auto& a : s.subsystems)
        for (const auto& b : s.subsystems) {
            if (a.id == b.id) continue;
            for (const auto& e : a.plant.alphabet.uncontrollable())
                if (b.plant.alphabet.contains(e) && b.plant.alphabet.at(e).controllable)
                    throw Error("event '" + e + "' is uncontrollable in subsystem " + std::to_string(a.id) +
                                " but controllable in subsystem " + std::to_string(b.id));
        }

    std::map<std::string, std::set<int>> owners;
    for (const auto& x : s.subsystems)
        for (const auto& [e, ev] : x.plant.alphabet) owners[e].insert(x.id);
    Alphabet all;
    for (auto& x : s.subsystems) {
        for (const auto& [e, ev] : x.plant.alphabet) x.plant.alphabet.at(e).owners = owners.at(e);
        for (const auto& [e, ev] : x.plant.alphabet) all.add(e, ev);
    }

    for (auto& x : s.subsystems) {
        std::string tag = "subsystem " + std::to_string(x.id);
        try {
            x.safety = retag(x.safety, x.plant.alphabet);
            for (const auto& [e, ev] : x.safety.alphabet)
                if (!x.plant.alphabet.contains(e)) throw Error("safety event '" + e + "' not in plant alphabet");
            x.local_spec = retag(x.local_spec, x.plant.alphabet);
            for (const auto& [e, ev] : x.local_spec.alphabet)
                if (!x.plant.alphabet.contains(e)) throw Error("local_spec event '" + e + "' not in plant alphabet");
            validate(x.faults, x.plant.alphabet);
            if (x.nominal_given) {
                x.nominal.realization = over(x.nominal.realization, x.plant.alphabet);
            } else {
                x.nominal = supremal_supervisor(x.plant, compose(x.local_spec, x.safety));
            }
            Verdict v = satisfies(closed_loop(x.nominal, x.plant), x.safety);
            if (!v) throw Error("nominal closed loop leaves the safety language: " + to_string(v.witness));
        } catch (const Error& e) {
            throw Error(tag + ": " + e.what());
        }
    }

    for (const auto& [e, ev] : s.global_spec.alphabet)
        if (!all.contains(e)) throw Error("global_spec event '" + e + "' belongs to no subsystem");
    s.global_spec = retag(s.global_spec, all);

    std::set<int> faulted;
    std::map<int, bool> seen_actuator;
    std::map<int, Trace> actuator_after;
    for (const auto& f : s.fault_script) {
        const Subsystem& x = s.subsystems.at(s.index_of(f.subsystem));
        std::string tag = "fault_script (subsystem " + std::to_string(f.subsystem) + ")";
        if (f.kind == FaultEvent::Kind::actuator) {
            if (!x.faults.actuators.count(f.target))
                throw Error(tag + ": '" + f.target + "' is not a declared actuator");
            if (seen_actuator[f.subsystem] && actuator_after.at(f.subsystem) != f.after)
                throw Error(tag + ": simultaneous actuator faults must share the injection trace");
            seen_actuator[f.subsystem] = true;
            actuator_after[f.subsystem] = f.after;
        } else {
            if (!x.faults.sensors.count(f.target)) throw Error(tag + ": '" + f.target + "' is not a declared sensor");
            if (seen_actuator[f.subsystem]) throw Error(tag + ": sensor faults must precede actuator faults");
            if (!closed_loop(x.nominal, x.plant).generates(f.after))
                throw Error(tag + ": injection trace not generated by the nominal closed loop: " + to_string(f.after));
        }
        faulted.insert(f.subsystem);
    }
    if (faulted.size() > 1) throw Error("fault_script: faults in more than one subsystem are not supported");
}

// ---------------------------------------------------------------- pipeline

int exit_code(const std::string& verdict) {
    if (verdict == "nominal-ok" || verdict == "coordinated") return 0;
    if (verdict == "tolerable-only") return 2;
    if (verdict == "intolerant") return 3;
    return 1;
}

PipelineReport run_pipeline(const Scenario& s) {
    PipelineReport r;
    std::size_t n = s.subsystems.size();
    std::vector<Automaton> nominal_modules;
    for (const auto& x : s.subsystems) {
        nominal_modules.push_back(closed_loop(x.nominal, x.plant));
        r.supervisors.push_back(x.nominal);
        r.locally_safe.push_back(static_cast<bool>(satisfies(nominal_modules.back(), x.safety)));
    }
    r.modules = nominal_modules;
    r.nominal = check_assume_guarantee(nominal_modules, s.global_spec);

    if (s.fault_script.empty()) {
        if (r.nominal.symn) {
            r.verdict = "nominal-ok";
        } else {
            r.verdict = "intolerant";
            r.witness = r.nominal.symn.witness;
            r.notes.push_back("nominal system violates the global specification");
        }
        return r;
    }

    r.faulty_id = s.fault_script.front().subsystem;
    std::size_t fi = static_cast<std::size_t>(s.index_of(r.faulty_id));
    const Subsystem& x = s.subsystems[fi];
    FaultPlan plan;
    for (const auto& f : s.fault_script) {
        if (f.kind == FaultEvent::Kind::sensor) {
            plan.sensors.insert(f.target);
        } else {
            plan.actuators.insert(f.target);
            plan.actuator_after = f.after;
        }
    }
    r.chain = combined_fault_pipeline(x.plant, x.nominal, x.safety, x.faults, plan, s.sensor_model);
    if (!r.chain->ok) {
        r.verdict = "intolerant";
        r.witness = r.chain->witness;
        r.notes.push_back("fault stage failed: " + r.chain->failed_stage);
        return r;
    }
    const Automaton& staged = r.chain->staged;
    r.locally_safe[fi] = r.chain->safe;
    Automaton mf = faulty_module(staged, x.plant.alphabet);
    Supervisor faulty_sup = r.chain->supervisors.back();
    r.supervisors[fi] = faulty_sup;
    r.modules[fi] = mf;

    r.post_fault = check_post_fault_coordination(nominal_modules, static_cast<int>(fi), mf, s.global_spec);
    if (r.post_fault->symn) {
        r.verdict = "coordinated";
        return r;
    }

    std::vector<Automaton> infimal;
    for (std::size_t j = 0; j < n; ++j) {
        const Automaton& g = s.subsystems[j].plant;
        infimal.push_back(j == fi ? faulty_module(inf_c(staged, staged.alphabet.uncontrollable()), g.alphabet)
                                  : inf_c(g, g.alphabet.uncontrollable()));
    }
    r.existence = check_coordination_existence(infimal, s.global_spec);
    if (!r.existence->symn) {
        r.verdict = "tolerable-only";
        r.witness = r.existence->symn.witness;
        r.notes.push_back("no coordination supervisors exist; keeping the local supervisors");
        return r;
    }

    CoordinationInput in;
    for (const auto& y : s.subsystems) {
        in.plants.push_back(y.plant);
        in.nominal.push_back(y.nominal);
    }
    in.faulty = static_cast<int>(fi);
    in.staged = staged;
    in.faulty_supervisor = faulty_sup;
    r.synco = syn_co(in, s.global_spec);
    for (const auto& note : r.synco->notes) r.notes.push_back(note);
    if (r.synco->verdict == "coordinated" || r.synco->verdict == "holds") {
        r.verdict = "coordinated";
        r.supervisors = r.synco->supervisors;
        r.modules = r.synco->modules;
    } else {
        r.verdict = "tolerable-only";
    }
    return r;
}

json report_to_json(const Scenario& s, const PipelineReport& r) {
    json doc;
    doc["format"] = kFormat;
    doc["verdict"] = r.verdict;
    doc["iterations"] = r.synco ? r.synco->iterations : 0;
    json cex = json::array();
    if (r.synco)
        for (const auto& c : r.synco->counterexamples) cex.push_back(c);
    doc["counterexamples"] = cex;
    json per = json::object();
    for (std::size_t k = 0; k < s.subsystems.size(); ++k) {
        json e;
        e["supervisor"] = to_json(r.supervisors[k].realization);
        e["module"] = to_json(r.modules[k]);
        e["trivial"] = r.supervisors[k].trivial;
        e["locally_safe"] = static_cast<bool>(r.locally_safe[k]);
        per[std::to_string(s.subsystems[k].id)] = e;
    }
    doc["per_subsystem"] = per;
    json checks;
    checks["nominal_symn"] = r.nominal.symn.holds;
    checks["nominal_direct"] = r.nominal.direct.holds;
    if (r.chain) {
        checks["fault_stages"] = r.chain->stages;
        checks["fault_tolerant"] = r.chain->ok;
        if (!r.chain->ok) checks["failed_stage"] = r.chain->failed_stage;
    }
    if (r.post_fault) checks["post_fault_symn"] = r.post_fault->symn.holds;
    if (r.existence) checks["coordination_exists"] = r.existence->symn.holds;
    if (r.synco) {
        checks["state_counts"] = r.synco->state_counts;
        checks["final_holds"] = r.synco->final_holds;
    }
    doc["checks"] = checks;
    doc["witness"] = r.witness;
    doc["notes"] = r.notes;
    return doc;
}

}  // namespace descc
