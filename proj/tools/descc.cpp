#include "descc/automaton.hpp"
#include "descc/coordination.hpp"
#include "descc/events.hpp"
#include "descc/io.hpp"
#include "descc/scenario.hpp"
#include "descc/sensor.hpp"
#include "descc/synthesis.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace descc;

namespace {

struct Output {
    std::string dir;
    bool dot = false;

    void emit(const std::string& stem, const json& doc) const {
        if (dir.empty()) {
            std::cout << doc.dump(2) << "\n";
            return;
        }
        std::filesystem::create_directories(dir);
        write_json((std::filesystem::path(dir) / (stem + ".json")).string(), doc);
    }

    void emit(const std::string& stem, const Automaton& a) const {
        emit(stem, to_json(a));
        if (!dot) return;
        std::string text = to_dot(a, stem);
        if (dir.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream((std::filesystem::path(dir) / (stem + ".dot")).string()) << text;
    }
};

EventSet split_events(const std::string& csv) {
    EventSet out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(item);
    return out;
}

void add_output(CLI::App* cmd, Output& out) {
    cmd->add_option("--out", out.dir, "Directory for generated artifacts (default: stdout)");
    cmd->add_flag("--dot", out.dot, "Also export automata in DOT format");
}

struct SensorArgs {
    std::string plant, supervisor, safe, sensors;
    int subsystem = 1;
    bool layered = false;
};

void add_sensor_args(CLI::App* cmd, SensorArgs& a) {
    cmd->add_option("plant", a.plant, "Plant automaton")->required()->check(CLI::ExistingFile);
    cmd->add_option("supervisor", a.supervisor, "Nominal supervisor automaton")->required()->check(CLI::ExistingFile);
    cmd->add_option("safe", a.safe, "Safety automaton")->required()->check(CLI::ExistingFile);
    cmd->add_option("--sensors", a.sensors, "Comma-separated faulty sensor readings")->required();
    cmd->add_option("--subsystem", a.subsystem, "Subsystem index used in fault event names");
    cmd->add_flag("--layered", a.layered, "One faulty layer per subset of faulted sensors");
}

struct SensorModelBuild {
    Automaton plant_f, supervisor_f, safe;
    Product gks;
};

SensorModelBuild build_sensor_model(const SensorArgs& a) {
    Automaton g = load_automaton(a.plant);
    Automaton s = load_automaton(a.supervisor);
    Automaton safe = load_automaton(a.safe);
    EventSet which = split_events(a.sensors);
    FaultConfig cfg{a.subsystem, {}, which};
    validate(cfg, g.alphabet);
    s.alphabet = g.alphabet;
    SensorModel model = a.layered ? SensorModel::layered : SensorModel::single_layer;
    SensorModelBuild b;
    b.plant_f = build_faulty_plant(g, cfg, which, model);
    b.supervisor_f = build_faulty_supervisor(s, cfg, which, model);
    b.gks = closed_loop_fault_model_tracked(b.supervisor_f, b.plant_f);
    b.safe = retag(safe, g.alphabet);
    return b;
}

void print_summary(const Scenario& s) {
    std::cerr << "scenario: " << s.subsystems.size() << " subsystems\n";
    for (const auto& x : s.subsystems)
        std::cerr << "  subsystem " << x.id << ": " << x.plant.size() << " states, " << x.plant.alphabet.size()
                  << " events, nominal supervisor " << (x.nominal_given ? "given" : "synthesized") << "\n";
    std::cerr << "  global spec: " << s.global_spec.size() << " states, " << s.fault_script.size()
              << " scripted faults\n";
}

void write_report_artifacts(const Output& out, const Scenario& s, const PipelineReport& r) {
    if (out.dir.empty()) return;
    for (std::size_t k = 0; k < s.subsystems.size(); ++k) {
        std::string id = std::to_string(s.subsystems[k].id);
        out.emit("supervisor_" + id, r.supervisors[k].realization);
        out.emit("module_" + id, r.modules[k]);
    }
    if (r.chain) out.emit("staged", r.chain->staged);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fault-tolerant supervisory control and coordination of distributed discrete event systems"};
    app.require_subcommand(1);
    Output out;

    std::string scenario_path;
    auto* validate_cmd = app.add_subcommand("validate", "Load and validate a scenario file");
    validate_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);

    std::vector<std::string> compose_files;
    auto* compose_cmd = app.add_subcommand("compose", "Synchronous product of automata");
    compose_cmd->add_option("automata", compose_files, "Automaton JSON files")->required()->check(CLI::ExistingFile);
    add_output(compose_cmd, out);

    std::string project_file, keep;
    auto* project_cmd = app.add_subcommand("project", "Natural projection (observer) onto an event subset");
    project_cmd->add_option("automaton", project_file, "Automaton JSON")->required()->check(CLI::ExistingFile);
    project_cmd->add_option("--keep", keep, "Comma-separated events to keep")->required();
    add_output(project_cmd, out);

    std::string synth_plant, synth_spec;
    auto* synth_cmd = app.add_subcommand("synth", "Supremal controllable and normal supervisor");
    synth_cmd->add_option("plant", synth_plant, "Plant automaton")->required()->check(CLI::ExistingFile);
    synth_cmd->add_option("spec", synth_spec, "Specification automaton")->required()->check(CLI::ExistingFile);
    add_output(synth_cmd, out);

    SensorArgs diag_args;
    auto* diagnose_cmd = app.add_subcommand("diagnose", "Safe diagnoser of the sensor-fault closed loop");
    add_sensor_args(diagnose_cmd, diag_args);
    add_output(diagnose_cmd, out);

    SensorArgs sf_args;
    auto* sf_cmd = app.add_subcommand("check-sf-safe", "Decide SF-safe controllability");
    add_sensor_args(sf_cmd, sf_args);

    auto* tolerance_cmd = app.add_subcommand("tolerance", "Run the scripted fault stages of a scenario");
    tolerance_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    add_output(tolerance_cmd, out);

    auto* coordinate_cmd = app.add_subcommand("coordinate", "Post-fault assume-guarantee coordination");
    coordinate_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    add_output(coordinate_cmd, out);

    auto* run_cmd = app.add_subcommand("run", "Full pipeline: nominal check, fault stages, coordination");
    run_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    add_output(run_cmd, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*validate_cmd) {
            Scenario s = load_scenario(scenario_path);
            print_summary(s);
            std::cout << "valid\n";
            return 0;
        }
        if (*compose_cmd) {
            std::vector<Automaton> parts;
            for (const auto& f : compose_files) parts.push_back(load_automaton(f));
            out.emit("composed", compose_all(parts));
            return 0;
        }
        if (*project_cmd) {
            out.emit("projected", project(load_automaton(project_file), split_events(keep)));
            return 0;
        }
        if (*synth_cmd) {
            Automaton g = load_automaton(synth_plant);
            Supervisor s = supremal_supervisor(g, load_automaton(synth_spec));
            if (s.trivial) std::cerr << "only the trivial supervisor exists\n";
            out.emit("supervisor", s.realization);
            return 0;
        }
        if (*diagnose_cmd) {
            auto b = build_sensor_model(diag_args);
            Diagnoser d = build_safe_diagnoser(b.gks.automaton, b.safe);
            out.emit("faulty_plant", b.plant_f);
            out.emit("faulty_supervisor", b.supervisor_f);
            out.emit("closed_loop", b.gks.automaton);
            out.emit("diagnoser", d.automaton);
            return 0;
        }
        if (*sf_cmd) {
            auto b = build_sensor_model(sf_args);
            SfSafeVerdict v = check_sf_safe(b.gks.automaton, b.safe);
            json doc;
            doc["format"] = kFormat;
            doc["sf_safe"] = v.holds;
            if (!v.holds) {
                Diagnoser d = build_safe_diagnoser(b.gks.automaton, b.safe);
                doc["condition"] = v.condition;
                doc["state"] = d.automaton.name(v.state);
                doc["observation"] = v.observation;
                doc["member"] = v.member;
                doc["uncontrollable_path"] = v.uncontrollable_path;
            }
            std::cout << doc.dump(2) << "\n";
            return v.holds ? 0 : 3;
        }
        if (*tolerance_cmd) {
            Scenario s = load_scenario(scenario_path);
            if (s.fault_script.empty()) {
                std::cout << "no scripted faults\n";
                return 0;
            }
            int id = s.fault_script.front().subsystem;
            const Subsystem& x = s.subsystems.at(s.index_of(id));
            FaultPlan plan;
            for (const auto& f : s.fault_script) {
                if (f.kind == FaultEvent::Kind::sensor) {
                    plan.sensors.insert(f.target);
                } else {
                    plan.actuators.insert(f.target);
                    plan.actuator_after = f.after;
                }
            }
            StagedChain chain = combined_fault_pipeline(x.plant, x.nominal, x.safety, x.faults, plan, s.sensor_model);
            json doc;
            doc["format"] = kFormat;
            doc["subsystem"] = id;
            doc["tolerant"] = chain.ok;
            doc["stages"] = chain.stages;
            if (!chain.ok) {
                doc["failed_stage"] = chain.failed_stage;
                doc["witness"] = chain.witness;
            } else {
                doc["locally_safe"] = chain.safe;
            }
            out.emit("tolerance", doc);
            if (chain.ok) out.emit("staged", chain.staged);
            return chain.ok ? 0 : 3;
        }
        if (*coordinate_cmd || *run_cmd) {
            Scenario s = load_scenario(scenario_path);
            PipelineReport r = run_pipeline(s);
            out.emit("report", report_to_json(s, r));
            write_report_artifacts(out, s, r);
            std::cerr << "verdict: " << r.verdict << "\n";
            return exit_code(r.verdict);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
