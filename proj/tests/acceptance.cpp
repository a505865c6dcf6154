#include "support.hpp"

#include "descc/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>

using namespace descc;
using namespace testing;

namespace {

const std::string kScenarios = DESCC_SCENARIO_DIR;

constexpr double kSuffixBudgetMs = 1.0;
constexpr double kNominalBudgetMs = 5000.0;
constexpr double kFaultBudgetMs = 30000.0;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++failures;
}

template <class F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string ms(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f ms", v);
    return buf;
}

// ---- fixtures --------------------------------------------------------------

Automaton eta_plant() {
    Alphabet a = alphabet({"eta1", "eta2", "eta3", "eta4"});
    return build(a, "q0",
                 {{"q0", "eta1", "q1"}, {"q1", "eta2", "q0"}, {"q1", "eta3", "q2"}, {"q2", "eta4", "q3"},
                  {"q3", "eta2", "q3"}});
}

Automaton abc_plant() {
    Alphabet a = alphabet({"a", "b", "c"}, {"b"});
    return build(a, "1", {{"1", "a", "2"}, {"2", "b", "4"}, {"4", "c", "5"}, {"2", "c", "3"}});
}

Automaton abc_supervisor() {
    return build(abc_plant().alphabet, "1", {{"1", "a", "2"}, {"2", "b", "4"}, {"2", "c", "3"}});
}

Alphabet abc_faulty_alphabet() {
    Alphabet a = abc_plant().alphabet;
    a.add("f(1,b)", false, false);
    a.add("b^f", false, false);
    return a;
}

std::vector<Edge> primed(const std::vector<Edge>& edges) {
    std::vector<Edge> out;
    for (const auto& [s, e, d] : edges) out.emplace_back(s + "'", e, d + "'");
    return out;
}

std::vector<Edge> plus(std::vector<Edge> a, const std::vector<Edge>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<Edge> fault_links(const std::vector<std::string>& states) {
    std::vector<Edge> out;
    for (const auto& s : states) out.emplace_back(s, "f(1,b)", s + "'");
    return out;
}

bool is_faulty_plant(const Automaton& got) {
    std::vector<Edge> g = {{"1", "a", "2"}, {"2", "b", "4"}, {"4", "c", "5"}, {"2", "c", "3"}};
    auto edges = plus(plus(g, primed(g)), fault_links({"1", "2", "3", "4", "5"}));
    edges.emplace_back("2'", "b^f", "4'");
    return got.size() == 10 && isomorphic(got, build(abc_faulty_alphabet(), "1", edges));
}

// The faulty supervisor copy also loops b and b^f wherever b is undefined, 3' included.
bool is_faulty_supervisor(const Automaton& got) {
    std::vector<Edge> s = {{"1", "a", "2"}, {"2", "b", "4"}, {"2", "c", "3"}};
    auto edges = plus(plus(s, primed(s)), fault_links({"1", "2", "3", "4"}));
    for (const auto& q : {"1'", "2'", "3'", "4'"}) edges.emplace_back(q, "b^f", q);
    for (const auto& q : {"1'", "3'", "4'"}) edges.emplace_back(q, "b", q);
    return got.size() == 8 && isomorphic(got, build(abc_faulty_alphabet(), "1", edges));
}

bool is_faulty_closed_loop(const Automaton& got) {
    std::vector<Edge> edges = {{"11", "a", "22"},    {"22", "b", "44"},    {"22", "c", "33"},
                               {"11'", "a", "22'"},  {"22'", "b", "44'"},  {"22'", "c", "33'"},
                               {"22'", "b^f", "24'"}, {"24'", "c", "35'"}};
    for (const auto& q : {"11", "22", "33", "44"}) edges.emplace_back(q, "f(1,b)", std::string(q) + "'");
    return got.size() == 10 && isomorphic(got, build(abc_faulty_alphabet(), "11", edges));
}

// ---- criteria --------------------------------------------------------------

void criterion1() {
    Automaton g = eta_plant();
    Automaton post;
    double t = time_ms([&] { post = suffix(g, {"eta1", "eta2", "eta1", "eta3"}); });
    Automaton expected = build(g.alphabet, "s0", {{"s0", "eta4", "s1"}, {"s1", "eta2", "s1"}});
    bool iso = post.size() == 2 && isomorphic(post, expected);
    report(1, iso && t < kSuffixBudgetMs, std::string(iso ? "isomorphic" : "not isomorphic") + ", " + ms(t));
}

void criterion2() {
    FaultConfig cfg{1, {}, {"b"}};
    Automaton gf = build_faulty_plant(abc_plant(), cfg, {"b"});
    Automaton sf = build_faulty_supervisor(abc_supervisor(), cfg, {"b"});
    Automaton gks = closed_loop_fault_model(sf, gf);
    Trace bad = {"a", "f(1,b)", "b^f", "c"};
    bool unsafe = gks.generates(bad) && !abc_supervisor().generates(occurrence_trace(bad));
    bool plant_ok = is_faulty_plant(gf), supervisor_ok = is_faulty_supervisor(sf), loop_ok = is_faulty_closed_loop(gks);
    report(2, plant_ok && supervisor_ok && loop_ok && unsafe,
           "faulty plant " + std::to_string(gf.size()) + (plant_ok ? " ok" : " mismatch") + ", faulty supervisor " +
               std::to_string(sf.size()) + (supervisor_ok ? " ok" : " mismatch") + ", closed loop " +
               std::to_string(gks.size()) + (loop_ok ? " ok" : " mismatch") +
               (unsafe ? ", a f b^f c unsafe" : ", unsafe trace missing"));
}

void criterion3() {
    FaultConfig cfg{1, {}, {"b"}};
    Automaton gks = closed_loop_fault_model(build_faulty_supervisor(abc_supervisor(), cfg, {"b"}),
                                            build_faulty_plant(abc_plant(), cfg, {"b"}));
    Diagnoser d = build_safe_diagnoser(gks, abc_supervisor());
    int q = d.automaton.run({"a", "c"});
    std::string name = q >= 0 ? d.automaton.name(q) : "<none>";
    bool state_ok = name == "{(3,3):N,(3',3'):Y!,(3',5'):Y!U}";
    SfSafeVerdict v = check_sf_safe(gks, d);
    bool verdict_ok = !v.holds && v.condition == 1 && v.state == q;
    report(3, state_ok && verdict_ok,
           "after ac: " + name + ", sf-safe " + (v.holds ? "holds" : "condition " + std::to_string(v.condition)));
}

void criterion4() {
    Scenario s = load_scenario(kScenarios + "/multirobot.json");
    std::vector<Automaton> modules;
    AGCheck c;
    double t = time_ms([&] {
        for (const auto& x : s.subsystems) modules.push_back(closed_loop(x.nominal, x.plant));
        c = check_assume_guarantee(modules, s.global_spec);
    });
    bool ok = c.direct.holds && c.symn.holds == c.direct.holds && t < kNominalBudgetMs;
    report(4, ok,
           std::string("direct ") + (c.direct.holds ? "holds" : "violated") + ", symmetric rule " +
               (c.symn.holds ? "holds" : "violated") + ", " + ms(t));
}

void criterion5() {
    const Trace post_fault_run = {"G3toD1", "G3onD1", "OP", "D1open", "G2in1", "CL", "D1closed", "G3to1", "G3in1", "r"};
    const Trace coordinated_run = {"h1",     "G1to3", "G1in3",    "G1toD1", "G1onD1", "OP", "D1open",
                         "G2in1", "CL",    "D1closed", "G1to1",  "G1in1",  "r"};
    Scenario s = load_scenario(kScenarios + "/multirobot_g3_fault.json");
    const Subsystem& g1 = s.subsystems[s.index_of(1)];
    const Subsystem& g2 = s.subsystems[s.index_of(2)];
    const Subsystem& g3 = s.subsystems[s.index_of(3)];
    ActuatorStage stage;
    PipelineReport r;
    double t = time_ms([&] {
        stage = actuator_fault_stage(g3.plant, g3.nominal, g3.safety, g3.faults, {"G3toD1"}, {"h3"});
        r = run_pipeline(s);
    });
    bool tolerant = stage.tolerant;
    bool has_post_run = tolerant && closed_loop(stage.post, stage.plant_f).generates(post_fault_run);
    bool violated = r.post_fault && !r.post_fault->symn.holds;
    bool terminated = r.synco && r.synco->verdict == "coordinated";
    bool s2_equal = false, has_coordinated_run = false;
    if (terminated) {
        std::size_t i1 = s.index_of(1), i2 = s.index_of(2);
        s2_equal = language_equal(closed_loop(r.synco->supervisors[i2], g2.plant), closed_loop(g2.nominal, g2.plant));
        has_coordinated_run = r.synco->modules[i1].generates(coordinated_run) && g1.plant.generates(coordinated_run);
    }
    bool final_ok = terminated && r.synco->final_holds;
    bool ok = tolerant && has_post_run && violated && terminated && s2_equal && has_coordinated_run && final_ok && t < kFaultBudgetMs;
    auto yn = [](bool b) { return b ? "yes" : "NO"; };
    std::string detail = std::string("tolerant ") + yn(tolerant) + ", post-fault trace " + yn(has_post_run) +
                         ", post-fault check violated " + yn(violated) + ", coordinated " + yn(terminated) +
                         ", S2 unchanged " + yn(s2_equal) + ", S1 module trace " + yn(has_coordinated_run) +
                         ", final composition satisfies spec " + yn(final_ok) + ", " + ms(t);
    report(5, ok, detail);
}

void criterion6() {
    std::string bin = UNIT_TESTS_BINARY;
    const std::string filter =
        "*string-set oracle*,*preimage-search oracle*,*bounded strings*,*inf_c is*,*full observation*,"
        "*partial observation*,*consistent member sets*,*weakest assumption*,*matches the direct check*,"
        "*delete_string*";
    std::string cmd = "\"" + bin + "\" -tc=\"" + filter + "\" -nv > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    report(6, rc == 0, "oracle suites via " + bin + (rc == 0 ? "" : " (failures)"));
}

struct SafetySweep {
    int scripts = 0, tolerated = 0, violations = 0;
    std::string first;
};

void sweep_subsystem(const std::string& tag, const Automaton& g, const Supervisor& nominal, const Automaton& safe,
                     const FaultConfig& cfg, SafetySweep& out) {
    auto check = [&](const FaultPlan& plan, SensorModel model) {
        ++out.scripts;
        StagedChain c = combined_fault_pipeline(g, nominal, safe, cfg, plan, model);
        if (!c.ok) return;
        ++out.tolerated;
        bool ok = c.safe;
        for (const auto& w : words(c.staged, 6))
            if (!safe.generates(occurrence_trace(w))) ok = false;
        if (!ok && out.violations++ == 0) out.first = tag;
    };
    Language injection = words(closed_loop(nominal, g), 6);
    std::vector<EventSet> actuator_sets;
    for (const auto& a : cfg.actuators) actuator_sets.push_back({a});
    if (cfg.actuators.size() > 1) actuator_sets.push_back(cfg.actuators);
    for (const auto& acts : actuator_sets)
        for (const auto& t : injection) check({{}, acts, t}, SensorModel::single_layer);

    std::vector<std::string> sensors(cfg.sensors.begin(), cfg.sensors.end());
    for (unsigned mask = 1; mask < (1u << sensors.size()); ++mask) {
        EventSet which;
        for (std::size_t k = 0; k < sensors.size(); ++k)
            if (mask >> k & 1) which.insert(sensors[k]);
        for (auto model : {SensorModel::single_layer, SensorModel::layered}) {
            check({which, {}, {}}, model);
            if (which.size() != 1) continue;
            SensorStage st = sensor_fault_stage(g, nominal, safe, cfg, which, model);
            if (!st.ok) continue;
            for (const auto& acts : actuator_sets)
                for (const auto& t : words(st.staged, 6)) check({which, acts, t}, model);
        }
    }
}

void criterion7() {
    SafetySweep sweep;
    double t = time_ms([&] {
        Scenario s = load_scenario(kScenarios + "/multirobot.json");
        for (const auto& x : s.subsystems)
            sweep_subsystem("G" + std::to_string(x.id), x.plant, x.nominal, x.safety, x.faults, sweep);
        sweep_subsystem("eta", eta_plant(), supremal_supervisor(eta_plant(), eta_plant()), eta_plant(),
                        FaultConfig{1, {"eta1", "eta2", "eta3", "eta4"}, {}}, sweep);
        sweep_subsystem("abc", abc_plant(), Supervisor{abc_supervisor(), false}, abc_supervisor(),
                        FaultConfig{1, {"a", "c"}, {"b"}}, sweep);
    });
    report(7, sweep.violations == 0,
           std::to_string(sweep.scripts) + " scripts, " + std::to_string(sweep.tolerated) + " tolerated, " +
               std::to_string(sweep.violations) + " violations" +
               (sweep.first.empty() ? "" : " (first in " + sweep.first + ")") + ", " + ms(t));
}

void criterion8() {
    int runs = 0;
    bool ok = true;
    std::string counts;
    for (const auto& file : {"multirobot.json", "multirobot_g3_fault.json"}) {
        Scenario s = load_scenario(kScenarios + "/" + file);
        PipelineReport r = run_pipeline(s);
        if (!r.synco || r.synco->iterations == 0) continue;
        ++runs;
        const auto& c = r.synco->state_counts;
        for (std::size_t k = 1; k < c.size(); ++k)
            if (c[k] >= c[k - 1]) ok = false;
        counts += std::string(file) + " [";
        for (std::size_t k = 0; k < c.size(); ++k) counts += (k ? " " : "") + std::to_string(c[k]);
        counts += "] ";
    }
    report(8, ok && runs > 0, std::to_string(runs) + " refinement runs: " + counts);
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8};
    for (const auto& c : criteria) {
        try {
            c();
        } catch (const std::exception& e) {
            std::printf("criterion: FAIL  exception: %s\n", e.what());
            ++failures;
        }
    }
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
