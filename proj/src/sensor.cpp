#include "descc/sensor.hpp"

#include "descc/events.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <tuple>

namespace descc {

namespace {

void check_which(const FaultConfig& cfg, const EventSet& which, const Alphabet& alpha) {
    for (const auto& s : which) {
        if (!cfg.sensors.count(s)) throw Error("'" + s + "' is not a declared sensor of subsystem " +
                                               std::to_string(cfg.subsystem));
        if (!alpha.contains(s)) throw Error("sensor '" + s + "' is not in the alphabet");
    }
}

Alphabet faulty_alphabet(const Alphabet& base, const FaultConfig& cfg, const EventSet& which) {
    Alphabet out = base;
    for (const auto& s : which) {
        for (const auto& e : {faulty_reading(s), sensor_fault_event(cfg.subsystem, s)}) {
            if (base.contains(e)) throw Error("fault event name '" + e + "' collides with a plant event");
            out.add(e, false, false, {cfg.subsystem});
        }
    }
    return out;
}

// Layer 0 is the nominal copy. Single-layer: layer 1 holds every sensor of
// `which`. Layered: one layer per nonempty subset, ordered by size then name.
std::vector<EventSet> layers_of(const EventSet& which, SensorModel model) {
    std::vector<EventSet> layers{{}};
    if (which.empty()) return layers;
    if (model == SensorModel::single_layer) {
        layers.push_back(which);
        return layers;
    }
    std::vector<std::string> v(which.begin(), which.end());
    std::vector<EventSet> subsets;
    for (unsigned mask = 1; mask < (1u << v.size()); ++mask) {
        EventSet s;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (mask & (1u << k)) s.insert(v[k]);
        subsets.push_back(s);
    }
    std::sort(subsets.begin(), subsets.end(), [](const EventSet& a, const EventSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    layers.insert(layers.end(), subsets.begin(), subsets.end());
    return layers;
}

std::string layer_suffix(const EventSet& layer, const EventSet& which, SensorModel model) {
    if (layer.empty()) return "";
    if (model == SensorModel::single_layer || which.size() == 1) return "'";
    std::string out = "'[";
    bool first = true;
    for (const auto& s : layer) {
        if (!first) out += ",";
        out += s;
        first = false;
    }
    return out + "]";
}

int layer_after(const std::vector<EventSet>& layers, const EventSet& from, const std::string& sensor,
                SensorModel model) {
    if (model == SensorModel::single_layer) return from.empty() ? 1 : -1;
    EventSet to = from;
    to.insert(sensor);
    auto it = std::find(layers.begin(), layers.end(), to);
    return static_cast<int>(it - layers.begin());
}

// Shared skeleton of the faulty plant and supervisor: copies of `a` per
// layer plus the sensor-fault transitions between twins. `fill` adds the
// layer-local extra transitions.
template <class Fill>
Automaton layered_copy(const Automaton& a, const FaultConfig& cfg, const EventSet& which, SensorModel model,
                       Fill fill) {
    Automaton out(faulty_alphabet(a.alphabet, cfg, which));
    if (a.empty()) return out;
    auto layers = layers_of(which, model);
    int n = static_cast<int>(a.size());
    for (const auto& layer : layers) {
        std::string suf = layer_suffix(layer, which, model);
        for (int s = 0; s < n; ++s) out.add_state(a.name(s) + suf, a.is_marked(s));
    }
    out.set_initial(a.initial());
    for (int l = 0; l < static_cast<int>(layers.size()); ++l) {
        int base = l * n;
        for (int s = 0; s < n; ++s) {
            for (const auto& [e, d] : a.out(s)) out.add_transition(base + s, e, base + d);
            fill(out, layers[l], base, s);
            for (const auto& k : which) {
                if (layers[l].count(k)) continue;
                int to = layer_after(layers, layers[l], k, model);
                if (to < 0) continue;
                out.add_transition(base + s, sensor_fault_event(cfg.subsystem, k), to * n + s);
            }
        }
    }
    return accessible(out);
}

}  // namespace

Automaton build_faulty_plant(const Automaton& g, const FaultConfig& cfg, const EventSet& which, SensorModel model) {
    check_which(cfg, which, g.alphabet);
    return layered_copy(g, cfg, which, model, [&](Automaton& out, const EventSet& layer, int base, int s) {
        for (const auto& k : layer) {
            int d = g.step(s, k);
            if (d >= 0) out.add_transition(base + s, faulty_reading(k), base + d);
        }
    });
}

Automaton build_faulty_supervisor(const Automaton& s, const FaultConfig& cfg, const EventSet& which,
                                  SensorModel model) {
    check_which(cfg, which, s.alphabet);
    EventSet uc;
    for (const auto& e : s.alphabet.uncontrollable())
        if (role_of(e) == EventRole::plain) uc.insert(e);
    return layered_copy(s, cfg, which, model, [&](Automaton& out, const EventSet& layer, int base, int x) {
        if (layer.empty()) return;
        for (const auto& k : layer) out.add_transition(base + x, faulty_reading(k), base + x);
        for (const auto& e : uc)
            if (s.step(x, e) < 0) out.add_transition(base + x, e, base + x);
    });
}

Product closed_loop_fault_model_tracked(const Automaton& s_f, const Automaton& g_f) {
    return compose_tracked(retag(s_f, g_f.alphabet), g_f);
}

Automaton closed_loop_fault_model(const Automaton& s_f, const Automaton& g_f) {
    return closed_loop_fault_model_tracked(s_f, g_f).automaton;
}

std::set<int> unsafe_states(const Automaton& gks, const Automaton& safe) {
    Automaton spec = completion(lift_occurrence(safe, gks.alphabet));
    Product p = compose_tracked(gks, retag(spec, gks.alphabet));
    std::set<int> out;
    for (const auto& [x, q] : p.pairs)
        if (q == *spec.error_state) out.insert(x);
    return out;
}

// ---------------------------------------------------------------- diagnoser

bool DiagnoserState::normal() const {
    return std::none_of(members.begin(), members.end(), [](const DiagnoserMember& m) { return m.faulty(); });
}

bool DiagnoserState::certain() const {
    return !members.empty() &&
           std::all_of(members.begin(), members.end(), [](const DiagnoserMember& m) { return m.faulty(); });
}

std::string diagnoser_state_name(const Automaton& gks, const DiagnoserState& d) {
    std::string out = "{";
    for (std::size_t k = 0; k < d.members.size(); ++k) {
        const auto& m = d.members[k];
        if (k) out += ",";
        out += gks.name(m.state) + ":" + m.labels;
        if (m.faulty()) out += "!";
        if (m.unsafe) out += "U";
    }
    return out + "}";
}

namespace {

std::vector<std::string> tracked_faults(const Alphabet& alpha) {
    std::vector<std::string> out;
    for (const auto& [e, ev] : alpha)
        if (role_of(e) == EventRole::sensor_fault) out.push_back(e);
    return out;
}

std::string flip(std::string labels, const std::vector<std::string>& faults, const std::string& e) {
    auto it = std::find(faults.begin(), faults.end(), e);
    if (it != faults.end()) labels[it - faults.begin()] = 'Y';
    return labels;
}

}  // namespace

Diagnoser build_safe_diagnoser(const Automaton& gks, const Automaton& safe) {
    Diagnoser diag;
    diag.fault_events = tracked_faults(gks.alphabet);
    EventSet obs = gks.alphabet.observable();
    Alphabet dalpha;
    for (const auto& e : obs) dalpha.add(e, gks.alphabet.at(e));
    diag.automaton = Automaton(dalpha);
    if (gks.empty()) return diag;

    std::set<int> bad = unsafe_states(gks, safe);
    std::size_t width = std::max<std::size_t>(1, diag.fault_events.size());

    using Node = std::pair<int, std::string>;
    auto closure = [&](std::set<Node> seed) {
        std::deque<Node> queue(seed.begin(), seed.end());
        while (!queue.empty()) {
            auto [x, l] = queue.front();
            queue.pop_front();
            for (const auto& [e, d] : gks.out(x)) {
                if (obs.count(e)) continue;
                Node n{d, flip(l, diag.fault_events, e)};
                if (seed.insert(n).second) queue.push_back(n);
            }
        }
        DiagnoserState st;
        for (const auto& [x, l] : seed) st.members.push_back({x, l, bad.count(x) != 0});
        return st;
    };

    std::map<std::vector<DiagnoserMember>, int> index;
    std::deque<int> queue;
    auto intern = [&](DiagnoserState st, const Trace& o) {
        auto it = index.find(st.members);
        if (it != index.end()) return it->second;
        int id = diag.automaton.add_state(diagnoser_state_name(gks, st));
        index.emplace(st.members, id);
        diag.states.push_back(std::move(st));
        diag.observation.push_back(o);
        queue.push_back(id);
        return id;
    };

    intern(closure({{gks.initial(), std::string(width, 'N')}}), {});
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (const auto& e : obs) {
            std::set<Node> next;
            for (const auto& m : diag.states[q].members) {
                int d = gks.step(m.state, e);
                if (d >= 0) next.insert({d, m.labels});
            }
            if (next.empty()) continue;
            Trace o = diag.observation[q];
            o.push_back(e);
            int to = intern(closure(std::move(next)), o);
            diag.automaton.add_transition(q, e, to);
        }
    }
    return diag;
}

std::vector<int> first_entered_certain(const Diagnoser& diag) {
    std::set<int> out;
    for (int q = 0; q < static_cast<int>(diag.states.size()); ++q) {
        if (diag.states[q].certain()) continue;
        for (const auto& [e, d] : diag.automaton.out(q))
            if (diag.states[d].certain()) out.insert(d);
    }
    return {out.begin(), out.end()};
}

SfSafeVerdict check_sf_safe(const Automaton& gks, const Automaton& safe) {
    return check_sf_safe(gks, build_safe_diagnoser(gks, safe));
}

SfSafeVerdict check_sf_safe(const Automaton& gks, const Diagnoser& diag) {
    auto fail = [&](int condition, int q, const DiagnoserMember& m) {
        SfSafeVerdict v;
        v.holds = false;
        v.condition = condition;
        v.state = q;
        v.observation = diag.observation[q];
        v.member = gks.name(m.state) + ":" + m.labels;
        return v;
    };
    int n = static_cast<int>(diag.states.size());
    for (int q = 0; q < n; ++q) {
        if (!diag.states[q].uncertain()) continue;
        for (const auto& m : diag.states[q].members)
            if (m.faulty() && m.unsafe) return fail(1, q, m);
    }
    auto fc = first_entered_certain(diag);
    for (int q : fc)
        for (const auto& m : diag.states[q].members)
            if (m.unsafe) return fail(2, q, m);

    std::set<int> bad;
    for (const auto& st : diag.states)
        for (const auto& m : st.members)
            if (m.unsafe) bad.insert(m.state);
    EventSet uc = gks.alphabet.uncontrollable();
    for (int q : fc) {
        for (const auto& m : diag.states[q].members) {
            std::map<int, std::pair<int, std::string>> parent{{m.state, {-1, ""}}};
            std::deque<int> queue{m.state};
            while (!queue.empty()) {
                int x = queue.front();
                queue.pop_front();
                if (bad.count(x)) {
                    SfSafeVerdict v = fail(3, q, m);
                    for (int y = x; parent.at(y).first >= 0; y = parent.at(y).first)
                        v.uncontrollable_path.push_back(parent.at(y).second);
                    std::reverse(v.uncontrollable_path.begin(), v.uncontrollable_path.end());
                    return v;
                }
                for (const auto& [e, d] : gks.out(x)) {
                    if (!uc.count(e) || parent.count(d)) continue;
                    parent.emplace(d, std::make_pair(x, e));
                    queue.push_back(d);
                }
            }
        }
    }
    return {};
}

// ---------------------------------------------------------------- post-detection

namespace {

// Shortest trace of gks whose run ends in member state x with labels l while
// the diagnoser sits in qY.
std::vector<Trace> entry_traces(const Automaton& gks, const Diagnoser& diag, int qY) {
    using Key = std::tuple<int, std::string, int>;
    std::size_t width = std::max<std::size_t>(1, diag.fault_events.size());
    std::map<Key, std::pair<Key, std::string>> parent;
    Key start{gks.initial(), std::string(width, 'N'), diag.automaton.initial()};
    parent.emplace(start, std::make_pair(start, std::string()));
    std::deque<Key> queue{start};
    std::map<std::pair<int, std::string>, Key> found;
    const auto& members = diag.states[qY].members;
    while (!queue.empty() && found.size() < members.size()) {
        Key k = queue.front();
        queue.pop_front();
        auto& [x, l, q] = k;
        if (q == qY) found.emplace(std::make_pair(x, l), k);
        for (const auto& [e, d] : gks.out(x)) {
            int nq = diag.automaton.alphabet.contains(e) ? diag.automaton.step(q, e) : q;
            if (nq < 0) continue;
            Key nk{d, flip(l, diag.fault_events, e), nq};
            if (parent.count(nk)) continue;
            parent.emplace(nk, std::make_pair(k, e));
            queue.push_back(nk);
        }
    }
    std::vector<Trace> out;
    for (const auto& m : members) {
        auto it = found.find({m.state, m.labels});
        if (it == found.end()) throw Error("diagnoser member unreachable: " + gks.name(m.state));
        Trace t;
        for (Key k = it->second; k != start; k = parent.at(k).first) t.push_back(parent.at(k).second);
        std::reverse(t.begin(), t.end());
        out.push_back(t);
    }
    return out;
}

}  // namespace

CertainEntryPlant certain_entry_plant(const Automaton& g_f, const Product& gks, const Diagnoser& diag, int qY,
                                      const Automaton& safe, int subsystem) {
    if (qY < 0 || qY >= static_cast<int>(diag.states.size())) throw Error("diagnoser state out of range");
    const DiagnoserState& d = diag.states[qY];
    if (!d.certain()) throw Error("diagnoser state " + diag.automaton.name(qY) + " is not certain");
    CertainEntryPlant entry;
    std::string tag = stable_hash(diag.automaton.name(qY));
    Alphabet alpha = g_f.alphabet;
    for (std::size_t j = 0; j < d.members.size(); ++j) {
        std::string e = detect_event(subsystem, tag, static_cast<int>(j) + 1);
        alpha.add(e, false, true, {subsystem});
        entry.detect_events.push_back(e);
    }

    Automaton plant(alpha);
    std::string init = "q0Y";
    while (g_f.has_state(init)) init += "'";
    plant.add_state(init, false);
    for (int s = 0; s < static_cast<int>(g_f.size()); ++s) plant.add_state(g_f.name(s), g_f.is_marked(s));
    for (int s = 0; s < static_cast<int>(g_f.size()); ++s)
        for (const auto& [e, t] : g_f.out(s)) plant.add_transition(s + 1, e, t + 1);
    for (std::size_t j = 0; j < d.members.size(); ++j)
        plant.add_transition(0, entry.detect_events[j], gks.pairs[d.members[j].state].second + 1);
    entry.plant = accessible(plant);

    entry.entry_traces = entry_traces(gks.automaton, diag, qY);

    Alphabet salpha = safe.alphabet;
    for (const auto& e : entry.detect_events) salpha.add(e, alpha.at(e));
    Automaton spec(salpha);
    spec.add_state("p0");
    for (std::size_t j = 0; j < d.members.size(); ++j) {
        Trace occ = occurrence_trace(entry.entry_traces[j]);
        if (!safe.generates(occ)) continue;
        Automaton part = suffix(safe, occ);
        std::string prefix = std::to_string(j + 1) + ":";
        int base = static_cast<int>(spec.size());
        for (int s = 0; s < static_cast<int>(part.size()); ++s) spec.add_state(prefix + part.name(s), part.is_marked(s));
        for (int s = 0; s < static_cast<int>(part.size()); ++s)
            for (const auto& [e, t] : part.out(s)) spec.add_transition(base + s, e, base + t);
        spec.add_transition(0, entry.detect_events[j], base + part.initial());
    }
    entry.spec = spec;
    return entry;
}

Verdict check_sensor_tolerance(const CertainEntryPlant& entry, const Automaton& post_spec) {
    Automaton inf = inf_c(entry.plant, entry.plant.alphabet.uncontrollable());
    return satisfies(inf, lift_occurrence(post_spec, inf.alphabet));
}

Supervisor synth_sensor_post_supervisor(const CertainEntryPlant& entry, const Automaton& post_spec) {
    const Automaton& g = entry.plant;
    return supremal_supervisor(g, lift_occurrence(post_spec, g.alphabet), g.alphabet.uncontrollable(),
                               g.alphabet.observable());
}

// ---------------------------------------------------------------- staged loop

SensorStage sensor_fault_stage(const Automaton& g, const Supervisor& nominal, const Automaton& safe,
                               const FaultConfig& cfg, const EventSet& which, SensorModel model) {
    SensorStage st;
    st.plant_f = build_faulty_plant(g, cfg, which, model);
    st.supervisor_f = build_faulty_supervisor(nominal.realization, cfg, which, model);
    st.closed = closed_loop_fault_model_tracked(st.supervisor_f, st.plant_f);
    const Automaton& gks = st.closed.automaton;
    st.diagnoser = build_safe_diagnoser(gks, safe);
    st.sf_safe = check_sf_safe(gks, st.diagnoser);
    if (!st.sf_safe) {
        st.ok = false;
        st.failure = "sf-safe condition (" + std::string(st.sf_safe.condition == 1   ? "i"
                                                         : st.sf_safe.condition == 2 ? "ii"
                                                                                     : "iii") +
                     ")";
        st.witness = st.sf_safe.observation;
        st.witness.insert(st.witness.end(), st.sf_safe.uncontrollable_path.begin(),
                          st.sf_safe.uncontrollable_path.end());
        return st;
    }
    st.first_entered = first_entered_certain(st.diagnoser);
    std::map<int, Product> loops;
    for (int q : st.first_entered) {
        CertainEntryPlant entry = certain_entry_plant(st.plant_f, st.closed, st.diagnoser, q, safe, cfg.subsystem);
        Verdict tol = check_sensor_tolerance(entry, entry.spec);
        if (!tol) {
            st.ok = false;
            st.failure = "sensor fault tolerance at " + st.diagnoser.automaton.name(q);
            st.witness = tol.witness;
            return st;
        }
        Supervisor post = synth_sensor_post_supervisor(entry, entry.spec);
        loops.emplace(q, compose_tracked(retag(post.realization, entry.plant.alphabet), entry.plant));
        st.entries.emplace(q, std::move(entry));
        st.post.emplace(q, std::move(post));
    }

    // Phase A walks gks alongside the diagnoser; entering a certain state
    // jumps into that state's post-detection loop after the member's detect.
    Automaton staged(gks.alphabet);
    using KeyA = std::tuple<int, std::string, int>;
    using KeyB = std::pair<int, int>;
    std::map<KeyA, int> idx_a;
    std::map<KeyB, int> idx_b;
    std::vector<KeyA> key_a;
    std::vector<KeyB> key_b;
    std::vector<char> phase_b;
    std::deque<int> queue;
    std::size_t width = std::max<std::size_t>(1, st.diagnoser.fault_events.size());
    const Automaton& dg = st.diagnoser.automaton;

    auto add_a = [&](const KeyA& k) {
        auto it = idx_a.find(k);
        if (it != idx_a.end()) return it->second;
        auto& [x, l, q] = k;
        int id = staged.add_state("A:" + gks.name(x) + ":" + l + "@" + std::to_string(q), gks.is_marked(x));
        idx_a.emplace(k, id);
        key_a.push_back(k);
        key_b.emplace_back(-1, -1);
        phase_b.push_back(0);
        st.plant_state.push_back(st.closed.pairs[x].second);
        queue.push_back(id);
        return id;
    };
    auto add_b = [&](const KeyB& k) {
        auto it = idx_b.find(k);
        if (it != idx_b.end()) return it->second;
        const Product& cl = loops.at(k.first);
        const Automaton& plant = st.entries.at(k.first).plant;
        int id = staged.add_state("B" + std::to_string(k.first) + ":" + cl.automaton.name(k.second),
                                  cl.automaton.is_marked(k.second));
        idx_b.emplace(k, id);
        key_a.emplace_back(-1, "", -1);
        key_b.push_back(k);
        phase_b.push_back(1);
        st.plant_state.push_back(st.plant_f.find(plant.name(cl.pairs[k.second].second)));
        queue.push_back(id);
        return id;
    };

    add_a({gks.initial(), std::string(width, 'N'), dg.initial()});
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        if (phase_b[s]) {
            auto [q, c] = key_b[s];
            for (const auto& [e, d] : loops.at(q).automaton.out(c)) {
                if (role_of(e) == EventRole::detect) continue;
                staged.add_transition(s, e, add_b({q, d}));
            }
            continue;
        }
        auto [x, l, q] = key_a[s];
        for (const auto& [e, x2] : gks.out(x)) {
            int q2 = dg.alphabet.contains(e) ? dg.step(q, e) : q;
            if (q2 < 0) continue;
            std::string l2 = flip(l, st.diagnoser.fault_events, e);
            if (!st.diagnoser.states[q2].certain()) {
                staged.add_transition(s, e, add_a({x2, l2, q2}));
                continue;
            }
            const auto& members = st.diagnoser.states[q2].members;
            auto it = std::find_if(members.begin(), members.end(), [&](const DiagnoserMember& m) {
                return m.state == x2 && m.labels == l2;
            });
            if (it == members.end() || !loops.count(q2)) continue;
            const Product& cl = loops.at(q2);
            int c = cl.automaton.step(cl.automaton.initial(), st.entries.at(q2).detect_events[it - members.begin()]);
            if (c < 0) continue;
            staged.add_transition(s, e, add_b({q2, c}));
        }
    }
    st.staged = staged;
    return st;
}

// ---------------------------------------------------------------- combined

StagedChain combined_fault_pipeline(const Automaton& g, const Supervisor& nominal, const Automaton& safe,
                                    const FaultConfig& cfg, const FaultPlan& plan, SensorModel model) {
    StagedChain chain;
    chain.stages.push_back("nominal");
    chain.supervisors.push_back(nominal);
    chain.staged = closed_loop(nominal, g);

    std::optional<SensorStage> sensor;
    if (!plan.sensors.empty()) {
        sensor = sensor_fault_stage(g, nominal, safe, cfg, plan.sensors, model);
        chain.stages.push_back("sensor");
        if (!sensor->ok) {
            chain.ok = false;
            chain.failed_stage = "sensor: " + sensor->failure;
            chain.witness = sensor->witness;
            return chain;
        }
        for (const auto& [q, s] : sensor->post) chain.supervisors.push_back(s);
        chain.staged = sensor->staged;
    }

    if (!plan.actuators.empty()) {
        chain.stages.push_back("actuator");
        for (const auto& a : plan.actuators)
            if (!cfg.actuators.count(a)) throw Error("'" + a + "' is not a declared actuator");
        if (!sensor) {
            ActuatorStage as = actuator_fault_stage(g, nominal, safe, cfg, plan.actuators, plan.actuator_after);
            if (!as.tolerant) {
                chain.ok = false;
                chain.failed_stage = "actuator";
                chain.witness = as.witness;
                return chain;
            }
            chain.supervisors.push_back(as.post);
            chain.staged = as.staged;
        } else {
            const Trace& t = plan.actuator_after;
            int x = sensor->staged.run(t);
            if (x < 0) throw Error("actuator fault trace not generated by the sensor-stage loop: " + to_string(t));
            Automaton base = sensor->plant_f;
            base.set_initial(sensor->plant_state[x]);
            Automaton plant_a = accessible(base);
            bool multi = plan.actuators.size() > 1;
            for (const auto& a : (multi ? cfg.actuators : plan.actuators)) plant_a.alphabet.at(a).controllable = false;
            std::string link = multi ? mode_switch_event(cfg.subsystem, 0, cfg.mode_of(*plan.actuators.begin()))
                                     : actuator_fault_event(cfg.subsystem, *plan.actuators.begin());
            if (multi)
                for (const auto& h : cfg.mode_switch_events()) plant_a.alphabet.add(h, false, true, {cfg.subsystem});
            else
                plant_a.alphabet.add(link, false, true, {cfg.subsystem});
            Automaton post_spec = post_fault_spec(safe, occurrence_trace(t));
            Verdict tol = check_actuator_tolerance(plant_a, post_spec);
            if (!tol) {
                chain.ok = false;
                chain.failed_stage = "actuator";
                chain.witness = tol.witness;
                return chain;
            }
            Supervisor post = supremal_supervisor(plant_a, lift_occurrence(post_spec, plant_a.alphabet),
                                                  plant_a.alphabet.uncontrollable(), plant_a.alphabet.observable());
            chain.supervisors.push_back(post);
            chain.staged = chain_after(t, link, closed_loop(post, plant_a), plant_a.alphabet);
        }
    }
    chain.safe = static_cast<bool>(satisfies(chain.staged, lift_occurrence(safe, chain.staged.alphabet)));
    return chain;
}

}  // namespace descc
