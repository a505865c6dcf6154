#include "descc/coordination.hpp"

#include "descc/events.hpp"

#include <algorithm>
#include <deque>

namespace descc {

std::vector<EventSet> interfaces(const std::vector<Automaton>& modules, const Alphabet& property) {
    std::vector<EventSet> out;
    EventSet p = property.names();
    for (std::size_t i = 0; i < modules.size(); ++i) {
        EventSet others;
        for (std::size_t j = 0; j < modules.size(); ++j)
            if (j != i)
                for (const auto& [e, ev] : modules[j].alphabet) others.insert(e);
        EventSet own = modules[i].alphabet.names();
        EventSet iface;
        std::set_intersection(own.begin(), own.end(), others.begin(), others.end(),
                              std::inserter(iface, iface.end()));
        iface.insert(p.begin(), p.end());
        out.push_back(iface);
    }
    return out;
}

std::vector<AGModule> make_modules(const std::vector<Automaton>& modules, const Automaton& property) {
    auto ifaces = interfaces(modules, property.alphabet);
    std::vector<AGModule> out;
    for (std::size_t i = 0; i < modules.size(); ++i) out.push_back({modules[i], ifaces[i]});
    return out;
}

namespace {

// Attributes for an event that may live in either alphabet.
Event attributes(const std::string& e, const Alphabet& a, const Alphabet& b) {
    return a.contains(e) ? a.at(e) : b.at(e);
}

}  // namespace

Automaton weakest_assumption(const AGModule& m, const Automaton& property) {
    const Alphabet& ma = m.automaton.alphabet;
    for (const auto& [e, ev] : property.alphabet)
        if (!ma.contains(e) && !m.interface.count(e))
            throw Error("weakest_assumption: property event '" + e + "' outside module and interface");
    Alphabet ia;
    for (const auto& e : m.interface) {
        if (!ma.contains(e) && !property.alphabet.contains(e))
            throw Error("weakest_assumption: interface event '" + e + "' not declared");
        ia.add(e, attributes(e, ma, property.alphabet));
    }
    Automaton out(ia);
    if (m.automaton.empty()) {
        out.add_state("top");
        for (const auto& e : m.interface) out.add_transition(0, e, 0);
        return out;
    }

    Automaton cp = completion(retag(property, ma));
    Product h = compose_tracked(m.automaton, cp);
    const Automaton& ha = h.automaton;
    int n = static_cast<int>(ha.size());

    // Error spreads backwards over moves the environment cannot see.
    std::vector<std::vector<int>> hidden_pred(n);
    std::vector<char> bad(n, 0);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s) {
        if (h.pairs[s].second == *cp.error_state) {
            bad[s] = 1;
            queue.push_back(s);
        }
        for (const auto& [e, d] : ha.out(s))
            if (!m.interface.count(e)) hidden_pred[d].push_back(s);
    }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int p : hidden_pred[s])
            if (!bad[p]) {
                bad[p] = 1;
                queue.push_back(p);
            }
    }

    EventSet keep;
    for (const auto& e : m.interface)
        if (ha.alphabet.contains(e)) keep.insert(e);
    Observer obs = observer(ha, keep);
    const Automaton& oa = obs.automaton;
    auto is_bad = [&](int q) {
        return std::any_of(obs.members[q].begin(), obs.members[q].end(), [&](int s) { return bad[s]; });
    };
    if (is_bad(oa.initial())) return out;

    std::vector<int> map(oa.size(), -1);
    for (int q = 0; q < static_cast<int>(oa.size()); ++q)
        if (!is_bad(q)) map[q] = out.add_state(oa.name(q));
    out.set_initial(map[oa.initial()]);
    int top = -1;
    auto sink = [&]() {
        if (top < 0) {
            std::string name = "top";
            while (out.has_state(name)) name += "'";
            top = out.add_state(name);
            for (const auto& e : m.interface) out.add_transition(top, e, top);
        }
        return top;
    };
    for (int q = 0; q < static_cast<int>(oa.size()); ++q) {
        if (map[q] < 0) continue;
        for (const auto& e : m.interface) {
            if (!keep.count(e)) {
                out.add_transition(map[q], e, map[q]);
                continue;
            }
            int d = oa.step(q, e);
            if (d < 0)
                out.add_transition(map[q], e, sink());
            else if (map[d] >= 0)
                out.add_transition(map[q], e, map[d]);
        }
    }
    return accessible(out);
}

Verdict check_symn(const std::vector<Automaton>& assumptions, const Automaton& property) {
    if (assumptions.empty()) throw Error("check_symn needs at least one assumption");
    std::vector<Automaton> parts;
    Alphabet seen;
    for (const auto& a : assumptions) {
        parts.push_back(complement(a));
        for (const auto& [e, ev] : a.alphabet) seen.add(e, ev);
    }
    Alphabet free;
    for (const auto& [e, ev] : property.alphabet)
        if (!seen.contains(e)) free.add(e, ev);
    if (!free.empty()) parts.push_back(universal(free));
    return marked_inclusion(compose_all(parts), property);
}

AGCheck check_assume_guarantee(const std::vector<Automaton>& modules, const Automaton& property, bool with_direct) {
    AGCheck out;
    for (const auto& m : make_modules(modules, property)) out.assumptions.push_back(weakest_assumption(m, property));
    out.symn = check_symn(out.assumptions, property);
    if (with_direct) out.direct = satisfies(compose_all(modules), property);
    return out;
}

AGCheck check_post_fault_coordination(const std::vector<Automaton>& nominal_modules, int faulty,
                                      const Automaton& faulty_module, const Automaton& property) {
    if (faulty < 0 || faulty >= static_cast<int>(nominal_modules.size())) throw Error("faulty index out of range");
    std::vector<Automaton> modules = nominal_modules;
    modules[faulty] = faulty_module;
    return check_assume_guarantee(modules, property);
}

AGCheck check_coordination_existence(const std::vector<Automaton>& infimal_modules, const Automaton& property) {
    return check_assume_guarantee(infimal_modules, property);
}

Automaton faulty_module(const Automaton& staged, const Alphabet& nominal) {
    Automaton view = occurrence_view(staged);
    EventSet keep;
    for (const auto& [e, ev] : view.alphabet)
        if (nominal.contains(e)) keep.insert(e);
    if (keep.size() != view.alphabet.size()) view = project(view, keep);
    Automaton out(nominal);
    for (int s = 0; s < static_cast<int>(view.size()); ++s) out.add_state(view.name(s), view.is_marked(s));
    if (!view.empty()) out.set_initial(view.initial());
    for (int s = 0; s < static_cast<int>(view.size()); ++s)
        for (const auto& [e, d] : view.out(s)) out.add_transition(s, e, d);
    return out;
}

std::size_t total_states(const std::vector<Automaton>& modules) {
    std::size_t n = 0;
    for (const auto& m : modules) n += m.size();
    return n;
}

// ---------------------------------------------------------------- SYN-CO

Automaton delete_string(const Automaton& m, const Trace& s) {
    if (s.empty()) return Automaton(m.alphabet);
    if (!m.generates(s)) return m;
    // Prefix tracker: state k has read s[0..k), "off" has left s for good.
    Automaton t(m.alphabet);
    for (std::size_t k = 0; k < s.size(); ++k) t.add_state("k" + std::to_string(k));
    int off = t.add_state("off");
    t.set_initial(0);
    for (const auto& e : m.alphabet.names()) {
        t.add_transition(off, e, off);
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (e != s[k])
                t.add_transition(static_cast<int>(k), e, off);
            else if (k + 1 < s.size())
                t.add_transition(static_cast<int>(k), e, static_cast<int>(k + 1));
        }
    }
    Product p = compose_tracked(m, t);
    for (int q = 0; q < static_cast<int>(p.automaton.size()); ++q)
        p.automaton.set_marked(q, m.is_marked(p.pairs[q].first));
    return p.automaton;
}

namespace {

bool is_trivial_module(const Automaton& m) { return m.size() <= 1 && m.transition_count() == 0; }

}  // namespace

SynCoResult syn_co(const CoordinationInput& in, const Automaton& property, int max_iterations) {
    const std::size_t n = in.plants.size();
    if (in.nominal.size() != n) throw Error("syn_co: one nominal supervisor per plant required");
    if (in.faulty < 0 || in.faulty >= static_cast<int>(n)) throw Error("syn_co: faulty index out of range");
    const std::size_t fi = static_cast<std::size_t>(in.faulty);
    const Alphabet& fa = in.plants[fi].alphabet;
    const Automaton& staged = in.staged;

    SynCoResult res;
    std::vector<Automaton> modules(n);
    for (std::size_t j = 0; j < n; ++j)
        modules[j] = j == fi ? faulty_module(staged, fa) : closed_loop(in.nominal[j], in.plants[j]);

    AGCheck check = check_assume_guarantee(modules, property, false);
    if (check.symn) {
        res.verdict = "holds";
        for (std::size_t j = 0; j < n; ++j)
            res.supervisors.push_back(identity_supervisor(j == fi ? staged.alphabet : in.plants[j].alphabet));
        res.modules = modules;
        res.state_counts.push_back(total_states(modules));
        res.final_holds = true;
        return res;
    }

    // Nominal subsystems restart from their bare plants.
    for (std::size_t j = 0; j < n; ++j)
        if (j != fi) modules[j] = in.plants[j];
    for (std::size_t j = 0; j < n; ++j)
        res.supervisors.push_back(identity_supervisor(j == fi ? staged.alphabet : in.plants[j].alphabet));
    check = check_assume_guarantee(modules, property, false);

    while (!check.symn) {
        res.state_counts.push_back(total_states(modules));
        if (res.iterations >= max_iterations) {
            res.verdict = "failed";
            res.notes.push_back("iteration limit reached");
            res.modules = modules;
            return res;
        }
        ++res.iterations;
        Trace c = check.symn.witness;
        bool genuine = true;
        for (std::size_t j = 0; j < n; ++j)
            if (!modules[j].generates(project_trace(c, modules[j].alphabet.names()))) genuine = false;
        if (!genuine) {
            Verdict direct = satisfies(compose_all(modules), property);
            if (direct) {
                res.verdict = "failed";
                res.notes.push_back("assume-guarantee check rejects a composition that satisfies the property");
                res.modules = modules;
                return res;
            }
            res.notes.push_back("counterexample " + to_string(c) + " not generated by the modules; using " +
                                to_string(direct.witness));
            c = direct.witness;
        }
        res.counterexamples.push_back(c);

        std::vector<Automaton> next(n);
        for (std::size_t j = 0; j < n; ++j) {
            Trace pc = project_trace(c, modules[j].alphabet.names());
            Automaton spec = delete_string(modules[j], pc);
            if (j == fi) {
                Automaton k = lift_occurrence(spec, staged.alphabet);
                Supervisor s = supremal_supervisor(staged, k, staged.alphabet.uncontrollable(),
                                                   staged.alphabet.observable());
                next[j] = faulty_module(closed_loop(s, staged), fa);
                res.supervisors[j] = s;
            } else {
                Supervisor s = supremal_supervisor(in.plants[j], spec);
                next[j] = closed_loop(s, in.plants[j]);
                res.supervisors[j] = s;
            }
        }
        modules = next;
        if (std::all_of(modules.begin(), modules.end(), is_trivial_module)) {
            res.state_counts.push_back(total_states(modules));
            res.verdict = "tolerable-only";
            res.notes.push_back("refinement reached the trivial solution; keeping the pre-refinement supervisors");
            res.supervisors.clear();
            for (std::size_t j = 0; j < n; ++j) res.supervisors.push_back(j == fi ? in.faulty_supervisor : in.nominal[j]);
            res.modules.clear();
            for (std::size_t j = 0; j < n; ++j)
                res.modules.push_back(j == fi ? faulty_module(staged, fa) : closed_loop(in.nominal[j], in.plants[j]));
            res.final_holds = static_cast<bool>(satisfies(compose_all(res.modules), property));
            return res;
        }
        check = check_assume_guarantee(modules, property, false);
    }
    res.state_counts.push_back(total_states(modules));
    res.verdict = "coordinated";
    res.modules = modules;
    res.final_holds = static_cast<bool>(satisfies(compose_all(modules), property));
    return res;
}

}  // namespace descc
