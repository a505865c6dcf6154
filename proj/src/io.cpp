#include "descc/io.hpp"

#include <fstream>
#include <sstream>

namespace descc {

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw Error(where + ": unknown key '" + k + "'");
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(where + ": missing key '" + std::string(key) + "'");
    return *it;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

json to_json(const Automaton& a) {
    json doc;
    doc["format"] = kFormat;
    json alpha = json::array();
    for (const auto& [e, ev] : a.alphabet)
        alpha.push_back({{"name", e}, {"controllable", ev.controllable}, {"observable", ev.observable},
                         {"owners", ev.owners}});
    doc["alphabet"] = alpha;
    doc["states"] = a.names();
    doc["initial"] = a.empty() ? json(nullptr) : json(a.name(a.initial()));
    json marked = json::array();
    for (int s = 0; s < static_cast<int>(a.size()); ++s)
        if (a.is_marked(s)) marked.push_back(a.name(s));
    doc["marked"] = marked;
    json tr = json::array();
    for (int s = 0; s < static_cast<int>(a.size()); ++s)
        for (const auto& [e, d] : a.out(s)) tr.push_back({a.name(s), e, a.name(d)});
    doc["transitions"] = tr;
    return doc;
}

Automaton automaton_from_json(const json& doc) {
    const std::string where = "automaton";
    if (!doc.is_object()) throw Error(where + ": expected an object");
    reject_unknown(doc, {"format", "alphabet", "states", "initial", "marked", "transitions"}, where);
    if (doc.contains("format") && doc["format"] != kFormat)
        throw Error(where + ": unsupported format " + doc["format"].dump());
    Alphabet alpha;
    for (const auto& e : require(doc, "alphabet", where)) {
        if (e.is_string()) {
            alpha.add(e.get<std::string>(), true, true);
            continue;
        }
        reject_unknown(e, {"name", "controllable", "observable", "owners"}, where + " alphabet entry");
        std::string name = require(e, "name", where).get<std::string>();
        if (name.empty()) throw Error(where + ": empty event name");
        if (alpha.contains(name)) throw Error(where + ": duplicate event '" + name + "'");
        alpha.add(name, e.value("controllable", true), e.value("observable", true),
                  e.value("owners", std::set<int>{}));
    }
    Automaton a(alpha);
    const json& states = require(doc, "states", where);
    for (const auto& s : states) {
        std::string name = s.get<std::string>();
        if (a.has_state(name)) throw Error(where + ": duplicate state '" + name + "'");
        a.add_state(name, !doc.contains("marked"));
    }
    if (!a.empty()) {
        const json& init = require(doc, "initial", where);
        a.set_initial(a.state(init.get<std::string>()));
    }
    if (doc.contains("marked"))
        for (const auto& s : doc["marked"]) a.set_marked(a.state(s.get<std::string>()), true);
    for (const auto& t : require(doc, "transitions", where)) {
        if (!t.is_array() || t.size() != 3) throw Error(where + ": transition must be [src, event, dst]");
        a.add_transition(t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>());
    }
    return a;
}

json bank_to_json(const std::map<std::string, Supervisor>& bank) {
    json doc;
    doc["format"] = kFormat;
    json entries = json::object();
    for (const auto& [k, s] : bank) {
        json e = to_json(s.realization);
        e.erase("format");
        entries[k] = e;
    }
    doc["bank"] = entries;
    return doc;
}

json diagnoser_to_json(const Diagnoser& diag) { return to_json(diag.automaton); }

json trace_to_json(const Trace& t) { return json(t); }

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

Automaton load_automaton(const std::string& path) {
    try {
        return automaton_from_json(read_json(path));
    } catch (const json::exception& e) {
        throw Error(path + ": " + e.what());
    }
}

std::string to_dot(const Automaton& a, const std::string& title) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(title) << "\" {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (int s = 0; s < static_cast<int>(a.size()); ++s)
        os << "  n" << s << " [label=\"" << dot_escape(a.name(s)) << "\", shape="
           << (a.is_marked(s) ? "doublecircle" : "circle") << "];\n";
    if (!a.empty()) os << "  __start -> n" << a.initial() << ";\n";
    for (int s = 0; s < static_cast<int>(a.size()); ++s)
        for (const auto& [e, d] : a.out(s)) {
            const Event& ev = a.alphabet.at(e);
            os << "  n" << s << " -> n" << d << " [label=\"" << dot_escape(e) << "\"";
            if (!ev.controllable) os << ", style=dashed";
            if (!ev.observable) os << ", color=gray";
            os << "];\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace descc
