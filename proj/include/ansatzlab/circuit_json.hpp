#pragma once

#include <string>

#include <json.hpp>

#include "ansatzlab/circuit.hpp"

namespace ansatzlab {

using json = nlohmann::json;

inline json circuit_to_json(const Circuit& c) {
    json gates = json::array();
    for (const Gate& g : c.gates) {
        json jg;
        jg["kind"] = gate_kind_name(g.kind);
        jg["qubits"] = g.qubits;
        if (is_rotation(g.kind)) {
            json terms = json::object();
            for (const auto& [id, coeff] : g.expr.terms) terms[std::to_string(id)] = coeff;
            jg["expr"] = {{"terms", terms}, {"const_half_pi", g.expr.const_half_pi}};
        }
        gates.push_back(std::move(jg));
    }
    return json{{"n_qubits", c.n_qubits}, {"params", c.raw_param_count}, {"gates", gates}};
}

/// Canonical form: nlohmann's sorted-key compact dump.
inline std::string serialize_circuit(const Circuit& c) { return circuit_to_json(c).dump(); }

inline Circuit circuit_from_json(const json& j) {
    auto require = [&](const json& o, const char* field) -> const json& {
        auto it = o.find(field);
        if (it == o.end()) fail(ErrorKind::ParseError, std::string("missing field \"") + field + "\"");
        return *it;
    };

    Circuit c;
    c.n_qubits = require(j, "n_qubits").get<int>();
    c.raw_param_count = require(j, "params").get<int>();
    for (const json& jg : require(j, "gates")) {
        Gate g;
        const std::string kind = require(jg, "kind").get<std::string>();
        if (kind == "RX") g.kind = GateKind::RX;
        else if (kind == "RY") g.kind = GateKind::RY;
        else if (kind == "RZ") g.kind = GateKind::RZ;
        else if (kind == "X") g.kind = GateKind::X;
        else if (kind == "CX") g.kind = GateKind::CX;
        else fail(ErrorKind::ParseError, "unknown gate kind \"" + kind + "\"");
        g.qubits = require(jg, "qubits").get<std::vector<int>>();
        if (is_rotation(g.kind)) {
            const json& je = require(jg, "expr");
            for (auto it = require(je, "terms").begin(); it != require(je, "terms").end(); ++it) {
                int id = 0;
                try {
                    id = std::stoi(it.key());
                } catch (...) {
                    fail(ErrorKind::ParseError, "expr term key \"" + it.key() + "\" is not a parameter id");
                }
                g.expr.add_term(id, it.value().get<int>());
            }
            g.expr.const_half_pi = require(je, "const_half_pi").get<int>();
        } else if (jg.contains("expr")) {
            fail(ErrorKind::ParseError, "gate kind \"" + kind + "\" must not carry an expr");
        }
        c.gates.push_back(std::move(g));
    }
    try {
        c.validate();
    } catch (const Error& e) {
        fail(ErrorKind::ParseError, e.what());
    }
    return c;
}

inline Circuit deserialize_circuit(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ParseError, e.what());
    }
    return circuit_from_json(j);
}

}  // namespace ansatzlab
