#include "helm1d/config_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "helm1d/format.hpp"

namespace helm1d {

namespace {

cplx parse_pair(const nlohmann::json& j, const std::string& name) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::runtime_error(name + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> parse_numbers(const nlohmann::json& j, const std::string& name) {
    if (!j.is_array()) throw std::runtime_error(name + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw std::runtime_error(name + " must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

ProblemInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("instance file not readable: " + path);
    nlohmann::json j;
    in >> j;
    if (!j.is_object()) throw std::runtime_error("instance file must hold a JSON object");

    bool saw_omega = false, saw_mesh = false, saw_c = false, saw_g1 = false, saw_g2 = false;
    ProblemInstance inst;
    for (const auto& [key, value] : j.items()) {
        if (key == "omega") {
            if (!value.is_number()) throw std::runtime_error("omega must be a number");
            inst.omega = value.get<double>();
            saw_omega = true;
        } else if (key == "mesh") {
            inst.medium.mesh = parse_numbers(value, "mesh");
            saw_mesh = true;
        } else if (key == "c") {
            inst.medium.c = parse_numbers(value, "c");
            saw_c = true;
        } else if (key == "a") {
            inst.medium.a = parse_numbers(value, "a");
        } else if (key == "g1") {
            inst.g1 = parse_pair(value, "g1");
            saw_g1 = true;
        } else if (key == "g2") {
            inst.g2 = parse_pair(value, "g2");
            saw_g2 = true;
        } else if (key == "provenance") {
            if (!value.is_string()) throw std::runtime_error("provenance must be a string");
        } else {
            throw std::runtime_error("unknown instance key: " + key);
        }
    }
    if (!saw_omega) throw std::runtime_error("missing instance key: omega");
    if (!saw_mesh) throw std::runtime_error("missing instance key: mesh");
    if (!saw_c) throw std::runtime_error("missing instance key: c");
    if (!saw_g1) throw std::runtime_error("missing instance key: g1");
    if (!saw_g2) throw std::runtime_error("missing instance key: g2");

    if (inst.medium.mesh.size() < 2 || inst.medium.c.size() + 1 != inst.medium.mesh.size())
        throw std::runtime_error("c must have length |mesh| - 1");
    if (!inst.medium.a.empty() && inst.medium.a.size() != inst.medium.c.size())
        throw std::runtime_error("a must have the same length as c");
    return inst;
}

void save_instance(const ProblemInstance& instance, const std::string& path,
                   const std::string& provenance) {
    nlohmann::ordered_json j;
    j["omega"] = instance.omega;
    j["mesh"] = instance.medium.mesh;
    j["c"] = instance.medium.c;
    if (!instance.medium.a.empty()) j["a"] = instance.medium.a;
    j["g1"] = {instance.g1.real(), instance.g1.imag()};
    j["g2"] = {instance.g2.real(), instance.g2.imag()};
    if (!provenance.empty()) j["provenance"] = provenance;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace helm1d
