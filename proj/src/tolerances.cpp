#include "helm1d/tolerances.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace helm1d {

const Tolerances& Tolerances::defaults() {
    static const Tolerances t{};
    return t;
}

Tolerances Tolerances::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("tolerance file not readable: " + path);
    nlohmann::json j;
    in >> j;
    if (!j.is_object()) throw std::runtime_error("tolerance file must hold a JSON object");

    Tolerances t;
    for (const auto& [key, value] : j.items()) {
        if (key == "omega_floor")
            t.omega_floor = value.get<double>();
        else if (key == "mesh_snap")
            t.mesh_snap = value.get<double>();
        else if (key == "effectively_resonant")
            t.effectively_resonant = value.get<double>();
        else if (key == "sigma_unit")
            t.sigma_unit = value.get<double>();
        else if (key == "log_product_threshold")
            t.log_product_threshold = value.get<std::size_t>();
        else if (key == "phase_split_scale")
            t.phase_split_scale = value.get<double>();
        else if (key == "eps_margin")
            t.eps_margin = value.get<double>();
        else
            throw std::runtime_error("unknown tolerance key: " + key);
    }
    return t;
}

Tolerances Tolerances::from_environment() {
    const char* path = std::getenv("HELM1D_TOL_FILE");
    if (path == nullptr || *path == '\0') return defaults();
    return from_json_file(path);
}

}  // namespace helm1d
