#include "djcm/presets.hpp"

namespace djcm::presets {

ModelParams base() {
    ModelParams p;
    p.omega_cavity = 0.2;
    p.omega_levels = {0.3, 0.4, 0.5};
    p.sector_n = 1;
    return p;
}

std::array<ModelParams, 3> figure_rows() {
    auto make = [](double omega_e, double g1, double g2, double chi) {
        ModelParams p = base();
        p.omega_e = omega_e;
        p.g1 = g1;
        p.g2 = g2;
        p.deformation = chi > 0.0 ? Deformation::kerr(chi) : Deformation::identity();
        return p;
    };
    return {make(0.04, 0.04, 0.06, 0.0), make(0.04, 0.06, 0.08, 0.2), make(0.08, 0.06, 0.08, 0.2)};
}

}  // namespace djcm::presets
