#pragma once

#include <array>

#include "djcm/model.hpp"

namespace djcm::presets {

// Shared by every figure: Omega = 0.2, omega = (0.3, 0.4, 0.5), n = 1.
ModelParams base();

// Row 1: Omega_e = 0.04, g1 = 0.04, g2 = 0.06, chi = 0
// Row 2: Omega_e = 0.04, g1 = 0.06, g2 = 0.08, chi = 0.2
// Row 3: Omega_e = 0.08, g1 = 0.06, g2 = 0.08, chi = 0.2
std::array<ModelParams, 3> figure_rows();

inline constexpr double kFigureTauMax = 50.0;
inline constexpr int kFigureSamples = 2000;

}  // namespace djcm::presets
