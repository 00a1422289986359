#pragma once

namespace qenc {

/// Numerical tolerances shared by every module. A single record so that a
/// run can be reproduced from its configuration alone.
struct Tolerances {
  double norm = 1e-10;              // |‖ψ‖ - 1| for a valid state
  double hermiticity = 1e-12;       // max |H - H†|
  double unitarity = 1e-10;         // max |U†U - I|
  double distribution_sum = 1e-10;  // silent renormalization window
  double decomposition = 1e-9;      // spectral reconstruction, relative
  double degeneracy = 1e-10;        // gaps below this are reported as 0
  double curvature_floor = 1e-12;   // Trotter errors below this are noise
  double sign_lock = 1e-9;          // radians
  double resonance = 1e-3;          // energy units
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace qenc
