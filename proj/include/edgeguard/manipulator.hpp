#pragma once

#include "edgeguard/family.hpp"

namespace edgeguard {

/// Closed loop of a two-link planar manipulator under PID-type control:
///
///   det( B(s)·A + D(s) ),  A = [[1, 0], [2, 1]],  C = I,  n_deg = 3,
///   B = [[s³, b12·s³], [b21·s³, s³]],  b12 ∈ [1, 2],  b21 ∈ [−1, 0],
///   D_ij = kd_ij·s² + kp_ij·s + kr_ij, every gain within ±ε·100% of nominal.
///
/// B is fixed in ε; every D coefficient is scaled with spread equal to its
/// nominal value.
ScaledFamily manipulator_template();

/// manipulator_template().at(epsilon); throws std::invalid_argument unless
/// 0 ≤ epsilon ≤ 1.
UncertainFamily manipulator_family(double epsilon);

}  // namespace edgeguard
