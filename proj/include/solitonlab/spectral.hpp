#pragma once

#include "solitonlab/radial.hpp"

namespace soliton {

struct SpectralPair {
    double lambda1 = 0.0;
    Vec eigenfunction;  // B-normalized, orthogonal to constants
};

// First nonzero eigenvalue of -(Δ_ω + X) on S¹-invariant functions, i.e. of the
// weighted Sturm-Liouville form ∫ v'w' e^θ ds against ∫ vw e^θ ω. Single-grid
// value; Richardson extrapolation lives in the invariants layer.
SpectralPair lambda1_single_grid(const RadialPotential& u, const VectorFieldSpec& X);

}  // namespace soliton
