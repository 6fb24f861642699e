#pragma once

#include "solitonlab/functionals.hpp"

namespace soliton {

struct NewtonSettings {
    double residual_tol = 1e-10;  // sup norm over interior nodes
    int max_iters = 50;
    double damping = 1.0;  // initial step factor; halving line search
    double positivity_floor = 1e-12;
    // sup-norm trust region: conical runs at t = 1 are near the Lichnerowicz
    // equality and need capped steps along the soft θ_X direction
    double step_cap = 0.5;
    bool verbose = false;
};

// Scalar continuity equation at parameter t:
//   log(u_φ''/u0'') = H - t·beta_eff·φ - θ0 - c·φ'
// H is the effective log right-hand side (h0 for smooth twists, additionally
// -ν log(|s|²_H + ε²) for the regularized cone equation). The truncation is
// closed by Robin rows pinning the asymptotic slopes of log u''.
struct ContinuityProblem {
    RadialPotential base;
    Vec H;
    Vec theta0;
    double beta_eff = 1.0;
    double c = 0.0;
    double alpha_left = 1.0;
    double alpha_right = 1.0;

    static ContinuityProblem twisted(const RadialPotential& base, const TwistSpec& twist,
                                     const VectorFieldSpec& X);
    static ContinuityProblem conical(const RadialPotential& base, const TwistSpec& reg_twist,
                                     const VectorFieldSpec& X);
};

// Solver-side representation of the potential: φ = A + B·tanh(s/2) + ψ with ψ
// small at the edges. Nodal doubles of an O(1) potential cannot carry its own
// second derivative where u'' ~ e^{-s_max}; keeping the plateau part analytic
// removes that granularity floor from the Newton iteration.
struct SplitPotential {
    double A = 0.0, B = 0.0;
    Vec psi;

    static SplitPotential from_values(const Grid& g, const Vec& phi);
    static SplitPotential zero(const Grid& g);
    Vec values(const Grid& g) const;
    Vec d1(const Grid& g) const;
    Vec d2(const Grid& g) const;
};

// PDE residual at every node (one-sided stencils at the edges).
Vec residual(const ContinuityProblem& pr, const Vec& phi, double t);
Vec residual(const ContinuityProblem& pr, const SplitPotential& phi, double t);

// Action of the linearized operator Δ_{ω_φ}ψ + tβψ + X(ψ) on ψ (interior rows).
Vec apply_linearized(const ContinuityProblem& pr, const Vec& phi, double t, const Vec& psi);

// Volume gauge (3.3)-style: shifts φ so ∫ e^{H - tβφ} ω0 = V; identity at t = 0.
double volume_gauge_shift(const ContinuityProblem& pr, const Vec& phi, double t);

struct NewtonResult {
    Vec phi;
    SplitPotential split;
    int iterations = 0;
    bool converged = false;
    double residual_sup = 0.0;
    Vec residual_history;
};
NewtonResult newton_solve(const ContinuityProblem& pr, const SplitPotential& phi0, double t,
                          const NewtonSettings& settings = {});
NewtonResult newton_solve(const ContinuityProblem& pr, const Vec& phi0, double t,
                          const NewtonSettings& settings = {});

struct TraceStep {
    double t = 0.0;
    Vec phi;
    double residual_sup = 0.0;
    EnergyReport energies;
    double lambda1 = 0.0;
    double osc_phi = 0.0;
    double x_phi_sup = 0.0;
};

struct ContinuityTrace {
    std::vector<TraceStep> steps;
    Vec schedule;  // the t values attempted
    bool completed = false;
    double diverged_at = -1.0;  // < 0 when completed
};

// Warm-started homotopy over the schedule with adaptive bisection of failed
// steps down to Δt = 1e-4. Divergence is recorded, not thrown.
ContinuityTrace continuity_path(const RadialPotential& base, const TwistSpec& twist,
                                const VectorFieldSpec& X, const Vec& schedule,
                                const NewtonSettings& settings = {}, bool record_energies = true);

Vec default_schedule(int steps = 24, double t0 = 0.05);

struct FlowResult {
    Vec u1;                  // flow potential at the horizon, relative to the initial metric
    double sup_u1 = 0.0;
    double bound = 0.0;      // (e^β/β)·||h_init - θ_init||_C0
    double drive = 0.0;      // ||h_init - θ_init||_C0
    double holder_seminorm = 0.0;  // C^{0,1/2} seminorm of h_{ω1} - θ(ω1)
    int steps_taken = 0;
};
// Semi-implicit integration of ∂ω/∂t = -Ric(ω) + η + βω + L_Xω to `horizon`.
FlowResult flow_smooth(const RadialPotential& omega_init, double beta, const TwistSpec& twist,
                       const VectorFieldSpec& X, double horizon = 1.0, double dt = 1e-3);

struct RInvariantResult {
    double estimate = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    std::vector<std::pair<double, bool>> trials;  // (beta, solvable)
};
// Bisection on β of continuity-path solvability with η = (1-β)ω0.
RInvariantResult r_invariant(const RadialPotential& base, const VectorFieldSpec& X,
                             const NewtonSettings& settings = {}, double beta_tol = 0.01);

}  // namespace soliton
