#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradflow/eq_core.hpp"

namespace gradflow {

/// Coefficients (A, b, c) of an s-stage Runge-Kutta / collocation method.
struct ButcherTableau {
    int s = 0;
    std::vector<double> A; ///< row-major s*s
    std::vector<double> b;
    std::vector<double> c;
    double a(int i, int j) const { return A[static_cast<std::size_t>(i) * s + j]; }
};

/// Gauss-Legendre collocation tableau, s in 1..3 (order 2s). Nodes are the
/// zeros of the s-th shifted Legendre polynomial; A and b come from
/// integrating the Lagrange basis at the nodes.
ButcherTableau gauss_tableau(int s);

/// Backward differentiation coefficients: lambda (size k+1, newest level
/// first) scaled so the scheme reads (1/dt) sum_i lambda_i Psi^{n+1-i} = RHS,
/// and the order-matched extrapolation weights (size k, newest first).
struct BdfCoeffs {
    int k = 0;
    std::vector<double> lambda;
    std::vector<double> extrap;
};
BdfCoeffs bdf_coeffs(int k); // k in 1..6

enum class Scheme { Lcn, Icn, Lbdf2, Ibdf2, Bdfk, Gauss };
std::string scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);

struct StepperConfig {
    Scheme scheme = Scheme::Icn;
    int order_or_stages = 2; ///< k for Bdfk, s for Gauss; ignored otherwise
    double dt = 0.0;
    int predictor_case = 3;      ///< 1..3; Lcn/Lbdf2 always use case 1
    int max_corrector_iters = 5; ///< predictor iteration cap N
    double eps0 = 1e-12;         ///< predictor stopping tolerance
    double eps_stage = 1e-12;    ///< stage fixed-point tolerance
    int max_stage_iters = 200;
    double eps_lin = 1e-12; ///< implicit-linear residual tolerance
    int max_lin_iters = 400;
};
void validate(const StepperConfig& cfg);

/// Raised when an implicit solve or stage iteration fails to reach its
/// tolerance. Carries the last residual (or increment) observed.
struct SolveFailure : std::runtime_error {
    SolveFailure(const std::string& what, double residual_, int iters_)
        : std::runtime_error(what), residual(residual_), iters(iters_) {}
    double residual = 0.0;
    int iters = 0;
};

/// Solves x = rhs + theta * N(frozen) B x to the eps_lin residual contract
/// ||x - rhs - theta N B x||_inf <= eps_lin (1 + ||rhs||_inf).
/// The q-row is eliminated exactly through the coupling identity, leaving a
/// scalar variable-coefficient system handled by an FFT-preconditioned
/// stationary iteration; the preconditioner carries a constant bound of the
/// frozen coupling so the iteration contracts uniformly in theta.
QuadState solve_implicit(const QuadSystem& sys, const FrozenCoupling& fc,
                         double theta, const QuadState& rhs,
                         const StepperConfig& cfg);
QuadState solve_implicit(const QuadSystem& sys, const QuadState& frozen,
                         double theta, const QuadState& rhs,
                         const StepperConfig& cfg);

/// Time levels, oldest first, newest at back().
struct History {
    std::vector<QuadState> levels;
    const QuadState& newest() const { return levels.back(); }
};

/// Number of levels the scheme consumes per step.
int levels_needed(const StepperConfig& cfg);

/// Prediction-correction CN step (LCN for predictor case 1, ICN for case 3).
QuadState step_cn_pc(const QuadSystem& sys, const History& hist,
                     const StepperConfig& cfg);
/// Prediction-correction BDF2 step (LBDF2 / IBDF2).
QuadState step_bdf2_pc(const QuadSystem& sys, const History& hist,
                       const StepperConfig& cfg);
/// BDF-k with matched extrapolation of the frozen coefficients.
QuadState step_bdfk(const QuadSystem& sys, const History& hist,
                    const StepperConfig& cfg);
/// s-stage Gauss collocation step; stage equations solved by fixed-point
/// iteration with the constant part implicit (per-mode s x s solves).
QuadState step_gauss(const QuadSystem& sys, const History& hist,
                     const StepperConfig& cfg);

/// Produces the levels the scheme needs: identity for self-starting schemes,
/// the CN-corrected first step for two-level schemes, and a Gauss bootstrap
/// of matching order for BDF-k with k >= 3.
History startup(const QuadSystem& sys, const QuadState& psi0,
                const StepperConfig& cfg);

/// One step: dispatches on cfg.scheme, appends the new level, trims history.
const QuadState& advance(const QuadSystem& sys, History& hist,
                         const StepperConfig& cfg);

/// Runs n_steps uniform steps from psi0. on_level(n, state) fires for every
/// level including n = 0; level n sits at time n*dt.
void integrate(const QuadSystem& sys, const StepperConfig& cfg,
               const QuadState& psi0, int n_steps,
               const std::function<void(int, const QuadState&)>& on_level);

/// Generic dense implicit-RK step via explicit fixed-point iteration on the
/// stage equations (k_i = f(y + dt sum_j a_ij k_j)). Small-system oracle for
/// tests and tableau checks; converges when dt * Lip(f) * ||A|| < 1.
std::vector<double> rk_step_fixed_point(
    const ButcherTableau& tab, double dt, std::span<const double> y,
    const std::function<std::vector<double>(std::span<const double>)>& f,
    double tol = 1e-14, int max_iters = 1000);

} // namespace gradflow
