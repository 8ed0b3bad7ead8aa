#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gradflow/grid.hpp"
#include "gradflow/spectral.hpp"

namespace gradflow {

/// The quadratized unknown Psi = (Phi-fields, q-field). All components share
/// one grid. The four bundled models have a single Phi component; the list is
/// kept for forward compatibility.
struct QuadState {
    std::vector<Field> phi;
    Field q;

    const Grid2D& grid() const { return q.grid(); }
    int components() const { return static_cast<int>(phi.size()); }

    QuadState& operator+=(const QuadState& o);
    QuadState& operator-=(const QuadState& o);
    QuadState& operator*=(double s);
    QuadState& add_scaled(double a, const QuadState& o);

    friend QuadState operator+(QuadState a, const QuadState& b) { return a += b; }
    friend QuadState operator-(QuadState a, const QuadState& b) { return a -= b; }
    friend QuadState operator*(double s, QuadState a) { return a *= s; }
};

QuadState zeros_like(const QuadState& s);
/// Sum of component-wise inner_h over Phi-fields and q.
double inner(const QuadState& a, const QuadState& b);
double max_abs(const QuadState& s);
bool all_finite(const QuadState& s);

/// Mobility G: either a constant negative scalar (-lambda) or the symbol
/// lambda*Delta_h. Negative semi-definite by construction.
class Mobility {
public:
    static Mobility scalar(double value);
    static Mobility symbol(SpectralSymbol sym);

    bool is_scalar() const { return is_scalar_; }
    double scalar_value() const { return scalar_; }
    const SpectralSymbol& sym() const { return sym_; }

    Field apply(const Field& f) const;
    /// Per-mode multiplier g(m) as a flat array (scalar expands to a constant).
    std::vector<double> mode_values(const Grid2D& g) const;

private:
    bool is_scalar_ = true;
    double scalar_ = 0.0;
    SpectralSymbol sym_;
};

enum class CouplingKind {
    None,      ///< C = (I, 0): the q-equation decouples (test surrogates)
    Pointwise, ///< q = g(phi): C = (I, dg/dphi .)
    Gradient,  ///< q = g(grad phi): C = (I, -div(. grad(phi_bar)) form (MBE)
};

/// A model instance in quadratized form: d/dt Psi = N(Psi) B Psi with
/// N(Psi) = C*(Psi) G C(Psi) and B = diag(L, 1).
struct QuadSystem {
    std::string name;
    Grid2D grid;
    SpectralSymbol L;          ///< self-adjoint, positive definite symbol
    bool L_null_mean = false;  ///< true when L vanishes on the mean mode (MBE)
    Mobility G;
    double A_const = 0.0;
    CouplingKind coupling = CouplingKind::None;
    /// Pointwise coupling factor dg/dphi evaluated at a frozen phi
    /// (sqrt(2)*phi for the double-well models). Unused for Gradient coupling.
    std::function<Field(const Field&)> dg_dphi;
    /// Model's closed-form q = g(phi) used for initialization and drift checks.
    std::function<Field(const Field&)> q_init;
    std::function<double(const Field&)> original_energy;
};

/// Checks the structural invariants (L > 0 modulo the null-mean flag,
/// G <= 0, finite A). Throws std::invalid_argument on violation.
void validate(const QuadSystem& sys);

/// Coupling operators of C(Psi_bar) frozen at a state: K maps the q-slot into
/// the phi-equation, Kstar is its inner_h-adjoint.
class FrozenCoupling {
public:
    FrozenCoupling(const QuadSystem& sys, const Field& phi_frozen);

    CouplingKind kind() const { return kind_; }
    Field apply_K(const Field& vq) const;
    Field apply_Kstar(const Field& w) const;
    Field apply_KKstar(const Field& x) const;

    /// Constant shift proxy for K K*: mid-range of the pointwise factor
    /// squared (Pointwise), or sup |grad phi_bar|^2 scaling a -Delta shift
    /// (Gradient). Used by the implicit solvers' preconditioners.
    double shift() const { return shift_; }

private:
    CouplingKind kind_ = CouplingKind::None;
    Grid2D grid_;
    Field c_;        // pointwise factor
    Field ax_, ay_;  // gradient factor components
    double shift_ = 0.0;
};

QuadState apply_B(const QuadSystem& sys, const QuadState& v);
QuadState apply_N(const QuadSystem& sys, const FrozenCoupling& fc, const QuadState& v);
QuadState apply_N(const QuadSystem& sys, const QuadState& frozen, const QuadState& v);
/// Constant-coefficient part: N1 v = (G v_phi, 0).
QuadState apply_N1(const QuadSystem& sys, const QuadState& v);
/// State-dependent remainder, N2 = N - N1 (exact operator identity).
QuadState apply_N2(const QuadSystem& sys, const FrozenCoupling& fc, const QuadState& v);
QuadState apply_N2(const QuadSystem& sys, const QuadState& frozen, const QuadState& v);

/// F = 1/2 (Psi, B Psi)_h - A.
double energy_quadratized(const QuadSystem& sys, const QuadState& psi);

Field init_q(const QuadSystem& sys, const Field& phi);
/// Bundles phi with its exact q = q_init(phi).
QuadState make_state(const QuadSystem& sys, Field phi);

} // namespace gradflow
