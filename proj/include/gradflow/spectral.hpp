#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "gradflow/grid.hpp"

namespace gradflow {

// Transform convention, fixed so symbols are unambiguous: the forward DFT is
// unnormalized, the inverse carries the 1/(Nx*Ny) factor. Mode (m1, m2) is
// stored at flat index i2*Nx + i1 with m = i for i <= N/2 and m = i - N
// otherwise (so index N/2 is the Nyquist mode).
namespace fft {

/// Signed mode number for flat index i on an N-point direction.
inline int mode_of(int i, int N) { return i <= N / 2 ? i : i - N; }

void forward(const Grid2D& g, std::span<const double> real_in,
             std::span<std::complex<double>> modes_out);
void inverse(const Grid2D& g, std::span<const std::complex<double>> modes_in,
             std::span<double> real_out);

std::vector<std::complex<double>> forward(const Field& f);
Field inverse(const Grid2D& g, std::span<const std::complex<double>> modes);

} // namespace fft

/// Diagonal Fourier-space multiplier, one real value per mode. Parity::Imag
/// means the actual multiplier is i*value (odd-order derivatives). Symbols of
/// even-order derivatives are Parity::Real and self-adjoint under inner_h;
/// odd-order symbols carry a zero at the Nyquist modes, the unique choice
/// that keeps first derivatives skew-adjoint and real-valued.
class SpectralSymbol {
public:
    enum class Parity { Real, Imag };

    SpectralSymbol() = default;

    static SpectralSymbol constant(const Grid2D& g, double c);
    static SpectralSymbol identity(const Grid2D& g) { return constant(g, 1.0); }
    /// Symbol of Delta_h (value -|k|^2 per mode).
    static SpectralSymbol laplacian(const Grid2D& g);
    /// Symbol of d^{s1}/dx^{s1} d^{s2}/dy^{s2}.
    static SpectralSymbol derivative(const Grid2D& g, int s1, int s2);
    /// Builds f(lap) per mode from the Laplacian symbol value lap = -|k|^2.
    /// Handy for operators that are polynomials in Delta.
    static SpectralSymbol of_laplacian(const Grid2D& g,
                                       const std::function<double(double)>& f);

    const Grid2D& grid() const { return grid_; }
    Parity parity() const { return parity_; }
    std::span<const double> values() const { return vals_; }
    std::span<double> values() { return vals_; }

    double min_value() const;
    double max_value() const;

    /// Composition (pointwise product of multipliers, with parity algebra).
    friend SpectralSymbol operator*(const SpectralSymbol& a, const SpectralSymbol& b);
    /// Sum / scaling for Real symbols (operator polynomials).
    friend SpectralSymbol operator+(SpectralSymbol a, const SpectralSymbol& b);
    friend SpectralSymbol operator*(double s, SpectralSymbol a);

private:
    SpectralSymbol(const Grid2D& g, Parity p)
        : grid_(g), parity_(p), vals_(g.size(), 0.0) {}

    Grid2D grid_;
    Parity parity_ = Parity::Real;
    std::vector<double> vals_;
};

/// Pseudospectral derivative of the trigonometric interpolant, sampled at
/// collocation points. Exact (to round-off) for resolvable trigonometric
/// polynomials.
Field deriv(const Field& f, int s1, int s2);

Field apply_symbol(const SpectralSymbol& sym, const Field& f);

enum class NullMode {
    Reject,     ///< a zero multiplier anywhere is an error
    ProjectOut, ///< zero-multiplier modes are projected out of the solution
};

/// Solves sym * x = rhs mode by mode. Real-parity symbols only.
Field solve_symbol(const SpectralSymbol& sym, const Field& rhs,
                   NullMode null_mode = NullMode::Reject);

} // namespace gradflow
