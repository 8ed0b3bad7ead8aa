#include "gradflow/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace gradflow {

namespace {

// FFTW plans are cached per grid size behind a mutex (plan creation is not
// thread-safe); execution uses the new-array interface on thread-local
// aligned buffers, so concurrent transforms on different fields are safe.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
    ~PlanPair() {
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
    }
};

struct AlignedBuf {
    fftw_complex* a = nullptr;
    fftw_complex* b = nullptr;
    std::size_t n = 0;
    void ensure(std::size_t want) {
        if (n >= want) return;
        if (a) fftw_free(a);
        if (b) fftw_free(b);
        a = fftw_alloc_complex(want);
        b = fftw_alloc_complex(want);
        n = want;
    }
    ~AlignedBuf() {
        if (a) fftw_free(a);
        if (b) fftw_free(b);
    }
};

const PlanPair& plans_for(int Nx, int Ny) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<PlanPair>> cache;
    std::scoped_lock lock(mu);
    auto& slot = cache[{Nx, Ny}];
    if (!slot) {
        auto p = std::make_unique<PlanPair>();
        const std::size_t n = static_cast<std::size_t>(Nx) * Ny;
        fftw_complex* a = fftw_alloc_complex(n);
        fftw_complex* b = fftw_alloc_complex(n);
        // FFTW's row-major layout: slow dimension first, so (Ny, Nx) matches
        // our k-major storage. FFTW_ESTIMATE keeps plan choice deterministic.
        p->fwd = fftw_plan_dft_2d(Ny, Nx, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
        p->inv = fftw_plan_dft_2d(Ny, Nx, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_free(a);
        fftw_free(b);
        slot = std::move(p);
    }
    return *slot;
}

AlignedBuf& local_buffers(std::size_t n) {
    thread_local AlignedBuf buf;
    buf.ensure(n);
    return buf;
}

} // namespace

namespace fft {

void forward(const Grid2D& g, std::span<const double> real_in,
             std::span<std::complex<double>> modes_out) {
    const std::size_t n = g.size();
    if (real_in.size() != n || modes_out.size() != n)
        throw std::invalid_argument("fft::forward: size mismatch");
    const PlanPair& p = plans_for(g.Nx, g.Ny);
    AlignedBuf& buf = local_buffers(n);
    for (std::size_t i = 0; i < n; ++i) {
        buf.a[i][0] = real_in[i];
        buf.a[i][1] = 0.0;
    }
    fftw_execute_dft(p.fwd, buf.a, buf.b);
    for (std::size_t i = 0; i < n; ++i)
        modes_out[i] = {buf.b[i][0], buf.b[i][1]};
}

void inverse(const Grid2D& g, std::span<const std::complex<double>> modes_in,
             std::span<double> real_out) {
    const std::size_t n = g.size();
    if (modes_in.size() != n || real_out.size() != n)
        throw std::invalid_argument("fft::inverse: size mismatch");
    const PlanPair& p = plans_for(g.Nx, g.Ny);
    AlignedBuf& buf = local_buffers(n);
    for (std::size_t i = 0; i < n; ++i) {
        buf.a[i][0] = modes_in[i].real();
        buf.a[i][1] = modes_in[i].imag();
    }
    fftw_execute_dft(p.inv, buf.a, buf.b);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        real_out[i] = buf.b[i][0] * scale;
}

std::vector<std::complex<double>> forward(const Field& f) {
    std::vector<std::complex<double>> out(f.grid().size());
    forward(f.grid(), f.values(), out);
    return out;
}

Field inverse(const Grid2D& g, std::span<const std::complex<double>> modes) {
    Field out(g);
    inverse(g, modes, out.values());
    return out;
}

} // namespace fft

SpectralSymbol SpectralSymbol::constant(const Grid2D& g, double c) {
    SpectralSymbol s(g, Parity::Real);
    for (double& v : s.vals_) v = c;
    return s;
}

SpectralSymbol SpectralSymbol::laplacian(const Grid2D& g) {
    SpectralSymbol s(g, Parity::Real);
    for (int i2 = 0; i2 < g.Ny; ++i2) {
        const double ky = fft::mode_of(i2, g.Ny) * g.mu_y;
        for (int i1 = 0; i1 < g.Nx; ++i1) {
            const double kx = fft::mode_of(i1, g.Nx) * g.mu_x;
            s.vals_[static_cast<std::size_t>(i2) * g.Nx + i1] = -(kx * kx + ky * ky);
        }
    }
    return s;
}

SpectralSymbol SpectralSymbol::derivative(const Grid2D& g, int s1, int s2) {
    if (s1 < 0 || s2 < 0)
        throw std::invalid_argument("SpectralSymbol::derivative: negative order");
    const bool odd = (s1 + s2) % 2 != 0;
    SpectralSymbol s(g, odd ? Parity::Imag : Parity::Real);
    // (i kx)^s1 (i ky)^s2 = i^(s1+s2) kx^s1 ky^s2; i^even collapses to +-1.
    // Nyquist modes of odd-order factors are zeroed (skew-adjoint convention).
    const int q = (s1 + s2) % 4;
    const double sign = (q == 2 || q == 3) ? -1.0 : 1.0;
    for (int i2 = 0; i2 < g.Ny; ++i2) {
        const int m2 = fft::mode_of(i2, g.Ny);
        const double ky = m2 * g.mu_y;
        const bool ny_nyq = (s2 % 2 != 0) && (i2 == g.Ny / 2);
        for (int i1 = 0; i1 < g.Nx; ++i1) {
            const int m1 = fft::mode_of(i1, g.Nx);
            const double kx = m1 * g.mu_x;
            const bool nx_nyq = (s1 % 2 != 0) && (i1 == g.Nx / 2);
            double v = 0.0;
            if (!nx_nyq && !ny_nyq)
                v = sign * std::pow(kx, s1) * std::pow(ky, s2);
            s.vals_[static_cast<std::size_t>(i2) * g.Nx + i1] = v;
        }
    }
    return s;
}

SpectralSymbol SpectralSymbol::of_laplacian(const Grid2D& g,
                                            const std::function<double(double)>& f) {
    SpectralSymbol s = laplacian(g);
    for (double& v : s.values()) v = f(v);
    return s;
}

double SpectralSymbol::min_value() const {
    double m = vals_.empty() ? 0.0 : vals_[0];
    for (double v : vals_) m = std::min(m, v);
    return m;
}

double SpectralSymbol::max_value() const {
    double m = vals_.empty() ? 0.0 : vals_[0];
    for (double v : vals_) m = std::max(m, v);
    return m;
}

SpectralSymbol operator*(const SpectralSymbol& a, const SpectralSymbol& b) {
    if (!(a.grid_ == b.grid_))
        throw std::invalid_argument("SpectralSymbol: grid mismatch in composition");
    SpectralSymbol out = a;
    const bool both_imag = a.parity_ == SpectralSymbol::Parity::Imag &&
                           b.parity_ == SpectralSymbol::Parity::Imag;
    const bool one_imag = (a.parity_ == SpectralSymbol::Parity::Imag) !=
                          (b.parity_ == SpectralSymbol::Parity::Imag);
    const double sign = both_imag ? -1.0 : 1.0; // i*i = -1
    for (std::size_t i = 0; i < out.vals_.size(); ++i)
        out.vals_[i] = sign * a.vals_[i] * b.vals_[i];
    out.parity_ = one_imag ? SpectralSymbol::Parity::Imag : SpectralSymbol::Parity::Real;
    return out;
}

SpectralSymbol operator+(SpectralSymbol a, const SpectralSymbol& b) {
    if (!(a.grid_ == b.grid_))
        throw std::invalid_argument("SpectralSymbol: grid mismatch in sum");
    if (a.parity_ != b.parity_)
        throw std::invalid_argument("SpectralSymbol: parity mismatch in sum");
    for (std::size_t i = 0; i < a.vals_.size(); ++i) a.vals_[i] += b.vals_[i];
    return a;
}

SpectralSymbol operator*(double s, SpectralSymbol a) {
    for (double& v : a.values()) v *= s;
    return a;
}

Field deriv(const Field& f, int s1, int s2) {
    if (s1 == 0 && s2 == 0) return f;
    return apply_symbol(SpectralSymbol::derivative(f.grid(), s1, s2), f);
}

Field apply_symbol(const SpectralSymbol& sym, const Field& f) {
    if (!(sym.grid() == f.grid()))
        throw std::invalid_argument("apply_symbol: grid mismatch");
    auto modes = fft::forward(f);
    auto v = sym.values();
    if (sym.parity() == SpectralSymbol::Parity::Real) {
        for (std::size_t i = 0; i < modes.size(); ++i) modes[i] *= v[i];
    } else {
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const std::complex<double> c = modes[i];
            modes[i] = {-c.imag() * v[i], c.real() * v[i]}; // multiply by i*v
        }
    }
    Field out = fft::inverse(f.grid(), modes);
    if (!all_finite(out))
        throw std::runtime_error("apply_symbol: non-finite result");
    return out;
}

Field solve_symbol(const SpectralSymbol& sym, const Field& rhs, NullMode null_mode) {
    if (!(sym.grid() == rhs.grid()))
        throw std::invalid_argument("solve_symbol: grid mismatch");
    if (sym.parity() != SpectralSymbol::Parity::Real)
        throw std::invalid_argument("solve_symbol: real-parity symbols only");
    auto v = sym.values();
    if (null_mode == NullMode::Reject) {
        for (double s : v)
            if (s == 0.0)
                throw std::invalid_argument(
                    "solve_symbol: singular symbol without a null-mode rule");
    }
    auto modes = fft::forward(rhs);
    for (std::size_t i = 0; i < modes.size(); ++i)
        modes[i] = v[i] == 0.0 ? std::complex<double>(0.0, 0.0) : modes[i] / v[i];
    Field out = fft::inverse(rhs.grid(), modes);
    if (!all_finite(out))
        throw std::runtime_error("solve_symbol: non-finite result");
    return out;
}

} // namespace gradflow
