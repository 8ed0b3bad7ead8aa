#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace gradflow {

/// Uniform periodic grid on [0,Lx) x [0,Ly) with collocation points
/// x_j = j*hx, y_k = k*hy. Nx, Ny must be even (Fourier pseudospectral
/// convention); mu_x, mu_y are the fundamental wavenumbers 2*pi/L.
struct Grid2D {
    double Lx = 0.0, Ly = 0.0;
    int Nx = 0, Ny = 0;
    double hx = 0.0, hy = 0.0;
    double mu_x = 0.0, mu_y = 0.0;

    std::size_t size() const { return static_cast<std::size_t>(Nx) * Ny; }
    double area() const { return Lx * Ly; }
    double x(int j) const { return j * hx; }
    double y(int k) const { return k * hy; }

    bool operator==(const Grid2D&) const = default;
};

/// Validates and builds a grid. Nx, Ny must be even and >= 4, lengths positive.
Grid2D make_grid(double Lx, double Ly, int Nx, int Ny);

/// Real scalar grid function, one value per collocation point.
/// Storage is row-major with the x-index fastest: value (j,k) lives at
/// values()[k*Nx + j].
class Field {
public:
    Field() = default;
    explicit Field(const Grid2D& grid, double fill = 0.0);

    /// Samples f(x_j, y_k) at every collocation point. Rejects non-finite samples.
    static Field sample(const Grid2D& grid,
                        const std::function<double(double, double)>& f);

    const Grid2D& grid() const { return grid_; }
    int nx() const { return grid_.Nx; }
    int ny() const { return grid_.Ny; }
    bool empty() const { return vals_.empty(); }

    double operator()(int j, int k) const { return vals_[idx(j, k)]; }
    double& operator()(int j, int k) { return vals_[idx(j, k)]; }

    std::span<const double> values() const { return vals_; }
    std::span<double> values() { return vals_; }

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double s);
    /// this += a * f
    Field& add_scaled(double a, const Field& f);

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double s, Field f) { return f *= s; }

private:
    std::size_t idx(int j, int k) const {
        return static_cast<std::size_t>(k) * grid_.Nx + j;
    }
    Grid2D grid_;
    std::vector<double> vals_;
};

/// Pointwise (Hadamard) product.
Field pointwise(const Field& a, const Field& b);

/// Discrete L2 inner product: hx*hy * sum_{j,k} f_{jk} g_{jk}.
/// Compensated summation keeps the result reproducible and accurate.
double inner_h(const Field& f, const Field& g);

/// Mean value of the field (grid average).
double mean_value(const Field& f);

double max_abs(const Field& f);
bool all_finite(const Field& f);

/// Deterministic pseudorandom field, i.i.d. uniform in [-amplitude, amplitude].
/// Uses a splitmix64 counter keyed by (seed, flat index), so the result is
/// bit-identical for a given seed on any platform.
Field random_field(const Grid2D& grid, double amplitude, std::uint64_t seed);

void require_same_grid(const Field& a, const Field& b, const char* what);

// --- snapshot file format "gradflow-field v1" ---
//
// Line 1:  # gradflow-field v1 <Nx> <Ny> <Lx> <Ly> <time>
// Line k+2 holds row k: Nx comma-separated decimals at full precision.

struct Snapshot {
    Field field;
    double time = 0.0;
};

void write_snapshot(std::ostream& os, const Field& f, double time);
void write_snapshot_file(const std::string& path, const Field& f, double time);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot_file(const std::string& path);

/// Full round-trip decimal formatting (17 significant digits).
std::string format_full(double v);

} // namespace gradflow
