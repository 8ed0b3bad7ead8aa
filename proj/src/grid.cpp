#include "gradflow/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gradflow {

Grid2D make_grid(double Lx, double Ly, int Nx, int Ny) {
    if (!(Lx > 0.0) || !(Ly > 0.0))
        throw std::invalid_argument("make_grid: domain lengths must be positive");
    if (Nx < 4 || Ny < 4)
        throw std::invalid_argument("make_grid: Nx, Ny must be >= 4");
    if (Nx % 2 != 0 || Ny % 2 != 0)
        throw std::invalid_argument("make_grid: Nx, Ny must be even");
    Grid2D g;
    g.Lx = Lx;
    g.Ly = Ly;
    g.Nx = Nx;
    g.Ny = Ny;
    g.hx = Lx / Nx;
    g.hy = Ly / Ny;
    g.mu_x = 2.0 * std::numbers::pi / Lx;
    g.mu_y = 2.0 * std::numbers::pi / Ly;
    return g;
}

Field::Field(const Grid2D& grid, double fill)
    : grid_(grid), vals_(grid.size(), fill) {}

Field Field::sample(const Grid2D& grid,
                    const std::function<double(double, double)>& f) {
    Field out(grid);
    for (int k = 0; k < grid.Ny; ++k) {
        const double y = grid.y(k);
        for (int j = 0; j < grid.Nx; ++j) {
            const double v = f(grid.x(j), y);
            if (!std::isfinite(v))
                throw std::invalid_argument("Field::sample: non-finite sample");
            out(j, k) = v;
        }
    }
    return out;
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

Field& Field::operator+=(const Field& o) {
    require_same_grid(*this, o, "Field::operator+=");
    for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] += o.vals_[i];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    require_same_grid(*this, o, "Field::operator-=");
    for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] -= o.vals_[i];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : vals_) v *= s;
    return *this;
}

Field& Field::add_scaled(double a, const Field& f) {
    require_same_grid(*this, f, "Field::add_scaled");
    for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] += a * f.vals_[i];
    return *this;
}

Field pointwise(const Field& a, const Field& b) {
    require_same_grid(a, b, "pointwise");
    Field out = a;
    auto ov = out.values();
    auto bv = b.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] *= bv[i];
    return out;
}

namespace {
// Kahan-compensated sum; deterministic left-to-right order.
double compensated_dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double term = a[i] * b[i] - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}
} // namespace

double inner_h(const Field& f, const Field& g) {
    require_same_grid(f, g, "inner_h");
    return f.grid().hx * f.grid().hy * compensated_dot(f.values(), g.values());
}

double mean_value(const Field& f) {
    double sum = 0.0, comp = 0.0;
    for (double v : f.values()) {
        const double term = v - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum / static_cast<double>(f.grid().size());
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(const Field& f) {
    for (double v : f.values())
        if (!std::isfinite(v)) return false;
    return true;
}

namespace {
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
} // namespace

Field random_field(const Grid2D& grid, double amplitude, std::uint64_t seed) {
    if (amplitude < 0.0)
        throw std::invalid_argument("random_field: amplitude must be >= 0");
    Field out(grid);
    auto v = out.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        // counter-based: state depends only on (seed, i)
        const std::uint64_t z = splitmix64(seed + 0x632BE59BD9B4E019ull * (i + 1));
        const double u = static_cast<double>(z >> 11) * 0x1.0p-53; // [0, 1)
        v[i] = amplitude * (2.0 * u - 1.0);
    }
    return out;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_snapshot(std::ostream& os, const Field& f, double time) {
    const Grid2D& g = f.grid();
    os << "# gradflow-field v1 " << g.Nx << ' ' << g.Ny << ' '
       << format_full(g.Lx) << ' ' << format_full(g.Ly) << ' '
       << format_full(time) << '\n';
    for (int k = 0; k < g.Ny; ++k) {
        for (int j = 0; j < g.Nx; ++j) {
            if (j) os << ',';
            os << format_full(f(j, k));
        }
        os << '\n';
    }
}

void write_snapshot_file(const std::string& path, const Field& f, double time) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("write_snapshot_file: cannot open " + path);
    write_snapshot(os, f, time);
    os.flush();
    if (!os)
        throw std::runtime_error("write_snapshot_file: write failed for " + path);
}

Snapshot read_snapshot(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw std::runtime_error("read_snapshot: empty stream");
    std::istringstream hs(header);
    std::string hash, magic, version;
    int Nx = 0, Ny = 0;
    double Lx = 0, Ly = 0, time = 0;
    hs >> hash >> magic >> version >> Nx >> Ny >> Lx >> Ly >> time;
    if (!hs || hash != "#" || magic != "gradflow-field" || version != "v1")
        throw std::runtime_error("read_snapshot: bad header: " + header);
    Grid2D g = make_grid(Lx, Ly, Nx, Ny);
    Field f(g);
    std::string line;
    for (int k = 0; k < Ny; ++k) {
        if (!std::getline(is, line))
            throw std::runtime_error("read_snapshot: truncated file at row " +
                                     std::to_string(k));
        std::size_t pos = 0;
        for (int j = 0; j < Nx; ++j) {
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(line.substr(pos), &used);
            } catch (const std::exception&) {
                throw std::runtime_error("read_snapshot: bad value at row " +
                                         std::to_string(k));
            }
            if (!std::isfinite(v))
                throw std::runtime_error("read_snapshot: non-finite value at row " +
                                         std::to_string(k));
            f(j, k) = v;
            pos += used;
            if (j + 1 < Nx) {
                if (pos >= line.size() || line[pos] != ',')
                    throw std::runtime_error("read_snapshot: expected ',' at row " +
                                             std::to_string(k));
                ++pos;
            }
        }
    }
    return {std::move(f), time};
}

Snapshot read_snapshot_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("read_snapshot_file: cannot open " + path);
    return read_snapshot(is);
}

} // namespace gradflow
