#include "gradflow/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gradflow {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void check_common(const ModelParams& p) {
    if (!(p.lambda > 0.0))
        throw std::invalid_argument("ModelParams: lambda must be > 0");
    if (p.gamma0 < 0.0)
        throw std::invalid_argument("ModelParams: gamma0 must be >= 0");
}

Field double_well_q(const Field& phi, double shift) {
    // (phi^2 - shift) / sqrt(2), shift = 1 + gamma0 or a + gamma0
    Field q = phi;
    for (double& v : q.values()) v = (v * v - shift) / kSqrt2;
    return q;
}

std::function<Field(const Field&)> sqrt2_phi() {
    return [](const Field& phi) {
        Field c = phi;
        c *= kSqrt2;
        return c;
    };
}

double ginzburg_landau_energy(const Field& phi, double eps_sq) {
    // eps^2/2 (phi, -Delta phi) + 1/4 ||phi^2 - 1||^2
    Field lap = apply_symbol(SpectralSymbol::laplacian(phi.grid()), phi);
    Field w = phi;
    for (double& v : w.values()) v = v * v - 1.0;
    return -0.5 * eps_sq * inner_h(phi, lap) + 0.25 * inner_h(w, w);
}

} // namespace

QuadSystem build_cahn_hilliard_gl(const Grid2D& grid, const ModelParams& p) {
    check_common(p);
    if (p.epsilon < 0.0)
        throw std::invalid_argument("build_cahn_hilliard_gl: epsilon must be >= 0");
    const double eps_sq = p.epsilon * p.epsilon;
    const double g0 = p.gamma0;
    QuadSystem sys;
    sys.name = "cahn-hilliard";
    sys.grid = grid;
    sys.L = SpectralSymbol::of_laplacian(grid, [=](double d) { return g0 - eps_sq * d; });
    sys.G = Mobility::symbol(p.lambda * SpectralSymbol::laplacian(grid));
    sys.A_const = (g0 / 2.0 + g0 * g0 / 4.0) * grid.area();
    sys.coupling = CouplingKind::Pointwise;
    sys.dg_dphi = sqrt2_phi();
    sys.q_init = [=](const Field& phi) { return double_well_q(phi, 1.0 + g0); };
    sys.original_energy = [=](const Field& phi) {
        return ginzburg_landau_energy(phi, eps_sq);
    };
    validate(sys);
    return sys;
}

QuadSystem build_allen_cahn(const Grid2D& grid, const ModelParams& p) {
    QuadSystem sys = build_cahn_hilliard_gl(grid, p);
    sys.name = "allen-cahn";
    sys.G = Mobility::scalar(-p.lambda);
    validate(sys);
    return sys;
}

QuadSystem build_pfc(const Grid2D& grid, const ModelParams& p) {
    check_common(p);
    if (p.b < 0.0 || p.c < 0.0)
        throw std::invalid_argument("build_pfc: b, c must be >= 0");
    const double g0 = p.gamma0, a = p.a, b = p.b, c = p.c;
    QuadSystem sys;
    sys.name = "pfc";
    sys.grid = grid;
    sys.L = SpectralSymbol::of_laplacian(
        grid, [=](double d) { return g0 - b * d + c * (1.0 + d) * (1.0 + d); });
    sys.G = Mobility::symbol(p.lambda * SpectralSymbol::laplacian(grid));
    sys.A_const = 0.25 * (a + g0) * (a + g0) * grid.area();
    sys.coupling = CouplingKind::Pointwise;
    sys.dg_dphi = sqrt2_phi();
    sys.q_init = [=](const Field& phi) { return double_well_q(phi, a + g0); };
    sys.original_energy = [=](const Field& phi) {
        const Grid2D& g = phi.grid();
        Field lap = apply_symbol(SpectralSymbol::laplacian(g), phi);
        Field bulk = phi;
        for (double& v : bulk.values()) v = 0.25 * v * v * v * v - 0.5 * a * v * v;
        const double grad_sq = -inner_h(phi, lap); // (phi, -Delta phi)
        return inner_h(bulk, Field(g, 1.0)) + 0.5 * b * grad_sq +
               0.5 * c * (inner_h(phi, phi) - 2.0 * grad_sq + inner_h(lap, lap));
    };
    validate(sys);
    return sys;
}

QuadSystem build_mbe(const Grid2D& grid, const ModelParams& p) {
    check_common(p);
    if (p.epsilon_sq < 0.0)
        throw std::invalid_argument("build_mbe: epsilon_sq must be >= 0");
    const double eps_sq = p.epsilon_sq;
    const double g0 = p.gamma0;
    QuadSystem sys;
    sys.name = "mbe";
    sys.grid = grid;
    sys.L = SpectralSymbol::of_laplacian(
        grid, [=](double d) { return eps_sq * d * d - g0 * d; });
    sys.L_null_mean = true; // L vanishes on the mean mode; B is PSD there
    sys.G = Mobility::scalar(-p.lambda);
    sys.A_const = 0.25 * (2.0 * g0 + g0 * g0) * grid.area();
    sys.coupling = CouplingKind::Gradient;
    sys.q_init = [=](const Field& phi) {
        Field gx = deriv(phi, 1, 0);
        Field gy = deriv(phi, 0, 1);
        Field q(phi.grid());
        auto qv = q.values();
        auto xv = gx.values();
        auto yv = gy.values();
        for (std::size_t i = 0; i < qv.size(); ++i)
            qv[i] = (xv[i] * xv[i] + yv[i] * yv[i] - 1.0 - g0) / kSqrt2;
        return q;
    };
    sys.original_energy = [=](const Field& phi) {
        const Grid2D& g = phi.grid();
        Field lap = apply_symbol(SpectralSymbol::laplacian(g), phi);
        Field gx = deriv(phi, 1, 0);
        Field gy = deriv(phi, 0, 1);
        Field w(g);
        auto wv = w.values();
        auto xv = gx.values();
        auto yv = gy.values();
        for (std::size_t i = 0; i < wv.size(); ++i)
            wv[i] = xv[i] * xv[i] + yv[i] * yv[i] - 1.0;
        return 0.5 * eps_sq * inner_h(lap, lap) + 0.25 * inner_h(w, w);
    };
    validate(sys);
    return sys;
}

QuadSystem build_model(ModelKind kind, const Grid2D& grid, const ModelParams& p) {
    switch (kind) {
    case ModelKind::CahnHilliard: return build_cahn_hilliard_gl(grid, p);
    case ModelKind::AllenCahn: return build_allen_cahn(grid, p);
    case ModelKind::Pfc: return build_pfc(grid, p);
    case ModelKind::Mbe: return build_mbe(grid, p);
    }
    throw std::logic_error("build_model: bad kind");
}

std::string model_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::CahnHilliard: return "ch";
    case ModelKind::AllenCahn: return "ac";
    case ModelKind::Pfc: return "pfc";
    case ModelKind::Mbe: return "mbe";
    }
    return "?";
}

std::optional<ModelKind> model_from_name(const std::string& name) {
    if (name == "ch") return ModelKind::CahnHilliard;
    if (name == "ac") return ModelKind::AllenCahn;
    if (name == "pfc") return ModelKind::Pfc;
    if (name == "mbe") return ModelKind::Mbe;
    return std::nullopt;
}

namespace {
double need(const std::optional<double>& v, const char* ic, const char* key) {
    if (!v)
        throw std::invalid_argument(std::string("initial_condition: '") + ic +
                                    "' requires parameter " + key);
    return *v;
}
} // namespace

Field initial_condition(const std::string& name, const Grid2D& grid,
                        const IcParams& p) {
    using std::numbers::pi;
    if (name == "sine") {
        return Field::sample(grid, [](double x, double y) {
            return std::sin(2.0 * pi * x) * std::sin(2.0 * pi * y);
        });
    }
    if (name == "random") {
        return random_field(grid, p.amplitude, p.seed);
    }
    if (name == "disk") {
        const double R0 = need(p.radius, "disk", "radius");
        const double cx = p.center_x.value_or(grid.Lx / 2.0);
        const double cy = p.center_y.value_or(grid.Ly / 2.0);
        return Field::sample(grid, [=](double x, double y) {
            const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
            return r2 < R0 * R0 ? 1.0 : -1.0;
        });
    }
    if (name == "pfc-seed") {
        const double k = need(p.wavenumber, "pfc-seed", "wavenumber");
        const double A = need(p.amp, "pfc-seed", "amp");
        const double d0 = need(p.window_radius, "pfc-seed", "window_radius");
        const double pb = need(p.phi_bar, "pfc-seed", "phi_bar");
        const double cx = p.center_x.value_or(grid.Lx / 2.0);
        const double cy = p.center_y.value_or(grid.Ly / 2.0);
        const double s3 = std::sqrt(3.0);
        return Field::sample(grid, [=](double x, double y) {
            const double r = std::hypot(x - cx, y - cy);
            double w = 0.0;
            if (r <= d0) {
                const double u = 1.0 - (r / d0) * (r / d0);
                w = u * u;
            }
            const double seed = std::cos(k / s3 * y) * std::cos(k * x) -
                                0.5 * std::cos(2.0 * k / s3 * y);
            return pb + w * A * seed;
        });
    }
    if (name == "mbe-waves") {
        return Field::sample(grid, [](double x, double y) {
            return 0.1 * (std::sin(2.0 * x) * std::sin(2.0 * y) +
                          std::sin(5.0 * x) * std::sin(5.0 * y));
        });
    }
    throw std::invalid_argument("initial_condition: unknown profile '" + name + "'");
}

namespace {

std::vector<Preset> make_presets() {
    using std::numbers::pi;
    std::vector<Preset> out;

    // CH refinement study: [0,1]^2, sine data, gamma0 = 1, eps = 0.01, lambda = 1e-3.
    {
        Preset pr;
        pr.name = "ch-refine";
        pr.model = ModelKind::CahnHilliard;
        pr.Lx = pr.Ly = 1.0;
        pr.Nx = pr.Ny = 256;
        pr.params.epsilon = 0.01;
        pr.params.lambda = 1e-3;
        pr.params.gamma0 = 1.0;
        pr.ic = "sine";
        pr.T_end = 1.0;
        pr.dt = 1e-3;
        pr.scheme = "icn";
        out.push_back(pr);
    }
    // CH coarsening: [0,4pi]^2, random data of amplitude 1e-3.
    {
        Preset pr;
        pr.name = "ch-coarsen";
        pr.model = ModelKind::CahnHilliard;
        pr.Lx = pr.Ly = 4.0 * pi;
        pr.Nx = pr.Ny = 256;
        pr.params.epsilon = 0.05;
        pr.params.lambda = 0.1;
        pr.params.gamma0 = 1.0;
        pr.ic = "random";
        pr.ic_params.amplitude = 0.001;
        pr.ic_params.seed = 42;
        pr.T_end = 2.0;
        pr.dt = 0.01;
        pr.scheme = "icn";
        out.push_back(pr);
    }
    // AC shrinking disk benchmark.
    {
        Preset pr;
        pr.name = "ac-disk";
        pr.model = ModelKind::AllenCahn;
        pr.Lx = pr.Ly = 256.0;
        pr.Nx = pr.Ny = 256;
        pr.params.epsilon = 1.0;
        pr.params.lambda = 1.0;
        pr.params.gamma0 = 1.0;
        pr.ic = "disk";
        pr.ic_params.radius = 100.0;
        pr.ic_params.center_x = 128.0;
        pr.ic_params.center_y = 128.0;
        pr.T_end = 1000.0;
        pr.dt = 0.5;
        pr.scheme = "icn";
        pr.trace_volume = true;
        pr.defaulted = {"gamma0 = 1 (not stated for this benchmark)",
                        "disk center = (128, 128) (assumed centered)"};
        out.push_back(pr);
    }
    // Phase field crystal growth.
    {
        Preset pr;
        pr.name = "pfc-crystal";
        pr.model = ModelKind::Pfc;
        pr.Lx = pr.Ly = 150.0;
        pr.Nx = pr.Ny = 512;
        pr.params.a = 0.325;
        pr.params.b = 0.0;
        pr.params.c = 1.0;
        pr.params.lambda = 1.0;
        pr.params.gamma0 = 1.0;
        pr.ic = "pfc-seed";
        const double eps = 0.325; // the seed formulas reuse a as eps
        const double phi_bar = std::sqrt(eps) / 2.0;
        pr.ic_params.phi_bar = phi_bar;
        pr.ic_params.amp =
            0.8 * (phi_bar + std::sqrt(15.0 * eps - 36.0 * phi_bar * phi_bar) / 3.0);
        pr.ic_params.window_radius = 25.0;
        pr.ic_params.wavenumber = std::sqrt(3.0) / 2.0;
        pr.T_end = 1000.0;
        pr.dt = 0.1;
        pr.scheme = "gauss";
        pr.defaulted = {"lambda = 1 (not stated)", "gamma0 = 1 (not stated)"};
        out.push_back(pr);
    }
    // MBE coarsening.
    {
        Preset pr;
        pr.name = "mbe-coarsen";
        pr.model = ModelKind::Mbe;
        pr.Lx = pr.Ly = 2.0 * pi;
        pr.Nx = pr.Ny = 256;
        pr.params.epsilon_sq = 0.1;
        pr.params.lambda = 1.0;
        pr.params.gamma0 = 1.0;
        pr.ic = "mbe-waves";
        pr.T_end = 10.0;
        pr.dt = 1e-3;
        pr.scheme = "icn";
        pr.defaulted = {"gamma0 = 1 (not stated)", "T_end = 10 (not stated)"};
        out.push_back(pr);
    }

    // Desk-scale variants for CI: halved grids, shorter horizons.
    const std::size_t full_count = out.size();
    for (std::size_t i = 0; i < full_count; ++i) {
        Preset pr = out[i];
        pr.name += "-small";
        pr.Nx /= 2;
        pr.Ny /= 2;
        if (pr.name == "ac-disk-small") pr.T_end = 200.0;
        if (pr.name == "pfc-crystal-small") pr.T_end = 50.0;
        if (pr.name == "mbe-coarsen-small") pr.T_end = 5.0;
        out.push_back(pr);
    }
    return out;
}

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = make_presets();
    return all;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

} // namespace gradflow
