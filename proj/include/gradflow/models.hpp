#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gradflow/eq_core.hpp"

namespace gradflow {

/// Physical and stabilization parameters shared by the model builders.
/// epsilon is the interface width for CH/AC; the MBE builder consumes
/// epsilon_sq directly (its energy is written in terms of eps^2).
/// a, b, c are the bulk/PFC energy coefficients.
struct ModelParams {
    double epsilon = 0.0;
    double epsilon_sq = 0.0;
    double lambda = 1.0;
    double gamma0 = 1.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Cahn-Hilliard with the Ginzburg-Landau double well:
/// L = -eps^2 Delta + gamma0, G = lambda Delta, q = (phi^2-1-gamma0)/sqrt(2).
QuadSystem build_cahn_hilliard_gl(const Grid2D& grid, const ModelParams& p);

/// Allen-Cahn: same energy as CH-GL but non-conserved mobility G = -lambda.
QuadSystem build_allen_cahn(const Grid2D& grid, const ModelParams& p);

/// Phase field crystal: L = gamma0 - b Delta + c (1+Delta)^2,
/// q = (phi^2 - a - gamma0)/sqrt(2), A = (a+gamma0)^2 |Omega| / 4.
QuadSystem build_pfc(const Grid2D& grid, const ModelParams& p);

/// Molecular beam epitaxy: L = eps^2 Delta^2 - gamma0 Delta (semi-definite on
/// the mean mode), G = -lambda, gradient coupling q = (|grad phi|^2-1-gamma0)/sqrt(2).
QuadSystem build_mbe(const Grid2D& grid, const ModelParams& p);

enum class ModelKind { CahnHilliard, AllenCahn, Pfc, Mbe };
QuadSystem build_model(ModelKind kind, const Grid2D& grid, const ModelParams& p);
std::string model_name(ModelKind kind);
std::optional<ModelKind> model_from_name(const std::string& name);

/// Parameters for the named initial conditions. Optional entries are
/// required only by the profiles that use them.
struct IcParams {
    double amplitude = 0.001;
    std::uint64_t seed = 42;
    std::optional<double> radius;                  // disk
    std::optional<double> center_x, center_y;      // disk / pfc-seed
    std::optional<double> wavenumber;              // pfc-seed k
    std::optional<double> amp;                     // pfc-seed A
    std::optional<double> window_radius;           // pfc-seed d0
    std::optional<double> phi_bar;                 // pfc-seed mean
};

/// name in {sine, random, disk, pfc-seed, mbe-waves}.
Field initial_condition(const std::string& name, const Grid2D& grid,
                        const IcParams& p);

/// A benchmark setup from the experiments section, resolved to concrete
/// numbers. `defaulted` records values the source text never states.
struct Preset {
    std::string name;
    ModelKind model;
    double Lx, Ly;
    int Nx, Ny;
    ModelParams params;
    std::string ic;
    IcParams ic_params;
    double T_end;
    double dt;                  // suggested step size
    std::string scheme;         // suggested scheme
    bool trace_volume = false;  // record the disk-volume observable
    std::vector<std::string> defaulted;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

} // namespace gradflow
