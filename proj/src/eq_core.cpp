#include "gradflow/eq_core.hpp"

#include <cmath>
#include <stdexcept>

namespace gradflow {

namespace {
void require_same_shape(const QuadState& a, const QuadState& b, const char* what) {
    if (a.phi.size() != b.phi.size() || !(a.grid() == b.grid()))
        throw std::invalid_argument(std::string(what) + ": state shape mismatch");
}

const Field& single_phi(const QuadState& s, const char* what) {
    if (s.phi.size() != 1)
        throw std::invalid_argument(std::string(what) +
                                    ": coupling paths support a single Phi component");
    return s.phi[0];
}
} // namespace

QuadState& QuadState::operator+=(const QuadState& o) {
    require_same_shape(*this, o, "QuadState::operator+=");
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += o.phi[i];
    q += o.q;
    return *this;
}

QuadState& QuadState::operator-=(const QuadState& o) {
    require_same_shape(*this, o, "QuadState::operator-=");
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] -= o.phi[i];
    q -= o.q;
    return *this;
}

QuadState& QuadState::operator*=(double s) {
    for (auto& f : phi) f *= s;
    q *= s;
    return *this;
}

QuadState& QuadState::add_scaled(double a, const QuadState& o) {
    require_same_shape(*this, o, "QuadState::add_scaled");
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i].add_scaled(a, o.phi[i]);
    q.add_scaled(a, o.q);
    return *this;
}

QuadState zeros_like(const QuadState& s) {
    QuadState out;
    out.phi.reserve(s.phi.size());
    for (const auto& f : s.phi) out.phi.emplace_back(f.grid());
    out.q = Field(s.q.grid());
    return out;
}

double inner(const QuadState& a, const QuadState& b) {
    require_same_shape(a, b, "inner(QuadState)");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.phi.size(); ++i) sum += inner_h(a.phi[i], b.phi[i]);
    sum += inner_h(a.q, b.q);
    return sum;
}

double max_abs(const QuadState& s) {
    double m = max_abs(s.q);
    for (const auto& f : s.phi) m = std::max(m, max_abs(f));
    return m;
}

bool all_finite(const QuadState& s) {
    if (!all_finite(s.q)) return false;
    for (const auto& f : s.phi)
        if (!all_finite(f)) return false;
    return true;
}

Mobility Mobility::scalar(double value) {
    if (value > 0.0)
        throw std::invalid_argument("Mobility::scalar: must be <= 0");
    Mobility m;
    m.is_scalar_ = true;
    m.scalar_ = value;
    return m;
}

Mobility Mobility::symbol(SpectralSymbol sym) {
    if (sym.parity() != SpectralSymbol::Parity::Real)
        throw std::invalid_argument("Mobility::symbol: real parity required");
    if (sym.max_value() > 0.0)
        throw std::invalid_argument("Mobility::symbol: must be <= 0 on every mode");
    Mobility m;
    m.is_scalar_ = false;
    m.sym_ = std::move(sym);
    return m;
}

Field Mobility::apply(const Field& f) const {
    if (is_scalar_) {
        Field out = f;
        out *= scalar_;
        return out;
    }
    return apply_symbol(sym_, f);
}

std::vector<double> Mobility::mode_values(const Grid2D& g) const {
    if (is_scalar_) return std::vector<double>(g.size(), scalar_);
    if (!(sym_.grid() == g))
        throw std::invalid_argument("Mobility::mode_values: grid mismatch");
    return {sym_.values().begin(), sym_.values().end()};
}

void validate(const QuadSystem& sys) {
    if (sys.L.values().empty() || !(sys.L.grid() == sys.grid))
        throw std::invalid_argument("QuadSystem: L symbol missing or on wrong grid");
    if (sys.L.parity() != SpectralSymbol::Parity::Real)
        throw std::invalid_argument("QuadSystem: L must have real parity");
    auto lv = sys.L.values();
    for (std::size_t i = 0; i < lv.size(); ++i) {
        const bool mean_mode = i == 0;
        if (lv[i] < 0.0 || (lv[i] == 0.0 && !(mean_mode && sys.L_null_mean)))
            throw std::invalid_argument(
                "QuadSystem: L must be positive definite (null mean mode only if flagged)");
    }
    if (!sys.G.is_scalar() && !(sys.G.sym().grid() == sys.grid))
        throw std::invalid_argument("QuadSystem: G symbol on wrong grid");
    if (!std::isfinite(sys.A_const))
        throw std::invalid_argument("QuadSystem: A must be finite");
    if (sys.coupling == CouplingKind::Pointwise && !sys.dg_dphi)
        throw std::invalid_argument("QuadSystem: pointwise coupling needs dg_dphi");
    if (!sys.q_init)
        throw std::invalid_argument("QuadSystem: q_init required");
}

FrozenCoupling::FrozenCoupling(const QuadSystem& sys, const Field& phi_frozen)
    : kind_(sys.coupling), grid_(sys.grid) {
    if (!all_finite(phi_frozen))
        throw std::invalid_argument("FrozenCoupling: non-finite frozen state");
    switch (kind_) {
    case CouplingKind::None:
        shift_ = 0.0;
        break;
    case CouplingKind::Pointwise: {
        c_ = sys.dg_dphi(phi_frozen);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double v : c_.values()) {
            const double s = v * v;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        shift_ = 0.5 * (lo + hi);
        break;
    }
    case CouplingKind::Gradient: {
        ax_ = deriv(phi_frozen, 1, 0);
        ay_ = deriv(phi_frozen, 0, 1);
        double hi = 0.0;
        auto xv = ax_.values();
        auto yv = ay_.values();
        for (std::size_t i = 0; i < xv.size(); ++i)
            hi = std::max(hi, xv[i] * xv[i] + yv[i] * yv[i]);
        shift_ = hi;
        break;
    }
    }
}

Field FrozenCoupling::apply_K(const Field& vq) const {
    switch (kind_) {
    case CouplingKind::None:
        return Field(grid_);
    case CouplingKind::Pointwise:
        return pointwise(c_, vq);
    case CouplingKind::Gradient: {
        // -sqrt(2) div(vq * grad phi_bar)
        Field fx = pointwise(vq, ax_);
        Field fy = pointwise(vq, ay_);
        Field out = deriv(fx, 1, 0);
        out += deriv(fy, 0, 1);
        out *= -std::sqrt(2.0);
        return out;
    }
    }
    throw std::logic_error("FrozenCoupling::apply_K: bad kind");
}

Field FrozenCoupling::apply_Kstar(const Field& w) const {
    switch (kind_) {
    case CouplingKind::None:
        return Field(grid_);
    case CouplingKind::Pointwise:
        return pointwise(c_, w);
    case CouplingKind::Gradient: {
        // sqrt(2) grad phi_bar . grad w
        Field out = pointwise(ax_, deriv(w, 1, 0));
        out += pointwise(ay_, deriv(w, 0, 1));
        out *= std::sqrt(2.0);
        return out;
    }
    }
    throw std::logic_error("FrozenCoupling::apply_Kstar: bad kind");
}

Field FrozenCoupling::apply_KKstar(const Field& x) const {
    if (kind_ == CouplingKind::Pointwise) {
        Field out = x;
        auto ov = out.values();
        auto cv = c_.values();
        for (std::size_t i = 0; i < ov.size(); ++i) ov[i] *= cv[i] * cv[i];
        return out;
    }
    return apply_K(apply_Kstar(x));
}

QuadState apply_B(const QuadSystem& sys, const QuadState& v) {
    QuadState out = v;
    for (auto& f : out.phi) f = apply_symbol(sys.L, f);
    return out; // q-component unchanged: B = diag(L, 1)
}

QuadState apply_N(const QuadSystem& sys, const FrozenCoupling& fc, const QuadState& v) {
    QuadState out = zeros_like(v);
    const Field& vphi = single_phi(v, "apply_N");
    Field cv = vphi;
    if (fc.kind() != CouplingKind::None) cv += fc.apply_K(v.q);
    Field w = sys.G.apply(cv);
    out.q = fc.apply_Kstar(w);
    out.phi[0] = std::move(w);
    return out;
}

QuadState apply_N(const QuadSystem& sys, const QuadState& frozen, const QuadState& v) {
    return apply_N(sys, FrozenCoupling(sys, single_phi(frozen, "apply_N(frozen)")), v);
}

QuadState apply_N1(const QuadSystem& sys, const QuadState& v) {
    QuadState out = zeros_like(v);
    out.phi[0] = sys.G.apply(single_phi(v, "apply_N1"));
    return out;
}

QuadState apply_N2(const QuadSystem& sys, const FrozenCoupling& fc, const QuadState& v) {
    QuadState out = zeros_like(v);
    const Field& vphi = single_phi(v, "apply_N2");
    if (fc.kind() == CouplingKind::None) return out;
    Field cv = vphi + fc.apply_K(v.q);
    Field w = sys.G.apply(cv);
    out.q = fc.apply_Kstar(w);
    out.phi[0] = w - sys.G.apply(vphi);
    return out;
}

QuadState apply_N2(const QuadSystem& sys, const QuadState& frozen, const QuadState& v) {
    return apply_N2(sys, FrozenCoupling(sys, single_phi(frozen, "apply_N2(frozen)")), v);
}

double energy_quadratized(const QuadSystem& sys, const QuadState& psi) {
    if (!all_finite(psi))
        throw std::invalid_argument("energy_quadratized: non-finite state");
    return 0.5 * inner(psi, apply_B(sys, psi)) - sys.A_const;
}

Field init_q(const QuadSystem& sys, const Field& phi) {
    if (!all_finite(phi))
        throw std::invalid_argument("init_q: non-finite phi");
    Field q = sys.q_init(phi);
    if (!all_finite(q))
        throw std::runtime_error("init_q: q_init produced non-finite values");
    return q;
}

QuadState make_state(const QuadSystem& sys, Field phi) {
    QuadState s;
    s.q = init_q(sys, phi);
    s.phi.push_back(std::move(phi));
    return s;
}

} // namespace gradflow
