#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "spikelab/errors.hpp"
#include "spikelab/numerics.hpp"

namespace spikelab {

/// Radial ground state of  -u'' - (N-1)/r u' + u = u^p  on [0, inf),
/// tabulated on a uniform grid. Values decay like r^{-(N-1)/2} e^{-r}.
struct RadialProfile {
    int dim = 0;
    double p = 0.0;
    std::vector<double> r_nodes;
    std::vector<double> u_values;
    std::vector<double> du_values;
    double u0 = 0.0;         ///< shooting parameter at convergence, u(0)
    double r_max = 0.0;      ///< truncation radius, u(r_max) < 1e-12 u0
    double r_core = 0.0;     ///< matching radius between core series and far field
    double decay_rate = 0.0; ///< fitted exponential rate on [r_max/2, r_max]
    double step = 0.0;       ///< uniform node spacing
    double tail_coef = 0.0;  ///< u ~ tail_coef * tail_shape(r) for r >= r_max

    /// Decaying solution of the linearized far field,
    /// r^{-(N-1)/2} e^{-r} (1 + c1/r + c2/r^2), the modified-Bessel
    /// asymptotic series. Both corrections vanish for N = 1 and N = 3,
    /// where the shape is exact.
    double tail_shape(double r) const {
        const double alpha = 0.5 * (dim - 1);
        const double c1 = (dim - 1.0) * (dim - 3.0) / 8.0;
        const double c2 = c1 * (dim - 5.0) * (dim + 1.0) / 16.0;
        return std::pow(r, -alpha) * std::exp(-r) * (1.0 + c1 / r + c2 / (r * r));
    }

    double tail_shape_derivative(double r) const {
        const double alpha = 0.5 * (dim - 1);
        const double c1 = (dim - 1.0) * (dim - 3.0) / 8.0;
        const double c2 = c1 * (dim - 5.0) * (dim + 1.0) / 16.0;
        const double poly = 1.0 + c1 / r + c2 / (r * r);
        const double dpoly = -c1 / (r * r) - 2.0 * c2 / (r * r * r);
        return std::pow(r, -alpha) * std::exp(-r) * (dpoly - (1.0 + alpha / r) * poly);
    }

    /// Profile value at radius |r|, cubic Hermite between table nodes.
    double value(double r) const {
        r = std::abs(r);
        if (r >= r_max) return tail_coef * tail_shape(r);
        const double s = r / step;
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(s), u_values.size() - 2);
        const double t = s - static_cast<double>(k);
        return hermite(t, u_values[k], u_values[k + 1], step * du_values[k], step * du_values[k + 1]);
    }

    double derivative(double r) const {
        const double sign = (r < 0.0) ? -1.0 : 1.0;
        r = std::abs(r);
        if (r >= r_max) return sign * tail_coef * tail_shape_derivative(r);
        const double s = r / step;
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(s), u_values.size() - 2);
        const double t = s - static_cast<double>(k);
        return sign *
               hermite_derivative(t, u_values[k], u_values[k + 1], step * du_values[k],
                                  step * du_values[k + 1]) /
               step;
    }
};

struct Moments {
    double m_pp1 = 0.0;   ///< int u^{p+1}
    double m_grad2 = 0.0; ///< int |grad u|^2
    double m_sq = 0.0;    ///< int u^2
    double c0_bar = 0.0;  ///< (1/2 - 1/(p+1)) m_pp1
};

namespace detail {

// Odd extension keeps the right-hand side well defined when a shot
// trajectory probes below zero before its crossing event is detected.
inline double nonlinearity(double u, double p) {
    return (u >= 0.0) ? std::pow(u, p) : -std::pow(-u, p);
}

struct OdeState {
    double u;
    double v;
};

inline OdeState radial_rhs(double r, OdeState s, int dim, double p) {
    const double friction = (dim > 1) ? (dim - 1) / r * s.v : 0.0;
    return {s.v, s.u - nonlinearity(s.u, p) - friction};
}

inline OdeState rk4_step(double r, OdeState s, double h, int dim, double p) {
    const OdeState k1 = radial_rhs(r, s, dim, p);
    const OdeState k2 = radial_rhs(r + 0.5 * h, {s.u + 0.5 * h * k1.u, s.v + 0.5 * h * k1.v}, dim, p);
    const OdeState k3 = radial_rhs(r + 0.5 * h, {s.u + 0.5 * h * k2.u, s.v + 0.5 * h * k2.v}, dim, p);
    const OdeState k4 = radial_rhs(r + h, {s.u + h * k3.u, s.v + h * k3.v}, dim, p);
    return {s.u + h / 6.0 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
            s.v + h / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
}

// Series start around the regular singular point r = 0:
//   u(r) = u0 + a r^2 + b r^4 + O(r^6),  2N a = u0 - u0^p.
inline OdeState series_start(double u0, double r, int dim, double p) {
    const double a = (u0 - std::pow(u0, p)) / (2.0 * dim);
    const double b = (1.0 - p * std::pow(u0, p - 1.0)) * a / (4.0 * dim + 8.0);
    return {u0 + a * r * r + b * r * r * r * r, 2.0 * a * r + 4.0 * b * r * r * r};
}

enum class Shot { Undershoot, Overshoot };

// Classify a forward shot: trajectories that turn around while positive
// have u(0) below the ground state value, trajectories that cross zero
// lie above it. Uniqueness theory makes this monotone in u0.
inline Shot classify_shot(double u0, double h, int dim, double p) {
    const double r_cap = 80.0;
    double r = h;
    OdeState s = series_start(u0, r, dim, p);
    while (r < r_cap) {
        s = rk4_step(r, s, h, dim, p);
        r += h;
        if (!std::isfinite(s.u) || s.u <= 0.0) return Shot::Overshoot;
        if (s.v > 0.0 || s.u > 2.0 * u0) return Shot::Undershoot;
        if (s.u < 1e-15 * u0) break; // effectively on the stable manifold
    }
    return Shot::Undershoot;
}

// Integrate the full equation backward from the far field, starting on
// the decaying asymptotic branch with amplitude tail_c, storing (u, v)
// at every node down to r = h. Backward integration damps the e^{+r}
// mode, so the computed orbit sits on the stable manifold to roundoff.
inline bool integrate_backward(double tail_c, double r_far, double h, int dim, double p,
                               double u_cap, std::vector<OdeState>& nodes) {
    RadialProfile shape;
    shape.dim = dim;
    const long k_far = std::lround(r_far / h);
    nodes.assign(static_cast<std::size_t>(k_far) + 1, OdeState{0.0, 0.0});
    OdeState s{tail_c * shape.tail_shape(r_far), tail_c * shape.tail_shape_derivative(r_far)};
    nodes[static_cast<std::size_t>(k_far)] = s;
    for (long k = k_far; k > 1; --k) {
        s = rk4_step(k * h, s, -h, dim, p);
        nodes[static_cast<std::size_t>(k - 1)] = s;
        if (!std::isfinite(s.u) || std::abs(s.u) > u_cap) return false;
    }
    return true;
}

} // namespace detail

/// Ground state by shooting on u(0), bisecting between blow-up and
/// zero-crossing on a fixed-step RK4 integrator. The returned table is a
/// single backward-integrated orbit matched to the bisected core value:
/// tabulating the forward shot instead would hand its e^{+r} instability
/// straight into the tail, and any spliced-on analytic tail would leave a
/// derivative seam that pointwise residual checks see at 1/h scale.
inline RadialProfile solve_ground_state(int dim, double p, double tol) {
    if (dim < 1) throw Error("solve_ground_state: dimension must be >= 1");
    if (p <= 1.0) throw Error("solve_ground_state: exponent must satisfy p > 1");
    if (tol <= 0.0) throw Error("solve_ground_state: tol must be positive");
    if (dim >= 3 && p >= double(dim + 2) / double(dim - 2))
        throw Supercritical("solve_ground_state: p >= (N+2)/(N-2) with N >= 3");

    const double h = 1e-3;

    // Bracket and bisect the shooting parameter. Any u0 in (1, u0*)
    // undershoots. Bisection continues to machine width: the far-field
    // table below needs u(0) far tighter than typical tol requests.
    double lo = 1.0 + 1e-9;
    if (detail::classify_shot(lo, h, dim, p) != detail::Shot::Undershoot)
        throw NoBracket("solve_ground_state: lower endpoint does not undershoot");
    double hi = 2.0;
    while (detail::classify_shot(hi, h, dim, p) != detail::Shot::Overshoot) {
        hi *= 2.0;
        if (hi > 1e6) throw NoBracket("solve_ground_state: no zero-crossing found below u0 = 1e6");
    }
    const double width_target =
        std::min(tol, std::max(8.0 * std::numeric_limits<double>::epsilon() * hi, 1e-15));
    for (int it = 0; it < 300 && (hi - lo) > width_target; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval collapsed to machine width
        if (detail::classify_shot(mid, h, dim, p) == detail::Shot::Undershoot)
            lo = mid;
        else
            hi = mid;
    }
    const double u0 = 0.5 * (lo + hi);

    RadialProfile prof;
    prof.dim = dim;
    prof.p = p;
    prof.step = h;

    // Crude forward pass to estimate the tail amplitude and hence how far
    // out the table must reach for u < 1e-12 u(0).
    double c_est = 0.0;
    {
        double r = h;
        detail::OdeState s = detail::series_start(u0, r, dim, p);
        while (s.u > 1e-4 * u0 && r < 80.0) {
            s = detail::rk4_step(r, s, h, dim, p);
            r += h;
        }
        prof.r_core = r;
        c_est = s.u / prof.tail_shape(r);
    }
    double r_trunc = prof.r_core;
    while (c_est * prof.tail_shape(r_trunc) > 1e-12 * u0 && r_trunc < 200.0) r_trunc += 1.0;
    const double r_far = std::ceil(r_trunc + 8.0);

    // Select the backward orbit through the core by bisecting its tail
    // amplitude until the orbit value at r = h matches the series start.
    const double target = detail::series_start(u0, h, dim, p).u;
    const double u_cap = 4.0 * u0;
    std::vector<detail::OdeState> nodes;
    double log_lo = std::log(c_est) - 2.0;
    double log_hi = std::log(c_est) + 2.0;
    auto backward_value = [&](double lc) {
        const bool ok = detail::integrate_backward(std::exp(lc), r_far, h, dim, p, u_cap, nodes);
        return ok ? nodes[1].u : u_cap; // blown-up orbits count as too large
    };
    for (int tries = 0; backward_value(log_lo) >= target; ++tries) {
        log_lo -= 2.0;
        if (tries > 6) throw NoBracket("solve_ground_state: far-field match has no lower bracket");
    }
    for (int tries = 0; backward_value(log_hi) <= target; ++tries) {
        log_hi += 2.0;
        if (tries > 6) throw NoBracket("solve_ground_state: far-field match has no upper bracket");
    }
    for (int it = 0; it < 200 && (log_hi - log_lo) > 1e-15; ++it) {
        const double mid = 0.5 * (log_lo + log_hi);
        if (backward_value(mid) < target)
            log_lo = mid;
        else
            log_hi = mid;
    }
    detail::integrate_backward(std::exp(0.5 * (log_lo + log_hi)), r_far, h, dim, p, u_cap, nodes);

    // u(0) by inverting the series at the first stored node; two fixed
    // point rounds suffice at r = h.
    double u0_tab = nodes[1].u;
    for (int it = 0; it < 3; ++it) {
        const double a = (u0_tab - std::pow(u0_tab, p)) / (2.0 * dim);
        const double b = (1.0 - p * std::pow(u0_tab, p - 1.0)) * a / (4.0 * dim + 8.0);
        u0_tab = nodes[1].u - a * h * h - b * h * h * h * h;
    }
    prof.u0 = u0_tab;

    const std::size_t k_max = [&] {
        std::size_t k = 1;
        while (k + 1 < nodes.size() && nodes[k].u > 1e-12 * u0_tab) ++k;
        return k;
    }();
    prof.r_nodes.resize(k_max + 1);
    prof.u_values.resize(k_max + 1);
    prof.du_values.resize(k_max + 1);
    prof.r_nodes[0] = 0.0;
    prof.u_values[0] = u0_tab;
    prof.du_values[0] = 0.0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        prof.r_nodes[k] = k * h;
        prof.u_values[k] = nodes[k].u;
        prof.du_values[k] = nodes[k].v;
    }
    prof.r_max = k_max * h;
    prof.tail_coef = prof.u_values[k_max] / prof.tail_shape(prof.r_max);

    // Fitted decay rate over the outer half of the table.
    {
        std::vector<double> rs, ls;
        const std::size_t stride = std::max<std::size_t>(1, k_max / 400);
        for (std::size_t k = 0; k <= k_max; k += stride) {
            if (prof.r_nodes[k] >= 0.5 * prof.r_max && prof.u_values[k] > 0.0) {
                rs.push_back(prof.r_nodes[k]);
                ls.push_back(std::log(prof.u_values[k]));
            }
        }
        prof.decay_rate = -fit_line(rs, ls).slope;
    }
    return prof;
}

/// Whole-space moments of the profile with the surface-measure weight
/// omega_{N-1} r^{N-1} dr, by composite Simpson on the uniform table.
inline Moments profile_moments(const RadialProfile& prof) {
    if (prof.u_values.size() < 8) throw Error("profile_moments: invalid profile");
    const double omega = unit_sphere_area(prof.dim);
    const std::size_t n = prof.u_values.size();
    std::vector<double> f_pp1(n), f_grad2(n), f_sq(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = omega * std::pow(prof.r_nodes[k], prof.dim - 1);
        const double u = prof.u_values[k];
        const double du = prof.du_values[k];
        f_pp1[k] = w * std::pow(u, prof.p + 1.0);
        f_grad2[k] = w * du * du;
        f_sq[k] = w * u * u;
    }
    Moments m;
    m.m_pp1 = simpson(f_pp1, prof.step);
    m.m_grad2 = simpson(f_grad2, prof.step);
    m.m_sq = simpson(f_sq, prof.step);
    m.c0_bar = (0.5 - 1.0 / (prof.p + 1.0)) * m.m_pp1;
    return m;
}

enum class MomentIntegrand { GradientSquared, ProfileSquared };

/// First moment  int x_i g(x) dx  of the even radial densities
/// g = |grad u|^2 or g = u^2, evaluated by tensor trapezoid quadrature on
/// a symmetric box with naive summation order. Analytically zero (odd
/// integrand); the float result measures pure cancellation error.
inline double radial_symmetry_moment(const RadialProfile& prof, int axis,
                                     MomentIntegrand kind = MomentIntegrand::GradientSquared) {
    if (axis < 0 || axis >= prof.dim) throw Error("radial_symmetry_moment: axis out of range");
    const double extent = std::min(prof.r_max, 16.0);
    const int half = 48;
    const int n = 2 * half + 1;
    const double dx = extent / half;
    const double cell = std::pow(dx, prof.dim);

    std::vector<int> idx(prof.dim, 0);
    double total = 0.0;
    while (true) {
        double r2 = 0.0;
        double weight = cell;
        for (int d = 0; d < prof.dim; ++d) {
            const double x = (idx[d] - half) * dx;
            r2 += x * x;
            if (idx[d] == 0 || idx[d] == n - 1) weight *= 0.5;
        }
        const double r = std::sqrt(r2);
        const double g = (kind == MomentIntegrand::GradientSquared)
                             ? prof.derivative(r) * prof.derivative(r)
                             : prof.value(r) * prof.value(r);
        total += weight * (idx[axis] - half) * dx * g;

        int d = 0;
        while (d < prof.dim && ++idx[d] == n) idx[d++] = 0;
        if (d == prof.dim) break;
    }
    return total;
}

} // namespace spikelab
