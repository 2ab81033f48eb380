#pragma once

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace spikelab {

inline constexpr const char* kVersion = "spikelab/0.1.0";

/// Shortest round-trip decimal representation, locale independent.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

/// Ordinary least squares y = slope*x + intercept.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    assert(x.size() == y.size() && x.size() >= 2);
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.rms_residual = std::sqrt(ss / n);
    return f;
}

/// Log-log slope of |values| against the scale parameters, fitted over the
/// last `window` entries (all of them if window == 0 or exceeds the size).
/// Asymptotic order claims are always estimated this way: the early rungs of
/// a ladder sit outside the asymptotic regime.
inline LineFit fit_loglog(const std::vector<double>& scales,
                          const std::vector<double>& values,
                          std::size_t window = 4) {
    assert(scales.size() == values.size());
    std::size_t n = scales.size();
    std::size_t k = (window == 0 || window > n) ? n : window;
    std::vector<double> lx, ly;
    lx.reserve(k);
    ly.reserve(k);
    for (std::size_t i = n - k; i < n; ++i) {
        lx.push_back(std::log(scales[i]));
        ly.push_back(std::log(std::abs(values[i])));
    }
    return fit_line(lx, ly);
}

/// Composite Simpson rule on a uniformly spaced table. A trailing
/// trapezoid segment absorbs an odd interval count.
inline double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    assert(n >= 2);
    std::size_t m = n - 1; // interval count
    double total = 0.0;
    std::size_t even_end = (m % 2 == 0) ? m : m - 1;
    for (std::size_t i = 0; i + 2 <= even_end; i += 2)
        total += (h / 3.0) * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (m % 2 != 0)
        total += 0.5 * h * (f[m - 1] + f[m]);
    return total;
}

/// Cubic Hermite interpolation on [0,1] given endpoint values and
/// endpoint derivatives scaled by the interval length.
inline double hermite(double t, double f0, double f1, double hd0, double hd1) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * hd0 +
           (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * hd1;
}

inline double hermite_derivative(double t, double f0, double f1, double hd0, double hd1) {
    const double t2 = t * t;
    return (6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * hd0 +
           (-6 * t2 + 6 * t) * f1 + (3 * t2 - 2 * t) * hd1;
}

/// Area of the unit sphere S^{N-1}; the N=1 "sphere" is two points.
inline double unit_sphere_area(int dim) {
    return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

/// Run fn(i) for i in [0, n) on up to `jobs` threads. Results must be
/// written into preallocated slots so the output order is deterministic.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(jobs, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace spikelab
