#pragma once

// Independent reference computations used by the tests. Everything here is
// deliberately implemented along different routes than the library: eigenvalues
// come from finite-difference matrices via Sturm bisection, merges from
// sort-the-concatenation, integrals from composite Simpson.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.
// ---------------------------------------------------------------------------

// Number of eigenvalues of tridiag(diag, off) strictly below x.
inline int sturm_count_below(const std::vector<double>& diag,
                             const std::vector<double>& off, double x) {
    constexpr double pivmin = 1e-300;
    int count = 0;
    double q = diag[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        if (std::fabs(q) < pivmin) {
            // a vanishing pivot is treated as negative; count it now, since the
            // sign test above saw 0 and skipped it (keeps the count monotone in x)
            if (!(q < 0.0)) ++count;
            q = -pivmin;
        }
        q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

// k-th smallest eigenvalue (k is 0-based) via bisection on the Sturm count.
inline double tridiag_eigenvalue(const std::vector<double>& diag,
                                 const std::vector<double>& off, int k) {
    const std::size_t n = diag.size();
    double lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double left = (i > 0) ? std::fabs(off[i - 1]) : 0.0;
        const double right = (i + 1 < n) ? std::fabs(off[i]) : 0.0;
        lo = std::min(lo, diag[i] - left - right);
        hi = std::max(hi, diag[i] + left + right);
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-11 * std::max(1.0, std::fabs(hi)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count_below(diag, off, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

inline std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                               const std::vector<double>& off,
                                               std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(tridiag_eigenvalue(diag, off, static_cast<int>(k)));
    return out;
}

// ---------------------------------------------------------------------------
// Finite-difference operators for -u'' on [0,1].
// ---------------------------------------------------------------------------

enum class IntervalBc { Dirichlet, Neumann, Mixed };

// Second-order scheme on m subintervals (h = 1/m). Neumann ends use the
// mirror ghost point and the half-cell weight symmetrization, which turns the
// one-sided -2/h^2 coupling into a symmetric -sqrt(2)/h^2.
inline void interval_fd_matrix(IntervalBc bc, std::size_t m,
                               std::vector<double>& diag, std::vector<double>& off) {
    const double h = 1.0 / static_cast<double>(m);
    const double w = 1.0 / (h * h);
    std::size_t n = 0;
    switch (bc) {
        case IntervalBc::Dirichlet: n = m - 1; break;  // unknowns x_1 .. x_{m-1}
        case IntervalBc::Neumann:   n = m + 1; break;  // unknowns x_0 .. x_m
        case IntervalBc::Mixed:     n = m;     break;  // unknowns x_1 .. x_m
    }
    diag.assign(n, 2.0 * w);
    off.assign(n - 1, -w);
    const double corner = -std::numbers::sqrt2 * w;
    if (bc == IntervalBc::Neumann) {
        off.front() = corner;
        off.back() = corner;
    } else if (bc == IntervalBc::Mixed) {
        off.back() = corner;
    }
}

inline std::vector<double> interval_fd_eigenvalues(IntervalBc bc, std::size_t m,
                                                   std::size_t count) {
    std::vector<double> diag, off;
    interval_fd_matrix(bc, m, diag, off);
    return tridiag_eigenvalues(diag, off, count);
}

// Richardson extrapolation over grids m and m/2 removes the h^2 error term.
inline std::vector<double> interval_eigenvalues_richardson(IntervalBc bc, std::size_t m,
                                                           std::size_t count) {
    const std::vector<double> fine = interval_fd_eigenvalues(bc, m, count);
    const std::vector<double> coarse = interval_fd_eigenvalues(bc, m / 2, count);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
}

// ---------------------------------------------------------------------------
// Finite-difference spectrum of -u'' on the circle of circumference 2*pi.
// ---------------------------------------------------------------------------

// With n grid points the periodic second-difference operator has eigenvalues
// (4/h^2) sin^2(pi j / n), each frequency appearing twice except 0 and n/2.
inline std::vector<double> circle_fd_eigenvalues(std::size_t n, std::size_t count) {
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t j = 0; out.size() < count && j <= n / 2; ++j) {
        const double s = std::sin(std::numbers::pi * static_cast<double>(j) /
                                  static_cast<double>(n));
        const double lambda = 4.0 * s * s / (h * h);
        out.push_back(lambda);
        if (j > 0 && j < n - j && out.size() < count) out.push_back(lambda);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Merge and counting references.
// ---------------------------------------------------------------------------

// Sorted merge by concatenation: the blunt but obviously correct route.
inline std::vector<double> sorted_merge(std::vector<double> a,
                                        const std::vector<double>& b,
                                        std::size_t count) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    if (a.size() > count) a.resize(count);
    return a;
}

// Number of integer points of Z^n inside the ball |k|^2 <= r2 (n = 2 or 3).
inline long long lattice_points_in_ball(int n, double r2) {
    const long long r = static_cast<long long>(std::floor(std::sqrt(r2))) + 1;
    long long count = 0;
    if (n == 2) {
        for (long long x = -r; x <= r; ++x)
            for (long long y = -r; y <= r; ++y)
                if (static_cast<double>(x * x + y * y) <= r2) ++count;
    } else if (n == 3) {
        for (long long x = -r; x <= r; ++x)
            for (long long y = -r; y <= r; ++y)
                for (long long z = -r; z <= r; ++z)
                    if (static_cast<double>(x * x + y * y + z * z) <= r2) ++count;
    } else {
        throw std::invalid_argument("lattice_points_in_ball: n must be 2 or 3");
    }
    return count;
}

// ---------------------------------------------------------------------------
// Quadrature.
// ---------------------------------------------------------------------------

// Composite Simpson on [0, 2*pi] with an even number of panels.
inline double simpson_0_2pi(const std::function<double(double)>& f, std::size_t panels) {
    const double h = 2.0 * std::numbers::pi / static_cast<double>(panels);
    double sum = f(0.0) + f(2.0 * std::numbers::pi);
    for (std::size_t i = 1; i < panels; ++i)
        sum += f(i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace oracle
