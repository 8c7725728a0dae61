#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace scalecalc {

enum class BoundaryCondition { Dirichlet, Neumann, Mixed };

// Geometry presets whose Laplace (or higher-order) spectra are known in closed
// form. All geometries are fixed at unit size: circle of circumference 2*pi,
// flat torus with all radii 1, unit round sphere, interval of length 1.
struct ManifoldModel {
    enum class Kind { Circle, FlatTorus, RoundSphere, Interval, SyntheticOrderD };

    Kind kind = Kind::Circle;
    int dimension = 1;                                   // n for torus / sphere / order-d
    int order = 2;                                       // operator order for SyntheticOrderD
    BoundaryCondition bc = BoundaryCondition::Dirichlet; // interval only

    static ManifoldModel circle();
    static ManifoldModel flat_torus(int n);
    static ManifoldModel round_sphere(int n);
    static ManifoldModel interval(BoundaryCondition bc);
    static ManifoldModel synthetic_order_d(int n, int d);

    std::string name() const;
};

struct SpectrumEntry {
    double eigenvalue = 0.0;
    std::size_t multiplicity = 1;
};

// A nondecreasing eigenvalue sequence, stored as strictly increasing levels
// with multiplicities. `size()` counts with multiplicity; `eigenvalue(rank)`
// indexes the expanded sequence starting at rank 1.
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(std::vector<SpectrumEntry> entries, std::string provenance);

    const std::vector<SpectrumEntry>& entries() const noexcept { return entries_; }
    const std::string& provenance() const noexcept { return provenance_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    double eigenvalue(std::size_t rank) const;
    std::vector<double> expanded() const;
    double min_eigenvalue() const;

private:
    std::vector<SpectrumEntry> entries_;
    std::vector<std::size_t> cumulative_;
    std::string provenance_;
    std::size_t size_ = 0;
};

// First `count` eigenvalues of the model, counted with multiplicity. The last
// stored level is clipped so the expanded length equals `count` exactly.
Spectrum enumerate_spectrum(const ManifoldModel& model, std::size_t count);

// Sorted union of the two eigenvalue multisets; equal levels merge and their
// multiplicities add.
Spectrum merge_spectra(const Spectrum& a, const Spectrum& b);

// Same spectrum with every eigenvalue moved by `shift`.
Spectrum shift_spectrum(const Spectrum& s, double shift);

struct WeylFit {
    double exponent = 0.0;      // slope q of log lambda against log rank
    double constant = 0.0;      // C with lambda_mu ~ C * mu^q
    double residual = 0.0;      // rms residual in log-log coordinates
    double tail_fraction = 0.5;
    std::size_t count = 0;      // number of points in the fit window
};

// Least-squares line through (log mu, log v_mu) over the trailing
// `tail_fraction` of the sequence. Values in the window must be positive.
WeylFit fit_power_law(std::span<const double> values, double tail_fraction);

// Power-law fit of the expanded eigenvalue sequence. Requires at least 100
// materialized eigenvalues; non-positive eigenvalues inside the fit window
// raise FitError (shift the spectrum first).
WeylFit weyl_fit(const Spectrum& s, double tail_fraction = 0.5);

// Asymptotic growth exponent the model's eigenvalues should exhibit.
double expected_weyl_exponent(const ManifoldModel& model);

}  // namespace scalecalc
