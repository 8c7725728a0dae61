#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace scalecalc {

// Orthonormal real Fourier basis on the circle of circumference 2*pi:
//   mode 1            1/sqrt(2*pi)            frequency 0
//   mode 2m           cos(m t)/sqrt(pi)       frequency m
//   mode 2m+1         sin(m t)/sqrt(pi)       frequency m
// Mode mu is an eigenfunction of -d^2/dt^2 with eigenvalue floor(mu/2)^2.

enum class ModeType { Constant, Cosine, Sine };

std::size_t circle_mode_frequency(std::size_t mu);
double circle_mode_eigenvalue(std::size_t mu);
ModeType circle_mode_type(std::size_t mu);

// sum_{j=0..k} lambda^j, the level-k diagonal weight of a mode.
double weight_sum(double lambda, unsigned k);

// A function on the circle, given either as a closed-form evaluator on
// [0, 2*pi) or as uniform samples (a power of two, at least 64 of them).
// Closed forms must close up at the seam to within 1e-8.
class CircleFunction {
public:
    static CircleFunction from_function(std::function<double(double)> u);
    static CircleFunction from_samples(std::vector<double> samples);

    bool sampled() const noexcept { return !samples_.empty(); }
    std::size_t sample_count() const noexcept { return samples_.size(); }

    // Samples on the uniform grid t_i = 2*pi*i/n. A sampled function can only
    // be read at its own resolution.
    std::vector<double> sample(std::size_t n) const;

private:
    CircleFunction() = default;

    std::function<double(double)> eval_;
    std::vector<double> samples_;
};

struct FourierCoefficients {
    double c0 = 0.0;              // coefficient of 1/sqrt(2*pi)
    std::vector<double> cosine;   // cosine[m-1] pairs with cos(m t)/sqrt(pi)
    std::vector<double> sine;     // sine[m-1] pairs with sin(m t)/sqrt(pi)

    std::size_t max_frequency() const noexcept { return cosine.size(); }
    std::size_t size() const noexcept { return 1 + cosine.size() + sine.size(); }
    double coefficient(std::size_t mu) const;  // spectral mode ordering
};

// Coefficients up to frequency max_frequency via the discrete transform.
// Needs at least 4 * max_frequency samples (aliasing guard).
FourierCoefficients analyze(const CircleFunction& u, std::size_t max_frequency);

// Matrix of level-k Sobolev products between the listed basis modes
// (1-based spectral indices). Derivatives of a mode are taken spectrally
// (frequency powers, cosine and sine trading places); the products are then
// evaluated by quadrature on the sample grid. The result is diagonal with
// diagonal entries sum_{j<=k} lambda^j.
std::vector<std::vector<double>> gram_matrix(const std::vector<std::size_t>& modes,
                                             unsigned k, std::size_t samples = 4096);

// Coordinates of u inside the weighted sequence space: coordinate mu is the
// level-k0 pairing with mode mu, normalized by sqrt(sum_{j<=k0} lambda_mu^j).
std::vector<double> sequence_coordinates(const FourierCoefficients& u, unsigned k0);

struct SobolevReport {
    struct Level {
        unsigned k = 0;
        double derivative_route = 0.0;  // sqrt(sum_j ||u^(j)||^2), spectral derivatives
        double weight_route = 0.0;      // sqrt(sum_mu weight_sum(lambda_mu, k) c_mu^2)
        double ratio = 1.0;
    };
    std::vector<Level> levels;
};

// Level norms 0..k_max computed along both routes. The spectral tail beyond
// `max_frequency` must be negligible (relative mass below 1e-8), otherwise a
// ResolutionError asks for more resolution.
SobolevReport sobolev_report(const CircleFunction& u, unsigned k_max,
                             std::size_t max_frequency);

}  // namespace scalecalc
