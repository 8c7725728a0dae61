#include "scalecalc/fourier.hpp"

#include "scalecalc/errors.hpp"
#include "scalecalc/growth.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace scalecalc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);
const double kInvSqrt2Pi = 1.0 / std::sqrt(kTwoPi);

std::size_t next_pow2(std::size_t x) {
    std::size_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

bool is_pow2(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

// Compensated dot product accumulated in extended precision. The level-k
// products reach magnitudes near m^(2k), so the quadrature sums must cancel
// far below the plain double rounding floor.
double compensated_dot(const std::vector<double>& a, const std::vector<double>& b) {
    long double sum = 0.0L, comp = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long double term = static_cast<long double>(a[i]) * b[i] - comp;
        const long double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return static_cast<double>(sum);
}

// (2*pi/n) sum_i a_i b_i, the trapezoid rule on the periodic grid.
double quadrature_product(const std::vector<double>& a, const std::vector<double>& b) {
    return compensated_dot(a, b) * (kTwoPi / static_cast<double>(a.size()));
}

double grid_point(std::size_t i, std::size_t n) {
    return kTwoPi * static_cast<double>(i) / static_cast<double>(n);
}

// Extended-precision grid for the gram quadratures. The off-diagonal gate is
// 1e-10 after multiplication by factors near m^(2k) ~ 1e7, so the raw trig
// tables cannot afford double rounding; 80-bit samples keep the orthogonality
// defect near 1e-13.
std::vector<long double> trig_samples_l(ModeType type, std::size_t m, std::size_t n) {
    constexpr long double two_pi_l = 2.0L * std::numbers::pi_v<long double>;
    std::vector<long double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long double t =
            two_pi_l * static_cast<long double>(i) / static_cast<long double>(n);
        switch (type) {
            case ModeType::Constant: out[i] = 1.0L; break;
            case ModeType::Cosine: out[i] = std::cos(static_cast<long double>(m) * t); break;
            case ModeType::Sine: out[i] = std::sin(static_cast<long double>(m) * t); break;
        }
    }
    return out;
}

// (2*pi/n) sum_i a_i b_i with everything in extended precision.
double quadrature_product_l(const std::vector<long double>& a,
                            const std::vector<long double>& b) {
    constexpr long double two_pi_l = 2.0L * std::numbers::pi_v<long double>;
    long double sum = 0.0L, comp = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long double term = a[i] * b[i] - comp;
        const long double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return static_cast<double>(sum * two_pi_l / static_cast<long double>(a.size()));
}

FourierCoefficients transform(const std::vector<double>& samples, std::size_t max_frequency) {
    const std::size_t n = samples.size();
    const double scale = kTwoPi / static_cast<double>(n);
    FourierCoefficients coeffs;
    {
        long double sum = 0.0L;
        for (double v : samples) sum += v;
        coeffs.c0 = static_cast<double>(sum) * scale * kInvSqrt2Pi;
    }
    coeffs.cosine.resize(max_frequency);
    coeffs.sine.resize(max_frequency);
    for (std::size_t m = 1; m <= max_frequency; ++m) {
        long double cs = 0.0L, ss = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(m) * grid_point(i, n);
            cs += static_cast<long double>(samples[i]) * std::cos(t);
            ss += static_cast<long double>(samples[i]) * std::sin(t);
        }
        coeffs.cosine[m - 1] = static_cast<double>(cs) * scale * kInvSqrtPi;
        coeffs.sine[m - 1] = static_cast<double>(ss) * scale * kInvSqrtPi;
    }
    return coeffs;
}

}  // namespace

std::size_t circle_mode_frequency(std::size_t mu) {
    if (mu == 0) throw std::domain_error("modes are indexed from 1");
    return mu / 2;
}

double circle_mode_eigenvalue(std::size_t mu) {
    const double m = static_cast<double>(circle_mode_frequency(mu));
    return m * m;
}

ModeType circle_mode_type(std::size_t mu) {
    if (mu == 0) throw std::domain_error("modes are indexed from 1");
    if (mu == 1) return ModeType::Constant;
    return (mu % 2 == 0) ? ModeType::Cosine : ModeType::Sine;
}

double weight_sum(double lambda, unsigned k) {
    double sum = 1.0, term = 1.0;
    for (unsigned j = 1; j <= k; ++j) {
        term *= lambda;
        sum += term;
    }
    return sum;
}

CircleFunction CircleFunction::from_function(std::function<double(double)> u) {
    if (!u) throw std::invalid_argument("missing evaluator");
    const double gap = std::fabs(u(0.0) - u(kTwoPi));
    if (gap > 1e-8)
        throw std::invalid_argument("function does not close up at the seam");
    CircleFunction f;
    f.eval_ = std::move(u);
    return f;
}

CircleFunction CircleFunction::from_samples(std::vector<double> samples) {
    if (samples.size() < 64 || !is_pow2(samples.size()))
        throw std::invalid_argument("samples must number a power of two, at least 64");
    CircleFunction f;
    f.samples_ = std::move(samples);
    return f;
}

std::vector<double> CircleFunction::sample(std::size_t n) const {
    if (sampled()) {
        if (n != samples_.size())
            throw ResolutionError("sampled circle functions are fixed at their own resolution");
        return samples_;
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = eval_(grid_point(i, n));
    return out;
}

double FourierCoefficients::coefficient(std::size_t mu) const {
    if (mu == 0) throw std::domain_error("modes are indexed from 1");
    if (mu == 1) return c0;
    const std::size_t m = mu / 2;
    if (m > max_frequency()) throw std::out_of_range("mode beyond the analyzed band");
    return (mu % 2 == 0) ? cosine[m - 1] : sine[m - 1];
}

FourierCoefficients analyze(const CircleFunction& u, std::size_t max_frequency) {
    std::size_t n;
    if (u.sampled()) {
        n = u.sample_count();
        if (n < 4 * max_frequency)
            throw ResolutionError("need at least four samples per analyzed frequency");
    } else {
        n = next_pow2(std::max<std::size_t>(64, 4 * max_frequency));
    }
    return transform(u.sample(n), max_frequency);
}

std::vector<std::vector<double>> gram_matrix(const std::vector<std::size_t>& modes,
                                             unsigned k, std::size_t samples) {
    if (modes.empty()) throw std::invalid_argument("empty mode list");
    std::size_t max_freq = 1;
    for (std::size_t mu : modes) max_freq = std::max(max_freq, circle_mode_frequency(mu));
    for (std::size_t a = 0; a < modes.size(); ++a)
        for (std::size_t b = a + 1; b < modes.size(); ++b)
            if (modes[a] == modes[b]) throw std::invalid_argument("repeated mode in list");
    if (samples < 4 * max_freq)
        throw ResolutionError("need at least four samples per frequency in the mode list");

    // Raw trig samples per (type, frequency); normalizations and the spectral
    // derivative factors stay outside the quadrature sums.
    std::map<std::pair<int, std::size_t>, std::vector<long double>> cache;
    const auto sample_of = [&](ModeType type, std::size_t m) -> const std::vector<long double>& {
        const auto key = std::make_pair(static_cast<int>(type), m);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, trig_samples_l(type, m, samples)).first;
        return it->second;
    };

    struct ModeInfo {
        std::size_t freq;
        ModeType base;
        ModeType deriv;
        double sign;  // sign of the odd-level derivative coefficient
        double norm;
    };
    std::vector<ModeInfo> info;
    info.reserve(modes.size());
    for (std::size_t mu : modes) {
        const ModeType base = circle_mode_type(mu);
        ModeInfo mi;
        mi.freq = circle_mode_frequency(mu);
        mi.base = base;
        mi.deriv = (base == ModeType::Cosine) ? ModeType::Sine : ModeType::Cosine;
        mi.sign = (base == ModeType::Cosine) ? -1.0 : 1.0;
        mi.norm = (base == ModeType::Constant) ? kInvSqrt2Pi : kInvSqrtPi;
        info.push_back(mi);
    }

    const std::size_t n = modes.size();
    std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            const ModeInfo& ia = info[a];
            const ModeInfo& ib = info[b];
            const double q_even =
                quadrature_product_l(sample_of(ia.base, ia.freq), sample_of(ib.base, ib.freq));
            double even_factor = 1.0, odd_factor = 0.0;
            const double mm = static_cast<double>(ia.freq) * static_cast<double>(ib.freq);
            double power = 1.0;
            for (unsigned level = 1; level <= k; ++level) {
                power *= mm;
                if (level % 2 == 0)
                    even_factor += power;
                else
                    odd_factor += power;
            }
            double entry = even_factor * q_even;
            if (odd_factor != 0.0 && ia.freq > 0 && ib.freq > 0) {
                const double q_odd = quadrature_product_l(sample_of(ia.deriv, ia.freq),
                                                          sample_of(ib.deriv, ib.freq));
                entry += ia.sign * ib.sign * odd_factor * q_odd;
            }
            entry *= ia.norm * ib.norm;
            gram[a][b] = entry;
            gram[b][a] = entry;
        }
    }
    return gram;
}

std::vector<double> sequence_coordinates(const FourierCoefficients& u, unsigned k0) {
    if (k0 == 0) throw std::domain_error("the pairing level must be at least 1");
    std::vector<double> coords(u.size());
    for (std::size_t mu = 1; mu <= coords.size(); ++mu) {
        const double lambda = circle_mode_eigenvalue(mu);
        coords[mu - 1] = u.coefficient(mu) * std::sqrt(weight_sum(lambda, k0));
    }
    return coords;
}

SobolevReport sobolev_report(const CircleFunction& u, unsigned k_max,
                             std::size_t max_frequency) {
    std::size_t n;
    if (u.sampled()) {
        n = u.sample_count();
    } else {
        n = next_pow2(std::max<std::size_t>(64, 8 * std::max<std::size_t>(max_frequency, 1)));
    }
    if (n < 4 * max_frequency)
        throw ResolutionError("need at least four samples per analyzed frequency");
    const std::vector<double> samples = u.sample(n);

    // Everything recoverable under the aliasing guard; used for the tail check.
    const std::size_t cap = n / 4;
    const FourierCoefficients full = transform(samples, cap);

    double tail = 0.0, total = full.c0 * full.c0;
    for (std::size_t m = 1; m <= cap; ++m) {
        const double mass = full.cosine[m - 1] * full.cosine[m - 1] +
                            full.sine[m - 1] * full.sine[m - 1];
        const double weighted = weight_sum(static_cast<double>(m) * static_cast<double>(m),
                                           k_max) * mass;
        total += weighted;
        if (m > max_frequency) tail += weighted;
    }
    if (total > 0.0 && std::sqrt(tail / total) > 1e-8)
        throw ResolutionError("spectral tail beyond the requested band is not negligible");

    const std::size_t band = std::min(max_frequency, cap);

    SobolevReport report;
    double deriv_sq = 0.0;
    std::vector<double> deriv(n);
    for (unsigned k = 0; k <= k_max; ++k) {
        if (k == 0) {
            deriv_sq = quadrature_product(samples, samples);
        } else {
            // spectral differentiation: multiply by the frequency, trade
            // cosine for sine, then integrate the square on the grid
            for (std::size_t i = 0; i < n; ++i) {
                const double t = grid_point(i, n);
                double s = 0.0;
                for (std::size_t m = 1; m <= band; ++m) {
                    const double factor = pow_unsigned(static_cast<double>(m), k);
                    const double a = full.cosine[m - 1];
                    const double b = full.sine[m - 1];
                    const double mt = static_cast<double>(m) * t;
                    if (k % 2 == 0)
                        s += factor * (a * std::cos(mt) + b * std::sin(mt));
                    else
                        s += factor * (-a * std::sin(mt) + b * std::cos(mt));
                }
                deriv[i] = s * kInvSqrtPi;
            }
            deriv_sq += quadrature_product(deriv, deriv);
        }

        double weight_sq = full.c0 * full.c0;  // weight_sum(0, k) = 1
        for (std::size_t m = 1; m <= band; ++m) {
            const double mass = full.cosine[m - 1] * full.cosine[m - 1] +
                                full.sine[m - 1] * full.sine[m - 1];
            weight_sq += weight_sum(static_cast<double>(m) * static_cast<double>(m), k) * mass;
        }

        SobolevReport::Level level;
        level.k = k;
        level.derivative_route = std::sqrt(deriv_sq);
        level.weight_route = std::sqrt(weight_sq);
        level.ratio = (level.weight_route == 0.0)
                          ? (level.derivative_route == 0.0 ? 1.0 : 0.0)
                          : level.derivative_route / level.weight_route;
        report.levels.push_back(level);
    }
    return report;
}

}  // namespace scalecalc
