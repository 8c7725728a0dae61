#include "scalecalc/spectrum.hpp"

#include "scalecalc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scalecalc {

namespace {

// Running builder that clips the last level so the expanded length is exact.
class SpectrumBuilder {
public:
    explicit SpectrumBuilder(std::size_t count) : remaining_(count) {}

    bool done() const noexcept { return remaining_ == 0; }

    void add(double eigenvalue, std::size_t multiplicity) {
        if (remaining_ == 0 || multiplicity == 0) return;
        const std::size_t take = std::min(multiplicity, remaining_);
        entries_.push_back({eigenvalue, take});
        remaining_ -= take;
    }

    std::vector<SpectrumEntry> take_entries() { return std::move(entries_); }

private:
    std::vector<SpectrumEntry> entries_;
    std::size_t remaining_;
};

// Number of ways to write each m <= cap as a sum of n integer squares,
// built by convolving against the one-dimensional counts.
std::vector<long long> sum_of_squares_counts(int n, std::size_t cap) {
    std::vector<long long> counts(cap + 1, 0);
    counts[0] = 1;
    for (std::size_t j = 1; j * j <= cap; ++j) counts[j * j] = 2;
    for (int step = 2; step <= n; ++step) {
        std::vector<long long> next(cap + 1, 0);
        for (std::size_t m = 0; m <= cap; ++m) {
            long long total = counts[m];
            for (std::size_t j = 1; j * j <= m; ++j) total += 2 * counts[m - j * j];
            next[m] = total;
        }
        counts.swap(next);
    }
    return counts;
}

double unit_ball_volume(int n) {
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

void enumerate_circle(SpectrumBuilder& builder) {
    for (std::size_t j = 0; !builder.done(); ++j)
        builder.add(static_cast<double>(j) * static_cast<double>(j), j == 0 ? 1 : 2);
}

void enumerate_torus(int n, std::size_t count, SpectrumBuilder& builder) {
    if (n == 1) {
        enumerate_circle(builder);
        return;
    }
    // Guess the norm cap from the ball volume, then grow it until the counts
    // cover the request.
    std::size_t cap = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(count) / unit_ball_volume(n), 2.0 / n))) + 8;
    while (true) {
        const std::vector<long long> counts = sum_of_squares_counts(n, cap);
        long long total = 0;
        for (long long c : counts) total += c;
        if (static_cast<std::size_t>(total) >= count) {
            for (std::size_t m = 0; m <= cap && !builder.done(); ++m)
                if (counts[m] > 0)
                    builder.add(static_cast<double>(m), static_cast<std::size_t>(counts[m]));
            return;
        }
        cap *= 2;
    }
}

unsigned long long binomial(unsigned long long top, unsigned long long k) {
    if (k > top) return 0;
    k = std::min(k, top - k);
    unsigned long long result = 1;
    for (unsigned long long i = 1; i <= k; ++i) {
        result = result * (top - k + i) / i;
    }
    return result;
}

void enumerate_sphere(int n, SpectrumBuilder& builder) {
    const unsigned long long un = static_cast<unsigned long long>(n);
    for (unsigned long long l = 0; !builder.done(); ++l) {
        const double lambda = static_cast<double>(l) * (static_cast<double>(l) + n - 1);
        // dim of degree-l spherical harmonics: C(n+l, n) - C(n+l-2, n)
        const unsigned long long mult =
            binomial(un + l, un) - (l >= 2 ? binomial(un + l - 2, un) : 0);
        builder.add(lambda, static_cast<std::size_t>(mult));
    }
}

void enumerate_interval(BoundaryCondition bc, std::size_t count, SpectrumBuilder& builder) {
    for (std::size_t mu = 1; mu <= count; ++mu) {
        double base = 0.0;
        switch (bc) {
            case BoundaryCondition::Dirichlet: base = static_cast<double>(mu); break;
            case BoundaryCondition::Neumann: base = static_cast<double>(mu) - 1.0; break;
            case BoundaryCondition::Mixed: base = static_cast<double>(mu) - 0.5; break;
        }
        const double root = std::numbers::pi * base;
        builder.add(root * root, 1);
    }
}

}  // namespace

ManifoldModel ManifoldModel::circle() { return ManifoldModel{}; }

ManifoldModel ManifoldModel::flat_torus(int n) {
    if (n < 1) throw std::invalid_argument("flat torus dimension must be at least 1");
    ManifoldModel m;
    m.kind = Kind::FlatTorus;
    m.dimension = n;
    return m;
}

ManifoldModel ManifoldModel::round_sphere(int n) {
    if (n < 1) throw std::invalid_argument("sphere dimension must be at least 1");
    ManifoldModel m;
    m.kind = Kind::RoundSphere;
    m.dimension = n;
    return m;
}

ManifoldModel ManifoldModel::interval(BoundaryCondition bc) {
    ManifoldModel m;
    m.kind = Kind::Interval;
    m.bc = bc;
    return m;
}

ManifoldModel ManifoldModel::synthetic_order_d(int n, int d) {
    if (n < 1) throw std::invalid_argument("domain dimension must be at least 1");
    if (d < 1) throw std::invalid_argument("operator order must be at least 1");
    ManifoldModel m;
    m.kind = Kind::SyntheticOrderD;
    m.dimension = n;
    m.order = d;
    return m;
}

std::string ManifoldModel::name() const {
    switch (kind) {
        case Kind::Circle: return "circle";
        case Kind::FlatTorus: return "torus:" + std::to_string(dimension);
        case Kind::RoundSphere: return "sphere:" + std::to_string(dimension);
        case Kind::Interval:
            switch (bc) {
                case BoundaryCondition::Dirichlet: return "interval:dirichlet";
                case BoundaryCondition::Neumann: return "interval:neumann";
                case BoundaryCondition::Mixed: return "interval:mixed";
            }
            return "interval";
        case Kind::SyntheticOrderD:
            return "orderd:n=" + std::to_string(dimension) + ",d=" + std::to_string(order);
    }
    return "unknown";
}

Spectrum::Spectrum(std::vector<SpectrumEntry> entries, std::string provenance)
    : entries_(std::move(entries)), provenance_(std::move(provenance)) {
    cumulative_.reserve(entries_.size());
    double prev = 0.0;
    bool first = true;
    for (const SpectrumEntry& e : entries_) {
        if (e.multiplicity == 0)
            throw std::invalid_argument("spectrum level with zero multiplicity");
        if (!first && !(prev < e.eigenvalue))
            throw std::invalid_argument("spectrum levels must be strictly increasing");
        prev = e.eigenvalue;
        first = false;
        size_ += e.multiplicity;
        cumulative_.push_back(size_);
    }
}

double Spectrum::eigenvalue(std::size_t rank) const {
    if (rank == 0) throw std::domain_error("eigenvalue rank starts at 1");
    if (rank > size_) throw std::out_of_range("eigenvalue rank beyond materialized spectrum");
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), rank);
    return entries_[static_cast<std::size_t>(it - cumulative_.begin())].eigenvalue;
}

std::vector<double> Spectrum::expanded() const {
    std::vector<double> out;
    out.reserve(size_);
    for (const SpectrumEntry& e : entries_)
        out.insert(out.end(), e.multiplicity, e.eigenvalue);
    return out;
}

double Spectrum::min_eigenvalue() const {
    if (entries_.empty()) throw std::domain_error("empty spectrum has no smallest eigenvalue");
    return entries_.front().eigenvalue;
}

Spectrum enumerate_spectrum(const ManifoldModel& model, std::size_t count) {
    if (count == 0) throw std::invalid_argument("spectrum request must cover at least one eigenvalue");
    SpectrumBuilder builder(count);
    switch (model.kind) {
        case ManifoldModel::Kind::Circle:
            enumerate_circle(builder);
            break;
        case ManifoldModel::Kind::FlatTorus:
            enumerate_torus(model.dimension, count, builder);
            break;
        case ManifoldModel::Kind::RoundSphere:
            enumerate_sphere(model.dimension, builder);
            break;
        case ManifoldModel::Kind::Interval:
            enumerate_interval(model.bc, count, builder);
            break;
        case ManifoldModel::Kind::SyntheticOrderD: {
            SpectrumBuilder torus_builder(count);
            enumerate_torus(model.dimension, count, torus_builder);
            std::vector<SpectrumEntry> entries = torus_builder.take_entries();
            if (model.order != 2) {
                const double half_order = model.order / 2.0;
                for (SpectrumEntry& e : entries)
                    e.eigenvalue = std::pow(e.eigenvalue, half_order);
            }
            return Spectrum(std::move(entries), model.name());
        }
    }
    return Spectrum(builder.take_entries(), model.name());
}

Spectrum merge_spectra(const Spectrum& a, const Spectrum& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<SpectrumEntry> merged;
    merged.reserve(a.entries().size() + b.entries().size());
    std::size_t i = 0, j = 0;
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    while (i < ea.size() || j < eb.size()) {
        if (j == eb.size() || (i < ea.size() && ea[i].eigenvalue < eb[j].eigenvalue)) {
            merged.push_back(ea[i++]);
        } else if (i == ea.size() || eb[j].eigenvalue < ea[i].eigenvalue) {
            merged.push_back(eb[j++]);
        } else {
            merged.push_back({ea[i].eigenvalue, ea[i].multiplicity + eb[j].multiplicity});
            ++i;
            ++j;
        }
    }
    return Spectrum(std::move(merged), a.provenance() + "+" + b.provenance());
}

Spectrum shift_spectrum(const Spectrum& s, double shift) {
    std::vector<SpectrumEntry> entries = s.entries();
    for (SpectrumEntry& e : entries) e.eigenvalue += shift;
    return Spectrum(std::move(entries), s.provenance());
}

WeylFit fit_power_law(std::span<const double> values, double tail_fraction) {
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw std::invalid_argument("tail fraction must lie in (0, 1]");
    const std::size_t total = values.size();
    std::size_t window = static_cast<std::size_t>(tail_fraction * static_cast<double>(total));
    window = std::max<std::size_t>(window, 2);
    if (window > total)
        throw FitError("fewer than two values available for the power-law fit");
    const std::size_t start = total - window;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
        const double v = values[start + i];
        if (!(v > 0.0))
            throw FitError("non-positive value inside the fit window; apply a positive shift first");
        const double x = std::log(static_cast<double>(start + i + 1));
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(window);
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw FitError("degenerate abscissa in the power-law fit");
    const double q = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - q * sx) / n;

    double ss = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
        const double x = std::log(static_cast<double>(start + i + 1));
        const double r = std::log(values[start + i]) - (q * x + intercept);
        ss += r * r;
    }

    WeylFit fit;
    fit.exponent = q;
    fit.constant = std::exp(intercept);
    fit.residual = std::sqrt(ss / n);
    fit.tail_fraction = tail_fraction;
    fit.count = window;
    return fit;
}

WeylFit weyl_fit(const Spectrum& s, double tail_fraction) {
    if (s.size() < 100)
        throw std::invalid_argument("eigenvalue fit requires at least 100 materialized eigenvalues");
    const std::vector<double> values = s.expanded();
    return fit_power_law(values, tail_fraction);
}

double expected_weyl_exponent(const ManifoldModel& model) {
    switch (model.kind) {
        case ManifoldModel::Kind::Circle: return 2.0;
        case ManifoldModel::Kind::FlatTorus: return 2.0 / model.dimension;
        case ManifoldModel::Kind::RoundSphere: return 2.0 / model.dimension;
        case ManifoldModel::Kind::Interval: return 2.0;
        case ManifoldModel::Kind::SyntheticOrderD:
            return static_cast<double>(model.order) / model.dimension;
    }
    return 0.0;
}

}  // namespace scalecalc
