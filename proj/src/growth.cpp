#include "scalecalc/growth.hpp"

#include "scalecalc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scalecalc {

namespace {

constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

}  // namespace

GrowthFunction GrowthFunction::power_law(double coefficient, double exponent) {
    if (!(coefficient > 0.0))
        throw std::invalid_argument("power law coefficient must be positive");
    if (exponent < 0.0)
        throw std::invalid_argument("power law exponent must be nonnegative");
    GrowthFunction f;
    f.kind_ = GrowthKind::PowerLaw;
    f.coefficient_ = coefficient;
    f.exponent_ = exponent;
    return f;
}

GrowthFunction GrowthFunction::spectrum_backed(std::shared_ptr<const Spectrum> spectrum,
                                               double shift) {
    if (!spectrum || spectrum->empty())
        throw std::invalid_argument("spectrum-backed growth needs a non-empty spectrum");
    if (shift < 0.0)
        throw std::invalid_argument("spectrum shift must be nonnegative");
    if (spectrum->min_eigenvalue() + shift < 1.0 - 1e-12)
        throw std::invalid_argument("shifted spectrum values must start at 1 or above");
    GrowthFunction f;
    f.kind_ = GrowthKind::SpectrumBacked;
    f.spectrum_ = std::move(spectrum);
    f.shift_ = shift;
    return f;
}

GrowthFunction GrowthFunction::explicit_prefix(std::vector<double> values,
                                               std::optional<PowerLawTail> tail,
                                               bool certified_unbounded) {
    if (values.empty())
        throw std::invalid_argument("explicit prefix must carry at least one value");
    double prev = 0.0;
    for (double v : values) {
        if (!(v > 0.0))
            throw std::invalid_argument("explicit prefix values must be positive");
        if (v < prev)
            throw std::invalid_argument("explicit prefix values must be nondecreasing");
        prev = v;
    }
    if (tail) {
        if (!(tail->coefficient > 0.0) || !(tail->exponent > 0.0))
            throw std::invalid_argument("tail classifier needs positive coefficient and exponent");
        const double seam =
            tail->coefficient * std::pow(static_cast<double>(values.size() + 1), tail->exponent);
        if (seam < values.back() * (1.0 - 1e-12))
            throw std::invalid_argument("tail classifier dips below the stored prefix at the seam");
    }
    GrowthFunction f;
    f.kind_ = GrowthKind::ExplicitPrefix;
    f.prefix_ = std::move(values);
    f.tail_ = tail;
    f.inherited_unbounded_ = certified_unbounded;
    return f;
}

double GrowthFunction::base_value(std::size_t mu) const {
    switch (kind_) {
        case GrowthKind::PowerLaw:
            return coefficient_ * std::pow(static_cast<double>(mu), exponent_);
        case GrowthKind::SpectrumBacked:
            if (mu > spectrum_->size())
                throw TruncationError("growth value beyond the materialized spectrum",
                                      spectrum_->size());
            return spectrum_->eigenvalue(mu) + shift_;
        case GrowthKind::ExplicitPrefix:
            if (mu <= prefix_.size()) return prefix_[mu - 1];
            if (tail_)
                return tail_->coefficient * std::pow(static_cast<double>(mu), tail_->exponent);
            throw TruncationError("growth value beyond the stored prefix", prefix_.size());
    }
    throw std::logic_error("unreachable growth kind");
}

double GrowthFunction::operator()(std::size_t mu) const {
    if (mu == 0) throw std::domain_error("growth functions are indexed from 1");
    if (kind_ == GrowthKind::PowerLaw) return base_value(mu);
    return pow_unsigned(base_value(mu), power_);
}

std::vector<double> GrowthFunction::values(std::size_t count) const {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t mu = 1; mu <= count; ++mu) out.push_back((*this)(mu));
    return out;
}

std::size_t GrowthFunction::materializable() const noexcept {
    switch (kind_) {
        case GrowthKind::PowerLaw: return kUnlimited;
        case GrowthKind::SpectrumBacked: return spectrum_->size();
        case GrowthKind::ExplicitPrefix: return tail_ ? kUnlimited : prefix_.size();
    }
    return 0;
}

bool GrowthFunction::bounded() const noexcept {
    return kind_ == GrowthKind::PowerLaw && exponent_ == 0.0;
}

bool GrowthFunction::certified_unbounded() const noexcept {
    switch (kind_) {
        case GrowthKind::PowerLaw: return exponent_ > 0.0;
        case GrowthKind::SpectrumBacked: return true;  // eigenvalues grow without bound
        case GrowthKind::ExplicitPrefix: return tail_.has_value() || inherited_unbounded_;
    }
    return false;
}

double GrowthFunction::coefficient() const {
    if (kind_ != GrowthKind::PowerLaw) throw std::logic_error("not a power law");
    return coefficient_;
}

double GrowthFunction::exponent() const {
    if (kind_ != GrowthKind::PowerLaw) throw std::logic_error("not a power law");
    return exponent_;
}

std::shared_ptr<const Spectrum> GrowthFunction::spectrum() const {
    if (kind_ != GrowthKind::SpectrumBacked) throw std::logic_error("not spectrum backed");
    return spectrum_;
}

double GrowthFunction::shift() const {
    if (kind_ != GrowthKind::SpectrumBacked) throw std::logic_error("not spectrum backed");
    return shift_;
}

const std::vector<double>& GrowthFunction::prefix_values() const {
    if (kind_ != GrowthKind::ExplicitPrefix) throw std::logic_error("not an explicit prefix");
    return prefix_;
}

const std::optional<PowerLawTail>& GrowthFunction::tail() const {
    if (kind_ != GrowthKind::ExplicitPrefix) throw std::logic_error("not an explicit prefix");
    return tail_;
}

GrowthFunction power(const GrowthFunction& f, unsigned k) {
    if (k == 0) return GrowthFunction::power_law(1.0, 0.0);  // constant level-0 weight
    GrowthFunction g = f;
    if (g.kind_ == GrowthKind::PowerLaw) {
        g.coefficient_ = pow_unsigned(g.coefficient_, k);
        g.exponent_ *= static_cast<double>(k);
    } else {
        g.power_ *= k;
    }
    return g;
}

MergePrefix merge_growth_prefix(const GrowthFunction& f, const GrowthFunction& h,
                                std::size_t count) {
    if (count == 0) throw std::invalid_argument("merge length must be at least 1");
    // A merged prefix of length `count` consumes at most `count` values from
    // each side, so materializing that many is always enough.
    const std::size_t nf = std::min(count, f.materializable());
    const std::size_t nh = std::min(count, h.materializable());
    const std::vector<double> fv = f.values(nf);
    const std::vector<double> hv = h.values(nh);

    MergePrefix out;
    out.values.reserve(count);
    out.slots.reserve(count);
    std::size_t i = 0, j = 0;
    while (out.values.size() < count) {
        const bool f_has = i < nf;
        const bool h_has = j < nh;
        bool take_left;
        if (f_has && h_has) {
            take_left = fv[i] <= hv[j];  // ties take the left value
        } else if (f_has) {
            // The other side is exhausted; its unseen values are at least its
            // last known one, so smaller-or-equal values are still safe.
            if (!(nh > 0 && fv[i] <= hv[nh - 1]))
                throw TruncationError("merge undecided beyond the materializable values",
                                      out.values.size());
            take_left = true;
        } else if (h_has) {
            if (!(nf > 0 && hv[j] <= fv[nf - 1]))
                throw TruncationError("merge undecided beyond the materializable values",
                                      out.values.size());
            take_left = false;
        } else {
            throw TruncationError("merge undecided beyond the materializable values",
                                  out.values.size());
        }
        if (take_left) {
            out.values.push_back(fv[i]);
            out.slots.push_back({MergeSlot::Source::Left, i + 1});
            ++i;
        } else {
            out.values.push_back(hv[j]);
            out.slots.push_back({MergeSlot::Source::Right, j + 1});
            ++j;
        }
    }
    return out;
}

GrowthFunction merge_growth(const GrowthFunction& f, const GrowthFunction& h,
                            std::size_t count) {
    MergePrefix merged = merge_growth_prefix(f, h, count);
    const bool certified = f.certified_unbounded() && h.certified_unbounded();
    return GrowthFunction::explicit_prefix(std::move(merged.values), {}, certified);
}

EquivalenceVerdict equivalent(const GrowthFunction& f, const GrowthFunction& h,
                              std::size_t prefix) {
    if (prefix == 0) throw std::invalid_argument("equivalence prefix must be at least 1");
    EquivalenceVerdict verdict;
    if (f.is_power_law() && h.is_power_law()) {
        verdict.mode = EquivalenceVerdict::Mode::SymbolicExact;
        verdict.tested_prefix = 0;
        if (f.exponent() == h.exponent()) {
            verdict.related = true;
            const double ratio = f.coefficient() / h.coefficient();
            verdict.constant = std::max(ratio, 1.0 / ratio);
        } else {
            verdict.related = false;
            verdict.constant = std::numeric_limits<double>::infinity();
        }
        return verdict;
    }
    const std::size_t n = std::min({prefix, f.materializable(), h.materializable()});
    double c = 1.0;
    for (std::size_t mu = 1; mu <= n; ++mu) {
        const double ratio = f(mu) / h(mu);
        c = std::max({c, ratio, 1.0 / ratio});
    }
    verdict.mode = EquivalenceVerdict::Mode::PrefixNumeric;
    verdict.related = std::isfinite(c);
    verdict.constant = c;
    verdict.tested_prefix = n;
    return verdict;
}

GrowthClass::GrowthClass(GrowthFunction rep, std::optional<double> e, bool exact)
    : rep_(std::move(rep)), exponent_(e), exact_(exact) {}

GrowthClass GrowthClass::power_class(double exponent, bool exact) {
    if (!(exponent > 0.0))
        throw std::invalid_argument("growth class exponent must be positive");
    return GrowthClass(GrowthFunction::power_law(1.0, exponent), exponent, exact);
}

GrowthClass GrowthClass::wrap(GrowthFunction representative) {
    if (representative.bounded())
        throw UnsupportedClassError("bounded weights carry no growth class");
    std::optional<double> e;
    bool exact = false;
    if (representative.is_power_law()) {
        e = representative.exponent();
        exact = true;
    }
    return GrowthClass(std::move(representative), e, exact);
}

double GrowthClass::class_exponent() const {
    if (!exponent_)
        throw UnsupportedClassError("growth class has no power-law exponent; classify it first");
    return *exponent_;
}

GrowthClass classify(const GrowthFunction& f, std::size_t prefix) {
    if (f.bounded())
        throw UnsupportedClassError("bounded weights carry no growth class");
    if (f.is_power_law()) return GrowthClass::power_class(f.exponent(), true);
    const std::size_t n = std::min(prefix, f.materializable());
    if (n < 16)
        throw FitError("prefix too short to classify a growth function");
    const std::vector<double> values = f.values(n);
    const WeylFit fit = fit_power_law(values, 0.5);
    if (!(fit.exponent > 0.0))
        throw FitError("fitted growth exponent is not positive");
    return GrowthClass::power_class(fit.exponent, /*exact=*/false);
}

bool same_class(const GrowthClass& a, const GrowthClass& b) {
    const double ea = a.class_exponent();
    const double eb = b.class_exponent();
    if (a.exact() && b.exact()) return ea == eb;
    return std::fabs(ea - eb) <= kClassTolerance;
}

bool leq_class(const GrowthClass& a, const GrowthClass& b) {
    const double ea = a.class_exponent();
    const double eb = b.class_exponent();
    if (a.exact() && b.exact()) return ea <= eb;
    return ea <= eb + kClassTolerance;
}

GrowthClass merge_class(const GrowthClass& a, const GrowthClass& b) {
    const double e = std::min(a.class_exponent(), b.class_exponent());
    return GrowthClass::power_class(e, a.exact() && b.exact());
}

IdempotencyReport idempotency_check(const GrowthFunction& f, std::size_t horizon) {
    if (!f.is_power_law() || std::fabs(f.coefficient() - 1.0) > 1e-12)
        throw std::invalid_argument("idempotency check expects f(mu) = mu^k");
    const double p = f.exponent();
    const unsigned k = static_cast<unsigned>(std::lround(p));
    if (k == 0 || std::fabs(p - static_cast<double>(k)) > 1e-12)
        throw std::invalid_argument("idempotency check expects a positive integer exponent");
    if (horizon == 0) throw std::invalid_argument("idempotency horizon must be at least 1");

    const MergePrefix merged = merge_growth_prefix(f, f, horizon);
    const double lower_factor = pow_unsigned(0.5, k);
    const double upper_factor = pow_unsigned(2.0, k);

    IdempotencyReport report;
    report.exponent_k = k;
    report.horizon = horizon;
    for (std::size_t mu = 1; mu <= horizon; ++mu) {
        const double value = merged.values[mu - 1];
        const double fv = f(mu);
        const double lower = lower_factor * fv;
        const double upper = upper_factor * fv;
        if (!(lower <= value && value <= upper)) {
            report.passed = false;
            report.violations.push_back({mu, value, lower, upper});
        }
    }
    return report;
}

GrowthFunction shifted_growth(Spectrum s) {
    if (s.entries().size() < 2)
        throw std::invalid_argument(
            "degenerate spectrum: need at least two distinct eigenvalue levels");
    const double shift = std::max(0.0, 1.0 - s.min_eigenvalue());
    auto shared = std::make_shared<const Spectrum>(std::move(s));
    return GrowthFunction::spectrum_backed(std::move(shared), shift);
}

}  // namespace scalecalc
