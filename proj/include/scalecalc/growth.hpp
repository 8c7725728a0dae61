#pragma once

#include "scalecalc/spectrum.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace scalecalc {

// Exact integer power by repeated multiplication. Exact whenever base and all
// intermediate products are exactly representable.
inline double pow_unsigned(double base, unsigned k) {
    double r = 1.0;
    while (k--) r *= base;
    return r;
}

enum class GrowthKind { PowerLaw, SpectrumBacked, ExplicitPrefix };

struct PowerLawTail {
    double coefficient = 1.0;
    double exponent = 1.0;
};

// A nondecreasing weight sequence f : {1, 2, ...} -> (0, inf), normally
// unbounded. The constant sequence (pointwise power zero) is allowed but
// flagged `bounded` and is only meant as a level-zero weight.
//
// Three representations:
//   PowerLaw        f(mu) = a * mu^p
//   SpectrumBacked  f(mu) = (lambda_mu + shift)^power, values >= 1
//   ExplicitPrefix  stored values, optionally continued by a power-law tail
class GrowthFunction {
public:
    static GrowthFunction power_law(double coefficient, double exponent);
    static GrowthFunction spectrum_backed(std::shared_ptr<const Spectrum> spectrum, double shift);
    // `certified_unbounded` lets a caller assert unboundedness for a tail-less
    // prefix, e.g. when the prefix came from merging two unbounded sequences.
    static GrowthFunction explicit_prefix(std::vector<double> values,
                                          std::optional<PowerLawTail> tail = {},
                                          bool certified_unbounded = false);

    GrowthKind kind() const noexcept { return kind_; }
    double operator()(std::size_t mu) const;  // 1-based; mu = 0 is a domain error
    std::vector<double> values(std::size_t count) const;
    std::size_t materializable() const noexcept;
    bool bounded() const noexcept;
    bool certified_unbounded() const noexcept;
    unsigned pointwise_power() const noexcept { return power_; }

    bool is_power_law() const noexcept { return kind_ == GrowthKind::PowerLaw; }
    double coefficient() const;  // PowerLaw only
    double exponent() const;     // PowerLaw only
    std::shared_ptr<const Spectrum> spectrum() const;  // SpectrumBacked only
    double shift() const;                              // SpectrumBacked only
    const std::vector<double>& prefix_values() const;  // ExplicitPrefix only
    const std::optional<PowerLawTail>& tail() const;   // ExplicitPrefix only

    friend GrowthFunction power(const GrowthFunction& f, unsigned k);

private:
    GrowthFunction() = default;
    double base_value(std::size_t mu) const;

    GrowthKind kind_ = GrowthKind::PowerLaw;
    double coefficient_ = 1.0;
    double exponent_ = 1.0;
    std::shared_ptr<const Spectrum> spectrum_;
    double shift_ = 0.0;
    std::vector<double> prefix_;
    std::optional<PowerLawTail> tail_;
    bool inherited_unbounded_ = false;
    unsigned power_ = 1;
};

// Pointwise k-th power. k = 0 gives the constant-one weight (bounded).
GrowthFunction power(const GrowthFunction& f, unsigned k);

struct MergeSlot {
    enum class Source { Left, Right };
    Source source = Source::Left;
    std::size_t index = 0;  // 1-based position inside the source sequence
};

struct MergePrefix {
    std::vector<double> values;
    std::vector<MergeSlot> slots;
};

// Sorted interleaving of the two value multisets, first `count` values. Ties
// take the left value first; the value sequence itself does not depend on the
// tie-break, only the slot labels do. If a source runs out of materializable
// values before the merge is decided, TruncationError reports how many merged
// values were safely determined.
MergePrefix merge_growth_prefix(const GrowthFunction& f, const GrowthFunction& h,
                                std::size_t count);

// Same merge wrapped as an ExplicitPrefix growth function of length `count`.
GrowthFunction merge_growth(const GrowthFunction& f, const GrowthFunction& h,
                            std::size_t count);

struct EquivalenceVerdict {
    enum class Mode { SymbolicExact, PrefixNumeric };
    bool related = false;
    double constant = 1.0;          // witness c >= 1 with (1/c) f <= h <= c f
    std::size_t tested_prefix = 0;  // 0 when the verdict is symbolic
    Mode mode = Mode::PrefixNumeric;
};

// Two power laws compare symbolically (related iff exponents match). Any other
// pair is compared numerically on a finite prefix; the verdict then only
// claims the bound up to `tested_prefix`.
EquivalenceVerdict equivalent(const GrowthFunction& f, const GrowthFunction& h,
                              std::size_t prefix);

// Tolerance used when comparing fitted (non-symbolic) class exponents.
inline constexpr double kClassTolerance = 0.05;

// Equivalence class of a growth function. Within the power-law family the
// exponent is the complete class datum; a wrapped non-power-law representative
// stays unclassified until fitted.
class GrowthClass {
public:
    static GrowthClass power_class(double exponent, bool exact = true);
    static GrowthClass wrap(GrowthFunction representative);

    bool classified() const noexcept { return exponent_.has_value(); }
    double class_exponent() const;  // UnsupportedClassError when unclassified
    bool exact() const noexcept { return exact_; }
    const GrowthFunction& representative() const noexcept { return rep_; }

private:
    GrowthClass(GrowthFunction rep, std::optional<double> e, bool exact);

    GrowthFunction rep_;
    std::optional<double> exponent_;
    bool exact_ = false;
};

// Fit-based classification into a power-law class; the tail half of the
// materialized prefix feeds the same regression used for eigenvalue fits.
// Power laws classify symbolically without fitting.
GrowthClass classify(const GrowthFunction& f, std::size_t prefix);

bool same_class(const GrowthClass& a, const GrowthClass& b);
bool leq_class(const GrowthClass& a, const GrowthClass& b);

// Class of the merged sequence: the smaller exponent wins.
GrowthClass merge_class(const GrowthClass& a, const GrowthClass& b);

struct IdempotencyReport {
    struct Violation {
        std::size_t mu = 0;
        double merged = 0.0;
        double lower = 0.0;
        double upper = 0.0;
    };
    unsigned exponent_k = 0;
    std::size_t horizon = 0;
    bool passed = true;
    std::vector<Violation> violations;
};

// For f(mu) = mu^k checks (1/2)^k f(mu) <= (f merged with f)(mu) <= 2^k f(mu)
// for all mu up to the horizon.
IdempotencyReport idempotency_check(const GrowthFunction& f, std::size_t horizon);

// Growth function carried by a spectrum: weight mu -> lambda_mu + shift with
// shift = max(0, 1 - lambda_min), so all weights are >= 1. A spectrum whose
// materialized eigenvalues are all equal is rejected as degenerate.
GrowthFunction shifted_growth(Spectrum s);

}  // namespace scalecalc
