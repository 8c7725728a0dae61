#include "scalecalc/scale_space.hpp"

#include "scalecalc/errors.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace scalecalc {

namespace {

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string class_label(const GrowthClass& c) {
    return "mu^" + short_number(c.class_exponent());
}

}  // namespace

FractalModel::FractalModel(GrowthFunction g, std::string provenance_label,
                           unsigned base_offset_k)
    : growth(std::move(g)), provenance(std::move(provenance_label)), base_offset(base_offset_k) {
    if (growth.bounded())
        throw std::invalid_argument("model growth must be unbounded");
    if (!growth.certified_unbounded())
        throw std::invalid_argument("model growth lacks an unboundedness certificate");
    if (growth(1) < 1.0 - 1e-12)
        throw std::invalid_argument("model growth must start at 1 or above");
    if (base_offset == 0)
        throw std::invalid_argument("base offset must be at least 1");
}

TruncatedVector::TruncatedVector(std::vector<double> c) : coords(std::move(c)) {
    if (coords.empty())
        throw std::invalid_argument("truncated vectors need at least one coordinate");
}

double level_inner_product(const FractalModel& m, unsigned level,
                           const TruncatedVector& x, const TruncatedVector& y) {
    if (x.truncation() != y.truncation())
        throw std::invalid_argument("truncation mismatch between the two vectors");
    double sum = 0.0;
    if (level == 0) {
        for (std::size_t i = 0; i < x.coords.size(); ++i) sum += x.coords[i] * y.coords[i];
        return sum;
    }
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        const double w = pow_unsigned(m.growth(i + 1), level);
        sum += w * x.coords[i] * y.coords[i];
    }
    return sum;
}

double level_norm(const FractalModel& m, unsigned level, const TruncatedVector& x) {
    return std::sqrt(level_inner_product(m, level, x, x));
}

double compact_inclusion_margin(const FractalModel& m, unsigned level,
                                std::size_t tail_start) {
    (void)level;  // the weight ratio between consecutive levels is 1/f at every level
    if (tail_start == 0) throw std::domain_error("tail start is indexed from 1");
    return 1.0 / m.growth(tail_start);
}

ScaleProduct scale_product(const FractalModel& a, const FractalModel& b, std::size_t count) {
    MergePrefix merged = merge_growth_prefix(a.growth, b.growth, count);
    GrowthFunction merged_growth = GrowthFunction::explicit_prefix(
        merged.values, {}, a.growth.certified_unbounded() && b.growth.certified_unbounded());

    ScaleProduct product{
        FractalModel(merged_growth, a.provenance + " (+) " + b.provenance,
                     std::max(a.base_offset, b.base_offset)),
        std::move(merged.slots),
        GrowthClass::wrap(merged_growth),
        AbsorbingFactor::Either,
    };

    try {
        const GrowthClass ca = classify(a.growth, count);
        const GrowthClass cb = classify(b.growth, count);
        if (ca.exact() && cb.exact())
            product.product_class = merge_class(ca, cb);
        else
            product.product_class = classify(merged_growth, count);
        if (same_class(ca, cb))
            product.absorbing = AbsorbingFactor::Either;
        else if (ca.class_exponent() < cb.class_exponent())
            product.absorbing = AbsorbingFactor::Left;
        else
            product.absorbing = AbsorbingFactor::Right;
    } catch (const FitError&) {
        // factors not classifiable on this prefix; keep the unclassified wrap
    }
    return product;
}

FractalModel reindex(const FractalModel& m, unsigned level_step) {
    if (level_step == 0)
        throw std::domain_error("reindex step must be at least 1");
    if (level_step == 1) return m;
    return FractalModel(power(m.growth, level_step),
                        m.provenance + "[" + std::to_string(level_step) + "]",
                        m.base_offset);
}

InvariantTable::InvariantTable(unsigned j_max, GrowthClass base)
    : j_max_(j_max), base_(std::move(base)) {
    if (j_max_ == 0) throw std::invalid_argument("invariant table needs j_max >= 1");
}

GrowthClass InvariantTable::at(unsigned i, unsigned j) const {
    if (i >= j)
        throw std::domain_error("invariant entries live on pairs with i < j");
    if (j > j_max_)
        throw std::domain_error("level pair beyond the table range");
    const unsigned d = j - i;
    return GrowthClass::power_class(base_.class_exponent() * static_cast<double>(d),
                                    base_.exact());
}

InvariantTable invariant_table(const FractalModel& m, unsigned j_max,
                               std::size_t classify_prefix) {
    return InvariantTable(j_max, classify(m.growth, classify_prefix));
}

FractalModel mapping_space_model(unsigned domain_dimension, unsigned operator_order) {
    if (domain_dimension == 0)
        throw std::domain_error("domain dimension must be at least 1");
    if (operator_order == 0)
        throw std::domain_error("operator order must be at least 1");
    const double exponent =
        static_cast<double>(operator_order) / static_cast<double>(domain_dimension);
    const unsigned k0 = domain_dimension / 2 + 1;
    const std::string label = "map:n=" + std::to_string(domain_dimension) +
                              ",d=" + std::to_string(operator_order);
    return FractalModel(GrowthFunction::power_law(1.0, exponent), label, k0);
}

IsomorphismVerdict locally_isomorphic(const FractalModel& a, const FractalModel& b,
                                      std::size_t classify_prefix) {
    IsomorphismVerdict verdict;
    GrowthClass ca = GrowthClass::power_class(1.0);
    GrowthClass cb = GrowthClass::power_class(1.0);
    try {
        ca = classify(a.growth, classify_prefix);
        cb = classify(b.growth, classify_prefix);
    } catch (const Error& e) {
        verdict.decision = IsomorphismDecision::Undecided;
        verdict.certificate = std::string("growth class undecidable: ") + e.what();
        return verdict;
    }
    verdict.left_class = ca;
    verdict.right_class = cb;
    if (same_class(ca, cb)) {
        verdict.decision = IsomorphismDecision::Isomorphic;
        verdict.certificate = "shared growth class " + class_label(ca);
        if (!(ca.exact() && cb.exact()))
            verdict.certificate += " (fitted " + short_number(ca.class_exponent()) + " ~ " +
                                   short_number(cb.class_exponent()) + ")";
    } else {
        verdict.decision = IsomorphismDecision::NotIsomorphic;
        verdict.certificate = "level pair (0,1) classes differ: " + class_label(ca) +
                              " vs " + class_label(cb);
    }
    return verdict;
}

}  // namespace scalecalc
