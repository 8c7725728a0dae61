#pragma once

#include "scalecalc/growth.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scalecalc {

// A weighted sequence-space model: level k carries the weights f(mu)^k, so
// level 0 is the plain l^2 space and deeper levels shrink by 1/f per step.
struct FractalModel {
    GrowthFunction growth;
    std::string provenance;
    unsigned base_offset = 1;  // smallest k with 2k > domain dimension, when known

    FractalModel(GrowthFunction g, std::string provenance_label, unsigned base_offset_k);
};

struct TruncatedVector {
    std::vector<double> coords;

    explicit TruncatedVector(std::vector<double> c);
    std::size_t truncation() const noexcept { return coords.size(); }
};

// sum_mu f(mu)^level * x_mu * y_mu over the common truncation range.
// Mismatched truncations are a dimension error.
double level_inner_product(const FractalModel& m, unsigned level,
                           const TruncatedVector& x, const TruncatedVector& y);
double level_norm(const FractalModel& m, unsigned level, const TruncatedVector& x);

// sup over mu >= tail_start of the weight ratio between consecutive levels,
// which is 1 / f(tail_start) for nondecreasing f. Decays to zero in the tail;
// that decay is what makes each level-(k+1) ball compact inside level k.
double compact_inclusion_margin(const FractalModel& m, unsigned level,
                                std::size_t tail_start);

enum class AbsorbingFactor { Left, Right, Either };

struct ScaleProduct {
    FractalModel model;
    std::vector<MergeSlot> interleaving;  // coordinate origin for each merged slot
    GrowthClass product_class;
    AbsorbingFactor absorbing = AbsorbingFactor::Either;
};

// Direct sum of two models realized on the merged weight sequence. The merged
// growth is materialized to `count` values; the interleaving records which
// factor each merged coordinate came from. The product class equals the
// smaller of the two factor classes (that factor "absorbs" the other).
ScaleProduct scale_product(const FractalModel& a, const FractalModel& b,
                           std::size_t count = 4096);

// The same space viewed through every level_step-th level: weights f^j.
FractalModel reindex(const FractalModel& m, unsigned level_step);

// Classes of the relative inclusions between levels i < j. The entry at (i, j)
// is the class of f^(j-i), so it depends on the difference only.
class InvariantTable {
public:
    InvariantTable(unsigned j_max, GrowthClass base);

    unsigned j_max() const noexcept { return j_max_; }
    GrowthClass at(unsigned i, unsigned j) const;  // needs i < j <= j_max

private:
    unsigned j_max_ = 1;
    GrowthClass base_;
};

InvariantTable invariant_table(const FractalModel& m, unsigned j_max,
                               std::size_t classify_prefix = 10000);

// Model of maps from an n-dimensional domain, measured through an operator of
// the given order: growth mu^(order/n), base offset floor(n/2) + 1.
FractalModel mapping_space_model(unsigned domain_dimension, unsigned operator_order = 2);

enum class IsomorphismDecision { Isomorphic, NotIsomorphic, Undecided };

struct IsomorphismVerdict {
    IsomorphismDecision decision = IsomorphismDecision::Undecided;
    std::optional<GrowthClass> left_class;
    std::optional<GrowthClass> right_class;
    std::string certificate;
};

// Two models are locally isomorphic exactly when their growth classes agree.
// Unclassifiable growth yields an undecided verdict instead of a guess.
IsomorphismVerdict locally_isomorphic(const FractalModel& a, const FractalModel& b,
                                      std::size_t classify_prefix = 10000);

}  // namespace scalecalc
