#include "scalecalc/errors.hpp"
#include "scalecalc/growth.hpp"
#include "scalecalc/spectrum.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

using namespace scalecalc;

namespace {

GrowthFunction circle_growth(std::size_t count) {
    return shifted_growth(enumerate_spectrum(ManifoldModel::circle(), count));
}

}  // namespace

TEST_CASE("evaluation of the three growth kinds") {
    const GrowthFunction square = GrowthFunction::power_law(1.0, 2.0);
    CHECK(square(3) == 9.0);
    CHECK(square(5) == 25.0);
    CHECK_THROWS_AS((void)square(0), std::domain_error);

    const GrowthFunction circle = circle_growth(16);
    CHECK(circle(1) == 1.0);
    CHECK(circle(2) == 2.0);
    CHECK(circle(7) == 10.0);

    const GrowthFunction prefix = GrowthFunction::explicit_prefix(
        {1.0, 4.0, 9.0}, PowerLawTail{1.0, 2.0});
    CHECK(prefix(2) == 4.0);
    CHECK(prefix(5) == 25.0);  // continued by the tail
    CHECK(prefix.materializable() == SIZE_MAX);

    const GrowthFunction bare = GrowthFunction::explicit_prefix({1.0, 2.0, 2.0});
    CHECK(bare.materializable() == 3);
    CHECK_THROWS_AS((void)bare(4), TruncationError);
}

TEST_CASE("construction rejects bad data") {
    CHECK_THROWS_AS(GrowthFunction::power_law(0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(GrowthFunction::power_law(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(GrowthFunction::explicit_prefix({}), std::invalid_argument);
    CHECK_THROWS_AS(GrowthFunction::explicit_prefix({1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(GrowthFunction::explicit_prefix({0.0, 1.0}), std::invalid_argument);
    // tail must continue the prefix without dropping below the last value
    CHECK_THROWS_AS(GrowthFunction::explicit_prefix({1.0, 9.0}, PowerLawTail{1.0, 1.0}),
                    std::invalid_argument);

    const auto circle =
        std::make_shared<Spectrum>(enumerate_spectrum(ManifoldModel::circle(), 8));
    CHECK_THROWS_AS(GrowthFunction::spectrum_backed(circle, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(GrowthFunction::spectrum_backed(nullptr, 1.0), std::invalid_argument);
}

TEST_CASE("pointwise powers") {
    const GrowthFunction square = GrowthFunction::power_law(1.0, 2.0);
    CHECK(power(square, 3)(2) == 64.0);

    SUBCASE("power one is the identity") {
        const GrowthFunction same = power(square, 1);
        for (std::size_t mu = 1; mu <= 20; ++mu) CHECK(same(mu) == square(mu));
    }

    SUBCASE("power zero is the bounded level-0 weight") {
        const GrowthFunction one = power(square, 0);
        CHECK(one.bounded());
        CHECK(one(17) == 1.0);
        CHECK_FALSE(square.bounded());
    }

    SUBCASE("powers add exactly") {
        const GrowthFunction f = GrowthFunction::power_law(1.0, 1.0);
        for (unsigned j = 0; j <= 5; ++j)
            for (unsigned k = 0; j + k <= 10; ++k)
                for (std::size_t mu = 1; mu <= 30; ++mu)
                    CHECK(power(f, j + k)(mu) == power(f, j)(mu) * power(f, k)(mu));
    }

    SUBCASE("powers of spectrum-backed functions") {
        const GrowthFunction circle = circle_growth(16);
        const GrowthFunction cubed = power(circle, 3);
        CHECK(cubed(7) == 1000.0);
        CHECK(cubed.pointwise_power() == 3);
    }
}

TEST_CASE("sorted merge of growth values") {
    const GrowthFunction linear = GrowthFunction::power_law(1.0, 1.0);
    const GrowthFunction square = GrowthFunction::power_law(1.0, 2.0);

    SUBCASE("linear against square, ties take the left value") {
        const MergePrefix m = merge_growth_prefix(linear, square, 7);
        CHECK(m.values == std::vector<double>{1, 1, 2, 3, 4, 4, 5});
        const std::vector<MergeSlot::Source> expected{
            MergeSlot::Source::Left,  MergeSlot::Source::Right, MergeSlot::Source::Left,
            MergeSlot::Source::Left,  MergeSlot::Source::Left,  MergeSlot::Source::Right,
            MergeSlot::Source::Left};
        for (std::size_t i = 0; i < 7; ++i) CHECK(m.slots[i].source == expected[i]);
    }

    SUBCASE("self-merge halves the index") {
        const MergePrefix m = merge_growth_prefix(linear, linear, 7);
        CHECK(m.values == std::vector<double>{1, 1, 2, 2, 3, 3, 4});
        for (std::size_t mu = 1; mu <= 7; ++mu)
            CHECK(m.values[mu - 1] == static_cast<double>((mu - 1) / 2 + 1));
    }

    SUBCASE("the interleaving is a bijection onto the consumed prefixes") {
        const MergePrefix m = merge_growth_prefix(linear, square, 100);
        std::size_t left = 0, right = 0;
        for (const auto& slot : m.slots) {
            if (slot.source == MergeSlot::Source::Left)
                CHECK(slot.index == ++left);  // each source consumed in order
            else
                CHECK(slot.index == ++right);
        }
        CHECK(left + right == 100);
    }

    SUBCASE("matches the concatenate-and-sort oracle") {
        const GrowthFunction circle = circle_growth(300);
        const MergePrefix m = merge_growth_prefix(circle, square, 200);
        CHECK(m.values == oracle::sorted_merge(circle.values(200), square.values(200), 200));
    }

    SUBCASE("commutative in the values") {
        const GrowthFunction circle = circle_growth(300);
        CHECK(merge_growth_prefix(circle, square, 150).values ==
              merge_growth_prefix(square, circle, 150).values);
    }

    SUBCASE("associative in the values") {
        const GrowthFunction cube = GrowthFunction::power_law(0.5, 3.0);
        const GrowthFunction ab = merge_growth(linear, square, 60);
        const GrowthFunction bc = merge_growth(square, cube, 60);
        CHECK(merge_growth_prefix(ab, cube, 60).values ==
              merge_growth_prefix(linear, bc, 60).values);
    }

    SUBCASE("exhausting a tail-less prefix reports the achieved length") {
        const GrowthFunction short_prefix = GrowthFunction::explicit_prefix({1.0, 2.0, 3.0});
        try {
            merge_growth_prefix(short_prefix, linear, 10);
            FAIL("expected a truncation error");
        } catch (const TruncationError& e) {
            CHECK(e.achieved() == 6);
        }
    }

    SUBCASE("merge_growth carries the unboundedness certificate") {
        const GrowthFunction merged = merge_growth(linear, square, 50);
        CHECK(merged.kind() == GrowthKind::ExplicitPrefix);
        CHECK(merged.certified_unbounded());
        const GrowthFunction capped = GrowthFunction::explicit_prefix({1.0, 2.0, 2.5});
        CHECK_FALSE(merge_growth(capped, capped, 4).certified_unbounded());
    }
}

TEST_CASE("equivalence verdicts") {
    const GrowthFunction square = GrowthFunction::power_law(1.0, 2.0);

    SUBCASE("reflexive with constant one") {
        const EquivalenceVerdict v = equivalent(square, square, 100);
        CHECK(v.related);
        CHECK(v.constant == 1.0);
        CHECK(v.mode == EquivalenceVerdict::Mode::SymbolicExact);
    }

    SUBCASE("coefficients absorb into the constant") {
        const EquivalenceVerdict v =
            equivalent(square, GrowthFunction::power_law(3.0, 2.0), 100);
        CHECK(v.related);
        CHECK(v.constant == 3.0);
        CHECK(v.tested_prefix == 0);
    }

    SUBCASE("different exponents are unrelated") {
        const EquivalenceVerdict v =
            equivalent(GrowthFunction::power_law(1.0, 1.0), square, 100);
        CHECK_FALSE(v.related);
        CHECK(v.mode == EquivalenceVerdict::Mode::SymbolicExact);
    }

    SUBCASE("numeric mode records the tested prefix and is symmetric") {
        const GrowthFunction circle = circle_growth(600);
        const EquivalenceVerdict v = equivalent(circle, square, 500);
        CHECK(v.related);
        CHECK(v.mode == EquivalenceVerdict::Mode::PrefixNumeric);
        CHECK(v.tested_prefix == 500);
        const EquivalenceVerdict w = equivalent(square, circle, 500);
        CHECK(w.constant == v.constant);
        // witness constant actually bounds the ratio on the prefix
        for (std::size_t mu = 1; mu <= 500; ++mu) {
            CHECK(circle(mu) <= v.constant * square(mu) * (1 + 1e-12));
            CHECK(square(mu) <= v.constant * circle(mu) * (1 + 1e-12));
        }
    }
}

TEST_CASE("classification into power-law classes") {
    SUBCASE("power laws classify symbolically") {
        const GrowthClass c = classify(GrowthFunction::power_law(7.0, 1.5), 10);
        CHECK(c.classified());
        CHECK(c.exact());
        CHECK(c.class_exponent() == 1.5);
    }

    SUBCASE("circle growth classifies near exponent two") {
        const GrowthClass c = classify(circle_growth(10000), 10000);
        CHECK_FALSE(c.exact());
        CHECK(std::fabs(c.class_exponent() - 2.0) < 0.05);
    }

    SUBCASE("failure modes") {
        CHECK_THROWS_AS(classify(power(GrowthFunction::power_law(1.0, 2.0), 0), 100),
                        UnsupportedClassError);
        CHECK_THROWS_AS(classify(GrowthFunction::explicit_prefix({1.0, 2.0, 3.0}), 100),
                        FitError);  // prefix too short to fit
        CHECK_THROWS_AS(GrowthClass::power_class(-1.0), std::invalid_argument);
    }
}

TEST_CASE("class order and the merge rule") {
    const GrowthClass linear = GrowthClass::power_class(1.0);
    const GrowthClass square = GrowthClass::power_class(2.0);

    CHECK(leq_class(linear, square));
    CHECK_FALSE(leq_class(square, linear));
    CHECK(same_class(square, GrowthClass::power_class(2.0)));

    SUBCASE("the smaller exponent wins a merge") {
        CHECK(merge_class(square, linear).class_exponent() == 1.0);
        CHECK(merge_class(linear, square).class_exponent() == 1.0);
        CHECK(merge_class(square, square).class_exponent() == 2.0);
    }

    SUBCASE("a merge never exceeds either factor") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> exponent(0.2, 4.0);
        for (int trial = 0; trial < 50; ++trial) {
            const GrowthClass a = GrowthClass::power_class(exponent(rng));
            const GrowthClass b = GrowthClass::power_class(exponent(rng));
            const GrowthClass m = merge_class(a, b);
            CHECK(leq_class(m, a));
            CHECK(leq_class(m, b));
        }
    }

    SUBCASE("fitted classes compare with tolerance") {
        const GrowthClass fitted = GrowthClass::power_class(2.03, false);
        CHECK(same_class(fitted, square));
        CHECK(leq_class(fitted, square));
    }
}

TEST_CASE("idempotency of power laws under merge") {
    SUBCASE("exponent two to ten thousand") {
        const IdempotencyReport r =
            idempotency_check(GrowthFunction::power_law(1.0, 2.0), 10000);
        CHECK(r.passed);
        CHECK(r.violations.empty());
        CHECK(r.exponent_k == 2);
    }

    SUBCASE("spot values sit inside the two-sided bounds") {
        const GrowthFunction linear = GrowthFunction::power_law(1.0, 1.0);
        const MergePrefix m = merge_growth_prefix(linear, linear, 5);
        CHECK(m.values[4] == 3.0);
        CHECK(2.5 <= m.values[4]);
        CHECK(m.values[4] <= 10.0);

        const GrowthFunction cube = GrowthFunction::power_law(1.0, 3.0);
        const MergePrefix mc = merge_growth_prefix(cube, cube, 1);
        CHECK(mc.values[0] == 1.0);  // global minimum, bounds [1/8, 8]
    }

    SUBCASE("requires a unit-coefficient integer power law") {
        CHECK_THROWS_AS(idempotency_check(GrowthFunction::power_law(2.0, 2.0), 10),
                        std::invalid_argument);
        CHECK_THROWS_AS(idempotency_check(GrowthFunction::power_law(1.0, 1.5), 10),
                        std::invalid_argument);
    }
}

TEST_CASE("perturbing one factor moves the merge by at most the same constant") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> exp_dist(0.5, 3.0);
    std::uniform_real_distribution<double> coef_dist(0.5, 2.0);
    std::uniform_real_distribution<double> factor_dist(1.1, 3.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::size_t prefix = 300;

    for (int trial = 0; trial < 20; ++trial) {
        CAPTURE(trial);
        const GrowthFunction f = GrowthFunction::power_law(coef_dist(rng), exp_dist(rng));
        const GrowthFunction h = GrowthFunction::power_law(coef_dist(rng), exp_dist(rng));
        const double c = factor_dist(rng);

        std::vector<double> perturbed(prefix);
        double prev = 0.0;
        for (std::size_t mu = 1; mu <= prefix; ++mu) {
            prev = std::max(prev, f(mu) * std::exp(unit(rng) * std::log(c)));
            perturbed[mu - 1] = prev;
        }
        const GrowthFunction f_prime =
            GrowthFunction::explicit_prefix(std::move(perturbed), {}, true);

        const MergePrefix a = merge_growth_prefix(f, h, prefix);
        const MergePrefix b = merge_growth_prefix(f_prime, h, prefix);
        const double c_eff = c * (1 + 1e-12);
        for (std::size_t i = 0; i < prefix; ++i) {
            CHECK(b.values[i] <= a.values[i] * c_eff);
            CHECK(b.values[i] >= a.values[i] / c_eff);
        }
    }
}
