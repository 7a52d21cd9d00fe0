#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "shiftlab/subdivision.hpp"

using namespace shiftlab;

namespace {

Mask hat_mask() { return Mask(LaurentPolynomial({0.5, 1.0, 0.5}, -1)); }

Mask b2_mask() { return Mask(LaurentPolynomial({0.25, 0.75, 0.75, 0.25}, 0)); }

MaskSchedule hat_schedule() { return MaskSchedule({hat_mask()}); }

double hat(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

}  // namespace

TEST_CASE("mask construction checks the coefficient sum") {
    CHECK_THROWS_AS(Mask(LaurentPolynomial({1.0, 1.0, 1.0}, 0)), std::invalid_argument);
    CHECK_NOTHROW(Mask(LaurentPolynomial({0.5, 1.0, 0.5}, -1)));
    // Unit-normalized input is doubled.
    const Mask m = Mask::from(LaurentPolynomial({0.25, 0.5, 0.25}, -1), Normalization::Unit);
    CHECK(std::abs(m.symbol().coeff(0) - cplx(1.0)) < 1e-15);
    CHECK(m.is_real());
}

TEST_CASE("one refinement step from the delta start reproduces the mask") {
    const SampledFunction c1 = subdivide_step(hat_mask(), delta());
    CHECK(c1.level == 1);
    CHECK(c1.lo == -1);
    REQUIRE(c1.values.size() == 3);
    CHECK(std::abs(c1.values[0] - cplx(0.5)) < 1e-15);
    CHECK(std::abs(c1.values[1] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(c1.values[2] - cplx(0.5)) < 1e-15);
}

TEST_CASE("two hat refinement steps match the hand convolution") {
    const SampledFunction c2 = subdivide_step(hat_mask(), subdivide_step(hat_mask(), delta()));
    CHECK(c2.level == 2);
    CHECK(c2.lo == -3);
    REQUIRE(c2.values.size() == 7);
    const double expect[] = {0.25, 0.5, 0.75, 1.0, 0.75, 0.5, 0.25};
    for (std::size_t i = 0; i < 7; ++i) CHECK(std::abs(c2.values[i] - cplx(expect[i])) < 1e-15);
}

TEST_CASE("refining zero data yields zero data") {
    SampledFunction z{0, -2, std::vector<cplx>(5, cplx(0.0)), };
    const SampledFunction out = subdivide_step(hat_mask(), z);
    CHECK(out.max_abs() == 0.0);
    CHECK_THROWS_AS(subdivide_step(hat_mask(), SampledFunction{}), std::invalid_argument);
}

TEST_CASE("hat cascade is exact on dyadic points at depth ten") {
    const SampledFunction f = run(hat_schedule(), delta(), 10);
    CHECK(f.level == 10);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        CHECK(std::abs(f.values[i] - cplx(hat(f.t(i)))) < 1e-12);
    }
}

TEST_CASE("a single run level equals one refinement step") {
    const SampledFunction a = run(hat_schedule(), delta(), 1);
    const SampledFunction b = subdivide_step(hat_mask(), delta());
    CHECK(a.level == b.level);
    CHECK(a.lo == b.lo);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("quadratic B-spline cascade data sums shifted copies to one") {
    const int r = 8;
    const std::int64_t period = std::int64_t(1) << r;
    const SampledFunction f = run(MaskSchedule({b2_mask()}), delta(), r);
    for (std::int64_t i = 0; i < period; ++i) {
        cplx sum = 0.0;
        for (std::int64_t k = -4; k <= 4; ++k) sum += f.at_index(i - k * period);
        CHECK(std::abs(sum - cplx(1.0)) < 1e-10);
    }
}

TEST_CASE("basic limit of the hat schedule interpolates the hat function") {
    const SampledFunction f = basic_limit(hat_schedule(), 3);
    CHECK(f.level == 3);
    CHECK(std::abs(f.at_index(0) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(f.at_index(4) - cplx(0.5)) < 1e-14);   // t = 1/2
    CHECK(std::abs(f.at_index(-4) - cplx(0.5)) < 1e-14);  // t = -1/2
}

TEST_CASE("one-coefficient mask keeps all mass at the origin") {
    const MaskSchedule sched({Mask(LaurentPolynomial({2.0}, 0))});
    const SampledFunction f = basic_limit(sched, 5);
    REQUIRE(f.values.size() == 1);
    CHECK(f.lo == 0);
    CHECK(std::abs(f.values[0] - cplx(32.0)) < 1e-12);  // each step doubles the point mass
    const Interval sb = support_bound(sched);
    CHECK(sb.lo == 0.0);
    CHECK(sb.hi == 0.0);
}

TEST_CASE("order-one exponential scheme stays positive and inside [-1, 0]") {
    const MaskSchedule sched({exponential_mask({{cplx(1.0), 0}}, 1)},
                             ExponentialTail{{{cplx(1.0), 0}}, 0});
    const SampledFunction f = basic_limit(sched, 8);
    const Interval sb = support_bound(sched);
    CHECK(sb.lo == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sb.hi == doctest::Approx(0.0).epsilon(1e-12));
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        CHECK(f.t(i) >= sb.lo - 1e-12);
        CHECK(f.t(i) <= sb.hi + 1e-12);
        CHECK(f.values[i].real() > 0.0);
        CHECK(std::abs(f.values[i].imag()) < 1e-14);
    }
}

TEST_CASE("support bound worked cases") {
    CHECK(support_bound(hat_schedule()).lo == doctest::Approx(-1.0));
    CHECK(support_bound(hat_schedule()).hi == doctest::Approx(1.0));

    const MaskSchedule on03({b2_mask()});
    CHECK(support_bound(on03).lo == doctest::Approx(0.0));
    CHECK(support_bound(on03).hi == doctest::Approx(3.0));

    // Head level on [0,1], repeated tail on [-1,1]:
    // 2^{-1}[0,1] + sum_{j>=2} 2^{-j}[-1,1] = [-1/2, 1].
    const Mask head1(LaurentPolynomial({1.0, 1.0}, 0));
    const MaskSchedule mixed({head1, hat_mask()});
    CHECK(support_bound(mixed).lo == doctest::Approx(-0.5));
    CHECK(support_bound(mixed).hi == doctest::Approx(1.0));
}

TEST_CASE("dimension bound sums interval lengths and rounds up") {
    CHECK(dimension_bound({Interval{-1.0, 1.0}}) == 2);
    CHECK(dimension_bound({}) == 0);
    CHECK(dimension_bound({Interval{0.0, 3.0}, Interval{-1.0, 1.0}}) == 5);
    CHECK(dimension_bound({Interval{0.0, 0.5}}) == 1);
}

TEST_CASE("refinement is linear in the starting data") {
    std::mt19937 rng(333u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const MaskSchedule sched({hat_mask(), b2_mask()});
    for (int trial = 0; trial < 10; ++trial) {
        SampledFunction c{0, -3, std::vector<cplx>(7)};
        SampledFunction d{0, -3, std::vector<cplx>(7)};
        for (int i = 0; i < 7; ++i) {
            c.values[i] = cplx(gauss(rng), gauss(rng));
            d.values[i] = cplx(gauss(rng), gauss(rng));
        }
        const cplx alpha(gauss(rng), gauss(rng));
        const cplx beta(gauss(rng), gauss(rng));
        SampledFunction mix = c;
        for (int i = 0; i < 7; ++i) mix.values[i] = alpha * c.values[i] + beta * d.values[i];

        const SampledFunction rc = run(sched, c, 2);
        const SampledFunction rd = run(sched, d, 2);
        const SampledFunction rm = run(sched, mix, 2);
        for (std::size_t i = 0; i < rm.values.size(); ++i) {
            const std::int64_t k = rm.lo + static_cast<std::int64_t>(i);
            const cplx want = alpha * rc.at_index(k) + beta * rd.at_index(k);
            CHECK(std::abs(rm.values[i] - want) < 1e-12);
        }
    }
}

TEST_CASE("hat cascade values agree across consecutive depths on shared points") {
    const SampledFunction a = basic_limit(hat_schedule(), 6);
    const SampledFunction b = basic_limit(hat_schedule(), 7);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const std::int64_t k = a.lo + static_cast<std::int64_t>(i);
        CHECK(std::abs(a.values[i] - b.at_index(2 * k)) < 1e-12);
    }
}

TEST_CASE("deep-refinement samples of the hat limit are exact") {
    const SampledFunction f = limit_samples(hat_schedule(), 4, Interval{-0.99, 0.99});
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        CHECK(std::abs(f.values[i] - cplx(hat(f.t(i)))) < 1e-12);
    }
}

TEST_CASE("deep-refinement samples match the exponential closed form") {
    // Basic limit of the level-dependent masks prod (z + e^{-2^{-j}}) is
    // c * e^t on (-1, 0] with c = 1/(1 - e^{-1}).
    const MaskSchedule sched({exponential_mask({{cplx(1.0), 0}}, 1)},
                             ExponentialTail{{{cplx(1.0), 0}}, 0});
    const double c = 1.0 / (1.0 - std::exp(-1.0));
    const SampledFunction f = limit_samples(sched, 3, Interval{-0.9, -0.01});
    REQUIRE(!f.values.empty());
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double want = c * std::exp(f.t(i));
        CHECK(std::abs(f.values[i] - cplx(want)) < 1e-7 * want);
    }
}

TEST_CASE("level-dependent exponential masks match the closed form") {
    // Single lambda = 1, order 1: level-j symbol 2 (z + q) / (1 + q) with
    // q = e^{-2^{-j}}, exponents shifted to [-1, 0].
    for (int level = 1; level <= 4; ++level) {
        const Mask m = exponential_mask({{cplx(1.0), 0}}, level);
        const double q = std::exp(-std::pow(2.0, -level));
        CHECK(m.lo() == -1);
        CHECK(m.hi() == 0);
        CHECK(std::abs(m.symbol().coeff(-1) - cplx(2.0 * q / (1.0 + q))) < 1e-14);
        CHECK(std::abs(m.symbol().coeff(0) - cplx(2.0 / (1.0 + q))) < 1e-14);
    }
    // A factor vanishing at z = 1 is rejected.
    CHECK_THROWS_AS(exponential_mask({{cplx(0.0, -2.0 * kTwoPi / 2.0), 0}}, 1), std::domain_error);
}

TEST_CASE("schedule level indexing draws head masks then the tail rule") {
    const MaskSchedule sched({hat_mask(), b2_mask()});
    CHECK(sched.head_size() == 2);
    CHECK(sched.mask_at(1).lo() == -1);
    CHECK(sched.mask_at(2).lo() == 0);
    CHECK(sched.mask_at(3).lo() == 0);  // repeat-last tail
    CHECK(!sched.is_stationary());
    CHECK(MaskSchedule({hat_mask()}).is_stationary());
    CHECK_THROWS_AS(sched.mask_at(0), std::invalid_argument);

    const MaskSchedule expo({exponential_mask({{cplx(1.0), 0}}, 1)},
                            ExponentialTail{{{cplx(1.0), 0}}, 0});
    CHECK(!expo.is_stationary());
    // The tail rule reproduces exponential_mask at the right level.
    const Mask m3 = expo.mask_at(3);
    const Mask want = exponential_mask({{cplx(1.0), 0}}, 3);
    CHECK(std::abs(m3.symbol().coeff(-1) - want.symbol().coeff(-1)) < 1e-15);
    CHECK(std::abs(m3.symbol().coeff(0) - want.symbol().coeff(0)) < 1e-15);
}
