#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "shiftlab/generation.hpp"

using namespace shiftlab;

namespace {

MaskSchedule hat_schedule() {
    return MaskSchedule({Mask(LaurentPolynomial({0.5, 1.0, 0.5}, -1))});
}

MaskSchedule b2_schedule() {
    return MaskSchedule({Mask(LaurentPolynomial({0.25, 0.75, 0.75, 0.25}, 0))});
}

}  // namespace

TEST_CASE("exponential spaces validate their spectrum") {
    CHECK(ExponentialSpace({{cplx(0.0), 1}}).dim() == 2);
    CHECK(ExponentialSpace({{cplx(0.0), 0}, {cplx(1.0), 1}}).dim() == 3);
    CHECK_THROWS_AS(ExponentialSpace({{cplx(0.0), 0}, {cplx(0.0, kTwoPi), 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExponentialSpace({{cplx(0.0), -1}}), std::invalid_argument);
}

TEST_CASE("constructed schedule for polynomials degree one is the hat scheme") {
    const MaskSchedule sched = construct_schedule(ExponentialSpace({{cplx(0.0), 1}}), 3);
    for (int level : {1, 2, 5}) {
        const Mask m = sched.mask_at(level);
        CHECK(m.lo() == -1);
        CHECK(m.hi() == 1);
        CHECK(std::abs(m.symbol().coeff(-1) - cplx(0.5)) < 1e-14);
        CHECK(std::abs(m.symbol().coeff(0) - cplx(1.0)) < 1e-14);
        CHECK(std::abs(m.symbol().coeff(1) - cplx(0.5)) < 1e-14);
    }
}

TEST_CASE("constructed schedule for a single exponential matches the closed form") {
    const MaskSchedule sched = construct_schedule(ExponentialSpace({{cplx(1.0), 0}}), 4);
    const Mask m1 = sched.mask_at(1);
    CHECK(m1.lo() == -1);
    CHECK(std::abs(m1.symbol().coeff(-1) - cplx(0.75508133759629092)) < 1e-15);
    CHECK(std::abs(m1.symbol().coeff(0) - cplx(1.2449186624037092)) < 1e-15);
    // Deeper levels follow 2 (z + q_j) / (1 + q_j) with q_j = e^{-2^-j}.
    for (int level : {2, 3, 7}) {
        const Mask m = sched.mask_at(level);
        const double q = std::exp(-std::pow(2.0, -level));
        CHECK(std::abs(m.symbol().coeff(-1) - cplx(2.0 * q / (1.0 + q))) < 1e-14);
        CHECK(std::abs(m.symbol().coeff(0) - cplx(2.0 / (1.0 + q))) < 1e-14);
    }
}

TEST_CASE("constructed schedule for plain constants is the indicator scheme") {
    const MaskSchedule sched = construct_schedule(ExponentialSpace({{cplx(0.0), 0}}), 2);
    const Mask m = sched.mask_at(1);
    CHECK(m.lo() == -1);
    CHECK(m.hi() == 0);
    CHECK(std::abs(m.symbol().coeff(-1) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(m.symbol().coeff(0) - cplx(1.0)) < 1e-14);
}

TEST_CASE("zero conditions hold for the cubic factor at order one") {
    const MaskSchedule sched = b2_schedule();
    const ZeroConditionReport report = check_zero_conditions(sched, cplx(0.0), 1, 1, 6);
    CHECK(report.all_pass);
    for (const ZeroConditionRow& row : report.rows) {
        for (bool ok : row.zero_ok) CHECK(ok);
        CHECK(row.nondegenerate);
        for (double r : row.zero_residual) CHECK(r < 1e-10);
    }
}

TEST_CASE("hat scheme satisfies order one but not order two conditions") {
    CHECK(check_zero_conditions(hat_schedule(), cplx(0.0), 1, 1, 4).all_pass);

    const ZeroConditionReport d2 = check_zero_conditions(hat_schedule(), cplx(0.0), 2, 1, 4);
    CHECK(!d2.all_pass);
    for (const ZeroConditionRow& row : d2.rows) {
        REQUIRE(row.zero_ok.size() == 3);
        CHECK(row.zero_ok[0]);
        CHECK(row.zero_ok[1]);
        CHECK(!row.zero_ok[2]);  // second derivative of (1+z)^2/2 is 1
        CHECK(row.nondegenerate);
    }
}

TEST_CASE("hat scheme fails the conditions for a nonzero exponent") {
    const ZeroConditionReport report = check_zero_conditions(hat_schedule(), cplx(1.0), 0, 1, 6);
    CHECK(!report.all_pass);
    for (const ZeroConditionRow& row : report.rows) {
        CHECK(!row.zero_ok[0]);
        CHECK(row.zero_residual[0] > 1e-6);
    }
}

TEST_CASE("constructed schedules pass their own conditions at depth") {
    const ExponentialSpace space({{cplx(1.0), 0}});
    const MaskSchedule sched = construct_schedule(space, 4);
    CHECK(check_zero_conditions(sched, cplx(1.0), 0, 1, 64).all_pass);

    const ExponentialSpace wide({{cplx(0.0), 1}, {cplx(0.5, 1.0), 0}});
    const MaskSchedule ws = construct_schedule(wide, 4);
    CHECK(check_zero_conditions(ws, cplx(0.0), 1, 1, 32).all_pass);
    CHECK(check_zero_conditions(ws, cplx(0.5, 1.0), 0, 1, 32).all_pass);
}

TEST_CASE("zero conditions honor the level offset convention") {
    const ExponentialSpace space({{cplx(1.0), 0}});
    const MaskSchedule shifted = construct_schedule(space, 3, 1);
    CHECK(check_zero_conditions(shifted, cplx(1.0), 0, 1, 8, 1e-10, 1).all_pass);
    // The unshifted reading of the same schedule places the roots elsewhere.
    CHECK(!check_zero_conditions(shifted, cplx(1.0), 0, 1, 8).all_pass);
}

TEST_CASE("zero conditions ignore integer support placement") {
    // The same symbol stored with two different support offsets must give
    // identical reports.
    const MaskSchedule centered = hat_schedule();
    const MaskSchedule shifted({Mask(LaurentPolynomial({0.5, 1.0, 0.5}, 2))});
    const ZeroConditionReport a = check_zero_conditions(centered, cplx(0.0), 1, 1, 3);
    const ZeroConditionReport b = check_zero_conditions(shifted, cplx(0.0), 1, 1, 3);
    CHECK(a.all_pass == b.all_pass);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].nondegenerate == b.rows[i].nondegenerate);
        for (std::size_t k = 0; k < a.rows[i].zero_residual.size(); ++k) {
            CHECK(a.rows[i].zero_residual[k] ==
                  doctest::Approx(b.rows[i].zero_residual[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("the quadratic B-spline scheme generates degree-one polynomials") {
    const GenerationReport report = verify_generation(
        b2_schedule(), ExponentialSpace({{cplx(0.0), 1}}), 8, Interval{-3.0, 3.0});
    CHECK(report.generated);
    CHECK(report.residual < 1e-8);
}

TEST_CASE("the constructed exponential scheme generates its exponential") {
    const ExponentialSpace space({{cplx(1.0), 0}});
    const GenerationReport report =
        verify_generation(construct_schedule(space, 4), space, 8, Interval{-3.0, 3.0});
    CHECK(report.generated);
    CHECK(report.residual < 1e-6);
}

TEST_CASE("the hat scheme does not generate the exponential") {
    const GenerationReport report = verify_generation(
        hat_schedule(), ExponentialSpace({{cplx(1.0), 0}}), 8, Interval{-3.0, 3.0});
    CHECK(!report.generated);
    CHECK(report.residual > 1e-2);
}

TEST_CASE("dropping a spectrum point breaks generation") {
    const ExponentialSpace full({{cplx(0.0), 0}, {cplx(1.0), 0}});
    const ExponentialSpace partial({{cplx(0.0), 0}});
    const MaskSchedule sched = construct_schedule(partial, 4);
    CHECK(verify_generation(sched, partial, 8, Interval{-3.0, 3.0}).generated);
    CHECK(!verify_generation(sched, full, 8, Interval{-3.0, 3.0}).generated);
}

TEST_CASE("decay audit of the hat scheme finds support only at zero") {
    const AuditReport report = analytic_limit_audit(
        hat_schedule(), {cplx(0.0), cplx(1.0), cplx(0.0, 1.0)}, 1, 48);
    CHECK(report.max_degree_span == 2);
    CHECK(report.stationary);
    CHECK(report.support_only_at_zero);
    CHECK(report.single_point_supports);
    CHECK(report.count_within_degree);
    REQUIRE(report.entries.size() == 3);
    CHECK(report.entries[0].all_finite);
    CHECK(report.entries[0].joint_support_count == 1);
    CHECK(!report.entries[1].all_finite);
    CHECK(!report.entries[2].all_finite);
}

TEST_CASE("decay audit of the constructed exponential scheme") {
    const MaskSchedule sched = construct_schedule(ExponentialSpace({{cplx(1.0), 0}}), 4);
    const AuditReport report = analytic_limit_audit(sched, {cplx(1.0)}, 0, 48);
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].all_finite);
    CHECK(report.entries[0].joint_support_count <= 1);
    CHECK(report.count_within_degree);
}

TEST_CASE("overflow-prone audit points are flagged, not guessed") {
    const AuditReport report = analytic_limit_audit(hat_schedule(), {cplx(20.0)}, 0, 32);
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].inconclusive);
    CHECK(!report.entries[0].note.empty());
}

TEST_CASE("random convergent masks have no analytic exponentials away from zero") {
    std::mt19937 rng(20260823u);
    std::uniform_int_distribution<int> deg(0, 4);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    int built = 0;
    for (int trial = 0; trial < 30 && built < 10; ++trial) {
        const int k = deg(rng);
        std::vector<cplx> r(static_cast<std::size_t>(k) + 1);
        cplx r1(0.0);
        for (cplx& c : r) {
            c = cplx(unif(rng));
            r1 += c;
        }
        if (std::abs(r1) < 0.2) continue;
        // (1 + z) * r(z), normalized to coefficient sum 2.
        LaurentPolynomial sym =
            mul(LaurentPolynomial({1.0, 1.0}, 0), LaurentPolynomial(std::move(r), 0));
        sym = scale(sym, cplx(2.0) / (2.0 * r1));
        const MaskSchedule sched({Mask(sym)});
        const AuditReport report = analytic_limit_audit(
            sched, {cplx(0.7), cplx(-0.9), cplx(0.0, 1.3)}, 0, 48);
        CHECK(report.support_only_at_zero);
        ++built;
    }
    CHECK(built == 10);
}
