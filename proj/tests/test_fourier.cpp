#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "shiftlab/fourier.hpp"

using namespace shiftlab;

namespace {

MaskSchedule hat_schedule() {
    return MaskSchedule({Mask(LaurentPolynomial({0.5, 1.0, 0.5}, -1))});
}

MaskSchedule b2_schedule() {
    return MaskSchedule({Mask(LaurentPolynomial({0.25, 0.75, 0.75, 0.25}, 0))});
}

MaskSchedule exp1_schedule() {
    return MaskSchedule({exponential_mask({{cplx(1.0), 0}}, 1)},
                        ExponentialTail{{{cplx(1.0), 0}}, 0});
}

double sinc(double y) {
    if (y == 0.0) return 1.0;
    const double p = kTwoPi / 2.0 * y;
    return std::sin(p) / p;
}

DecaySequence synthetic_sequence(int range, const std::vector<cplx>& entries) {
    DecaySequence seq;
    seq.lambda = cplx(0.0);
    seq.order = 0;
    seq.range = range;
    seq.entries = entries;
    seq.truncation_error = 0.0;
    return seq;
}

}  // namespace

TEST_CASE("default product depth grows with the evaluation point") {
    CHECK(default_depth(cplx(0.0)) == 48);
    CHECK(default_depth(cplx(100.0)) == 48 + 7);
}

TEST_CASE("hat transform values match the squared sinc") {
    const auto at = [&](double y) { return phi_hat_derivs(hat_schedule(), cplx(y), 0); };
    CHECK(std::abs(at(0.0).derivs[0] - cplx(1.0)) < 1e-12);
    CHECK(std::abs(at(1.0).derivs[0]) < 1e-12);
    CHECK(std::abs(at(0.5).derivs[0] - cplx(4.0 / (kTwoPi * kTwoPi / 4.0))) < 1e-8);
    for (double y : {0.3, -0.7, 1.9, 2.4}) {
        const PhiHat p = at(y);
        CHECK(std::abs(p.derivs[0] - cplx(sinc(y) * sinc(y))) <
              1e-8 + 10.0 * p.tail_bound);
    }
}

TEST_CASE("hat transform derivative vanishes at the origin") {
    const PhiHat p = phi_hat_derivs(hat_schedule(), cplx(0.0), 1);
    REQUIRE(p.derivs.size() == 2);
    CHECK(std::abs(p.derivs[1]) < 1e-8);
}

TEST_CASE("explicit depth is honored and validated") {
    const PhiHat shallow = phi_hat_derivs(hat_schedule(), cplx(0.25), 0, 6);
    CHECK(shallow.depth == 6);
    CHECK_THROWS_AS(phi_hat_derivs(hat_schedule(), cplx(0.25), 0, 300), std::invalid_argument);
    CHECK_THROWS_AS(phi_hat_derivs(hat_schedule(), cplx(0.25), 0, 0), std::invalid_argument);
    const PhiHat deflt = phi_hat_derivs(hat_schedule(), cplx(0.25), 0);
    CHECK(deflt.depth == default_depth(cplx(0.25)));
}

TEST_CASE("hat integer-point sequence is a delta at zero") {
    const DecaySequence seq = decay_sequence(hat_schedule(), cplx(0.0), 0, 16);
    REQUIRE(seq.entries.size() == 33);
    CHECK(seq.truncation_error == 0.0);
    CHECK(std::abs(seq.at(0) - cplx(1.0)) < 1e-12);
    for (int l = -16; l <= 16; ++l) {
        if (l != 0) CHECK(std::abs(seq.at(l)) < 1e-14);
    }
    const DecayVerdict v = classify_decay(seq);
    CHECK(v.kind == DecayKind::FinitelySupported);
    REQUIRE(v.support.size() == 1);
    CHECK(v.support[0] == 0);
}

TEST_CASE("hat first-derivative sequence vanishes identically") {
    const DecaySequence seq = decay_sequence(hat_schedule(), cplx(0.0), 1, 16);
    for (int l = -16; l <= 16; ++l) CHECK(std::abs(seq.at(l)) < 1e-14);
    const DecayVerdict v = classify_decay(seq);
    CHECK(v.kind == DecayKind::FinitelySupported);
    CHECK(v.support.empty());
}

TEST_CASE("quadratic B-spline sequences are finitely supported at the origin") {
    for (int order : {0, 1}) {
        const DecaySequence seq = decay_sequence(b2_schedule(), cplx(0.0), order, 12);
        const DecayVerdict v = classify_decay(seq);
        CHECK(v.kind == DecayKind::FinitelySupported);
        for (int s : v.support) CHECK(s == 0);
    }
}

TEST_CASE("synthetic geometric sequences are classified with the right ratio") {
    for (double q : {0.3, 0.5, 0.8}) {
        const int range = 64;
        std::vector<cplx> entries(2 * range + 1);
        for (int l = -range; l <= range; ++l) {
            entries[std::size_t(l + range)] = cplx(std::pow(q, std::abs(l)));
        }
        const DecayVerdict v = classify_decay(synthetic_sequence(range, entries));
        CHECK(v.kind == DecayKind::ExponentialDecay);
        CHECK(v.q == doctest::Approx(q).epsilon(0.02));
        CHECK(v.fit_residual < 0.5);
    }
}

TEST_CASE("verdict kind is invariant under rescaling the entries") {
    const int range = 64;
    std::vector<cplx> entries(2 * range + 1);
    for (int l = -range; l <= range; ++l) {
        entries[std::size_t(l + range)] = cplx(std::pow(0.5, std::abs(l)));
    }
    std::vector<cplx> scaled = entries;
    for (cplx& e : scaled) e *= cplx(7.3e4);
    const DecayVerdict a = classify_decay(synthetic_sequence(range, entries));
    const DecayVerdict b = classify_decay(synthetic_sequence(range, scaled));
    CHECK(a.kind == b.kind);
    CHECK(a.q == doctest::Approx(b.q).epsilon(1e-9));
}

TEST_CASE("polynomially decaying sequences are rejected as non-decaying") {
    const int range = 64;
    std::vector<cplx> entries(2 * range + 1);
    for (int l = -range; l <= range; ++l) {
        entries[std::size_t(l + range)] = cplx(1.0 / (1.0 + double(l) * double(l)));
    }
    const DecayVerdict v = classify_decay(synthetic_sequence(range, entries));
    CHECK(v.kind == DecayKind::NoDecay);
}

TEST_CASE("hat sequence at a nonzero exponent parameter does not decay") {
    const DecaySequence seq = decay_sequence(hat_schedule(), cplx(1.0), 0, 64);
    const ClassifyOutcome out = try_classify(seq);
    REQUIRE(out.ok);
    CHECK(out.verdict.kind == DecayKind::NoDecay);
    CHECK(out.verdict.fit_residual > 0.5);
}

TEST_CASE("support touching the range boundary is inconclusive") {
    const int range = 3;
    const std::vector<cplx> entries(2 * range + 1, cplx(1.0));
    const DecaySequence seq = synthetic_sequence(range, entries);
    const ClassifyOutcome out = try_classify(seq);
    CHECK(!out.ok);
    CHECK(!out.diagnostics.empty());
    CHECK_THROWS_AS(classify_decay(seq), std::runtime_error);
}

TEST_CASE("joint classification over several orders") {
    const std::vector<DecaySequence> hats = {decay_sequence(hat_schedule(), cplx(0.0), 0, 16),
                                             decay_sequence(hat_schedule(), cplx(0.0), 1, 16)};
    const DecayVerdict joint = classify_decay(hats);
    CHECK(joint.kind == DecayKind::FinitelySupported);
    REQUIRE(joint.support.size() == 1);
    CHECK(joint.support[0] == 0);

    const int range = 64;
    std::vector<cplx> fast(2 * range + 1), slow(2 * range + 1);
    for (int l = -range; l <= range; ++l) {
        fast[std::size_t(l + range)] = cplx(std::pow(0.3, std::abs(l)));
        slow[std::size_t(l + range)] = cplx(std::pow(0.6, std::abs(l)));
    }
    const DecayVerdict worst = classify_decay(
        {synthetic_sequence(range, fast), synthetic_sequence(range, slow)});
    CHECK(worst.kind == DecayKind::ExponentialDecay);
    CHECK(worst.q == doctest::Approx(0.6).epsilon(0.02));
}

TEST_CASE("order-zero periodic factor of the hat is the constant one") {
    const PeriodicFunction w0 = omega(hat_schedule(), cplx(0.0), 0, 16);
    CHECK(std::abs(w0.coeff(0) - cplx(1.0)) < 1e-12);
    CHECK(w0.max_coeff() == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : {0.0, 0.21, 0.5, 0.87}) CHECK(std::abs(w0.eval(t) - cplx(1.0)) < 1e-12);

    const PeriodicFunction w1 = omega(hat_schedule(), cplx(0.0), 1, 16);
    for (double t : {0.1, 0.4, 0.9}) CHECK(std::abs(w1.eval(t)) < 1e-12);
}

TEST_CASE("order-zero periodic factor of the quadratic B-spline is one") {
    const PeriodicFunction w0 = omega(b2_schedule(), cplx(0.0), 0, 16);
    for (double t : {0.05, 0.3, 0.75}) CHECK(std::abs(w0.eval(t) - cplx(1.0)) < 1e-10);
}

TEST_CASE("periodic factors are 1-periodic") {
    const PeriodicFunction w0 = omega(exp1_schedule(), cplx(1.0), 0, 16);
    for (double t : {-0.3, 0.2, 1.7}) CHECK(std::abs(w0.eval(t) - w0.eval(t + 1.0)) < 1e-12);
}

TEST_CASE("periodic factor construction requires decay") {
    CHECK_THROWS_AS(omega(hat_schedule(), cplx(1.0), 0, 64), std::domain_error);
}

TEST_CASE("hat basis functions reproduce constants and the identity map") {
    const HBasis basis = h_lambda_basis(hat_schedule(), cplx(0.0), 1, Interval{-2.0, 2.0}, 4);
    CHECK(basis.consistency < 1e-8);
    REQUIRE(basis.functions.size() == 2);
    const SampledFunction& f0 = basis.functions[0];
    const SampledFunction& f1 = basis.functions[1];
    for (std::size_t i = 0; i < f0.values.size(); ++i) {
        CHECK(std::abs(f0.values[i] - cplx(1.0)) < 1e-10);
        CHECK(std::abs(f0.values[i].imag()) < 1e-10);
    }
    for (std::size_t i = 0; i < f1.values.size(); ++i) {
        CHECK(std::abs(f1.values[i] - cplx(f1.t(i))) < 1e-10);
    }
}

TEST_CASE("exponential-scheme basis function is the exponential itself") {
    const HBasis basis =
        h_lambda_basis(exp1_schedule(), cplx(1.0), 0, Interval{-0.9, -0.1}, 6);
    CHECK(basis.consistency < 1e-8);
    const double c = 1.0 / (1.0 - std::exp(-1.0));
    const SampledFunction& f0 = basis.functions[0];
    REQUIRE(!f0.values.empty());
    for (std::size_t i = 0; i < f0.values.size(); ++i) {
        const double want = c * std::exp(f0.t(i));
        CHECK(std::abs(f0.values[i] - cplx(want)) < 1e-7 * want);
    }
}

TEST_CASE("inconsistent tolerance demand raises") {
    CHECK_THROWS_AS(
        h_lambda_basis(exp1_schedule(), cplx(1.0), 0, Interval{-0.9, -0.1}, 6, -1, 1e-12),
        std::runtime_error);
}
