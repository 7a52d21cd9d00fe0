#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shiftlab/difference.hpp"
#include "shiftlab/fourier.hpp"
#include "shiftlab/generation.hpp"
#include "shiftlab/laurent.hpp"
#include "shiftlab/shift_structure.hpp"
#include "shiftlab/subdivision.hpp"

namespace py = pybind11;
using namespace shiftlab;

namespace {

MaskSchedule make_schedule(const std::vector<Mask>& head,
                           const std::optional<std::vector<std::pair<cplx, int>>>& tail_lambdas,
                           int level_offset) {
    if (!tail_lambdas) return MaskSchedule(head, RepeatLastTail{});
    return MaskSchedule(head, ExponentialTail{*tail_lambdas, level_offset});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Laurent symbol algebra, non-stationary subdivision, and Fourier-side "
              "analysis for finitely generated shift-invariant spaces";

    py::enum_<Normalization>(m, "Normalization")
        .value("SUM2", Normalization::Sum2)
        .value("UNIT", Normalization::Unit);

    py::class_<LaurentPolynomial>(m, "LaurentPolynomial")
        .def(py::init<std::vector<cplx>, std::int64_t>(), py::arg("coeffs"), py::arg("lo") = 0)
        .def_property_readonly("lo", &LaurentPolynomial::lo)
        .def_property_readonly("hi", &LaurentPolynomial::hi)
        .def_property_readonly("span", &LaurentPolynomial::span)
        .def_property_readonly("coeffs", &LaurentPolynomial::coeffs)
        .def("coeff", &LaurentPolynomial::coeff, py::arg("m"))
        .def("__repr__", [](const LaurentPolynomial& p) {
            return "<LaurentPolynomial lo=" + std::to_string(p.lo()) + " span=" +
                   std::to_string(p.span()) + ">";
        });

    m.def("eval_z", &eval_z, py::arg("p"), py::arg("z"));
    m.def("eval_trig", &eval_trig, py::arg("p"), py::arg("y"), py::arg("conv"));
    m.def("derivative_trig", &derivative_trig, py::arg("p"), py::arg("order") = 1);
    m.def("derivative_z", &derivative_z, py::arg("p"));
    m.def("mul", &mul);
    m.def("add", &add);
    m.def("scale", &scale);

    py::class_<LagrangeBound>(m, "LagrangeBound")
        .def_readonly("lhs", &LagrangeBound::lhs)
        .def_readonly("rhs", &LagrangeBound::rhs)
        .def_readonly("sup_norm", &LagrangeBound::sup_norm)
        .def_readonly("max_at_points", &LagrangeBound::max_at_points)
        .def_readonly("min_gap", &LagrangeBound::min_gap)
        .def_readonly("grid_slack", &LagrangeBound::grid_slack)
        .def_readonly("holds", &LagrangeBound::holds);
    m.def("lagrange_bound", &lagrange_bound, py::arg("p"), py::arg("points"));

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &Interval::lo)
        .def_readwrite("hi", &Interval::hi)
        .def_property_readonly("length", &Interval::length);

    py::class_<Mask>(m, "Mask")
        .def(py::init([](const LaurentPolynomial& symbol, Normalization conv) {
                 return Mask::from(symbol, conv);
             }),
             py::arg("symbol"), py::arg("conv") = Normalization::Sum2)
        .def_property_readonly("symbol", &Mask::symbol)
        .def_property_readonly("unit_symbol", &Mask::unit_symbol)
        .def_property_readonly("lo", &Mask::lo)
        .def_property_readonly("hi", &Mask::hi)
        .def("is_real", &Mask::is_real, py::arg("tol") = 1e-14);

    py::class_<MaskSchedule>(m, "MaskSchedule")
        .def(py::init(&make_schedule), py::arg("head"), py::arg("tail_lambdas") = py::none(),
             py::arg("level_offset") = 0)
        .def_property_readonly("head", &MaskSchedule::head)
        .def_property_readonly("head_size", &MaskSchedule::head_size)
        .def("mask_at", &MaskSchedule::mask_at, py::arg("level"))
        .def_property_readonly("is_stationary", &MaskSchedule::is_stationary);

    m.def("exponential_mask", &exponential_mask, py::arg("lambdas"), py::arg("level"),
          py::arg("level_offset") = 0);

    py::class_<SampledFunction>(m, "SampledFunction")
        .def(py::init([](int level, std::int64_t lo, std::vector<cplx> values) {
                 SampledFunction f;
                 f.level = level;
                 f.lo = lo;
                 f.values = std::move(values);
                 return f;
             }),
             py::arg("level"), py::arg("lo"), py::arg("values"))
        .def_readonly("level", &SampledFunction::level)
        .def_readonly("lo", &SampledFunction::lo)
        .def_readonly("values", &SampledFunction::values)
        .def_property_readonly("hi", &SampledFunction::hi)
        .def_property_readonly("step", &SampledFunction::step)
        .def("t", &SampledFunction::t, py::arg("i"))
        .def("at_index", &SampledFunction::at_index, py::arg("k"))
        .def("max_abs", &SampledFunction::max_abs)
        .def("__len__", [](const SampledFunction& f) { return f.values.size(); });

    m.def("delta", &delta);
    m.def("subdivide_step", &subdivide_step, py::arg("mask"), py::arg("c"));
    m.def("run", &run, py::arg("schedule"), py::arg("start"), py::arg("levels"));
    m.def("basic_limit", &basic_limit, py::arg("schedule"), py::arg("levels"));
    m.def("support_bound", &support_bound, py::arg("schedule"));
    m.def("limit_samples", &limit_samples, py::arg("schedule"), py::arg("grid_level"),
          py::arg("window"), py::arg("refine_level") = 32);
    m.def("dimension_bound", &dimension_bound, py::arg("supports"));

    m.def("exp_difference", &exp_difference, py::arg("lam"), py::arg("f"));
    m.def("exp_difference_power", &exp_difference_power, py::arg("lam"), py::arg("power"),
          py::arg("f"));
    m.def("eliminate_components", &eliminate_components, py::arg("f"), py::arg("components"),
          py::arg("keep_index"));

    py::class_<PhiHat>(m, "PhiHat")
        .def_readonly("derivs", &PhiHat::derivs)
        .def_readonly("tail_bound", &PhiHat::tail_bound)
        .def_readonly("depth", &PhiHat::depth);
    m.def("phi_hat_derivs", &phi_hat_derivs, py::arg("schedule"), py::arg("y"), py::arg("order"),
          py::arg("depth") = -1);
    m.def("default_depth", &default_depth, py::arg("y"));

    py::enum_<DecayKind>(m, "DecayKind")
        .value("FINITELY_SUPPORTED", DecayKind::FinitelySupported)
        .value("EXPONENTIAL_DECAY", DecayKind::ExponentialDecay)
        .value("NO_DECAY", DecayKind::NoDecay);

    py::class_<DecaySequence>(m, "DecaySequence")
        .def_readonly("lam", &DecaySequence::lambda)
        .def_readonly("order", &DecaySequence::order)
        .def_readonly("range", &DecaySequence::range)
        .def_readonly("entries", &DecaySequence::entries)
        .def_readonly("truncation_error", &DecaySequence::truncation_error)
        .def("at", &DecaySequence::at, py::arg("l"));
    m.def("decay_sequence", &decay_sequence, py::arg("schedule"), py::arg("lam"), py::arg("order"),
          py::arg("range"), py::arg("depth") = -1);

    py::class_<DecayVerdict>(m, "DecayVerdict")
        .def_readonly("kind", &DecayVerdict::kind)
        .def_readonly("support", &DecayVerdict::support)
        .def_readonly("C", &DecayVerdict::C)
        .def_readonly("q", &DecayVerdict::q)
        .def_readonly("fit_residual", &DecayVerdict::fit_residual)
        .def_readonly("threshold", &DecayVerdict::threshold);

    py::class_<ClassifyOutcome>(m, "ClassifyOutcome")
        .def_readonly("ok", &ClassifyOutcome::ok)
        .def_readonly("verdict", &ClassifyOutcome::verdict)
        .def_readonly("diagnostics", &ClassifyOutcome::diagnostics);
    m.def("try_classify", &try_classify, py::arg("seq"));
    m.def("classify_decay", py::overload_cast<const DecaySequence&>(&classify_decay),
          py::arg("seq"));

    py::class_<PeriodicFunction>(m, "PeriodicFunction")
        .def_readonly("range", &PeriodicFunction::range)
        .def_readonly("coeffs", &PeriodicFunction::coeffs)
        .def("coeff", &PeriodicFunction::coeff, py::arg("l"))
        .def("eval", &PeriodicFunction::eval, py::arg("t"))
        .def("max_coeff", &PeriodicFunction::max_coeff);
    m.def("omega", &omega, py::arg("schedule"), py::arg("lam"), py::arg("order"), py::arg("range"),
          py::arg("depth") = -1);

    py::class_<HBasis>(m, "HBasis")
        .def_readonly("functions", &HBasis::functions)
        .def_readonly("consistency", &HBasis::consistency);
    m.def("h_lambda_basis", &h_lambda_basis, py::arg("schedule"), py::arg("lam"), py::arg("order"),
          py::arg("window"), py::arg("grid_level"), py::arg("depth") = -1, py::arg("tol") = 1e-6);

    py::class_<ExponentialSpace>(m, "ExponentialSpace")
        .def(py::init<std::vector<std::pair<cplx, int>>>(), py::arg("spectrum"))
        .def_readonly("spectrum", &ExponentialSpace::spectrum)
        .def_property_readonly("dim", &ExponentialSpace::dim);

    py::class_<ZeroConditionRow>(m, "ZeroConditionRow")
        .def_readonly("level", &ZeroConditionRow::level)
        .def_readonly("zero_ok", &ZeroConditionRow::zero_ok)
        .def_readonly("zero_residual", &ZeroConditionRow::zero_residual)
        .def_readonly("nondegenerate", &ZeroConditionRow::nondegenerate);
    py::class_<ZeroConditionReport>(m, "ZeroConditionReport")
        .def_readonly("rows", &ZeroConditionReport::rows)
        .def_readonly("all_pass", &ZeroConditionReport::all_pass);
    m.def("check_zero_conditions", &check_zero_conditions, py::arg("schedule"), py::arg("lam"),
          py::arg("order"), py::arg("level_begin"), py::arg("level_end"), py::arg("tol") = 1e-10,
          py::arg("level_offset") = 0);

    m.def("construct_schedule", &construct_schedule, py::arg("space"), py::arg("head_levels"),
          py::arg("level_offset") = 0);

    py::class_<GenerationReport>(m, "GenerationReport")
        .def_readonly("residual", &GenerationReport::residual)
        .def_readonly("generated", &GenerationReport::generated)
        .def_readonly("fit_window", &GenerationReport::fit_window)
        .def_readonly("grid_level", &GenerationReport::grid_level)
        .def_readonly("start_lo", &GenerationReport::start_lo)
        .def_readonly("start_hi", &GenerationReport::start_hi);
    m.def("verify_generation", &verify_generation, py::arg("schedule"), py::arg("space"),
          py::arg("levels"), py::arg("fit_window"), py::arg("tol") = 1e-5);

    py::class_<AuditEntry>(m, "AuditEntry")
        .def_readonly("lam", &AuditEntry::lambda)
        .def_readonly("inconclusive", &AuditEntry::inconclusive)
        .def_readonly("note", &AuditEntry::note)
        .def_readonly("verdicts", &AuditEntry::verdicts)
        .def_readonly("all_finite", &AuditEntry::all_finite)
        .def_readonly("joint_support_count", &AuditEntry::joint_support_count);
    py::class_<AuditReport>(m, "AuditReport")
        .def_readonly("max_degree_span", &AuditReport::max_degree_span)
        .def_readonly("stationary", &AuditReport::stationary)
        .def_readonly("entries", &AuditReport::entries)
        .def_readonly("support_only_at_zero", &AuditReport::support_only_at_zero)
        .def_readonly("single_point_supports", &AuditReport::single_point_supports)
        .def_readonly("count_within_degree", &AuditReport::count_within_degree);
    m.def("analytic_limit_audit", &analytic_limit_audit, py::arg("schedule"),
          py::arg("lambda_grid"), py::arg("order"), py::arg("range") = 48,
          py::arg("depth") = -1);

    m.def("shift_block", &shift_block, py::arg("degree"));
    m.def("block_shift_operator", &block_shift_operator, py::arg("d"));
    m.def("block_shift_dimension", &block_shift_dimension, py::arg("d"));
    m.def("block_shift_order", &block_shift_order, py::arg("ambient"));
    m.def("numerical_rank", &numerical_rank, py::arg("m"), py::arg("tol") = 1e-10);
    m.def("is_invariant", &is_invariant, py::arg("A"), py::arg("basis"), py::arg("tol") = 1e-10);
    m.def("minimal_invariant_subspace", &minimal_invariant_subspace, py::arg("A"), py::arg("v"),
          py::arg("tol") = 1e-10);
    m.def("same_span", &same_span, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-10);

    py::class_<FamilyCheck>(m, "FamilyCheck")
        .def_readonly("label", &FamilyCheck::label)
        .def_readonly("trials", &FamilyCheck::trials)
        .def_readonly("invariant_count", &FamilyCheck::invariant_count);
    py::class_<FourFamiliesReport>(m, "FourFamiliesReport")
        .def_readonly("families", &FourFamiliesReport::families)
        .def_readonly("random_trials", &FourFamiliesReport::random_trials)
        .def_readonly("random_invariant_count", &FourFamiliesReport::random_invariant_count)
        .def_readonly("minimal_dim_from_t", &FourFamiliesReport::minimal_dim_from_t)
        .def_readonly("minimal_is_first_family", &FourFamiliesReport::minimal_is_first_family)
        .def_readonly("all_families_invariant", &FourFamiliesReport::all_families_invariant);
    m.def("four_families_demo", &four_families_demo, py::arg("seed") = 20260823u);
}
