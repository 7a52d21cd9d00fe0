#include <complex>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shiftlab/difference.hpp"
#include "shiftlab/fourier.hpp"
#include "shiftlab/generation.hpp"
#include "shiftlab/io.hpp"
#include "shiftlab/laurent.hpp"
#include "shiftlab/shift_structure.hpp"
#include "shiftlab/subdivision.hpp"

namespace {

using shiftlab::cplx;
using shiftlab::Interval;
using json = shiftlab::io::json;

constexpr int kOk = 0;
constexpr int kVerdictFalse = 1;
constexpr int kUsageError = 2;

cplx parse_complex_arg(const std::string& text) {
    std::istringstream ss(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(ss >> re)) throw std::invalid_argument("--lambda expects RE or RE,IM");
    if (ss >> comma) {
        if (comma != ',' || !(ss >> im)) throw std::invalid_argument("--lambda expects RE,IM");
    }
    std::string rest;
    if (ss >> rest) throw std::invalid_argument("trailing text in --lambda: " + text);
    return cplx(re, im);
}

Interval parse_interval_arg(const std::string& text) {
    std::istringstream ss(text);
    double lo = 0.0, hi = 0.0;
    char comma = 0;
    if (!(ss >> lo >> comma >> hi) || comma != ',') {
        throw std::invalid_argument("--window expects LO,HI");
    }
    if (!(lo < hi)) throw std::invalid_argument("--window needs LO < HI");
    return Interval{lo, hi};
}

std::vector<double> parse_point_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        while (used < item.size() && item[used] == ' ') ++used;
        if (used != item.size()) throw std::invalid_argument("bad point list entry: " + item);
    }
    if (out.empty()) throw std::invalid_argument("--points expects a comma-separated list");
    return out;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(content.c_str(), stdout);
    } else {
        shiftlab::io::write_file(out_path, content);
    }
}

json complex_obj(cplx v) {
    json o;
    o["re"] = v.real();
    o["im"] = v.imag();
    return o;
}

json interval_obj(Interval w) {
    json o;
    o["lo"] = w.lo;
    o["hi"] = w.hi;
    return o;
}

shiftlab::MaskSchedule load_schedule(const std::string& path) {
    return shiftlab::io::parse_schedule(json::parse(shiftlab::io::read_file(path)));
}

struct Options {
    std::string schedule_path;
    std::string spectrum_path;
    std::string subspace_path;
    std::string mask_path;
    std::string data_path;
    std::string out_path;
    std::string lambda_text = "0";
    std::string window_text;
    std::string points_text;
    int levels = 8;
    int depth = -1;
    int range = 64;
    int order = 0;
    int grid_level = 6;
    int head_levels = 4;
    int level_offset = 0;
    double tol = 0.0;
    bool demo = false;
};

int cmd_phi(const Options& opt) {
    auto schedule = load_schedule(opt.schedule_path);
    auto samples = shiftlab::basic_limit(schedule, opt.levels);
    emit(shiftlab::io::csv_string(samples), opt.out_path);
    return kOk;
}

int cmd_run(const Options& opt) {
    auto schedule = load_schedule(opt.schedule_path);
    std::istringstream data(shiftlab::io::read_file(opt.data_path));
    auto start = shiftlab::io::read_csv(data);
    auto samples = shiftlab::run(schedule, std::move(start), opt.levels);
    emit(shiftlab::io::csv_string(samples), opt.out_path);
    return kOk;
}

int cmd_decay(const Options& opt) {
    auto schedule = load_schedule(opt.schedule_path);
    const cplx lambda = parse_complex_arg(opt.lambda_text);
    auto seq = shiftlab::decay_sequence(schedule, lambda, opt.order, opt.range, opt.depth);
    auto outcome = shiftlab::try_classify(seq);
    json doc;
    if (outcome.ok) {
        doc = shiftlab::io::decay_report(seq, outcome.verdict);
    } else {
        doc = shiftlab::io::decay_report(seq, shiftlab::DecayVerdict{});
        json v;
        v["kind"] = "inconclusive";
        v["diagnostics"] = outcome.diagnostics;
        doc["verdict"] = std::move(v);
    }
    emit(shiftlab::io::dump_fixed(doc), opt.out_path);
    return outcome.ok ? kOk : kVerdictFalse;
}

int cmd_omega(const Options& opt) {
    auto schedule = load_schedule(opt.schedule_path);
    const cplx lambda = parse_complex_arg(opt.lambda_text);
    auto seq = shiftlab::decay_sequence(schedule, lambda, opt.order, opt.range, opt.depth);
    auto outcome = shiftlab::try_classify(seq);
    if (!outcome.ok || outcome.verdict.kind == shiftlab::DecayKind::NoDecay) {
        std::fprintf(stderr, "omega undefined: order-%d sequence does not decay (%s)\n",
                     opt.order,
                     outcome.ok ? "classified as no_decay" : outcome.diagnostics.c_str());
        return kVerdictFalse;
    }
    auto w = shiftlab::omega(schedule, lambda, opt.order, opt.range, opt.depth);
    json doc;
    doc["lambda"] = complex_obj(lambda);
    doc["order"] = opt.order;
    doc["range"] = w.range;
    json coeffs = json::array();
    for (int l = -w.range; l <= w.range; ++l) {
        json e;
        e["l"] = l;
        e["re"] = w.coeff(l).real();
        e["im"] = w.coeff(l).imag();
        coeffs.push_back(std::move(e));
    }
    doc["coeffs"] = std::move(coeffs);
    emit(shiftlab::io::dump_fixed(doc), opt.out_path);
    return kOk;
}

int cmd_hbasis(const Options& opt) {
    auto schedule = load_schedule(opt.schedule_path);
    const cplx lambda = parse_complex_arg(opt.lambda_text);
    const Interval window = parse_interval_arg(opt.window_text);
    const double tol = opt.tol > 0 ? opt.tol : 1e-6;
    shiftlab::HBasis basis;
    try {
        basis = shiftlab::h_lambda_basis(schedule, lambda, opt.order, window, opt.grid_level,
                                         opt.depth, tol);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "h-basis unavailable: %s\n", e.what());
        return kVerdictFalse;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "h-basis consistency check failed: %s\n", e.what());
        return kVerdictFalse;
    }
    json doc;
    doc["lambda"] = complex_obj(lambda);
    doc["order"] = opt.order;
    doc["window"] = interval_obj(window);
    doc["grid_level"] = opt.grid_level;
    doc["consistency"] = basis.consistency;
    json fns = json::array();
    for (std::size_t k = 0; k < basis.functions.size(); ++k) {
        const auto& f = basis.functions[k];
        json fj;
        fj["order"] = static_cast<int>(k);
        fj["level"] = f.level;
        fj["lo"] = f.lo;
        json vals = json::array();
        for (cplx v : f.values) vals.push_back(json::array({v.real(), v.imag()}));
        fj["values"] = std::move(vals);
        fns.push_back(std::move(fj));
    }
    doc["functions"] = std::move(fns);
    emit(shiftlab::io::dump_fixed(doc), opt.out_path);
    return kOk;
}

int cmd_check_zeros(const Options& opt) {
    auto schedule = load_schedule(opt.schedule_path);
    const cplx lambda = parse_complex_arg(opt.lambda_text);
    const double tol = opt.tol > 0 ? opt.tol : 1e-10;
    auto report = shiftlab::check_zero_conditions(schedule, lambda, opt.order, 1, opt.levels, tol,
                                                  opt.level_offset);
    json doc;
    doc["lambda"] = complex_obj(lambda);
    doc["order"] = opt.order;
    doc["levels"] = opt.levels;
    doc["level_offset"] = opt.level_offset;
    doc["tol"] = tol;
    doc["all_pass"] = report.all_pass;
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["level"] = row.level;
        json ok = json::array();
        for (bool b : row.zero_ok) ok.push_back(b);
        r["zero_ok"] = std::move(ok);
        json res = json::array();
        for (double v : row.zero_residual) res.push_back(v);
        r["zero_residual"] = std::move(res);
        r["nondegenerate"] = row.nondegenerate;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    emit(shiftlab::io::dump_fixed(doc), opt.out_path);
    return report.all_pass ? kOk : kVerdictFalse;
}

int cmd_construct(const Options& opt) {
    auto space = shiftlab::io::parse_spectrum(
        json::parse(shiftlab::io::read_file(opt.spectrum_path)));
    auto schedule = shiftlab::construct_schedule(space, opt.head_levels, opt.level_offset);
    emit(shiftlab::io::dump_fixed(shiftlab::io::schedule_to_json(schedule)), opt.out_path);
    return kOk;
}

int cmd_verify_gen(const Options& opt) {
    auto schedule = load_schedule(opt.schedule_path);
    auto space = shiftlab::io::parse_spectrum(
        json::parse(shiftlab::io::read_file(opt.spectrum_path)));
    const Interval window = parse_interval_arg(opt.window_text);
    const double tol = opt.tol > 0 ? opt.tol : 1e-5;
    auto report = shiftlab::verify_generation(schedule, space, opt.levels, window, tol);
    json doc;
    doc["levels"] = opt.levels;
    doc["tol"] = tol;
    doc["fit_window"] = interval_obj(report.fit_window);
    doc["grid_level"] = report.grid_level;
    doc["start_lo"] = report.start_lo;
    doc["start_hi"] = report.start_hi;
    doc["residual"] = report.residual;
    doc["generated"] = report.generated;
    emit(shiftlab::io::dump_fixed(doc), opt.out_path);
    return report.generated ? kOk : kVerdictFalse;
}

int cmd_invariant(const Options& opt) {
    if (opt.demo) {
        auto report = shiftlab::four_families_demo();
        json doc;
        json fams = json::array();
        for (const auto& fam : report.families) {
            json f;
            f["label"] = fam.label;
            f["trials"] = fam.trials;
            f["invariant_count"] = fam.invariant_count;
            fams.push_back(std::move(f));
        }
        doc["families"] = std::move(fams);
        doc["random_trials"] = report.random_trials;
        doc["random_invariant_count"] = report.random_invariant_count;
        doc["minimal_dim_from_t"] = report.minimal_dim_from_t;
        doc["minimal_is_first_family"] = report.minimal_is_first_family;
        doc["all_families_invariant"] = report.all_families_invariant;
        emit(shiftlab::io::dump_fixed(doc), opt.out_path);
        const bool good = report.all_families_invariant && report.random_invariant_count == 0 &&
                          report.minimal_is_first_family;
        return good ? kOk : kVerdictFalse;
    }
    auto sub = shiftlab::io::parse_subspace(
        json::parse(shiftlab::io::read_file(opt.subspace_path)));
    const int degree = shiftlab::block_shift_order(sub.ambient);
    const auto A = shiftlab::block_shift_operator(degree);
    const bool inv = shiftlab::is_invariant(A, sub.basis);
    json doc;
    doc["ambient"] = sub.ambient;
    doc["degree"] = degree;
    doc["rank"] = shiftlab::numerical_rank(sub.basis);
    doc["invariant"] = inv;
    emit(shiftlab::io::dump_fixed(doc), opt.out_path);
    return inv ? kOk : kVerdictFalse;
}

int cmd_lagrange(const Options& opt) {
    auto mask = shiftlab::io::parse_mask(json::parse(shiftlab::io::read_file(opt.mask_path)));
    auto points = parse_point_list(opt.points_text);
    auto bound = shiftlab::lagrange_bound(mask.unit_symbol(), points);
    json doc;
    doc["n_points"] = static_cast<int>(points.size());
    doc["lhs"] = bound.lhs;
    doc["rhs"] = bound.rhs;
    doc["sup_norm"] = bound.sup_norm;
    doc["max_at_points"] = bound.max_at_points;
    doc["min_gap"] = bound.min_gap;
    doc["grid_slack"] = bound.grid_slack;
    doc["holds"] = bound.holds;
    emit(shiftlab::io::dump_fixed(doc), opt.out_path);
    return bound.holds ? kOk : kVerdictFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for finitely generated shift-invariant spaces"};
    app.require_subcommand(1);
    Options opt;

    auto add_schedule = [&](CLI::App* c) {
        c->add_option("--schedule", opt.schedule_path, "Mask schedule JSON")->required();
    };
    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", opt.out_path, "Output path (stdout when omitted)");
    };
    auto add_lambda = [&](CLI::App* c) {
        c->add_option("--lambda", opt.lambda_text, "Exponent parameter RE[,IM]");
    };
    auto add_order = [&](CLI::App* c, int max_order) {
        c->add_option("--order", opt.order, "Derivative / polynomial order")
            ->check(CLI::Range(0, max_order));
    };
    auto add_range = [&](CLI::App* c) {
        c->add_option("--range", opt.range, "Frequency offsets |l| <= L")
            ->check(CLI::Range(1, 512));
    };
    auto add_depth = [&](CLI::App* c) {
        c->add_option("--depth", opt.depth, "Infinite-product truncation depth (-1 = auto)")
            ->check(CLI::Range(-1, 128));
    };
    auto add_tol = [&](CLI::App* c) {
        c->add_option("--tol", opt.tol, "Tolerance override")
            ->check(CLI::PositiveNumber);
    };
    auto add_window = [&](CLI::App* c) {
        c->add_option("--window", opt.window_text, "Evaluation window LO,HI")->required();
    };

    auto* phi = app.add_subcommand("phi", "Sample the basic limit function on a dyadic grid");
    add_schedule(phi);
    phi->add_option("--levels", opt.levels, "Refinement levels r (1..24)")
        ->required()
        ->check(CLI::Range(1, 24));
    add_out(phi);

    auto* runc = app.add_subcommand("run", "Apply r refinement steps to CSV data");
    add_schedule(runc);
    runc->add_option("--data", opt.data_path, "Start data CSV (t,re,im)")->required();
    runc->add_option("--levels", opt.levels, "Refinement levels r (1..24)")
        ->required()
        ->check(CLI::Range(1, 24));
    add_out(runc);

    auto* decay = app.add_subcommand("decay", "Classify the decay of a Fourier sample sequence");
    add_schedule(decay);
    add_lambda(decay);
    add_order(decay, 16);
    add_range(decay);
    add_depth(decay);
    add_out(decay);

    auto* omega = app.add_subcommand("omega", "Fourier coefficients of a periodic factor");
    add_schedule(omega);
    add_lambda(omega);
    add_order(omega, 16);
    add_range(omega);
    add_depth(omega);
    add_out(omega);

    auto* hbasis = app.add_subcommand("hbasis", "Exponential-polynomial reproduction basis");
    add_schedule(hbasis);
    add_lambda(hbasis);
    add_order(hbasis, 8);
    add_window(hbasis);
    hbasis->add_option("--grid-level", opt.grid_level, "Output grid level (0..24)")
        ->check(CLI::Range(0, 24));
    add_depth(hbasis);
    add_tol(hbasis);
    add_out(hbasis);

    auto* zeros = app.add_subcommand("check-zeros", "Check level-wise symbol zero conditions");
    add_schedule(zeros);
    add_lambda(zeros);
    add_order(zeros, 16);
    zeros->add_option("--levels", opt.levels, "Check levels 1..N")->check(CLI::Range(1, 64));
    zeros->add_option("--level-offset", opt.level_offset, "Offset added to the level index")
        ->check(CLI::Range(-8, 8));
    add_tol(zeros);
    add_out(zeros);

    auto* construct = app.add_subcommand("construct", "Build a schedule for a given spectrum");
    construct->add_option("--spectrum", opt.spectrum_path, "Spectrum JSON")->required();
    construct->add_option("--head", opt.head_levels, "Explicit head levels (1..24)")
        ->check(CLI::Range(1, 24));
    construct->add_option("--level-offset", opt.level_offset, "Offset added to the level index")
        ->check(CLI::Range(-8, 8));
    add_out(construct);

    auto* verify = app.add_subcommand("verify-gen", "Verify exponential-polynomial generation");
    add_schedule(verify);
    verify->add_option("--spectrum", opt.spectrum_path, "Spectrum JSON")->required();
    verify->add_option("--levels", opt.levels, "Refinement levels r (1..24)")
        ->check(CLI::Range(1, 24));
    add_window(verify);
    add_tol(verify);
    add_out(verify);

    auto* invariant = app.add_subcommand("invariant", "Test block-shift invariance of a subspace");
    invariant->add_option("--subspace", opt.subspace_path, "Subspace JSON");
    invariant->add_flag("--demo", opt.demo, "Run the built-in degree-1 family demonstration");
    add_out(invariant);

    auto* lagrange = app.add_subcommand("lagrange", "Check the interpolation sup-norm bound");
    lagrange->add_option("--mask", opt.mask_path, "Mask JSON")->required();
    lagrange->add_option("--points", opt.points_text, "Comma-separated points in [0,1)")
        ->required();
    add_out(lagrange);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    if (invariant->parsed() && !opt.demo && opt.subspace_path.empty()) {
        std::fprintf(stderr, "invariant: need --subspace PATH or --demo\n");
        return kUsageError;
    }

    try {
        if (phi->parsed()) return cmd_phi(opt);
        if (runc->parsed()) return cmd_run(opt);
        if (decay->parsed()) return cmd_decay(opt);
        if (omega->parsed()) return cmd_omega(opt);
        if (hbasis->parsed()) return cmd_hbasis(opt);
        if (zeros->parsed()) return cmd_check_zeros(opt);
        if (construct->parsed()) return cmd_construct(opt);
        if (verify->parsed()) return cmd_verify_gen(opt);
        if (invariant->parsed()) return cmd_invariant(opt);
        if (lagrange->parsed()) return cmd_lagrange(opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsageError;
    }
    return kUsageError;
}
