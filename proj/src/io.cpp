#include "shiftlab/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace shiftlab::io {

namespace {

std::string fmt_double(double v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("refusing to serialize a non-finite number");
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool all_primitive(const json& v) {
    for (const auto& e : v) {
        if (e.is_object() || e.is_array()) return false;
    }
    return true;
}

void dump_value(const json& v, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string pad_close(static_cast<std::size_t>(indent) * depth, ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (auto it = v.begin(); it != v.end(); ++it, ++i) {
            out += pad;
            out += json(it.key()).dump();
            out += ": ";
            dump_value(it.value(), out, indent, depth + 1);
            if (i + 1 < v.size()) out += ',';
            out += '\n';
        }
        out += pad_close;
        out += '}';
    } else if (v.is_array()) {
        if (v.empty()) {
            out += "[]";
            return;
        }
        if (all_primitive(v)) {  // scalar rows stay on one line
            out += '[';
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ", ";
                dump_value(v[i], out, indent, depth + 1);
            }
            out += ']';
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += pad;
            dump_value(v[i], out, indent, depth + 1);
            if (i + 1 < v.size()) out += ',';
            out += '\n';
        }
        out += pad_close;
        out += ']';
    } else if (v.is_string()) {
        out += v.dump();
    } else if (v.is_boolean()) {
        out += v.get<bool>() ? "true" : "false";
    } else if (v.is_null()) {
        out += "null";
    } else if (v.is_number_float()) {
        out += fmt_double(v.get<double>());
    } else if (v.is_number_unsigned()) {
        out += std::to_string(v.get<std::uint64_t>());
    } else {
        out += std::to_string(v.get<std::int64_t>());
    }
}

const json& field(const json& doc, const char* key) {
    if (!doc.is_object()) {
        throw std::invalid_argument(std::string("expected an object with field '") + key + "'");
    }
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    }
    return *it;
}

double as_double(const json& v, const char* what) {
    if (!v.is_number()) {
        throw std::invalid_argument(std::string(what) + " must be a number");
    }
    return v.get<double>();
}

std::int64_t as_int(const json& v, const char* what) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw std::invalid_argument(std::string(what) + " must be an integer");
    }
    return v.get<std::int64_t>();
}

/// Complex scalar: plain number, [re, im], or {"re":.., "im":..}.
cplx parse_complex(const json& v, const char* what) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array()) {
        if (v.size() != 2) {
            throw std::invalid_argument(std::string(what) + " pair must have two entries");
        }
        return cplx(as_double(v[0], what), as_double(v[1], what));
    }
    if (v.is_object()) {
        return cplx(as_double(field(v, "re"), what), as_double(field(v, "im"), what));
    }
    throw std::invalid_argument(std::string(what) +
                                " must be a number, an [re, im] pair, or {\"re\", \"im\"}");
}

json complex_pair(cplx v) { return json::array({v.real(), v.imag()}); }

std::vector<std::pair<cplx, int>> parse_lambda_list(const json& arr) {
    if (!arr.is_array() || arr.empty()) {
        throw std::invalid_argument("'lambdas' must be a non-empty array");
    }
    std::vector<std::pair<cplx, int>> out;
    for (const auto& e : arr) {
        if (!e.is_object()) {
            throw std::invalid_argument("each lambda entry must be an object");
        }
        cplx lambda(as_double(field(e, "re"), "lambda re"),
                    e.contains("im") ? as_double(e.at("im"), "lambda im") : 0.0);
        int mult = e.contains("mult") ? static_cast<int>(as_int(e.at("mult"), "mult")) : 0;
        if (mult < 0) throw std::invalid_argument("mult must be >= 0");
        out.emplace_back(lambda, mult);
    }
    return out;
}

json lambda_list_to_json(const std::vector<std::pair<cplx, int>>& lambdas) {
    json arr = json::array();
    for (const auto& [lambda, mult] : lambdas) {
        json e;
        e["re"] = lambda.real();
        e["im"] = lambda.imag();
        e["mult"] = mult;
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace

std::string dump_fixed(const json& doc, int indent) {
    std::string out;
    dump_value(doc, out, indent, 0);
    out += '\n';
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

Mask parse_mask(const json& doc) {
    std::int64_t lo = as_int(field(doc, "lo"), "lo");
    const json& carr = field(doc, "coeffs");
    if (!carr.is_array() || carr.empty()) {
        throw std::invalid_argument("'coeffs' must be a non-empty array");
    }
    std::vector<cplx> coeffs;
    coeffs.reserve(carr.size());
    for (const auto& e : carr) coeffs.push_back(parse_complex(e, "coefficient"));
    Normalization conv = Normalization::Sum2;
    if (doc.contains("normalization")) {
        const std::string name = field(doc, "normalization").get<std::string>();
        if (name == "sum2") {
            conv = Normalization::Sum2;
        } else if (name == "unit") {
            conv = Normalization::Unit;
        } else {
            throw std::invalid_argument("normalization must be \"sum2\" or \"unit\"");
        }
    }
    return Mask::from(LaurentPolynomial(std::move(coeffs), lo), conv);
}

json mask_to_json(const Mask& mask) {
    json doc;
    doc["lo"] = mask.symbol().lo();
    json coeffs = json::array();
    for (cplx c : mask.symbol().coeffs()) coeffs.push_back(complex_pair(c));
    doc["coeffs"] = std::move(coeffs);
    doc["normalization"] = "sum2";
    return doc;
}

MaskSchedule parse_schedule(const json& doc) {
    if (doc.is_object() && doc.contains("coeffs") && !doc.contains("head")) {
        // A bare mask object is accepted as a stationary one-mask schedule.
        std::vector<Mask> head;
        head.push_back(parse_mask(doc));
        return MaskSchedule(std::move(head), RepeatLastTail{});
    }
    const json& harr = field(doc, "head");
    if (!harr.is_array() || harr.empty()) {
        throw std::invalid_argument("'head' must be a non-empty array of masks");
    }
    std::vector<Mask> head;
    head.reserve(harr.size());
    for (const auto& m : harr) head.push_back(parse_mask(m));

    TailRule tail = RepeatLastTail{};
    if (doc.contains("tail")) {
        const json& t = doc.at("tail");
        const std::string kind = field(t, "kind").get<std::string>();
        if (kind == "repeat_last") {
            tail = RepeatLastTail{};
        } else if (kind == "exponential") {
            ExponentialTail e;
            e.lambdas = parse_lambda_list(field(t, "lambdas"));
            if (t.contains("level_offset")) {
                e.level_offset = static_cast<int>(as_int(t.at("level_offset"), "level_offset"));
            }
            tail = std::move(e);
        } else {
            throw std::invalid_argument("tail kind must be \"repeat_last\" or \"exponential\"");
        }
    }
    return MaskSchedule(std::move(head), std::move(tail));
}

json schedule_to_json(const MaskSchedule& schedule) {
    json doc;
    json head = json::array();
    for (const auto& m : schedule.head()) head.push_back(mask_to_json(m));
    doc["head"] = std::move(head);
    json tail;
    if (std::holds_alternative<RepeatLastTail>(schedule.tail())) {
        tail["kind"] = "repeat_last";
    } else {
        const auto& e = std::get<ExponentialTail>(schedule.tail());
        tail["kind"] = "exponential";
        tail["lambdas"] = lambda_list_to_json(e.lambdas);
        if (e.level_offset != 0) tail["level_offset"] = e.level_offset;
    }
    doc["tail"] = std::move(tail);
    return doc;
}

ExponentialSpace parse_spectrum(const json& doc) {
    if (doc.is_array()) return ExponentialSpace(parse_lambda_list(doc));
    return ExponentialSpace(parse_lambda_list(field(doc, "lambdas")));
}

json spectrum_to_json(const ExponentialSpace& space) {
    json doc;
    doc["lambdas"] = lambda_list_to_json(space.spectrum);
    return doc;
}

SubspaceData parse_subspace(const json& doc) {
    SubspaceData out;
    out.ambient = static_cast<int>(as_int(field(doc, "ambient"), "ambient"));
    if (out.ambient <= 0) throw std::invalid_argument("ambient must be positive");
    const json& rows = field(doc, "basis");
    if (!rows.is_array() || rows.empty()) {
        throw std::invalid_argument("'basis' must be a non-empty array of vectors");
    }
    out.basis.resize(out.ambient, static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        const json& row = rows[j];
        if (!row.is_array() || static_cast<int>(row.size()) != out.ambient) {
            throw std::invalid_argument("each basis vector must list 'ambient' many numbers");
        }
        for (int i = 0; i < out.ambient; ++i) {
            out.basis(i, static_cast<Eigen::Index>(j)) = as_double(row[i], "basis entry");
        }
    }
    return out;
}

json verdict_to_json(const DecayVerdict& verdict) {
    json v;
    switch (verdict.kind) {
        case DecayKind::FinitelySupported: {
            v["kind"] = "finitely_supported";
            json supp = json::array();
            for (int l : verdict.support) supp.push_back(l);
            v["support"] = std::move(supp);
            break;
        }
        case DecayKind::ExponentialDecay:
            v["kind"] = "exponential_decay";
            v["C"] = verdict.C;
            v["q"] = verdict.q;
            v["fit_residual"] = verdict.fit_residual;
            break;
        case DecayKind::NoDecay:
            v["kind"] = "no_decay";
            v["fit_residual"] = verdict.fit_residual;
            break;
    }
    v["threshold"] = verdict.threshold;
    return v;
}

json decay_report(const DecaySequence& seq, const DecayVerdict& verdict) {
    json doc;
    json lambda;
    lambda["re"] = seq.lambda.real();
    lambda["im"] = seq.lambda.imag();
    doc["lambda"] = std::move(lambda);
    doc["order"] = seq.order;
    doc["range"] = seq.range;
    doc["truncation_error"] = seq.truncation_error;
    doc["verdict"] = verdict_to_json(verdict);
    json entries = json::array();
    for (int l = -seq.range; l <= seq.range; ++l) {
        json e;
        e["l"] = l;
        e["re"] = seq.at(l).real();
        e["im"] = seq.at(l).imag();
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

void write_csv(std::ostream& os, const SampledFunction& f) {
    os << "t,re,im\n";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        os << fmt_double(f.t(i)) << ',' << fmt_double(f.values[i].real()) << ','
           << fmt_double(f.values[i].imag()) << '\n';
    }
}

std::string csv_string(const SampledFunction& f) {
    std::ostringstream ss;
    write_csv(ss, f);
    return ss.str();
}

SampledFunction read_csv(std::istream& is) {
    std::vector<double> ts;
    std::vector<cplx> values;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("t,", 0) == 0 || line.rfind("t;", 0) == 0) continue;  // header
        }
        std::array<double, 3> cell{0.0, 0.0, 0.0};
        const char* p = line.c_str();
        for (int k = 0; k < 3; ++k) {
            char* end = nullptr;
            cell[static_cast<std::size_t>(k)] = std::strtod(p, &end);
            if (end == p) throw std::invalid_argument("malformed CSV row: " + line);
            p = end;
            if (k < 2) {
                if (*p != ',') throw std::invalid_argument("malformed CSV row: " + line);
                ++p;
            }
        }
        while (*p == ' ') ++p;
        if (*p != '\0') throw std::invalid_argument("trailing data in CSV row: " + line);
        ts.push_back(cell[0]);
        values.push_back(cplx(cell[1], cell[2]));
    }
    if (ts.empty()) throw std::invalid_argument("CSV contains no samples");

    SampledFunction f;
    if (ts.size() == 1) {
        f.level = 0;
        f.lo = std::llround(ts[0]);
        if (std::abs(ts[0] - static_cast<double>(f.lo)) > 1e-9) {
            throw std::invalid_argument("single-sample CSV must sit on an integer point");
        }
    } else {
        const double step = ts[1] - ts[0];
        if (!(step > 0)) throw std::invalid_argument("CSV t column must be strictly increasing");
        for (std::size_t i = 1; i < ts.size(); ++i) {
            if (std::abs(ts[i] - ts[i - 1] - step) > 1e-9 * std::max(1.0, std::abs(ts[i]))) {
                throw std::invalid_argument("CSV t column must be uniformly spaced");
            }
        }
        const double level_guess = -std::log2(step);
        const int level = static_cast<int>(std::lround(level_guess));
        if (level < 0 || level > 40 || std::abs(std::ldexp(1.0, -level) - step) > 1e-12 * step) {
            throw std::invalid_argument("CSV spacing must be a dyadic step 2^-r, r in [0, 40]");
        }
        f.level = level;
        const double scaled = ts[0] * std::ldexp(1.0, level);
        f.lo = std::llround(scaled);
        if (std::abs(scaled - static_cast<double>(f.lo)) > 1e-6) {
            throw std::invalid_argument("CSV t column must sit on the dyadic grid");
        }
    }
    f.values = std::move(values);
    return f;
}

}  // namespace shiftlab::io
