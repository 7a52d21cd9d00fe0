#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "shiftlab/fourier.hpp"
#include "shiftlab/generation.hpp"
#include "shiftlab/subdivision.hpp"

namespace shiftlab::io {

/// Insertion-ordered JSON document; all artifacts use it so output key order
/// is deterministic.
using json = nlohmann::ordered_json;

/// Serializes with every double printed via "%.17g" so identical inputs give
/// byte-identical artifacts.  Non-finite numbers are rejected.
std::string dump_fixed(const json& doc, int indent = 2);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// {"lo": int, "coeffs": [[re,im],...], "normalization": "sum2"|"unit"}
Mask parse_mask(const json& doc);
json mask_to_json(const Mask& mask);

/// {"head": [mask,...], "tail": {"kind":"repeat_last"} |
///  {"kind":"exponential", "lambdas":[{"re","im","mult"},...], "level_offset"?}}
MaskSchedule parse_schedule(const json& doc);
json schedule_to_json(const MaskSchedule& schedule);

/// {"lambdas": [{"re","im","mult"},...]}
ExponentialSpace parse_spectrum(const json& doc);
json spectrum_to_json(const ExponentialSpace& space);

struct SubspaceData {
    int ambient = 0;
    Eigen::MatrixXd basis;  ///< columns are basis vectors
};

/// {"ambient": n, "basis": [[...n reals...], ...]} — one array per basis vector.
SubspaceData parse_subspace(const json& doc);

json decay_report(const DecaySequence& seq, const DecayVerdict& verdict);
json verdict_to_json(const DecayVerdict& verdict);

/// CSV with header "t,re,im", '.' decimal, \n line ends, %.17g numbers.
void write_csv(std::ostream& os, const SampledFunction& f);
std::string csv_string(const SampledFunction& f);

/// Parses the CSV format above back into samples; the grid level is inferred
/// from the (uniform, dyadic) spacing of the t column.
SampledFunction read_csv(std::istream& is);

}  // namespace shiftlab::io
