#pragma once

// JSON formats.
//
// Matrix: {"dim": d, "entries": [[re, im], ...]} with d*d entries in
// row-major order. Numbers are written in shortest round-trip form.
// Extended reals are numbers when finite and the strings "+inf" / "-inf"
// otherwise.

#include "qdiv/extended_real.hpp"
#include "qdiv/lab/report.hpp"
#include "qdiv/linalg.hpp"

#include <json.hpp>

#include <string>

namespace qdiv::io {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m);
/// Structural parse only: checks the schema and the entry count.
Matrix matrix_from_json(const Json& j);
HermitianMatrix hermitian_from_json(const Json& j, const Tolerances& tol = {});
PsdMatrix psd_from_json(const Json& j, const Tolerances& tol = {});

Json extended_to_json(const ExtendedReal& x);
ExtendedReal extended_from_json(const Json& j);

Json report_to_json(const lab::ExperimentReport& r);

/// Reads and parses a JSON file; ValidationError on I/O or syntax errors.
Json read_json_file(const std::string& path);
/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& j);

} // namespace qdiv::io
