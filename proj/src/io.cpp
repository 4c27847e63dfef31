#include "qdiv/io.hpp"

#include "qdiv/errors.hpp"

#include <fstream>
#include <sstream>

namespace qdiv::io {

Json matrix_to_json(const Matrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("matrix JSON: only square matrices are supported");
    Json entries = Json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    Json out;
    out["dim"] = m.rows();
    out["entries"] = std::move(entries);
    return out;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw ValidationError("matrix JSON: expected an object with \"dim\" and \"entries\"");
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
        throw ValidationError("matrix JSON: \"dim\" must be a positive integer");
    const auto d = static_cast<Index>(j["dim"].get<long long>());
    const Json& e = j["entries"];
    if (!e.is_array() || static_cast<Index>(e.size()) != d * d)
        throw ValidationError("matrix JSON: \"entries\" must hold dim*dim = " + std::to_string(d * d) + " entries");
    Matrix m(d, d);
    for (Index k = 0; k < d * d; ++k) {
        const Json& z = e[static_cast<std::size_t>(k)];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
            throw ValidationError("matrix JSON: entry " + std::to_string(k) + " must be [re, im]");
        m(k / d, k % d) = Complex(z[0].get<double>(), z[1].get<double>());
    }
    return m;
}

HermitianMatrix hermitian_from_json(const Json& j, const Tolerances& tol) {
    return HermitianMatrix(matrix_from_json(j), tol);
}

PsdMatrix psd_from_json(const Json& j, const Tolerances& tol) { return PsdMatrix(hermitian_from_json(j, tol), tol); }

Json extended_to_json(const ExtendedReal& x) {
    if (x.is_pos_inf()) return "+inf";
    if (x.is_neg_inf()) return "-inf";
    return x.value();
}

ExtendedReal extended_from_json(const Json& j) {
    if (j.is_number()) return ExtendedReal(j.get<double>());
    if (j == "+inf") return ExtendedReal::pos_inf();
    if (j == "-inf") return ExtendedReal::neg_inf();
    throw ValidationError("expected a number, \"+inf\" or \"-inf\"");
}

namespace {

Json number(double x) { return extended_to_json(ExtendedReal::from_double(x)); }

} // namespace

Json report_to_json(const lab::ExperimentReport& r) {
    Json out;
    out["experiment"] = r.experiment;
    out["dim"] = r.dim;
    out["seed"] = r.seed;
    out["trials"] = r.trials;
    out["max_deviation"] = number(r.max_deviation);
    out["max_relative_deviation"] = number(r.max_relative_deviation);
    out["verdict"] = lab::to_string(r.verdict);
    out["expected"] = r.expected ? Json(lab::to_string(*r.expected)) : Json(nullptr);
    out["passed"] = r.passed();
    if (r.witness) {
        out["witness"] = {{"a", matrix_to_json(r.witness->a)},
                          {"b", matrix_to_json(r.witness->b)},
                          {"deviation", number(r.witness->deviation)}};
    } else {
        out["witness"] = nullptr;
    }
    Json metrics = Json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = number(v);
    out["metrics"] = std::move(metrics);
    if (!r.note.empty()) out["note"] = r.note;
    Json records = Json::array();
    for (const auto& t : r.records) records.push_back({{"trial", t.index}, {"deviation", number(t.deviation)}});
    out["records"] = std::move(records);
    Json parts = Json::array();
    for (const auto& p : r.parts) parts.push_back(report_to_json(p));
    out["parts"] = std::move(parts);
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("malformed JSON in '" + path + "': " + e.what());
    }
}

namespace {

// Containers of scalars are written on one line: every array, and objects
// with at most three members (trial records, small metric sets).
bool inline_container(const Json& j) {
    if (j.is_object() && j.size() > 3) return false;
    for (const auto& e : j)
        if (e.is_structured()) return false;
    return true;
}

void write(const Json& j, int depth, std::string& out) {
    if (!j.is_structured() || j.empty()) {
        out += j.dump();
        return;
    }
    const bool obj = j.is_object();
    const bool flat = inline_container(j);
    const std::string pad = flat ? "" : std::string(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    out += obj ? "{" : "[";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        out += first ? (flat ? "" : "\n") : (flat ? ", " : ",\n");
        first = false;
        out += pad;
        if (obj) out += Json(it.key()).dump() + ": ";
        write(*it, depth + 1, out);
    }
    if (!flat) out += "\n" + std::string(static_cast<std::size_t>(2 * depth), ' ');
    out += obj ? "}" : "]";
}

} // namespace

std::string dump(const Json& j) {
    std::string out;
    write(j, 0, out);
    return out + "\n";
}

} // namespace qdiv::io
