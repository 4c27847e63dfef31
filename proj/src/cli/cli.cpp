#include "qdiv/cli.hpp"

#include "qdiv/divergences.hpp"
#include "qdiv/errors.hpp"
#include "qdiv/io.hpp"
#include "qdiv/lab/experiments.hpp"
#include "qdiv/lab/suites.hpp"
#include "qdiv/means.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace qdiv::cli {
namespace {

using io::Json;

struct Options {
    std::vector<std::string> inputs;
    std::optional<std::string> divergence;
    std::optional<double> alpha;
    std::optional<std::string> f;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> dim;
    std::optional<std::string> out;
    std::string format = "json";
    std::string order = "loewner";
    std::string mean = "geometric";
};

// Experiment config after merging file and flags; flags win.
struct ExperimentConfig {
    std::string experiment;
    std::optional<int> dim;
    std::optional<double> alpha;
    std::optional<std::string> f;
    std::optional<int> trials;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::optional<std::string> divergence;
    std::optional<Json> transform;
};

std::string shortest(double x) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <class T>
std::optional<T> optional_key(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

ExperimentConfig load_config(const std::string& path, const Options& opt) {
    static const std::set<std::string> known = {"experiment", "dim",  "alpha",      "f",        "trials",
                                                "seed",       "tol",  "divergence", "transform"};
    const Json j = io::read_json_file(path);
    if (!j.is_object()) throw ValidationError("config '" + path + "' must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw ValidationError("config '" + path + "': unknown key '" + k + "'");
    ExperimentConfig c;
    try {
        if (!j.contains("experiment")) throw ValidationError("config '" + path + "': missing 'experiment'");
        c.experiment = j.at("experiment").get<std::string>();
        c.dim = optional_key<int>(j, "dim");
        c.alpha = optional_key<double>(j, "alpha");
        c.f = optional_key<std::string>(j, "f");
        c.trials = optional_key<int>(j, "trials");
        c.seed = optional_key<std::uint64_t>(j, "seed").value_or(1);
        c.tol = optional_key<double>(j, "tol");
        c.divergence = optional_key<std::string>(j, "divergence");
        if (j.contains("transform")) c.transform = j.at("transform");
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config '" + path + "': " + e.what());
    }
    if (opt.dim) c.dim = opt.dim;
    if (opt.alpha) c.alpha = opt.alpha;
    if (opt.f) c.f = opt.f;
    if (opt.trials) c.trials = opt.trials;
    if (opt.seed) c.seed = *opt.seed;
    if (opt.tol) c.tol = opt.tol;
    if (opt.divergence) c.divergence = opt.divergence;
    if (c.dim && *c.dim < 1) throw ValidationError("dim must be at least 1");
    if (c.trials && *c.trials < 1) throw ValidationError("trials must be at least 1");
    if (c.tol && !(*c.tol > 0.0)) throw ValidationError("tol must be positive");
    return c;
}

lab::SuiteConfig suite_config(const ExperimentConfig& c) {
    lab::SuiteConfig s;
    s.seed = c.seed;
    if (c.dim) s.dim = static_cast<Index>(*c.dim);
    s.trials = c.trials;
    s.tol = c.tol;
    s.f = c.f;
    s.alpha = c.alpha;
    return s;
}

PsdMatrix load_psd(const std::string& path) {
    try {
        return io::psd_from_json(io::read_json_file(path));
    } catch (const ValidationError& e) {
        // The file name is the useful part of the message for a user.
        const std::string what = e.what();
        if (what.find(path) != std::string::npos) throw;
        throw ValidationError("'" + path + "': " + what);
    }
}

std::pair<PsdMatrix, PsdMatrix> load_pair(const Options& opt) {
    if (opt.inputs.size() != 2) throw ValidationError("expected two matrix files");
    PsdMatrix a = load_psd(opt.inputs[0]);
    PsdMatrix b = load_psd(opt.inputs[1]);
    if (a.dim() != b.dim())
        throw ValidationError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    return {std::move(a), std::move(b)};
}

void emit(const Options& opt, const std::string& text, std::ostream& out) {
    if (!opt.out) {
        out << text;
        return;
    }
    std::ofstream file(*opt.out, std::ios::binary);
    if (!file) throw ValidationError("cannot write '" + *opt.out + "'");
    file << text;
}

void report_text(const lab::ExperimentReport& r, int depth, std::ostream& os) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    os << pad << (r.passed() ? "PASS " : "FAIL ") << r.experiment << ": " << lab::to_string(r.verdict);
    if (r.expected) os << " (expected " << lab::to_string(*r.expected) << ")";
    os << ", max deviation " << shortest(r.max_deviation) << "\n";
    for (const auto& [k, v] : r.metrics) os << pad << "  " << k << " = " << shortest(v) << "\n";
    if (!r.note.empty()) os << pad << "  note: " << r.note << "\n";
    for (const auto& p : r.parts) report_text(p, depth + 1, os);
}

int emit_report(const Options& opt, const lab::ExperimentReport& r, std::ostream& out) {
    if (opt.format == "json") {
        emit(opt, io::dump(io::report_to_json(r)), out);
    } else {
        std::ostringstream os;
        report_text(r, 0, os);
        emit(opt, os.str(), out);
    }
    return r.passed() ? exit_ok : exit_unexpected;
}

LimitSchedule schedule(const Options& opt) {
    LimitSchedule s;
    if (opt.tol) s.conv_tol = *opt.tol;
    return s;
}

int cmd_compute(const Options& opt, std::ostream& out) {
    if (!opt.divergence) throw ValidationError("compute needs --divergence");
    const DivergenceSelector div = DivergenceSelector::parse(*opt.divergence, opt.alpha, opt.f);
    const auto [a, b] = load_pair(opt);
    const ExtendedReal value = div(a, b, schedule(opt));
    if (opt.format == "json") {
        Json j;
        j["divergence"] = div.kind_name();
        if (div.alpha()) j["alpha"] = *div.alpha();
        if (div.function()) j["f"] = div.function()->name();
        j["value"] = io::extended_to_json(value);
        emit(opt, io::dump(j), out);
    } else {
        const std::string v = value.is_finite() ? shortest(value.value()) : value.is_pos_inf() ? "+inf" : "-inf";
        emit(opt, div.label() + " = " + v + "\n", out);
    }
    return exit_ok;
}

int cmd_order(const Options& opt, std::ostream& out) {
    const auto [a, b] = load_pair(opt);
    const double tol = opt.tol.value_or(a.tolerances().herm_tol);
    bool holds = false;
    if (opt.order == "loewner") {
        holds = loewner_leq(a.hermitian(), b.hermitian(), tol);
    } else {
        if (!a.is_definite() || !b.is_definite()) throw ValidationError("chaotic order needs positive definite inputs");
        holds = chaotic_leq(PdMatrix(a), PdMatrix(b), tol);
    }
    if (opt.format == "json")
        emit(opt, io::dump(Json{{"order", opt.order}, {"holds", holds}}), out);
    else
        emit(opt, holds ? "true\n" : "false\n", out);
    return exit_ok;
}

MeanFunction mean_function(const std::string& spec) {
    const std::string name = spec.substr(5);
    if (name == "geometric") return MeanFunction::geometric();
    return MeanFunction::from(builtin(name));
}

int cmd_mean(const Options& opt, std::ostream& out) {
    const auto pair = load_pair(opt);
    const PsdMatrix& a = pair.first;
    const PsdMatrix& b = pair.second;
    const PsdMatrix m = [&]() -> PsdMatrix {
        if (opt.mean == "log_euclidean") return log_euclidean(a, b);
        if (opt.mean == "log_product") return log_product(a, b);
        const MeanFunction h = opt.mean == "geometric" ? MeanFunction::geometric() : mean_function(opt.mean);
        if (a.is_definite()) return kubo_ando_mean(PdMatrix(a), b, h);
        return kubo_ando_mean_limit(a, b, h, schedule(opt));
    }();
    if (opt.format == "json") {
        emit(opt, io::dump(io::matrix_to_json(m.matrix())), out);
    } else {
        std::ostringstream os;
        const Matrix& mm = m.matrix();
        for (Index i = 0; i < mm.rows(); ++i) {
            for (Index j = 0; j < mm.cols(); ++j) {
                os << (j ? " " : "") << shortest(mm(i, j).real());
                if (mm(i, j).imag() != 0.0) os << (mm(i, j).imag() < 0 ? "" : "+") << shortest(mm(i, j).imag()) << "i";
            }
            os << "\n";
        }
        emit(opt, os.str(), out);
    }
    return exit_ok;
}

int cmd_suite(const Options& opt, std::ostream& out) {
    ExperimentConfig c;
    if (!opt.inputs.empty()) {
        c = load_config(opt.inputs.front(), opt);
    } else {
        c.experiment = "all";
        c.dim = opt.dim;
        c.alpha = opt.alpha;
        c.f = opt.f;
        c.trials = opt.trials;
        c.seed = opt.seed.value_or(1);
        c.tol = opt.tol;
    }
    return emit_report(opt, lab::run_suite(c.experiment, suite_config(c)), out);
}

lab::TransformSpec transform_from_json(const Json& j, Index dim, std::uint64_t seed) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        const double lambda = j.value("lambda", 1.0);
        lab::Rng rng(seed, 0x7f4a7c15ULL);
        if (kind == "unitary") return lab::UnitaryCongruence{lab::haar_unitary(dim, rng), lambda};
        if (kind == "antiunitary") return lab::AntiUnitaryCongruence{lab::haar_unitary(dim, rng), lambda};
        if (kind == "scaling") return lab::UnitaryCongruence{Matrix::Identity(dim, dim), lambda};
        if (kind == "loglinear") {
            // Random invertible T and Hermitian H; rarely a symmetry.
            Matrix t = lab::ginibre(dim, dim, rng) + 2.0 * Matrix::Identity(dim, dim);
            Matrix h = lab::random_hermitian(dim, rng) * j.value("h_scale", 0.5);
            return lab::LogLinear{std::move(t), std::move(h), j.value("conjugate_linear", false)};
        }
        throw ValidationError("transform kind must be unitary, antiunitary, scaling or loglinear");
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("transform: ") + e.what());
    }
}

int cmd_preserve(const Options& opt, std::ostream& out) {
    if (opt.inputs.size() != 1) throw ValidationError("preserve expects one config file");
    const ExperimentConfig c = load_config(opt.inputs.front(), opt);
    const lab::SuiteConfig sc = suite_config(c);
    const std::string& e = c.experiment;
    if (e == "theorem1" || e == "theorem2" || e == "theorem3" || e == "chaotic" || e == "lemma1" ||
        e == "sandwich" || e == "zero" || e == "infimum")
        return emit_report(opt, lab::run_suite(e, sc), out);
    if (e == "dpi") {
        if (!c.divergence) return emit_report(opt, lab::run_suite("dpi", sc), out);
        const auto div = DivergenceSelector::parse(*c.divergence, c.alpha, c.f);
        auto r = lab::dpi_check(div, sc.dim.value_or(3), 3, sc.trials.value_or(200), c.seed,
                                sc.tol.value_or(defaults::preservation_tol));
        r.expected = lab::Verdict::preserved;
        return emit_report(opt, r, out);
    }
    if (e == "preservation") {
        if (!c.divergence) throw ValidationError("preservation needs 'divergence'");
        if (!c.transform) throw ValidationError("preservation needs 'transform'");
        const auto div = DivergenceSelector::parse(*c.divergence, c.alpha, c.f);
        const Index dim = sc.dim.value_or(4);
        const lab::TransformSpec spec = transform_from_json(*c.transform, dim, c.seed);
        auto r = lab::test_preservation(spec, div, dim, sc.trials.value_or(100), c.seed,
                                        sc.tol.value_or(defaults::preservation_tol));
        r.expected = lab::is_canonical(spec, div) ? lab::Verdict::preserved : lab::Verdict::violated;
        return emit_report(opt, r, out);
    }
    throw ValidationError("unknown experiment '" + e + "'");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum divergences, operator means and preserver experiments"};
    app.require_subcommand(1, 1);
    Options opt;

    const auto common = [&opt](CLI::App* sub) {
        sub->add_option("--divergence", opt.divergence, "divergence family")
            ->check(CLI::IsMember({"renyi", "sandwiched", "flat", "standard", "maximal"}));
        sub->add_option("--alpha", opt.alpha, "Rényi order");
        sub->add_option("--f", opt.f, "neg_sqrt | hellinger | alpha:<a> | eta | min_test");
        sub->add_option("--tol", opt.tol, "tolerance override");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--trials", opt.trials, "trial count");
        sub->add_option("--dim", opt.dim, "matrix dimension");
        sub->add_option("--out", opt.out, "write output here instead of stdout");
        sub->add_option("--format", opt.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* compute = app.add_subcommand("compute", "divergence between two matrix files");
    compute->add_option("a", opt.inputs, "matrix files A B")->required()->expected(2);
    common(compute);
    CLI::App* suite = app.add_subcommand("suite", "run invariant suites from a config (all suites without one)");
    suite->add_option("config", opt.inputs, "experiment config")->expected(0, 1);
    common(suite);
    CLI::App* preserve = app.add_subcommand("preserve", "run a preserver experiment from a config");
    preserve->add_option("config", opt.inputs, "experiment config")->required()->expected(1);
    common(preserve);
    CLI::App* order = app.add_subcommand("order", "test A <= B in an order");
    order->add_option("a", opt.inputs, "matrix files A B")->required()->expected(2);
    order->add_option("--order", opt.order, "loewner | chaotic")->check(CLI::IsMember({"loewner", "chaotic"}));
    common(order);
    CLI::App* mean = app.add_subcommand("mean", "operator mean of two matrix files");
    mean->add_option("a", opt.inputs, "matrix files A B")->required()->expected(2);
    mean->add_option("--mean", opt.mean, "geometric | log_euclidean | log_product | kubo:<h>")
        ->check([](const std::string& s) -> std::string {
            if (s == "geometric" || s == "log_euclidean" || s == "log_product" || s.rfind("kubo:", 0) == 0) return {};
            return "unknown mean '" + s + "'";
        });
    common(mean);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_invalid;
    }

    try {
        if (compute->parsed()) return cmd_compute(opt, out);
        if (suite->parsed()) return cmd_suite(opt, out);
        if (preserve->parsed()) return cmd_preserve(opt, out);
        if (order->parsed()) return cmd_order(opt, out);
        return cmd_mean(opt, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}

} // namespace qdiv::cli
