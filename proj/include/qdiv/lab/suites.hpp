#pragma once

// Randomized invariant suites. Each suite has its own default dimension,
// trial count and tolerance; SuiteConfig overrides them.

#include "qdiv/lab/report.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qdiv::lab {

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::optional<Index> dim;
    std::optional<int> trials;
    std::optional<double> tol;
    /// Restricts function-indexed suites to one built-in.
    std::optional<std::string> f;
    /// Restricts alpha-indexed suites to one alpha.
    std::optional<double> alpha;
};

struct SuiteEntry {
    std::string name;
    std::string description;
    std::function<ExperimentReport(const SuiteConfig&)> run;
};

const std::vector<SuiteEntry>& suites();
/// Throws ValidationError for an unknown name.
ExperimentReport run_suite(const std::string& name, const SuiteConfig& cfg);
/// Runs every registered suite as parts of one report.
ExperimentReport run_all_suites(const SuiteConfig& cfg);

// Individual suites, exposed for the acceptance runner.
ExperimentReport commuting_coincidence(const SuiteConfig& cfg);
ExperimentReport geometric_mean_identity(const SuiteConfig& cfg);
ExperimentReport three_route_agreement(const SuiteConfig& cfg);
ExperimentReport maximality(const SuiteConfig& cfg);
ExperimentReport dpi_suite(const SuiteConfig& cfg);
ExperimentReport chaotic_suite(const SuiteConfig& cfg);
ExperimentReport lemma1_suite(const SuiteConfig& cfg);
ExperimentReport sandwich_suite(const SuiteConfig& cfg);
ExperimentReport infimum_suite(const SuiteConfig& cfg);
ExperimentReport zero_characterization(const SuiteConfig& cfg);
ExperimentReport log_product_algebra(const SuiteConfig& cfg);
ExperimentReport trace_exp_monotonicity(const SuiteConfig& cfg);
ExperimentReport weyl_monotonicity(const SuiteConfig& cfg);
ExperimentReport trace_jensen(const SuiteConfig& cfg);
ExperimentReport theorem1_suite(const SuiteConfig& cfg);
ExperimentReport theorem2_suite(const SuiteConfig& cfg);
ExperimentReport theorem3_suite(const SuiteConfig& cfg);

} // namespace qdiv::lab
