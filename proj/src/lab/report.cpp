#include "qdiv/lab/report.hpp"

#include "qdiv/errors.hpp"

#include <algorithm>

namespace qdiv::lab {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::preserved: return "preserved";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "preserved") return Verdict::preserved;
    if (s == "violated") return Verdict::violated;
    if (s == "inconclusive") return Verdict::inconclusive;
    throw ValidationError("unknown verdict '" + s + "'");
}

bool ExperimentReport::passed() const {
    const bool own = expected ? verdict == *expected : verdict != Verdict::violated;
    return own && std::all_of(parts.begin(), parts.end(), [](const ExperimentReport& p) { return p.passed(); });
}

ExperimentReport aggregate(std::string name, Index dim, std::uint64_t seed, std::vector<ExperimentReport> parts) {
    ExperimentReport r;
    r.experiment = std::move(name);
    r.dim = dim;
    r.seed = seed;
    bool any_violated = false;
    bool any_inconclusive = false;
    for (const auto& p : parts) {
        r.trials += p.trials;
        r.max_deviation = std::max(r.max_deviation, p.max_deviation);
        r.max_relative_deviation = std::max(r.max_relative_deviation, p.max_relative_deviation);
        any_violated |= p.verdict == Verdict::violated;
        any_inconclusive |= p.verdict == Verdict::inconclusive;
    }
    r.verdict = any_violated ? Verdict::violated : any_inconclusive ? Verdict::inconclusive : Verdict::preserved;
    r.parts = std::move(parts);
    // The aggregate's own verdict is informational; passing is decided by
    // the parts and their expectations.
    r.expected = r.verdict;
    return r;
}

} // namespace qdiv::lab
