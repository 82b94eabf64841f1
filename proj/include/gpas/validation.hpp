#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gpas {

/// Outcome of one statistical property check.
struct PropertyResult {
    std::string name;
    bool passed = false;
    double statistic = 0.0;
    double threshold = 0.0;
    std::string detail;
    std::string warning;  ///< non-empty when the run was under-powered
};

/// Every property is tested at significance 0.001.
inline constexpr double kValidationAlpha = 0.001;

/// Below this many replicates results are reported but failures only warn.
inline constexpr std::size_t kMinValidationReplicates = 100;

/// Distribution-law, scale-invariance, unbiasedness, running-time, exactness,
/// coverage and TPA Poisson-law checks at `replicates` replicates each.
std::vector<PropertyResult> run_validation(std::size_t replicates, std::uint64_t seed);

}  // namespace gpas
