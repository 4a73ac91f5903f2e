#ifndef DICOLA_TOOLS_VERIFY_HPP
#define DICOLA_TOOLS_VERIFY_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dicola::cli {

inline const std::vector<std::string> kSuites{"theorems", "projection", "uig", "recovery"};

struct VerifyOptions {
    std::string suite = "all";
    int n_max = 8;
    int trials = 500;
    std::uint64_t seed = 1;
    std::filesystem::path out;  // where counterexample bundles go
};

struct VerifyOutcome {
    std::string suite;
    int trials = 0;
    long checks = 0;
    std::optional<std::filesystem::path> counterexample;
    std::string what;
};

/// Runs the named suite (or all of them) against path-enumeration references.
/// Stops at the first counterexample and saves its scenario bundle.
std::vector<VerifyOutcome> run_verify(const VerifyOptions& options);

}  // namespace dicola::cli

#endif  // DICOLA_TOOLS_VERIFY_HPP
