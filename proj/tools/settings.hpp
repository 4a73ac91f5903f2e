#ifndef DICOLA_TOOLS_SETTINGS_HPP
#define DICOLA_TOOLS_SETTINGS_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace dicola::cli {

/// Bad flag values or config keys; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every tunable of every command. A config file fills these before the
/// command line is parsed, so flags win.
struct Settings {
    std::uint64_t seed = 1;

    // gen, bench
    int n = 40;
    double degree = 3.0;
    int latents = 2;
    int samples = 2000;
    int reps = 20;
    std::vector<std::string> methods{"fci", "dicola+fci"};

    // discover
    std::string method = "dicola+fci";
    std::string tester = "fisherz";
    std::string data;
    std::string truth;
    std::string pag;

    double alpha = 0.01;
    int max_cond = -1;  // negative: unbounded
    double timeout_factor = 10.0;
    int workers = 1;

    // project
    std::string dag;
    std::string latents_file;

    // verify
    std::string suite = "all";
    int n_max = 8;
    int trials = 500;

    // outputs
    std::string out;
    std::string csv;
    std::string json;
};

/// Keys are the long flag names with '-' written as '_'. Unknown keys and
/// ill-typed values raise UsageError.
void apply_config_file(const std::filesystem::path& path, Settings& s);

}  // namespace dicola::cli

#endif  // DICOLA_TOOLS_SETTINGS_HPP
