// Command-line front end. Subcommands: probs, bell-test, scan, swap,
// noise-threshold, teleport-fidelity.
//
// Exit codes: 0 success, 2 usage error, 3 internal invariant breach. On a
// non-zero exit nothing is written to the output stream.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace telebell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kSchemaVersion = 1;
inline constexpr std::size_t kMaxScanRows = 1'000'000;

/// One `--grid axis=start:stop:step` entry, in degrees; stop is inclusive.
struct GridAxis {
    std::string axis;
    double start;
    double stop;
    double step;

    std::size_t count() const;
};

/// Throws std::invalid_argument on malformed text, unknown axis, step <= 0,
/// stop < start or non-finite values.
GridAxis parse_grid_axis(const std::string &text);

/// %.12g, with -0 folded into 0.
std::string format_number(double x);

/// `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace telebell::cli
