#pragma once

// The mfzl command line: expand, jpoly, zeros, cm, classify, transport and
// verify-paper. Exit codes: 0 success, 1 golden mismatch, 2 usage or pipeline error.

#include <iosfwd>
#include <string>
#include <vector>

namespace mfzl::cli {

enum ExitCode { kOk = 0, kGoldenMismatch = 1, kPipelineError = 2 };

struct RunConfig {
    long precision = 256;
    long truncation = 0;
    std::string format = "table";
    std::string locus = "A";
    long weight = 0;
    long p = 0;
    std::string height;
    long d_bound = 100000;
    long samples = 64;
};

/// Precision default: MFZL_PRECISION when set and valid, else 256.
long default_precision();

/// Checks precision >= 64 and truncation 0 (automatic) or >= 8. A bare expansion
/// accepts any truncation, since it only lists coefficients.
void validate(const RunConfig& cfg, bool expansion_only = false);

struct GoldenTarget {
    std::string name;
    std::string description;
};
const std::vector<GoldenTarget>& golden_targets();

/// The lines a golden target must contain, computed from the library.
std::vector<std::string> golden_lines(const std::string& target);

/// Compares every target (or only `only`) against <dir>/<target>.txt as sets of lines.
int verify_paper(const std::string& golden_dir, const std::string& only, std::ostream& out);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mfzl::cli
