#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pamlyap/types.hpp"

namespace pam {

enum class Suite { quick, full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // measured vs required, worst case
    double seconds = 0.0;
};

// Runs the cross-validation criteria (the quick suite is the sub-2-minute
// subset {1,4,5,8,10,11}; full runs all 11). One pass/fail line per
// criterion is written to `progress` as each finishes, when non-null.
std::vector<CriterionResult> run_acceptance(Suite suite, std::ostream* progress);

// Independent reduction of the k=2 continuum moment: the z1 residue at
// z2 + beta^2 plus the coincident-line double integral. Oracle for the
// she_moment_q spot check.
double she_moment_k2_residue_oracle(double t, double beta);

}  // namespace pam
