#pragma once

#include <string>
#include <vector>

#include "sbl/problem.hpp"

namespace sbl {

struct AssumptionCheck {
    std::string name;
    bool satisfied = false;
    bool applicable = true;
    double witness_u = 0.0;   // sample point realizing the worst ratio
    double witness_v = 0.0;
    double witness_x = 0.0;
    double observed = 0.0;    // worst observed quantity
    double declared = 0.0;    // declared bound it is tested against
    std::string detail;
};

struct ValidationReport {
    std::vector<AssumptionCheck> checks;
    bool all_satisfied() const {
        for (const auto& c : checks)
            if (c.applicable && !c.satisfied) return false;
        return true;
    }
};

/// Samples the standing assumptions (sigma(.,0) = 0, u- and x-Lipschitz
/// bounds on sigma, polynomial flux growth) over the working range and
/// reports each one satisfied or violated with a witness point. Violations
/// are reported, never thrown.
ValidationReport validate_problem(const Problem& p, double range_lo, double range_hi,
                                  int sample_pairs = 100000, std::uint64_t seed = 0x5b1);

}  // namespace sbl
