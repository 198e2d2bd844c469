#pragma once

#include <string>
#include <vector>

namespace phasemc::acceptance {

/// Outcome of one acceptance criterion: a hard pass/fail plus the measured
/// numbers behind it.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<std::string> details;
};

CriterionResult criterion_single_packet_exact();     // 1. MC vs exact wavepacket
CriterionResult criterion_analytic_approximation();  // 2. large-t analytic curve
CriterionResult criterion_two_packet_interference(); // 3. fringes in N_bar only
CriterionResult criterion_bin_size_phenomenology();  // 4. coarse-bin undercount
CriterionResult criterion_wall();                    // 5. wall node + oracles
CriterionResult criterion_detector_identities();     // 6. exact detector algebra
CriterionResult criterion_double_slit();             // 7. photon fringe geometry
CriterionResult criterion_determinism();             // 8. seed/worker determinism

std::vector<CriterionResult> run_all();

/// Prints one PASS/FAIL line per criterion (plus detail lines) and returns
/// true when everything passed.
bool report(const std::vector<CriterionResult>& results);

} // namespace phasemc::acceptance
