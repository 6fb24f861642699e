#pragma once

#include <string>
#include <vector>

#include "solitonlab/invariants.hpp"
#include "solitonlab/oracle.hpp"

namespace soliton {

struct AcceptanceConfig {
    std::size_t grid_n = 2048;
    double s_max = 12.0;
    NewtonSettings newton;        // threaded into the trace criteria
    int jobs = 1;
    bool quick = false;           // trims family sizes for smoke runs
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the full verification battery; one result per criterion, in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

}  // namespace soliton
