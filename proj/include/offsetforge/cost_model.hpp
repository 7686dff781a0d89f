#pragma once

#include <string>
#include <vector>

namespace offsetforge {

/// Inputs for the analytic projections. Time fields are seconds; scan_rate
/// is records per second.
struct CostParams {
    double n_targets = 0;           // N
    double n_files = 0;             // M
    double avg_records_per_file = 0; // S
    double scan_rate = 0;           // records/second
    double index_build_seconds = 0;
    double per_lookup_seconds = 0;
};

/// Nested-model operation count N * M * S. The complexity narrative this
/// projects is deliberately the nested loop, not the single-pass scan that
/// baseline_scan executes; the two are different cost stories over the same
/// task.
double brute_force_ops(const CostParams& params);

/// ops / (scan_rate * 3600).
double brute_force_hours(double ops, double scan_rate);

struct CrossoverPoint {
    double n_targets;
    double baseline_seconds;
    double indexed_seconds;
};

struct CrossoverResult {
    // Continuous crossing point of the two cost lines: the target count at
    // which extractions_planned scans cost exactly as much as one index
    // build plus that many indexed lookups. Fractional by nature; take the
    // ceiling for a whole-target reading.
    double threshold_targets = 0;
    std::vector<CrossoverPoint> curve; // sampled for plotting
};

/// Solves extractions_planned * N * per_target_scan_cost >
/// index_build_seconds + extractions_planned * N * per_lookup_seconds for
/// the smallest N, where per_target_scan_cost = M*S/scan_rate. Raises
/// NoCrossoverError when the indexed path never wins (per-lookup cost at or
/// above the per-target scan cost).
CrossoverResult crossover_targets(const CostParams& params, unsigned extractions_planned,
                                  size_t curve_points = 50);

/// Writes the crossover curve as CSV: n_targets,baseline_seconds,indexed_seconds.
void write_cost_curve_csv(const CrossoverResult& result, const std::string& path);

} // namespace offsetforge
