#include "offsetforge/cost_model.hpp"

#include <cmath>
#include <fstream>

#include "offsetforge/errors.hpp"

namespace offsetforge {

double brute_force_ops(const CostParams& params) {
    return params.n_targets * params.n_files * params.avg_records_per_file;
}

double brute_force_hours(double ops, double scan_rate) {
    if (scan_rate <= 0) throw DomainError("scan_rate must be positive");
    return ops / (scan_rate * 3600.0);
}

CrossoverResult crossover_targets(const CostParams& params, unsigned extractions_planned,
                                  size_t curve_points) {
    if (extractions_planned < 1) throw DomainError("extractions_planned must be >= 1");
    if (params.scan_rate <= 0) throw DomainError("scan_rate must be positive");
    if (params.index_build_seconds < 0) throw DomainError("index_build_seconds must be >= 0");

    const double per_target_scan = params.n_files * params.avg_records_per_file / params.scan_rate;
    const double per_lookup = params.per_lookup_seconds;
    if (per_target_scan <= per_lookup) {
        throw NoCrossoverError("indexed path never wins: per-lookup cost " +
                               std::to_string(per_lookup) + "s >= per-target scan cost " +
                               std::to_string(per_target_scan) + "s");
    }

    const double k = static_cast<double>(extractions_planned);
    CrossoverResult result;
    result.threshold_targets = params.index_build_seconds / (k * (per_target_scan - per_lookup));

    // Sample both cost lines across 0..2x threshold (or a small span when
    // the threshold is zero) for plotting.
    double span = result.threshold_targets > 0 ? 2.0 * result.threshold_targets : 100.0;
    if (curve_points >= 2) {
        result.curve.reserve(curve_points);
        for (size_t i = 0; i < curve_points; ++i) {
            double n = span * static_cast<double>(i) / static_cast<double>(curve_points - 1);
            result.curve.push_back({n, k * n * per_target_scan,
                                    params.index_build_seconds + k * n * per_lookup});
        }
    }
    return result;
}

void write_cost_curve_csv(const CrossoverResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw WriteFailureError(path, "cannot open for writing");
    out << "n_targets,baseline_seconds,indexed_seconds\n";
    for (const auto& point : result.curve) {
        out << point.n_targets << ',' << point.baseline_seconds << ',' << point.indexed_seconds
            << '\n';
    }
    if (!out) throw WriteFailureError(path);
}

} // namespace offsetforge
