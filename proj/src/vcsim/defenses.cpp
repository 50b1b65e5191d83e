#include "vcsim/defenses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vcsim {

void ConsensusSpec::validate() const {
    if (mode == ConsensusMode::ProximityWeighted && !(proximity_scale > 0.0)) {
        throw std::invalid_argument(
            "consensus defense: proximity_scale must be > 0");
    }
}

void OutlierFilterSpec::validate() const {
    if (!(deviation_threshold > 0.0)) {
        throw std::invalid_argument(
            "outlier filter: deviation_threshold must be > 0");
    }
    if (min_samples < 3) {
        throw std::invalid_argument("outlier filter: min_samples must be >= 3");
    }
}

std::pair<double, double> pairwise_consensus(
    std::pair<double, double> leader_broadcast,
    std::pair<double, double> follower_actual) {
    return {(leader_broadcast.first + follower_actual.first) / 2.0,
            (leader_broadcast.second + follower_actual.second) / 2.0};
}

std::pair<double, double> proximity_weighted_consensus(
    std::span<const ConsensusCandidate> candidates, double scale) {
    if (candidates.empty()) {
        throw std::invalid_argument(
            "proximity_weighted_consensus: empty candidate list");
    }
    double wsum = 0.0;
    double x = 0.0;
    double v = 0.0;
    for (const ConsensusCandidate& c : candidates) {
        const double w = 1.0 / (1.0 + c.distance_to_ego / scale);
        wsum += w;
        x += w * c.value.first;
        v += w * c.value.second;
    }
    return {x / wsum, v / wsum};
}

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double relative_deviation(double sample, double median) {
    if (median != 0.0) {
        return std::abs(sample - median) / std::abs(median);
    }
    return sample == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<double> outlier_reject(std::span<const double> samples,
                                   const OutlierFilterSpec& spec) {
    std::vector<double> accepted(samples.begin(), samples.end());
    while (accepted.size() >= static_cast<size_t>(spec.min_samples)) {
        const double median = median_of(accepted);
        std::vector<double> next;
        next.reserve(accepted.size());
        for (double s : accepted) {
            if (relative_deviation(s, median) <= spec.deviation_threshold) {
                next.push_back(s);
            }
        }
        if (next.size() == accepted.size()) {
            break;
        }
        accepted = std::move(next);
    }
    return accepted;
}

}  // namespace vcsim
