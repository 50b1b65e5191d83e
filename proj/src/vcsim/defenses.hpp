#pragma once

#include <span>
#include <utility>
#include <vector>

namespace vcsim {

enum class ConsensusMode {
    Off,
    PairwiseAverage,    // average leader broadcast with its follower's state
    ProximityWeighted,  // distance-weighted average over candidate sources
};

// Broadcast-validation settings for the single-road scenario.
struct ConsensusSpec {
    ConsensusMode mode = ConsensusMode::Off;
    double proximity_scale = 100.0;  // m, ProximityWeighted only

    void validate() const;
    bool operator==(const ConsensusSpec&) const = default;
};

// Travel-time filtering settings for the network scenario.
struct OutlierFilterSpec {
    double deviation_threshold = 0.5;  // relative deviation from the median
    int min_samples = 3;

    void validate() const;
    bool operator==(const OutlierFilterSpec&) const = default;
};

// Component-wise mean of a leader's broadcast (x, v) and its immediate
// follower's actual (x, v). Dilutes a spoofed broadcast with honest data.
std::pair<double, double> pairwise_consensus(
    std::pair<double, double> leader_broadcast,
    std::pair<double, double> follower_actual);

// One candidate estimate of a vehicle's state together with the reporting
// source's distance to the ego vehicle.
struct ConsensusCandidate {
    std::pair<double, double> value;  // (x, v)
    double distance_to_ego = 0.0;     // m, >= 0
};

// Weighted mean with weight_i = 1 / (1 + distance_i / scale), normalized.
// Throws std::invalid_argument on an empty candidate list.
std::pair<double, double> proximity_weighted_consensus(
    std::span<const ConsensusCandidate> candidates, double scale);

// Drops samples whose relative deviation from the median exceeds the
// threshold, repeating until stable so the result is a fixed point of the
// filter. Lists shorter than min_samples are returned unchanged (too little
// evidence to reject anything). Input order is preserved.
std::vector<double> outlier_reject(std::span<const double> samples,
                                   const OutlierFilterSpec& spec);

}  // namespace vcsim
