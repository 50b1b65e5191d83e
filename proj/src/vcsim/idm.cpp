#include "vcsim/idm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vcsim {

namespace {
void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string("IdmParams: ") + name +
                                    " must be > 0");
    }
}
}  // namespace

void IdmParams::validate() const {
    require_positive(desired_speed, "v0");
    require_positive(safe_headway, "T");
    require_positive(max_accel, "a");
    require_positive(comfortable_decel, "b");
    require_positive(min_gap, "s0");
    require_positive(accel_exponent, "delta");
    require_positive(vehicle_length, "L");
}

double desired_gap(double v, double dv, const IdmParams& p) {
    return p.min_gap + v * p.safe_headway +
           v * dv / (2.0 * std::sqrt(p.max_accel * p.comfortable_decel));
}

double idm_accel(double v, double dv, double gap, const IdmParams& p) {
    if (!(gap > 0.0)) {
        throw std::invalid_argument(
            "idm_accel: gap must be > 0 (was gap sanitization skipped?)");
    }
    const double ratio = desired_gap(v, dv, p) / gap;
    const double raw =
        p.max_accel * (1.0 - std::pow(v / p.desired_speed, p.accel_exponent) -
                       ratio * ratio);
    return std::max(raw, -kDecelCap);
}

double free_road_accel(double v, const IdmParams& p) {
    return p.max_accel *
           (1.0 - std::pow(v / p.desired_speed, p.accel_exponent));
}

double sanitize_gap(double raw_gap) {
    return std::max(raw_gap, kGapFloor);
}

}  // namespace vcsim
