#pragma once

#include <cstdint>
#include <vector>

#include "inspsim/common.hpp"

namespace inspsim {

/// Point cloud of inspection points of interest with outward unit normals.
/// Ids are implicit: point k has id k (dense 0..N-1).
struct PoiCloud {
    std::vector<Vec3> points;   ///< body-frame positions [m]
    std::vector<Vec3> normals;  ///< unit outward normals

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

/// Fibonacci-lattice sphere of n_points POIs with radial normals.
/// Requires n_points >= 4.
PoiCloud sphere_cloud(std::size_t n_points, double radius);

/// Cumulative set of captured POI ids over one trial.
class InspectionState {
public:
    InspectionState() = default;
    explicit InspectionState(std::size_t n_pois) : seen_(n_pois, 0) {}

    /// Union with a set of newly captured ids. Throws on unknown id.
    void accumulate(const std::vector<std::uint32_t>& new_ids);

    std::size_t count() const { return n_seen_; }
    std::size_t total() const { return seen_.size(); }
    double fraction() const { return seen_.empty() ? 0.0 : double(n_seen_) / double(seen_.size()); }
    bool contains(std::uint32_t id) const { return seen_[id] != 0; }

private:
    std::vector<std::uint8_t> seen_;
    std::size_t n_seen_ = 0;
};

}  // namespace inspsim
