#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace inspsim {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Transfer endpoints cannot be connected by an NMT at the requested TOF
/// (state transition sub-block near-singular).
class SingularTransferError : public std::runtime_error {
public:
    explicit SingularTransferError(const std::string& what) : std::runtime_error(what) {}
};

/// NMC requested with zero radial offset.
class DegenerateNmcError : public std::runtime_error {
public:
    explicit DegenerateNmcError(const std::string& what) : std::runtime_error(what) {}
};

/// Closed-loop tracking could not realize the commanded transfer under the
/// thrust bound.
class TrackingFailureError : public std::runtime_error {
public:
    explicit TrackingFailureError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed PLY input. Carries a line number (ASCII) or byte offset (binary).
class PlyParseError : public std::runtime_error {
public:
    PlyParseError(const std::string& what, std::size_t where)
        : std::runtime_error(what + " (at line/offset " + std::to_string(where) + ")"),
          location(where) {}
    std::size_t location;
};

/// Invalid or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace inspsim
