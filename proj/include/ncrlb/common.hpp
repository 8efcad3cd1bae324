#pragma once

#include <Eigen/Dense>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ncrlb {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

constexpr double kPi = std::numbers::pi;
constexpr double kSpeedOfLight = 299792458.0;  // m/s
constexpr double kBoltzmann = 1.380649e-23;    // J/K
constexpr double kRefTemperature = 290.0;      // K

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace ncrlb
