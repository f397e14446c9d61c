#pragma once

#include "wpnet/types.hpp"

namespace wpnet {

/// Uniform circular array response model. Element m of M responds to azimuth
/// theta with exp(+i 2 pi (a/lambda) cos(theta - 2 pi (m-1)/M)); every entry
/// has unit modulus. radius_wavelengths <= 0 selects the default M/(4 pi),
/// the circumference equivalent of half-wavelength element spacing.
struct SteeringModel {
    int m_antennas = 1;
    double radius_wavelengths = -1.0;

    double radius() const {
        return radius_wavelengths > 0.0 ? radius_wavelengths
                                        : static_cast<double>(m_antennas) / (4.0 * kPi);
    }
};

inline ComplexVector steering_vector(const SteeringModel& model, double theta) {
    const int m = model.m_antennas;
    const double scale = 2.0 * kPi * model.radius();
    ComplexVector v(m);
    for (int i = 0; i < m; ++i) {
        const double element_angle = 2.0 * kPi * i / m;
        v[i] = std::polar(1.0, scale * std::cos(theta - element_angle));
    }
    return v;
}

}  // namespace wpnet
