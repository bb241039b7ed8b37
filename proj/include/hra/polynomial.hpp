#pragma once

#include <vector>

namespace hra {

/// Explicit witness polynomial, lowest coefficient first. The simulation
/// and boundedness definitions are existential over polynomials, so checks
/// always take explicit witnesses rather than fitted ones.
struct Polynomial {
    std::vector<double> coeffs;

    double operator()(double z) const {
        double acc = 0, zp = 1;
        for (double c : coeffs) {
            acc += c * zp;
            zp *= z;
        }
        return acc;
    }
};

}  // namespace hra
