// The fixed weight used by the radius-normalized local energy: linear descent
// from 60 on [0,8], a C^1 cubic tail on [8,10], zero beyond.
#pragma once

#include <cmath>

namespace ldg {

struct PhiCutoff {
    // cubic tail coefficients in u = (t - 8)/2, phi = c0 + c1 u + c2 u^2 + c3 u^3
    double c0 = 48.0, c1 = -3.0, c2 = -138.0, c3 = 93.0;

    double operator()(double t) const { return eval(t); }

    double eval(double t) const {
        if (t < 0.0) return 60.0;
        if (t <= 8.0) return 60.0 - 1.5 * t;
        if (t >= 10.0) return 0.0;
        double u = 0.5 * (t - 8.0);
        return c0 + u * (c1 + u * (c2 + u * c3));
    }

    double deriv(double t) const {
        if (t < 0.0) return 0.0;
        if (t <= 8.0) return -1.5;
        if (t >= 10.0) return 0.0;
        double u = 0.5 * (t - 8.0);
        return 0.5 * (c1 + u * (2.0 * c2 + u * 3.0 * c3));
    }
};

// Hermite tail: value 48 and slope -3/2 at t = 8, value and slope 0 at t = 10.
inline PhiCutoff make_phi() {
    PhiCutoff phi;
    // coefficients of 48(2u^3 - 3u^2 + 1) - 3(u^3 - 2u^2 + u) in ascending order
    return PhiCutoff{48.0, -3.0, -138.0, 93.0};
}

}  // namespace ldg
