// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace spatialcs {

/// Modified Bessel function of the second kind, order one. Throws DomainError for x <= 0.
double bessel_k1(double x);

/// x * K1(x), continued to 1 at x = 0.
double x_bessel_k1(double x);

/// Lower real branch of the Lambert W function: the root w <= -1 of w e^w = y,
/// for -1/e <= y < 0. y = -1/e returns exactly -1.
double lambert_w_minus1(double y);

/// Two-term large-gamma expansion of W_{-1}(-1/gamma^2): -2 ln(gamma) - ln(2 ln(gamma)).
double lambert_w_minus1_asymptotic(double gamma);

}  // namespace spatialcs
