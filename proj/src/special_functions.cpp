// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spatialcs/common.hpp"

namespace spatialcs {

namespace {

// Power series about the origin, good to full precision for x <= 2.
double k1_series(double x)
{
    const double t = 0.25 * x * x;
    double term = 1.0;  // (x^2/4)^k / (k! (k+1)!)
    double psi_k1 = -std::numbers::egamma;  // psi(k+1)
    double psi_k2 = 1.0 - std::numbers::egamma;  // psi(k+2)
    double i1_sum = 0.0;
    double psi_sum = 0.0;
    for (int k = 0; k < 60; ++k) {
        i1_sum += term;
        psi_sum += (psi_k1 + psi_k2) * term;
        if (term < 1e-18 * i1_sum)
            break;
        term *= t / ((k + 1.0) * (k + 2.0));
        psi_k1 += 1.0 / (k + 1.0);
        psi_k2 += 1.0 / (k + 2.0);
    }
    const double i1 = 0.5 * x * i1_sum;
    return 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * psi_sum;
}

// Steed's continued fraction for K0 and K1 (order-zero form of Temme's method), x > 2.
double k1_continued_fraction(double x)
{
    constexpr double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 100000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < 1e-17)
            break;
    }
    h *= a1;
    const double k0 = std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
    return k0 * (x + 0.5 - h) / x;
}

}  // namespace

double bessel_k1(double x)
{
    if (!(x > 0.0))
        throw DomainError("bessel_k1 requires x > 0");
    if (std::isinf(x))
        return 0.0;
    return x <= 2.0 ? k1_series(x) : k1_continued_fraction(x);
}

double x_bessel_k1(double x)
{
    if (x < 0.0 || std::isnan(x))
        throw DomainError("x_bessel_k1 requires x >= 0");
    if (x == 0.0)
        return 1.0;
    if (x > 745.0)
        return 0.0;
    return x * bessel_k1(x);
}

double lambert_w_minus1(double y)
{
    constexpr double inv_e = 1.0 / std::numbers::e;
    if (std::isnan(y) || y >= 0.0)
        throw DomainError("lambert_w_minus1 requires -1/e <= y < 0");
    if (y < -inv_e * (1.0 + 4 * std::numeric_limits<double>::epsilon()))
        throw DomainError("lambert_w_minus1 requires -1/e <= y < 0");
    if (y <= -inv_e)
        return -1.0;

    double w;
    const double p2 = 2.0 * (1.0 + std::numbers::e * y);
    if (p2 < 0.5) {
        const double p = -std::sqrt(std::max(p2, 0.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else {
        const double l1 = std::log(-y);
        const double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }
    if (w > -1.0)
        w = -1.0 - 1e-8;

    // Halley iteration; the upper bracket -1 keeps the iterate on the lower branch.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = -1.0;
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - y;
        if (std::abs(f) <= 1e-13 * std::abs(y))
            break;
        // w e^w decreases on (-inf, -1], so f > 0 puts the root above w.
        if (f > 0.0)
            lo = std::max(lo, w);
        else
            hi = std::min(hi, w);
        const double wp1 = w + 1.0;
        double step;
        if (wp1 == 0.0) {
            step = -1e-8;
        } else {
            const double fp = ew * wp1;
            step = f / (fp - (w + 2.0) * f / (2.0 * wp1));
        }
        double next = w - step;
        if (!(next < hi && next > lo) || !std::isfinite(next)) {
            next = std::isfinite(lo) ? 0.5 * (lo + hi) : hi - 2.0 * std::max(1.0, hi - w);
        }
        if (next == w)
            break;
        w = next;
    }
    return w;
}

double lambert_w_minus1_asymptotic(double gamma)
{
    if (!(gamma > std::exp(0.5)))
        throw DomainError("asymptotic expansion needs gamma > sqrt(e)");
    const double lg = std::log(gamma);
    return -2.0 * lg - std::log(2.0 * lg);
}

}  // namespace spatialcs
