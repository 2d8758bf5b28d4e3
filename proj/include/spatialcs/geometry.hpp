// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spatialcs/common.hpp"
#include "spatialcs/seeding.hpp"

namespace spatialcs {

/// Distribution of normalized element positions. Uniform is the working
/// case; point-mass and discrete laws exist to build isotropy counterexamples.
class PositionDistribution {
public:
    enum class Kind { uniform, point_mass, discrete };

    static PositionDistribution uniform(double lo, double hi);
    static PositionDistribution point_mass(double value);
    static PositionDistribution discrete(std::vector<double> values, std::vector<double> weights);

    /// Parses `uniform`, `uniform:a,b`, `point:v` or `discrete:v1/v2/...[@w1/w2/...]`.
    /// A bare `uniform` resolves to the symmetric interval [-half_width, half_width].
    static PositionDistribution parse(const std::string& descriptor, double half_width);

    Kind kind() const { return kind_; }
    double lower() const { return lo_; }
    double upper() const { return hi_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& weights() const { return weights_; }

    /// E[exp(j u x)].
    cplx characteristic(double u) const;
    /// True when the law is symmetric about zero (real characteristic function).
    bool is_even() const;
    double support_min() const;
    double support_max() const;
    double draw(Rng& rng) const;
    std::string describe() const;

    bool operator==(const PositionDistribution&) const = default;

private:
    Kind kind_ = Kind::uniform;
    double lo_ = -0.5;
    double hi_ = 0.5;
    std::vector<double> values_;
    std::vector<double> weights_;
};

/// sin(x)/x with the removable singularity filled in.
double sinc(double x);

struct ArrayConfig {
    int M = 1;
    int N = 1;
    double Z = 1.0;
    double Z_tx = 0.5;
    double Z_rx = 0.5;
    ArrayMode mode = ArrayMode::independent;
    PositionDistribution tx_dist = PositionDistribution::uniform(-0.5, 0.5);
    PositionDistribution rx_dist = PositionDistribution::uniform(-0.5, 0.5);

    /// Equal apertures, uniform positions over the full allowed interval.
    static ArrayConfig canonical(int M, int N, double Z, ArrayMode mode = ArrayMode::independent);

    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

/// Normalized transmit (xi) and receive (zeta) positions.
struct ElementPositions {
    std::vector<double> xi;
    std::vector<double> zeta;

    int M() const { return static_cast<int>(xi.size()); }
    int N() const { return static_cast<int>(zeta.size()); }
};

struct AngleGrid {
    std::vector<double> phi;  // sine-of-angle domain, strictly increasing
    double Z = 0.0;
    double spacing = 0.0;     // NaN for non-uniform grids

    int G() const { return static_cast<int>(phi.size()); }
    bool is_uniform() const;
};

ElementPositions sample_positions(const ArrayConfig& cfg, std::uint64_t seed);

/// G = Z + 1 points spaced 2/Z over [-1, 1]. Z must be a positive integer.
AngleGrid canonical_grid(double Z);

/// Arbitrary grid; validates ordering and range.
AngleGrid make_grid(std::vector<double> phi, double Z);

CVector steering_rx(const ElementPositions& pos, double Z, double theta);
CVector steering_tx(const ElementPositions& pos, double Z, double theta);
/// c(theta) kron b(theta); entry N*m + n (0-based) holds exp(j pi Z theta (xi_m + zeta_n)).
CVector steering_virtual(const ElementPositions& pos, double Z, double theta);

/// Filled MIMO array: receivers at half-wavelength steps, transmitters at
/// N half-wavelength steps, Z = (MN-1)/2 and an MN-point grid of spacing 2/MN.
struct NyquistArray {
    ArrayConfig config;
    ElementPositions positions;
    AngleGrid grid;
};
NyquistArray nyquist_virtual_ula(int M, int N);

}  // namespace spatialcs
