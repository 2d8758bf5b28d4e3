// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "spatialcs/common.hpp"
#include "spatialcs/geometry.hpp"

namespace spatialcs {

/// MN x G dictionary; column g is the virtual steering vector at phi_g.
struct MeasurementMatrix {
    CMatrix entries;
    bool normalized = false;
    ArrayConfig config;
    ElementPositions positions;
    AngleGrid grid;

    Eigen::Index rows() const { return entries.rows(); }
    Eigen::Index cols() const { return entries.cols(); }
};

MeasurementMatrix build_matrix(const ArrayConfig& cfg, const ElementPositions& positions,
                               const AngleGrid& grid, bool normalized);

/// Returns a copy with unit-norm columns (no-op if already normalized).
MeasurementMatrix normalize_columns(const MeasurementMatrix& A);

/// K-sparse scene. Support indices are 0-based grid indices, sorted.
struct Scene {
    std::vector<int> support;
    CMatrix gains;  // K x P
    int G = 0;

    int K() const { return static_cast<int>(support.size()); }
    int P() const { return static_cast<int>(gains.cols()); }

    /// Dense G x P gain matrix X.
    CMatrix dense() const;
};

/// Support uniform without replacement; unit-modulus gains with phases
/// independent across targets and pulses.
Scene synthesize_scene(int G, int K, int P, std::uint64_t seed);

double sigma_from_snr(double snr_db);

struct SnapshotData {
    CMatrix Y;
    double sigma = 0.0;
    double snr_db = 0.0;
};

/// Y = A X + E, vec(E) ~ CN(0, sigma^2 I).
SnapshotData observe(const MeasurementMatrix& A, const Scene& scene, double sigma, std::uint64_t seed);

/// Rows of the M x M DFT matrix, scaled by 1/sqrt(M) when normalized.
CMatrix fourier_codes(int M, bool normalized);

struct RoundtripReport {
    double max_deviation = 0.0;  // max |Y_waveform - A X| over all entries
    double gram_deviation = 0.0; // max |S S^H - I|
    bool codes_orthonormal = false;
    bool passed = false;
};

inline constexpr double kRoundtripTolerance = 1e-10;

/// Synthesizes the noise-free received samples r_p = sum_k x_{k,p} b_k c_k^T S for
/// each pulse, matched-filters them with S^H, and compares vec(Y_p) against A X.
RoundtripReport waveform_roundtrip_check(const ElementPositions& positions, double Z, const AngleGrid& grid,
                                         const Scene& scene, const CMatrix& codes);

}  // namespace spatialcs
