// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "spatialcs/geometry.hpp"
#include "spatialcs/model.hpp"
#include "spatialcs/recovery.hpp"

namespace testing {

struct Instance {
    spatialcs::MeasurementMatrix A;
    spatialcs::Scene scene;
    spatialcs::SnapshotData data;
    spatialcs::RecoveryProblem problem;
};

// Random canonical-grid problem; sigma = 0 gives noiseless data.
inline Instance make_instance(int M, int N, double Z, int K, int P, double sigma, std::uint64_t seed)
{
    using namespace spatialcs;
    const auto cfg = ArrayConfig::canonical(M, N, Z);
    const auto grid = canonical_grid(Z);
    Instance in;
    const auto pos = sample_positions(cfg, derive_trial_seed(seed, "test/positions", 0, 0));
    in.A = build_matrix(cfg, pos, grid, true);
    in.scene = synthesize_scene(grid.G(), K, P, derive_trial_seed(seed, "test/scene", 0, 0));
    in.data = observe(in.A, in.scene, sigma, derive_trial_seed(seed, "test/noise", 0, 0));
    in.problem = RecoveryProblem::from(in.A, in.data, K);
    return in;
}

}  // namespace testing
