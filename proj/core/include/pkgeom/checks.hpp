#pragma once

#include <pkgeom/profile.hpp>
#include <pkgeom/types.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pkgeom::checks {

struct InvariantResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::array<double, 4> worst_point{0.0, 1.0, 0.0, 0.0};
};

struct CheckConfig {
    std::uint64_t seed = 42;
    int samples = 200;
    // When set, the whole suite runs against this profile instead of the
    // two builtin families (used for user tables; axiom validation included).
    std::optional<ProfileFunction> user_profile;
};

/// Runs the cross-module invariant suite and returns one result per invariant.
std::vector<InvariantResult> run_all(const CheckConfig& cfg);

}  // namespace pkgeom::checks
