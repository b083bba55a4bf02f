#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "morl/policy.hpp"

namespace morl {

// Serialized policy: network shape, conditioning flag, parameters and the
// training metadata needed to evaluate it (environment, variant, discount).
// Binary format: magic "MORLCKP1", version u32, config fields, metadata,
// parameter count u64, parameters as little-endian 64-bit doubles.
// Round-trips are bit-exact.
struct PolicyCheckpoint {
    NetworkConfig config;
    std::string env_name;
    std::string variant;       // "ppo", "moppo-nocond", "moppo"
    double gamma = 0.99;
    std::uint64_t seed = 0;
    std::uint64_t env_steps = 0;
    std::vector<double> parameters;

    PolicyNet make_net() const;
};

void save_checkpoint(std::ostream& os, const PolicyCheckpoint& ckpt);
PolicyCheckpoint load_checkpoint(std::istream& is);

void save_checkpoint_file(const std::string& path, const PolicyCheckpoint& ckpt);
PolicyCheckpoint load_checkpoint_file(const std::string& path);

}  // namespace morl
