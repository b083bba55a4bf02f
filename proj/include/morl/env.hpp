#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "morl/rng.hpp"
#include "morl/types.hpp"

namespace morl {

struct EnvSpec {
    std::string name;
    int objective_count = 1;
    std::vector<std::string> objective_names;
    int observation_length = 1;
    int action_count = 1;
    int agents_per_instance = 1;
    int max_episode_steps = 1;
    int truncation_jitter = 0;
};

// terminated: the agent's episode reached a terminal state (bootstraps 0).
// truncated: the episode was cut at the drawn horizon (bootstraps the value
// estimate of the final observation). Never both on the same step.
struct StepResult {
    std::vector<double> observation;
    ObjectiveVector reward;
    bool terminated = false;
    bool truncated = false;
};

// A multi-objective environment steppable one tick at a time, with one
// action and one StepResult per agent. Multi-agent environments may respawn
// an agent whose episode terminated; the whole instance must be reset once
// needs_reset() reports true (stepping past that point is an error).
class Env {
public:
    virtual ~Env() = default;

    virtual const EnvSpec& spec() const = 0;

    // Draws a fresh initial state (and the per-episode truncation horizon)
    // from a child of `rng`; returns one observation per agent.
    virtual std::vector<std::vector<double>> reset(RngStream& rng) = 0;

    virtual std::vector<StepResult> step(std::span<const int> actions) = 0;

    virtual bool needs_reset() const = 0;

protected:
    void check_actions(std::span<const int> actions) const;
};

// Adapter that collapses the vector reward to the sum of its components,
// for the single-objective baseline. Wraps and owns the underlying env.
std::unique_ptr<Env> scalar_reward_view(std::unique_ptr<Env> inner);

// Environment registry keyed by name ("bandit", "snake", "tetris") with
// key=value overrides (see each environment for the supported keys).
std::unique_ptr<Env> make_env(const std::string& name,
                              const std::map<std::string, std::string>& overrides = {});

// Draws the per-episode horizon: uniform in [max - jitter, max + jitter].
int draw_horizon(const EnvSpec& spec, RngStream& rng);

}  // namespace morl
