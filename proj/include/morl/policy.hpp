#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "morl/graph.hpp"
#include "morl/matrix.hpp"
#include "morl/rng.hpp"

namespace morl {

enum class Activation { tanh, relu };

// Shape of the shared-trunk policy/value network. When condition_on_weights
// is set the preference vector is appended to the observation, so the
// effective input is input_length + value_dim.
struct NetworkConfig {
    int input_length = 1;                 // observation length
    std::vector<int> hidden_sizes = {128, 128};
    Activation activation = Activation::tanh;
    int action_count = 2;
    int value_dim = 1;
    bool condition_on_weights = false;

    int effective_input() const {
        return input_length + (condition_on_weights ? value_dim : 0);
    }
};

struct PolicyOutput {
    std::vector<double> action_logits;
    std::vector<double> value;
};

// Feed-forward trunk with a categorical head and a value head of one entry
// per objective. The batched fast path and the taped path share the same
// matmul kernels, so rollout-time log-probs match update-time log-probs
// exactly.
class PolicyNet {
public:
    explicit PolicyNet(NetworkConfig config);

    const NetworkConfig& config() const { return config_; }

    // Orthogonal-style init: hidden gain sqrt(2), value head gain 1,
    // logits head gain 0.01, zero biases.
    void init(RngStream& rng);

    // inputs: batch x effective_input. Outputs logits (batch x actions)
    // and values (batch x value_dim) without recording a tape.
    void forward_batch(const Matrix& inputs, Matrix& logits, Matrix& values) const;

    // Single observation (+ optional weight). Throws unless the weight is
    // supplied exactly when the network is weight-conditioned.
    PolicyOutput forward(std::span<const double> observation,
                         std::span<const double> weight = {}) const;

    // Tape forward for training; returns the logits and value node ids.
    struct TapeNodes {
        Graph::NodeId logits;
        Graph::NodeId values;
        std::vector<Graph::NodeId> params;  // aligned with parameter_order
    };
    TapeNodes forward_tape(Graph& graph, Graph::NodeId inputs) const;

    // Flat parameter access (row-major per layer, weights then bias,
    // trunk layers first, then logits head, then value head).
    std::vector<double> flatten() const;
    void unflatten(std::span<const double> flat);
    std::size_t parameter_count() const;

    // Gradients from a backward pass, flattened in the same order.
    static std::vector<double> flatten_grads(const Graph& graph, const TapeNodes& nodes);

private:
    NetworkConfig config_;
    std::vector<Matrix> weights_;  // trunk..., logits head, value head
    std::vector<Matrix> biases_;
};

// Numerically stable log-prob of one action and entropy of the categorical
// distribution given unnormalized logits.
struct LogProbEntropy {
    double log_prob;
    double entropy;
};
LogProbEntropy log_prob_entropy(std::span<const double> logits, int action_id);

// Inverse-CDF categorical sample from logits using one uniform draw.
int sample_categorical(std::span<const double> logits, RngStream& rng);
int argmax_action(std::span<const double> logits);

}  // namespace morl
