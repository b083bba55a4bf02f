#include "morl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace morl {

namespace {

// Gram-Schmidt orthonormalization of the smaller side of a random normal
// matrix, scaled by `gain`.
Matrix orthogonal_init(int rows, int cols, double gain, RngStream& rng) {
    const bool tall = rows >= cols;
    const int n = tall ? rows : cols;  // vector length
    const int k = tall ? cols : rows;  // number of vectors
    std::vector<std::vector<double>> basis(k, std::vector<double>(n));
    for (int i = 0; i < k; ++i) {
        auto& v = basis[i];
        for (int j = 0; j < n; ++j) v[j] = rng.normal();
        for (int p = 0; p < i; ++p) {
            double dot = 0.0;
            for (int j = 0; j < n; ++j) dot += v[j] * basis[p][j];
            for (int j = 0; j < n; ++j) v[j] -= dot * basis[p][j];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-12) {  // regenerate-degenerate draw: fall back to a unit axis
            std::fill(v.begin(), v.end(), 0.0);
            v[i % n] = 1.0;
            norm = 1.0;
        }
        for (double& x : v) x /= norm;
    }
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m.at(r, c) = gain * (tall ? basis[c][r] : basis[r][c]);
    return m;
}

void apply_activation(Matrix& m, Activation act) {
    if (act == Activation::tanh) {
        for (auto& v : m.data) v = std::tanh(v);
    } else {
        for (auto& v : m.data) v = v > 0.0 ? v : 0.0;
    }
}

}  // namespace

PolicyNet::PolicyNet(NetworkConfig config) : config_(std::move(config)) {
    if (config_.input_length <= 0 || config_.action_count <= 0 || config_.value_dim <= 0)
        throw std::invalid_argument("NetworkConfig: sizes must be positive");
    for (int h : config_.hidden_sizes)
        if (h <= 0) throw std::invalid_argument("NetworkConfig: hidden sizes must be positive");

    int in = config_.effective_input();
    for (int h : config_.hidden_sizes) {
        weights_.push_back(Matrix(in, h));
        biases_.push_back(Matrix(1, h));
        in = h;
    }
    weights_.push_back(Matrix(in, config_.action_count));  // logits head
    biases_.push_back(Matrix(1, config_.action_count));
    weights_.push_back(Matrix(in, config_.value_dim));     // value head
    biases_.push_back(Matrix(1, config_.value_dim));
}

void PolicyNet::init(RngStream& rng) {
    const std::size_t trunk = config_.hidden_sizes.size();
    for (std::size_t i = 0; i < trunk; ++i)
        weights_[i] = orthogonal_init(weights_[i].rows, weights_[i].cols, std::sqrt(2.0), rng);
    weights_[trunk] = orthogonal_init(weights_[trunk].rows, weights_[trunk].cols, 0.01, rng);
    weights_[trunk + 1] =
        orthogonal_init(weights_[trunk + 1].rows, weights_[trunk + 1].cols, 1.0, rng);
    for (auto& b : biases_) std::fill(b.data.begin(), b.data.end(), 0.0);
}

void PolicyNet::forward_batch(const Matrix& inputs, Matrix& logits, Matrix& values) const {
    if (inputs.cols != config_.effective_input())
        throw std::invalid_argument("forward_batch: input width " + std::to_string(inputs.cols) +
                                    " does not match network input " +
                                    std::to_string(config_.effective_input()));
    Matrix h = inputs;
    const std::size_t trunk = config_.hidden_sizes.size();
    for (std::size_t i = 0; i < trunk; ++i) {
        Matrix next = matmul(h, weights_[i]);
        for (int r = 0; r < next.rows; ++r)
            for (int c = 0; c < next.cols; ++c) next.at(r, c) += biases_[i].at(0, c);
        apply_activation(next, config_.activation);
        h = std::move(next);
    }
    logits = matmul(h, weights_[trunk]);
    for (int r = 0; r < logits.rows; ++r)
        for (int c = 0; c < logits.cols; ++c) logits.at(r, c) += biases_[trunk].at(0, c);
    values = matmul(h, weights_[trunk + 1]);
    for (int r = 0; r < values.rows; ++r)
        for (int c = 0; c < values.cols; ++c) values.at(r, c) += biases_[trunk + 1].at(0, c);
}

PolicyOutput PolicyNet::forward(std::span<const double> observation,
                                std::span<const double> weight) const {
    if (config_.condition_on_weights) {
        if (static_cast<int>(weight.size()) != config_.value_dim)
            throw std::invalid_argument(
                "forward: weight-conditioned network needs a weight of length " +
                std::to_string(config_.value_dim));
    } else if (!weight.empty()) {
        throw std::invalid_argument("forward: network is not weight-conditioned");
    }
    if (static_cast<int>(observation.size()) != config_.input_length)
        throw std::invalid_argument("forward: observation length mismatch");

    Matrix in(1, config_.effective_input());
    std::copy(observation.begin(), observation.end(), in.data.begin());
    std::copy(weight.begin(), weight.end(), in.data.begin() + observation.size());
    Matrix logits, values;
    forward_batch(in, logits, values);
    return PolicyOutput{std::move(logits.data), std::move(values.data)};
}

PolicyNet::TapeNodes PolicyNet::forward_tape(Graph& graph, Graph::NodeId inputs) const {
    TapeNodes nodes;
    const std::size_t trunk = config_.hidden_sizes.size();
    Graph::NodeId h = inputs;
    for (std::size_t i = 0; i < trunk; ++i) {
        const Graph::NodeId w = graph.param(weights_[i]);
        const Graph::NodeId b = graph.param(biases_[i]);
        nodes.params.push_back(w);
        nodes.params.push_back(b);
        Graph::NodeId lin = graph.add_rowvec(graph.matmul(h, w), b);
        h = config_.activation == Activation::tanh ? graph.tanh(lin) : graph.relu(lin);
    }
    const Graph::NodeId wl = graph.param(weights_[trunk]);
    const Graph::NodeId bl = graph.param(biases_[trunk]);
    const Graph::NodeId wv = graph.param(weights_[trunk + 1]);
    const Graph::NodeId bv = graph.param(biases_[trunk + 1]);
    nodes.params.push_back(wl);
    nodes.params.push_back(bl);
    nodes.params.push_back(wv);
    nodes.params.push_back(bv);
    nodes.logits = graph.add_rowvec(graph.matmul(h, wl), bl);
    nodes.values = graph.add_rowvec(graph.matmul(h, wv), bv);
    return nodes;
}

std::vector<double> PolicyNet::flatten() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        flat.insert(flat.end(), weights_[i].data.begin(), weights_[i].data.end());
        flat.insert(flat.end(), biases_[i].data.begin(), biases_[i].data.end());
    }
    return flat;
}

void PolicyNet::unflatten(std::span<const double> flat) {
    if (flat.size() != parameter_count())
        throw std::invalid_argument("unflatten: parameter count mismatch (" +
                                    std::to_string(flat.size()) + " vs " +
                                    std::to_string(parameter_count()) + ")");
    std::size_t pos = 0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        std::copy(flat.begin() + pos, flat.begin() + pos + weights_[i].size(),
                  weights_[i].data.begin());
        pos += weights_[i].size();
        std::copy(flat.begin() + pos, flat.begin() + pos + biases_[i].size(),
                  biases_[i].data.begin());
        pos += biases_[i].size();
    }
}

std::size_t PolicyNet::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        n += weights_[i].size() + biases_[i].size();
    return n;
}

std::vector<double> PolicyNet::flatten_grads(const Graph& graph, const TapeNodes& nodes) {
    std::vector<double> flat;
    for (Graph::NodeId id : nodes.params) {
        const Matrix& g = graph.grad(id);
        flat.insert(flat.end(), g.data.begin(), g.data.end());
    }
    return flat;
}

LogProbEntropy log_prob_entropy(std::span<const double> logits, int action_id) {
    if (action_id < 0 || action_id >= static_cast<int>(logits.size()))
        throw std::invalid_argument("log_prob_entropy: action id out of range");
    double m = logits[0];
    for (double l : logits) m = std::max(m, l);
    double sum = 0.0;
    for (double l : logits) sum += std::exp(l - m);
    const double lse = m + std::log(sum);
    double entropy = 0.0;
    for (double l : logits) {
        const double lp = l - lse;
        entropy -= std::exp(lp) * lp;
    }
    return {logits[action_id] - lse, entropy};
}

int sample_categorical(std::span<const double> logits, RngStream& rng) {
    double m = logits[0];
    for (double l : logits) m = std::max(m, l);
    double sum = 0.0;
    for (double l : logits) sum += std::exp(l - m);
    const double u = rng.uniform01() * sum;
    double acc = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        acc += std::exp(logits[i] - m);
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(logits.size()) - 1;
}

int argmax_action(std::span<const double> logits) {
    int best = 0;
    for (std::size_t i = 1; i < logits.size(); ++i)
        if (logits[i] > logits[best]) best = static_cast<int>(i);
    return best;
}

}  // namespace morl
