#pragma once

#include <vector>

#include "morl/matrix.hpp"

namespace morl {

// Reverse-mode tape over matrix-valued nodes. Building an op runs its
// forward pass immediately, so the tape is always topologically ordered and
// backward() is a single reverse sweep. Leaves created with param() expose
// their gradients after backward(); input() leaves are constants.
class Graph {
public:
    using NodeId = int;

    NodeId input(Matrix value);
    NodeId param(Matrix value);

    NodeId matmul(NodeId a, NodeId b);
    NodeId add(NodeId a, NodeId b);
    NodeId sub(NodeId a, NodeId b);
    NodeId mul(NodeId a, NodeId b);          // elementwise
    NodeId add_rowvec(NodeId a, NodeId bias);  // bias broadcast over rows
    NodeId tanh(NodeId a);
    NodeId relu(NodeId a);
    NodeId exp(NodeId a);
    NodeId log_softmax(NodeId a);            // row-wise, numerically stable
    NodeId select_col(NodeId a, std::vector<int> column_per_row);  // n x 1
    NodeId row_sum(NodeId a);                // n x 1
    NodeId mean_all(NodeId a);               // 1 x 1
    NodeId min(NodeId a, NodeId b);          // elementwise; ties follow a
    NodeId clip(NodeId a, double lo, double hi);
    NodeId scale(NodeId a, double factor);
    NodeId neg(NodeId a);

    const Matrix& value(NodeId id) const { return nodes_[id].value; }
    const Matrix& grad(NodeId id) const { return nodes_[id].grad; }

    // Reverse sweep from a scalar (1x1) loss node. Requires a completed
    // forward pass, i.e. a non-empty tape containing the node.
    void backward(NodeId loss);

    std::size_t node_count() const { return nodes_.size(); }

private:
    enum class Op {
        leaf, matmul, add, sub, mul, add_rowvec, tanh, relu, exp,
        log_softmax, select_col, row_sum, mean_all, min, clip, scale, neg
    };

    struct Node {
        Op op = Op::leaf;
        NodeId a = -1;
        NodeId b = -1;
        Matrix value;
        Matrix grad;
        std::vector<int> columns;  // select_col
        double lo = 0.0, hi = 0.0;  // clip / scale
    };

    NodeId push(Node node);

    std::vector<Node> nodes_;
};

}  // namespace morl
