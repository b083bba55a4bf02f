#include "morl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace morl {

namespace {
void check_same_shape(const Matrix& a, const Matrix& b, const char* who) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument(std::string(who) + ": shape mismatch");
}
}  // namespace

Graph::NodeId Graph::push(Node node) {
    node.grad = Matrix(node.value.rows, node.value.cols);
    nodes_.push_back(std::move(node));
    return static_cast<NodeId>(nodes_.size() - 1);
}

Graph::NodeId Graph::input(Matrix value) {
    Node n;
    n.value = std::move(value);
    return push(std::move(n));
}

Graph::NodeId Graph::param(Matrix value) { return input(std::move(value)); }

Graph::NodeId Graph::matmul(NodeId a, NodeId b) {
    Node n;
    n.op = Op::matmul;
    n.a = a;
    n.b = b;
    n.value = morl::matmul(nodes_[a].value, nodes_[b].value);
    return push(std::move(n));
}

Graph::NodeId Graph::add(NodeId a, NodeId b) {
    check_same_shape(nodes_[a].value, nodes_[b].value, "add");
    Node n;
    n.op = Op::add;
    n.a = a;
    n.b = b;
    n.value = nodes_[a].value;
    for (std::size_t i = 0; i < n.value.size(); ++i) n.value.data[i] += nodes_[b].value.data[i];
    return push(std::move(n));
}

Graph::NodeId Graph::sub(NodeId a, NodeId b) {
    check_same_shape(nodes_[a].value, nodes_[b].value, "sub");
    Node n;
    n.op = Op::sub;
    n.a = a;
    n.b = b;
    n.value = nodes_[a].value;
    for (std::size_t i = 0; i < n.value.size(); ++i) n.value.data[i] -= nodes_[b].value.data[i];
    return push(std::move(n));
}

Graph::NodeId Graph::mul(NodeId a, NodeId b) {
    check_same_shape(nodes_[a].value, nodes_[b].value, "mul");
    Node n;
    n.op = Op::mul;
    n.a = a;
    n.b = b;
    n.value = nodes_[a].value;
    for (std::size_t i = 0; i < n.value.size(); ++i) n.value.data[i] *= nodes_[b].value.data[i];
    return push(std::move(n));
}

Graph::NodeId Graph::add_rowvec(NodeId a, NodeId bias) {
    const Matrix& x = nodes_[a].value;
    const Matrix& b = nodes_[bias].value;
    if (b.rows != 1 || b.cols != x.cols)
        throw std::invalid_argument("add_rowvec: bias must be 1 x cols");
    Node n;
    n.op = Op::add_rowvec;
    n.a = a;
    n.b = bias;
    n.value = x;
    for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < x.cols; ++c) n.value.at(r, c) += b.at(0, c);
    return push(std::move(n));
}

Graph::NodeId Graph::tanh(NodeId a) {
    Node n;
    n.op = Op::tanh;
    n.a = a;
    n.value = nodes_[a].value;
    for (auto& v : n.value.data) v = std::tanh(v);
    return push(std::move(n));
}

Graph::NodeId Graph::relu(NodeId a) {
    Node n;
    n.op = Op::relu;
    n.a = a;
    n.value = nodes_[a].value;
    for (auto& v : n.value.data) v = v > 0.0 ? v : 0.0;
    return push(std::move(n));
}

Graph::NodeId Graph::exp(NodeId a) {
    Node n;
    n.op = Op::exp;
    n.a = a;
    n.value = nodes_[a].value;
    for (auto& v : n.value.data) v = std::exp(v);
    return push(std::move(n));
}

Graph::NodeId Graph::log_softmax(NodeId a) {
    Node n;
    n.op = Op::log_softmax;
    n.a = a;
    n.value = nodes_[a].value;
    Matrix& y = n.value;
    for (int r = 0; r < y.rows; ++r) {
        double m = y.at(r, 0);
        for (int c = 1; c < y.cols; ++c) m = std::max(m, y.at(r, c));
        double sum = 0.0;
        for (int c = 0; c < y.cols; ++c) sum += std::exp(y.at(r, c) - m);
        const double lse = m + std::log(sum);
        for (int c = 0; c < y.cols; ++c) y.at(r, c) -= lse;
    }
    return push(std::move(n));
}

Graph::NodeId Graph::select_col(NodeId a, std::vector<int> column_per_row) {
    const Matrix& x = nodes_[a].value;
    if (static_cast<int>(column_per_row.size()) != x.rows)
        throw std::invalid_argument("select_col: one column index per row required");
    Node n;
    n.op = Op::select_col;
    n.a = a;
    n.columns = std::move(column_per_row);
    n.value = Matrix(x.rows, 1);
    for (int r = 0; r < x.rows; ++r) {
        const int c = n.columns[r];
        if (c < 0 || c >= x.cols) throw std::invalid_argument("select_col: index out of range");
        n.value.at(r, 0) = x.at(r, c);
    }
    return push(std::move(n));
}

Graph::NodeId Graph::row_sum(NodeId a) {
    const Matrix& x = nodes_[a].value;
    Node n;
    n.op = Op::row_sum;
    n.a = a;
    n.value = Matrix(x.rows, 1);
    for (int r = 0; r < x.rows; ++r) {
        double s = 0.0;
        for (int c = 0; c < x.cols; ++c) s += x.at(r, c);
        n.value.at(r, 0) = s;
    }
    return push(std::move(n));
}

Graph::NodeId Graph::mean_all(NodeId a) {
    const Matrix& x = nodes_[a].value;
    if (x.size() == 0) throw std::invalid_argument("mean_all: empty matrix");
    Node n;
    n.op = Op::mean_all;
    n.a = a;
    n.value = Matrix(1, 1);
    double s = 0.0;
    for (double v : x.data) s += v;
    n.value.at(0, 0) = s / static_cast<double>(x.size());
    return push(std::move(n));
}

Graph::NodeId Graph::min(NodeId a, NodeId b) {
    check_same_shape(nodes_[a].value, nodes_[b].value, "min");
    Node n;
    n.op = Op::min;
    n.a = a;
    n.b = b;
    n.value = nodes_[a].value;
    for (std::size_t i = 0; i < n.value.size(); ++i)
        n.value.data[i] = std::min(n.value.data[i], nodes_[b].value.data[i]);
    return push(std::move(n));
}

Graph::NodeId Graph::clip(NodeId a, double lo, double hi) {
    Node n;
    n.op = Op::clip;
    n.a = a;
    n.lo = lo;
    n.hi = hi;
    n.value = nodes_[a].value;
    for (auto& v : n.value.data) v = v < lo ? lo : (v > hi ? hi : v);
    return push(std::move(n));
}

Graph::NodeId Graph::scale(NodeId a, double factor) {
    Node n;
    n.op = Op::scale;
    n.a = a;
    n.lo = factor;
    n.value = nodes_[a].value;
    for (auto& v : n.value.data) v *= factor;
    return push(std::move(n));
}

Graph::NodeId Graph::neg(NodeId a) { return scale(a, -1.0); }

void Graph::backward(NodeId loss) {
    if (nodes_.empty() || loss < 0 || loss >= static_cast<NodeId>(nodes_.size()))
        throw std::logic_error("backward: no completed forward pass for this node");
    const Matrix& lv = nodes_[loss].value;
    if (lv.rows != 1 || lv.cols != 1)
        throw std::logic_error("backward: loss node must be scalar");

    for (auto& n : nodes_) std::fill(n.grad.data.begin(), n.grad.data.end(), 0.0);
    nodes_[loss].grad.at(0, 0) = 1.0;

    for (NodeId id = loss; id >= 0; --id) {
        Node& n = nodes_[id];
        bool all_zero = true;
        for (double g : n.grad.data)
            if (g != 0.0) { all_zero = false; break; }
        if (all_zero) continue;

        switch (n.op) {
            case Op::leaf:
                break;
            case Op::matmul: {
                // dA += G B^T ; dB += A^T G
                Matrix da = matmul_nt(n.grad, nodes_[n.b].value);
                Matrix db = matmul_tn(nodes_[n.a].value, n.grad);
                for (std::size_t i = 0; i < da.size(); ++i) nodes_[n.a].grad.data[i] += da.data[i];
                for (std::size_t i = 0; i < db.size(); ++i) nodes_[n.b].grad.data[i] += db.data[i];
                break;
            }
            case Op::add:
                for (std::size_t i = 0; i < n.grad.size(); ++i) {
                    nodes_[n.a].grad.data[i] += n.grad.data[i];
                    nodes_[n.b].grad.data[i] += n.grad.data[i];
                }
                break;
            case Op::sub:
                for (std::size_t i = 0; i < n.grad.size(); ++i) {
                    nodes_[n.a].grad.data[i] += n.grad.data[i];
                    nodes_[n.b].grad.data[i] -= n.grad.data[i];
                }
                break;
            case Op::mul:
                for (std::size_t i = 0; i < n.grad.size(); ++i) {
                    nodes_[n.a].grad.data[i] += n.grad.data[i] * nodes_[n.b].value.data[i];
                    nodes_[n.b].grad.data[i] += n.grad.data[i] * nodes_[n.a].value.data[i];
                }
                break;
            case Op::add_rowvec: {
                Matrix& ga = nodes_[n.a].grad;
                Matrix& gb = nodes_[n.b].grad;
                for (int r = 0; r < n.grad.rows; ++r)
                    for (int c = 0; c < n.grad.cols; ++c) {
                        ga.at(r, c) += n.grad.at(r, c);
                        gb.at(0, c) += n.grad.at(r, c);
                    }
                break;
            }
            case Op::tanh:
                for (std::size_t i = 0; i < n.grad.size(); ++i) {
                    const double y = n.value.data[i];
                    nodes_[n.a].grad.data[i] += n.grad.data[i] * (1.0 - y * y);
                }
                break;
            case Op::relu:
                for (std::size_t i = 0; i < n.grad.size(); ++i)
                    if (nodes_[n.a].value.data[i] > 0.0)
                        nodes_[n.a].grad.data[i] += n.grad.data[i];
                break;
            case Op::exp:
                for (std::size_t i = 0; i < n.grad.size(); ++i)
                    nodes_[n.a].grad.data[i] += n.grad.data[i] * n.value.data[i];
                break;
            case Op::log_softmax: {
                // dX = G - softmax(x) * rowsum(G)
                Matrix& ga = nodes_[n.a].grad;
                for (int r = 0; r < n.grad.rows; ++r) {
                    double gsum = 0.0;
                    for (int c = 0; c < n.grad.cols; ++c) gsum += n.grad.at(r, c);
                    for (int c = 0; c < n.grad.cols; ++c)
                        ga.at(r, c) += n.grad.at(r, c) - std::exp(n.value.at(r, c)) * gsum;
                }
                break;
            }
            case Op::select_col: {
                Matrix& ga = nodes_[n.a].grad;
                for (int r = 0; r < n.grad.rows; ++r)
                    ga.at(r, n.columns[r]) += n.grad.at(r, 0);
                break;
            }
            case Op::row_sum: {
                Matrix& ga = nodes_[n.a].grad;
                for (int r = 0; r < ga.rows; ++r)
                    for (int c = 0; c < ga.cols; ++c) ga.at(r, c) += n.grad.at(r, 0);
                break;
            }
            case Op::mean_all: {
                const double g = n.grad.at(0, 0) / static_cast<double>(nodes_[n.a].value.size());
                for (auto& v : nodes_[n.a].grad.data) v += g;
                break;
            }
            case Op::min:
                for (std::size_t i = 0; i < n.grad.size(); ++i) {
                    if (nodes_[n.a].value.data[i] <= nodes_[n.b].value.data[i])
                        nodes_[n.a].grad.data[i] += n.grad.data[i];
                    else
                        nodes_[n.b].grad.data[i] += n.grad.data[i];
                }
                break;
            case Op::clip:
                for (std::size_t i = 0; i < n.grad.size(); ++i) {
                    const double x = nodes_[n.a].value.data[i];
                    if (x >= n.lo && x <= n.hi)
                        nodes_[n.a].grad.data[i] += n.grad.data[i];
                }
                break;
            case Op::scale:
                for (std::size_t i = 0; i < n.grad.size(); ++i)
                    nodes_[n.a].grad.data[i] += n.grad.data[i] * n.lo;
                break;
            case Op::neg:
                break;  // expressed via scale
        }
    }
}

}  // namespace morl
