#pragma once

#include <cstddef>
#include <vector>

namespace morl {

// Dense row-major matrix of doubles. The multiply kernels exist in two
// forms: a plain serial reference and an OpenMP version parallelized over
// independent output rows. Every output element is an ordered serial dot
// product in both, so the two paths are bit-identical.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
    Matrix(int r, int c, std::vector<double> d);

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
    std::size_t size() const { return data.size(); }

    static Matrix zeros_like(const Matrix& m) { return Matrix(m.rows, m.cols); }
};

// Enables the OpenMP kernel paths process-wide (on by default).
void set_parallel_kernels(bool enabled);
bool parallel_kernels_enabled();

// out = a * b
void matmul_serial(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_parallel(const Matrix& a, const Matrix& b, Matrix& out);
Matrix matmul(const Matrix& a, const Matrix& b);

// out = a^T * b
void matmul_tn_serial(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_tn_parallel(const Matrix& a, const Matrix& b, Matrix& out);
Matrix matmul_tn(const Matrix& a, const Matrix& b);

// out = a * b^T
void matmul_nt_serial(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_nt_parallel(const Matrix& a, const Matrix& b, Matrix& out);
Matrix matmul_nt(const Matrix& a, const Matrix& b);

}  // namespace morl
