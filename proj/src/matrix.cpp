#include "morl/matrix.hpp"

#include <atomic>
#include <stdexcept>

namespace morl {

namespace {
std::atomic<bool> g_parallel{true};

void check_inner(int a_inner, int b_inner, const char* what) {
    if (a_inner != b_inner)
        throw std::invalid_argument(std::string(what) + ": inner dimensions disagree");
}

// Below this many multiply-adds the fork/join overhead dominates.
constexpr std::size_t kParallelThreshold = 16 * 1024;
}  // namespace

Matrix::Matrix(int r, int c, std::vector<double> d) : rows(r), cols(c), data(std::move(d)) {
    if (data.size() != static_cast<std::size_t>(r) * c)
        throw std::invalid_argument("Matrix: data size does not match shape");
}

void set_parallel_kernels(bool enabled) { g_parallel.store(enabled); }
bool parallel_kernels_enabled() { return g_parallel.load(); }

void matmul_serial(const Matrix& a, const Matrix& b, Matrix& out) {
    check_inner(a.cols, b.rows, "matmul");
    out = Matrix(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        const double* arow = a.data.data() + static_cast<std::size_t>(i) * a.cols;
        double* orow = out.data.data() + static_cast<std::size_t>(i) * b.cols;
        for (int k = 0; k < a.cols; ++k) {
            const double aik = arow[k];
            const double* brow = b.data.data() + static_cast<std::size_t>(k) * b.cols;
            for (int j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
        }
    }
}

void matmul_parallel(const Matrix& a, const Matrix& b, Matrix& out) {
    check_inner(a.cols, b.rows, "matmul");
    out = Matrix(a.rows, b.cols);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.rows; ++i) {
        const double* arow = a.data.data() + static_cast<std::size_t>(i) * a.cols;
        double* orow = out.data.data() + static_cast<std::size_t>(i) * b.cols;
        for (int k = 0; k < a.cols; ++k) {
            const double aik = arow[k];
            const double* brow = b.data.data() + static_cast<std::size_t>(k) * b.cols;
            for (int j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
        }
    }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix out;
    const std::size_t work = static_cast<std::size_t>(a.rows) * a.cols * b.cols;
    if (g_parallel.load() && work >= kParallelThreshold)
        matmul_parallel(a, b, out);
    else
        matmul_serial(a, b, out);
    return out;
}

void matmul_tn_serial(const Matrix& a, const Matrix& b, Matrix& out) {
    check_inner(a.rows, b.rows, "matmul_tn");
    out = Matrix(a.cols, b.cols);
    for (int i = 0; i < a.cols; ++i) {
        double* orow = out.data.data() + static_cast<std::size_t>(i) * b.cols;
        for (int k = 0; k < a.rows; ++k) {
            const double aki = a.at(k, i);
            const double* brow = b.data.data() + static_cast<std::size_t>(k) * b.cols;
            for (int j = 0; j < b.cols; ++j) orow[j] += aki * brow[j];
        }
    }
}

void matmul_tn_parallel(const Matrix& a, const Matrix& b, Matrix& out) {
    check_inner(a.rows, b.rows, "matmul_tn");
    out = Matrix(a.cols, b.cols);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.cols; ++i) {
        double* orow = out.data.data() + static_cast<std::size_t>(i) * b.cols;
        for (int k = 0; k < a.rows; ++k) {
            const double aki = a.at(k, i);
            const double* brow = b.data.data() + static_cast<std::size_t>(k) * b.cols;
            for (int j = 0; j < b.cols; ++j) orow[j] += aki * brow[j];
        }
    }
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    Matrix out;
    const std::size_t work = static_cast<std::size_t>(a.cols) * a.rows * b.cols;
    if (g_parallel.load() && work >= kParallelThreshold)
        matmul_tn_parallel(a, b, out);
    else
        matmul_tn_serial(a, b, out);
    return out;
}

void matmul_nt_serial(const Matrix& a, const Matrix& b, Matrix& out) {
    check_inner(a.cols, b.cols, "matmul_nt");
    out = Matrix(a.rows, b.rows);
    for (int i = 0; i < a.rows; ++i) {
        const double* arow = a.data.data() + static_cast<std::size_t>(i) * a.cols;
        double* orow = out.data.data() + static_cast<std::size_t>(i) * b.rows;
        for (int j = 0; j < b.rows; ++j) {
            const double* brow = b.data.data() + static_cast<std::size_t>(j) * b.cols;
            double s = 0.0;
            for (int k = 0; k < a.cols; ++k) s += arow[k] * brow[k];
            orow[j] = s;
        }
    }
}

void matmul_nt_parallel(const Matrix& a, const Matrix& b, Matrix& out) {
    check_inner(a.cols, b.cols, "matmul_nt");
    out = Matrix(a.rows, b.rows);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.rows; ++i) {
        const double* arow = a.data.data() + static_cast<std::size_t>(i) * a.cols;
        double* orow = out.data.data() + static_cast<std::size_t>(i) * b.rows;
        for (int j = 0; j < b.rows; ++j) {
            const double* brow = b.data.data() + static_cast<std::size_t>(j) * b.cols;
            double s = 0.0;
            for (int k = 0; k < a.cols; ++k) s += arow[k] * brow[k];
            orow[j] = s;
        }
    }
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    Matrix out;
    const std::size_t work = static_cast<std::size_t>(a.rows) * b.rows * a.cols;
    if (g_parallel.load() && work >= kParallelThreshold)
        matmul_nt_parallel(a, b, out);
    else
        matmul_nt_serial(a, b, out);
    return out;
}

}  // namespace morl
