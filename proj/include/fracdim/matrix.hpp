#pragma once

#include <cstddef>
#include <vector>

namespace fracdim {

using Vec = std::vector<double>;

/// Small dense row-major matrix. Everything in this project is tiny
/// (d <= 4 geometry, transition matrices up to a few thousand rows).
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Mat(std::initializer_list<std::initializer_list<double>> rows);

    static Mat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Mat operator*(const Mat& rhs) const;
    Vec apply(const Vec& x) const;
    Mat transposed() const;

private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

double determinant(const Mat& m);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
Vec symmetric_eigenvalues(Mat s);

/// Singular values, descending. Closed form for 2x2, Jacobi on A^T A otherwise.
Vec singular_values(const Mat& m);

/// Spectral radius of an entrywise non-negative matrix. Decomposes the
/// support digraph into strongly connected components and runs a shifted
/// power iteration with Collatz-Wielandt bounds on each, so reducible and
/// periodic patterns converge too.
double spectral_radius(const Mat& m, double tol = 1e-14, int max_iter = 100000);

struct PerronData {
    double value = 0.0;  // spectral radius
    Vec right;           // positive right eigenvector
    Vec left;            // positive left eigenvector
};

/// Perron eigendata of a primitive non-negative matrix (caller checks
/// primitivity). Eigenvectors returned with unit L1 norm.
PerronData perron_eigen(const Mat& m, double tol = 1e-14, int max_iter = 100000);

/// SCCs of the digraph with an edge i->j whenever m(i,j) > 0.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Mat& m);

bool is_strongly_connected(const Mat& m);

}  // namespace fracdim
