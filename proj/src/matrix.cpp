#include "fracdim/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "fracdim/errors.hpp"

namespace fracdim {

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ValidationError("ragged matrix initializer");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw ValidationError("matrix product shape mismatch");
    Mat out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            double v = (*this)(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += v * rhs(k, j);
        }
    return out;
}

Vec Mat::apply(const Vec& x) const {
    if (x.size() != cols_) throw ValidationError("matrix-vector shape mismatch");
    Vec y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

Mat Mat::transposed() const {
    Mat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

double determinant(const Mat& m) {
    if (m.rows() != m.cols()) throw ValidationError("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    // Gaussian elimination with partial pivoting.
    Mat a = m;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a(r, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

Vec symmetric_eigenvalues(Mat s) {
    if (s.rows() != s.cols()) throw ValidationError("eigenvalues of non-square matrix");
    std::size_t n = s.rows();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale += s(i, j) * s(i, j);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += s(i, j) * s(i, j);
        if (off <= 1e-28 * scale) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(s(p, q)) < 1e-300) continue;
                double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
    }
    Vec ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = s(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

Vec singular_values(const Mat& m) {
    if (m.rows() != m.cols()) throw ValidationError("singular values of non-square matrix");
    std::size_t n = m.rows();
    if (n == 2) {
        // Closed form from the 2x2 Gram matrix.
        double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
        double t = a * a + b * b + c * c + d * d;
        double det = a * d - b * c;
        double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
        double s1 = std::sqrt(std::max(0.0, (t + disc) / 2.0));
        double s2 = std::sqrt(std::max(0.0, (t - disc) / 2.0));
        return {s1, s2};
    }
    Vec ev = symmetric_eigenvalues(m.transposed() * m);
    Vec sv(ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i) sv[i] = std::sqrt(std::max(0.0, ev[i]));
    return sv;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const Mat& m) {
    // Iterative Tarjan.
    std::size_t n = m.rows();
    std::vector<int> idx(n, -1), low(n, 0);
    std::vector<bool> onstack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> sccs;
    int counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t next;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (idx[root] != -1) continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        onstack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            bool descended = false;
            while (f.next < n) {
                std::size_t w = f.next++;
                if (m(f.v, w) <= 0.0) continue;
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    onstack[w] = true;
                    call.push_back({w, 0});
                    descended = true;
                    break;
                } else if (onstack[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            }
            if (descended) continue;
            if (low[f.v] == idx[f.v]) {
                std::vector<std::size_t> comp;
                for (;;) {
                    std::size_t w = stack.back();
                    stack.pop_back();
                    onstack[w] = false;
                    comp.push_back(w);
                    if (w == f.v) break;
                }
                sccs.push_back(std::move(comp));
            }
            std::size_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }
    return sccs;
}

bool is_strongly_connected(const Mat& m) {
    return strongly_connected_components(m).size() == 1 && m.rows() > 0;
}

namespace {

// Collatz-Wielandt bracket on the shifted matrix C + I (same eigenvectors,
// spectral radius rho(C) + 1, and the shift makes irreducible cases aperiodic).
double irreducible_radius(const Mat& c, double tol, int max_iter) {
    std::size_t n = c.rows();
    if (n == 1) return c(0, 0);
    Vec v(n, 1.0);
    double lo = 0.0, hi = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vec w = c.apply(v);
        for (std::size_t i = 0; i < n; ++i) w[i] += v[i];
        lo = 1e300;
        hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = w[i] / v[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        double norm = 0.0;
        for (double x : w) norm += x;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        if (hi - lo <= tol * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi) - 1.0;
}

}  // namespace

double spectral_radius(const Mat& m, double tol, int max_iter) {
    if (m.rows() != m.cols()) throw ValidationError("spectral radius of non-square matrix");
    if (m.rows() == 0) return 0.0;
    double rho = 0.0;
    for (const auto& comp : strongly_connected_components(m)) {
        if (comp.size() == 1 && m(comp[0], comp[0]) <= 0.0) continue;
        Mat sub(comp.size(), comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t j = 0; j < comp.size(); ++j) sub(i, j) = m(comp[i], comp[j]);
        rho = std::max(rho, irreducible_radius(sub, tol, max_iter));
    }
    return rho;
}

PerronData perron_eigen(const Mat& m, double tol, int max_iter) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw ValidationError("Perron data needs a non-empty square matrix");
    std::size_t n = m.rows();
    PerronData out;
    out.value = spectral_radius(m, tol, max_iter);
    auto iterate = [&](const Mat& a) {
        Vec v(n, 1.0 / static_cast<double>(n));
        for (int it = 0; it < max_iter; ++it) {
            Vec w = a.apply(v);
            for (std::size_t i = 0; i < n; ++i) w[i] += v[i];
            double norm = 0.0;
            for (double x : w) norm += x;
            double delta = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                w[i] /= norm;
                delta = std::max(delta, std::abs(w[i] - v[i]));
            }
            v = std::move(w);
            if (delta <= tol) break;
        }
        return v;
    };
    out.right = iterate(m);
    out.left = iterate(m.transposed());
    return out;
}

}  // namespace fracdim
