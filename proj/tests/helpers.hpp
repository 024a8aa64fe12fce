#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nrange/geometry.hpp"
#include "nrange/linalg.hpp"
#include "nrange/matrix.hpp"

namespace nrange::testing {

// Test-local generators; deliberately independent of the suite's generators.
inline CMatrix random_matrix(std::mt19937_64& g, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, scale / std::sqrt(2.0));
    CMatrix a(n);
    for (auto& z : a.data()) z = cplx(nd(g), nd(g));
    return a;
}

inline CMatrix random_hermitian(std::mt19937_64& g, std::size_t n) {
    const CMatrix a = random_matrix(g, n);
    CMatrix h = a + a.adjoint();
    h *= 0.5;
    return h;
}

// Gram-Schmidt on a Gaussian draw.
inline CMatrix random_unitary(std::mt19937_64& g, std::size_t n) {
    CMatrix a = random_matrix(g, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx d{};
            for (std::size_t i = 0; i < n; ++i) d += std::conj(a(i, k)) * a(i, j);
            for (std::size_t i = 0; i < n; ++i) a(i, j) -= d * a(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(a(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) a(i, j) /= nrm;
    }
    return a;
}

// Operator norm by power iteration on A^*A, independent of the Jacobi route.
inline double power_norm(const CMatrix& a, int iterations = 2000) {
    const CMatrix g = a.adjoint() * a;
    std::vector<cplx> x(g.rows(), cplx(1.0, 0.3));
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        std::vector<cplx> y(g.rows());
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) y[i] += g(i, j) * x[j];
        double nrm = 0.0;
        for (const auto& z : y) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) return 0.0;
        for (auto& z : y) z /= nrm;
        lambda = nrm;
        x = y;
    }
    return std::sqrt(lambda);
}

inline CMatrix example_e() {
    return CMatrix::from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 1}});
}

inline CMatrix jordan2() { return CMatrix::from_rows({{0, 1}, {0, 0}}); }

// Regular polygon inscribed in the circle |z - c| = r, vertices at phase + 2 pi k / m.
inline std::vector<cplx> circle_points(cplx c, double r, int m, double phase = 0.0) {
    std::vector<cplx> p;
    for (int k = 0; k < m; ++k) p.push_back(c + std::polar(r, phase + 2.0 * std::numbers::pi * k / m));
    return p;
}

}  // namespace nrange::testing
