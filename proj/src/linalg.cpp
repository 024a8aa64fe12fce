#include "nrange/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

#include "nrange/errors.hpp"

namespace nrange {

namespace {

constexpr int kMaxJacobiSweeps = 100;

CMatrix symmetrized(const CMatrix& h) {
    require_valid(h);
    const std::size_t n = h.rows();
    const double scale = h.frobenius_norm();
    double defect = 0.0;
    CMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = h(i, i).real();
        defect += h(i, i).imag() * h(i, i).imag();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx d = h(i, j) - std::conj(h(j, i));
            defect += 2.0 * std::norm(d);
            const cplx v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            s(i, j) = v;
            s(j, i) = std::conj(v);
        }
    }
    if (std::sqrt(defect) > kHermitianTolerance * scale)
        throw Error(ErrorKind::NotHermitian, "||H - H^*|| exceeds 1e-12 ||H||");
    return s;
}

double off_diagonal_mass(const CMatrix& h) {
    double s = 0.0;
    for (std::size_t p = 0; p < h.rows(); ++p)
        for (std::size_t q = p + 1; q < h.rows(); ++q) s += std::norm(h(p, q));
    return std::sqrt(2.0 * s);
}

// Cyclic Jacobi on an exactly Hermitian matrix. Only the rotation that zeroes
// (p, q) is applied, column-wise, and the upper triangle is mirrored.
void jacobi(CMatrix& h, CMatrix* v) {
    const std::size_t n = h.rows();
    const double target = kJacobiTolerance * h.frobenius_norm();
    // Rotations this small cannot move the off-diagonal mass above target.
    const double negligible = 0.1 * target / static_cast<double>(n);
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        if (off_diagonal_mass(h) <= target) return;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = h(p, q);
                // sqrt(norm) rather than abs: entries are finite and far from
                // overflow, and hypot dominated the sweep cost.
                const double r = std::sqrt(std::norm(apq));
                if (r <= negligible) continue;
                const cplx e = apq / r;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx sce = s * std::conj(e);
                const cplx cce = c * std::conj(e);
                // G = [[c, s], [-s conj(e), c conj(e)]] on the (p, q) plane.
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const cplx hkp = h(k, p);
                    const cplx hkq = h(k, q);
                    const cplx np = c * hkp - sce * hkq;
                    const cplx nq = s * hkp + cce * hkq;
                    h(k, p) = np;
                    h(p, k) = std::conj(np);
                    h(k, q) = nq;
                    h(q, k) = std::conj(nq);
                }
                h(p, p) = app - t * r;
                h(q, q) = aqq + t * r;
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                if (v != nullptr) {
                    CMatrix& vm = *v;
                    for (std::size_t k = 0; k < n; ++k) {
                        const cplx vkp = vm(k, p);
                        const cplx vkq = vm(k, q);
                        vm(k, p) = c * vkp - sce * vkq;
                        vm(k, q) = s * vkp + cce * vkq;
                    }
                }
            }
        }
    }
    if (off_diagonal_mass(h) > target)
        throw Error(ErrorKind::EigenFailure, "Jacobi sweeps did not converge");
}

std::vector<std::size_t> ascending_order(const CMatrix& h) {
    std::vector<std::size_t> idx(h.rows());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });
    return idx;
}

}  // namespace

void require_valid(const CMatrix& a) {
    if (a.empty() || !a.is_square())
        throw Error(ErrorKind::InvalidMatrix, "expected a non-empty square matrix");
    if (!a.all_finite()) throw Error(ErrorKind::InvalidMatrix, "matrix has non-finite entries");
}

double operator_norm(const CMatrix& a) {
    require_valid(a);
    const auto values = herm_eigenvalues(gram(a));
    return std::sqrt(std::max(0.0, values.back()));
}

HermEigen herm_eigen(const CMatrix& h) {
    CMatrix work = symmetrized(h);
    const std::size_t n = work.rows();
    CMatrix v = CMatrix::identity(n);
    jacobi(work, &v);
    const auto order = ascending_order(work);
    HermEigen out{std::vector<double>(n), CMatrix(n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = work(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> herm_eigenvalues(const CMatrix& h) {
    CMatrix work = symmetrized(h);
    jacobi(work, nullptr);
    std::vector<double> values(work.rows());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = work(i, i).real();
    std::sort(values.begin(), values.end());
    return values;
}

CMatrix hessenberg(const CMatrix& a) {
    require_valid(a);
    CMatrix h = a;
    const std::size_t n = h.rows();
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(h(i, k));
        if (tail == 0.0) continue;
        const cplx x0 = h(k + 1, k);
        const double xnorm = std::sqrt(tail + std::norm(x0));
        const cplx phase = x0 == cplx{} ? cplx{1.0} : x0 / std::abs(x0);
        const cplx alpha = -phase * xnorm;
        const std::size_t m = n - k - 1;
        v.assign(m, cplx{});
        v[0] = x0 - alpha;
        for (std::size_t i = 1; i < m; ++i) v[i] = h(k + 1 + i, k);
        double vv = 0.0;
        for (const auto& z : v) vv += std::norm(z);
        const double beta = 2.0 / vv;
        // Left: rows k+1..n-1.
        for (std::size_t j = k; j < n; ++j) {
            cplx s{};
            for (std::size_t i = 0; i < m; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
            s *= beta;
            for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= v[i] * s;
        }
        // Right: columns k+1..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            cplx s{};
            for (std::size_t j = 0; j < m; ++j) s += h(i, k + 1 + j) * v[j];
            s *= beta;
            for (std::size_t j = 0; j < m; ++j) h(i, k + 1 + j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
    return h;
}

std::vector<cplx> eigenvalues(const CMatrix& a) {
    CMatrix h = hessenberg(a);
    const std::size_t n = h.rows();
    std::vector<cplx> out(n);
    if (n == 1) {
        out[0] = h(0, 0);
        return out;
    }
    const double scale = h.frobenius_norm();
    const std::size_t max_iterations = 100 * n;
    std::size_t total = 0;
    std::size_t since_deflation = 0;
    std::size_t hi = n - 1;
    struct Rot {
        double c;
        cplx s;
    };
    std::vector<Rot> rots(n);
    while (true) {
        // Locate the start of the active unreduced block ending at hi.
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            double ref = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (ref == 0.0) ref = scale;
            if (sub <= DBL_EPSILON * ref) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            out[hi] = h(hi, hi);
            since_deflation = 0;
            if (hi == 0) break;
            --hi;
            continue;
        }
        if (++total > max_iterations)
            throw Error(ErrorKind::EigenFailure, "shifted QR exceeded 100 n iterations");
        ++since_deflation;

        cplx mu;
        if (since_deflation % 11 == 10) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            const cplx p = h(hi - 1, hi - 1);
            const cplx q = h(hi - 1, hi);
            const cplx r = h(hi, hi - 1);
            const cplx d = h(hi, hi);
            const cplx half_tr = 0.5 * (p + d);
            const cplx disc = std::sqrt(0.25 * (p - d) * (p - d) + q * r);
            const cplx m1 = half_tr + disc;
            const cplx m2 = half_tr - disc;
            mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
        }

        for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
        // H - mu I = Q R restricted to the active window, then H <- R Q + mu I.
        for (std::size_t k = lo; k < hi; ++k) {
            const cplx x = h(k, k);
            const cplx y = h(k + 1, k);
            const double rr = std::hypot(std::abs(x), std::abs(y));
            Rot g{};
            if (rr == 0.0) {
                g = {1.0, cplx{}};
            } else if (x == cplx{}) {
                g = {0.0, cplx{1.0}};
            } else {
                g.c = std::abs(x) / rr;
                g.s = (x / std::abs(x)) * std::conj(y) / rr;
            }
            rots[k] = g;
            for (std::size_t j = k; j <= hi; ++j) {
                const cplx u = h(k, j);
                const cplx w = h(k + 1, j);
                h(k, j) = g.c * u + g.s * w;
                h(k + 1, j) = -std::conj(g.s) * u + g.c * w;
            }
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const Rot& g = rots[k];
            const std::size_t last = std::min(k + 2, hi);
            for (std::size_t i = lo; i <= last; ++i) {
                const cplx u = h(i, k);
                const cplx w = h(i, k + 1);
                h(i, k) = u * g.c + w * std::conj(g.s);
                h(i, k + 1) = -u * g.s + w * g.c;
            }
        }
        for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
    }
    return out;
}

double default_cluster_tolerance(double norm) noexcept {
    return std::max(1e-10, 1e-8 * norm * norm);
}

Subspace top_singular_subspace(const CMatrix& a, double tau_cluster) {
    require_valid(a);
    if (a.is_zero()) throw Error(ErrorKind::ZeroMatrix, "every subspace attains the norm of the zero matrix");
    const HermEigen eig = herm_eigen(gram(a));
    const double top = eig.values.back();
    std::vector<std::size_t> picked;
    for (std::size_t j = 0; j < eig.values.size(); ++j)
        if (eig.values[j] >= top - tau_cluster) picked.push_back(j);
    Subspace s{CMatrix(a.rows(), picked.size())};
    for (std::size_t c = 0; c < picked.size(); ++c)
        for (std::size_t i = 0; i < a.rows(); ++i) s.basis(i, c) = eig.vectors(i, picked[c]);
    return s;
}

CMatrix compress(const CMatrix& a, const Subspace& v) {
    require_valid(a);
    if (v.basis.rows() != a.rows() || v.basis.cols() == 0 || v.basis.cols() > a.rows())
        throw Error(ErrorKind::DimensionMismatch, "basis must have n rows and 1..n columns");
    CMatrix b = v.basis.adjoint() * (a * v.basis);
    return b;
}

QrFactors qr_decompose(const CMatrix& a) {
    require_valid(a);
    const std::size_t n = a.rows();
    CMatrix r = a;
    CMatrix q = CMatrix::identity(n);
    std::vector<cplx> v;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double tail = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) tail += std::norm(r(i, k));
        if (tail == 0.0) continue;
        const cplx x0 = r(k, k);
        const double xnorm = std::sqrt(tail + std::norm(x0));
        const cplx phase = x0 == cplx{} ? cplx{1.0} : x0 / std::abs(x0);
        const std::size_t m = n - k;
        v.assign(m, cplx{});
        v[0] = x0 + phase * xnorm;
        for (std::size_t i = 1; i < m; ++i) v[i] = r(k + i, k);
        double vv = 0.0;
        for (const auto& z : v) vv += std::norm(z);
        const double beta = 2.0 / vv;
        for (std::size_t j = k; j < n; ++j) {
            cplx s{};
            for (std::size_t i = 0; i < m; ++i) s += std::conj(v[i]) * r(k + i, j);
            s *= beta;
            for (std::size_t i = 0; i < m; ++i) r(k + i, j) -= v[i] * s;
        }
        // Q <- Q P_k
        for (std::size_t i = 0; i < n; ++i) {
            cplx s{};
            for (std::size_t j = 0; j < m; ++j) s += q(i, k + j) * v[j];
            s *= beta;
            for (std::size_t j = 0; j < m; ++j) q(i, k + j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 1; i < n; ++i) r(i, k) = 0.0;
    }
    return {std::move(q), std::move(r)};
}

}  // namespace nrange
