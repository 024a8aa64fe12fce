#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "nrange/errors.hpp"
#include "nrange/linalg.hpp"

using namespace nrange;
using namespace nrange::testing;

TEST_SUITE("linalg") {

TEST_CASE("operator_norm on fixtures") {
    CHECK(operator_norm(example_e()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm(CMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-12));
    // A^*A = diag(0, 1) for the 2x2 Jordan block.
    CHECK(operator_norm(jordan2()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("operator_norm rejects invalid input") {
    CHECK_THROWS_AS(operator_norm(CMatrix(2, 3)), Error);
    CMatrix bad = CMatrix::identity(2);
    bad(0, 1) = cplx(std::nan(""), 0.0);
    try {
        operator_norm(bad);
        FAIL("expected InvalidMatrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidMatrix);
    }
}

TEST_CASE("operator_norm agrees with power iteration") {
    std::mt19937_64 g(3);
    for (int t = 0; t < 20; ++t) {
        const CMatrix a = random_matrix(g, 2 + t % 6);
        CHECK(operator_norm(a) == doctest::Approx(power_norm(a)).epsilon(1e-8));
    }
}

TEST_CASE("herm_eigen fixtures") {
    const cplx d[] = {2.0, 1.0};
    auto e = herm_eigen(CMatrix::diagonal(d));
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(2.0));

    e = herm_eigen(CMatrix::from_rows({{0, 1}, {1, 0}}));
    CHECK(e.values[0] == doctest::Approx(-1.0));
    CHECK(e.values[1] == doctest::Approx(1.0));

    const CMatrix ee = example_e();
    e = herm_eigen(ee.adjoint() * ee);
    REQUIRE(e.values.size() == 3);
    CHECK(e.values[0] == doctest::Approx(0.0));
    CHECK(e.values[1] == doctest::Approx(1.0));
    CHECK(e.values[2] == doctest::Approx(1.0));
}

TEST_CASE("herm_eigen rejects non-Hermitian input") {
    try {
        herm_eigen(jordan2());
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotHermitian);
    }
}

TEST_CASE("herm_eigen reconstructs random Hermitian matrices") {
    std::mt19937_64 g(5);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 12);
        const CMatrix h = random_hermitian(g, n);
        const HermEigen e = herm_eigen(h);
        CHECK(std::is_sorted(e.values.begin(), e.values.end()));
        std::vector<cplx> diag(e.values.begin(), e.values.end());
        const CMatrix rebuilt = e.vectors * CMatrix::diagonal(diag) * e.vectors.adjoint();
        CHECK((rebuilt - h).frobenius_norm() <= 1e-10 * h.frobenius_norm());
        const CMatrix gram_v = e.vectors.adjoint() * e.vectors;
        CHECK((gram_v - CMatrix::identity(n)).max_abs() <= 1e-12);
        const double hn = operator_norm(h);
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = e.vectors.column(i);
            double res = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                cplx s{};
                for (std::size_t c = 0; c < n; ++c) s += h(r, c) * v[c];
                res += std::norm(s - e.values[i] * v[r]);
            }
            CHECK(std::sqrt(res) <= 1e-12 * std::max(hn, 1.0));
        }
    }
}

TEST_CASE("eigenvalues fixtures") {
    auto sorted = [](std::vector<cplx> v) {
        std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        return v;
    };
    auto ev = sorted(eigenvalues(example_e()));
    CHECK(std::abs(ev[0]) <= 1e-14);
    CHECK(std::abs(ev[1]) <= 1e-14);
    CHECK(std::abs(ev[2] - 1.0) <= 1e-14);

    const cplx d[] = {1.0, -1.0, cplx(0, 1)};
    ev = sorted(eigenvalues(CMatrix::diagonal(d)));
    CHECK(std::abs(ev[0] + 1.0) <= 1e-14);
    CHECK(std::abs(ev[1] - cplx(0, 1)) <= 1e-14);
    CHECK(std::abs(ev[2] - 1.0) <= 1e-14);

    ev = eigenvalues(jordan2());
    CHECK(std::abs(ev[0]) <= 1e-14);
    CHECK(std::abs(ev[1]) <= 1e-14);
}

TEST_CASE("eigenvalues of triangular matrices are the diagonal") {
    std::mt19937_64 g(7);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        CMatrix a = random_matrix(g, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) a(i, j) = 0.0;
        const auto ev = eigenvalues(a);
        const double tol = 1e-12 * operator_norm(a);
        for (std::size_t i = 0; i < n; ++i) {
            double best = 1e300;
            for (const auto& z : ev) best = std::min(best, std::abs(z - a(i, i)));
            CHECK(best <= tol);
        }
    }
}

TEST_CASE("eigenvalues of random matrices satisfy trace and unitary similarity") {
    std::mt19937_64 g(8);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const CMatrix d = [&] {
            std::vector<cplx> diag;
            for (std::size_t i = 0; i < n; ++i) diag.push_back(random_matrix(g, 1)(0, 0));
            return CMatrix::diagonal(diag);
        }();
        const CMatrix u = random_unitary(g, n);
        const auto ev = eigenvalues(u * d * u.adjoint());
        for (std::size_t i = 0; i < n; ++i) {
            double best = 1e300;
            for (const auto& z : ev) best = std::min(best, std::abs(z - d(i, i)));
            CHECK(best <= 1e-10);
        }
    }
}

TEST_CASE("operator_norm is unitarily invariant") {
    std::mt19937_64 g(9);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 6);
        const CMatrix a = random_matrix(g, n);
        const CMatrix u = random_unitary(g, n);
        const CMatrix v = random_unitary(g, n);
        CHECK(std::abs(operator_norm(u * a * v) - operator_norm(a)) <= 1e-10);
    }
}

TEST_CASE("top_singular_subspace fixtures") {
    const double tau = default_cluster_tolerance(1.0);
    Subspace s = top_singular_subspace(example_e(), tau);
    REQUIRE(s.dim() == 2);
    // span{e2, e3}: the projector onto it is diag(0, 1, 1).
    CMatrix proj = s.basis * s.basis.adjoint();
    const cplx p23[] = {0.0, 1.0, 1.0};
    CHECK((proj - CMatrix::diagonal(p23)).max_abs() <= 1e-12);

    s = top_singular_subspace(jordan2(), tau);
    REQUIRE(s.dim() == 1);
    CHECK(std::abs(std::abs(s.basis(1, 0)) - 1.0) <= 1e-12);

    s = top_singular_subspace(CMatrix::identity(3), tau);
    CHECK(s.dim() == 3);

    try {
        top_singular_subspace(CMatrix(3), tau);
        FAIL("expected ZeroMatrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroMatrix);
    }
}

TEST_CASE("top_singular_subspace vectors attain the norm") {
    std::mt19937_64 g(10);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 6);
        CMatrix a = random_matrix(g, n);
        if (t % 3 == 0) {
            // Force a two-dimensional top cluster with a partial isometry block.
            for (std::size_t i = 0; i < n; ++i) a(i, 0) = a(i, 1) = a(0, i) = a(1, i) = 0.0;
            a(0, 0) = 10.0;
            a(1, 1) = cplx(0.0, 10.0);
        }
        const double norm = operator_norm(a);
        const double tau = default_cluster_tolerance(norm);
        const Subspace s = top_singular_subspace(a, tau);
        if (t % 3 == 0) CHECK(s.dim() >= 2);
        const double top = norm * norm;
        std::mt19937_64 h(t);
        std::normal_distribution<double> nd;
        for (int k = 0; k < 10; ++k) {
            std::vector<cplx> c(s.dim());
            double cn = 0.0;
            for (auto& z : c) {
                z = cplx(nd(h), nd(h));
                cn += std::norm(z);
            }
            std::vector<cplx> x(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < s.dim(); ++j) x[i] += s.basis(i, j) * c[j] / std::sqrt(cn);
            double ax = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cplx r{};
                for (std::size_t j = 0; j < n; ++j) r += a(i, j) * x[j];
                ax += std::norm(r);
            }
            CHECK(ax >= top - 2.0 * tau);
        }
    }
}

TEST_CASE("compress fixtures and errors") {
    const double tau = default_cluster_tolerance(1.0);
    const CMatrix e = example_e();
    CMatrix b = compress(e, top_singular_subspace(e, tau));
    REQUIRE(b.rows() == 2);
    // Basis is only determined up to a unitary; the spectrum of the compression is {0, 1}.
    auto ev = herm_eigenvalues(b);
    CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.0));
    CHECK((b - b.adjoint()).max_abs() <= 1e-14);

    b = compress(jordan2(), top_singular_subspace(jordan2(), tau));
    REQUIRE(b.rows() == 1);
    CHECK(std::abs(b(0, 0)) <= 1e-15);

    std::mt19937_64 g(2);
    const CMatrix a = random_matrix(g, 4);
    CHECK((compress(a, Subspace{CMatrix::identity(4)}) - a).max_abs() <= 1e-15);

    try {
        compress(a, Subspace{CMatrix::identity(3)});
        FAIL("expected DimensionMismatch");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::DimensionMismatch);
    }
}

TEST_CASE("compressions never exceed the norm") {
    std::mt19937_64 g(12);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 6);
        const CMatrix a = random_matrix(g, n);
        const CMatrix u = random_unitary(g, n);
        const std::size_t k = 1 + static_cast<std::size_t>(t) % n;
        Subspace v{CMatrix(n, k)};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) v.basis(i, j) = u(i, j);
        CHECK(operator_norm(compress(a, v)) <= operator_norm(a) + 1e-10);
    }
}

TEST_CASE("qr_decompose yields a unitary factor") {
    std::mt19937_64 g(13);
    const CMatrix a = random_matrix(g, 5);
    const QrFactors f = qr_decompose(a);
    CHECK((f.q * f.r - a).max_abs() <= 1e-13);
    CHECK((f.q.adjoint() * f.q - CMatrix::identity(5)).max_abs() <= 1e-13);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(f.r(i, j) == cplx{});
}

}
