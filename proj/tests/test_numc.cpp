#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "qmargin/errors.hpp"
#include "qmargin/numc.hpp"

using namespace qmargin;
using namespace qmargin::numc;
using testutil::random_hermitian;
using testutil::random_matrix;
using testutil::random_unitary;

namespace {

CMatrix reconstruct(const EigenDecomposition& eig) {
    const std::size_t n = eig.eigenvalues.size();
    CMatrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = eig.eigenvalues[i];
    return eig.eigenvectors * lam * eig.eigenvectors.adjoint();
}

} // namespace

TEST_CASE("eig_hermitian on the identity") {
    const auto eig = eig_hermitian(CMatrix::identity(4));
    for (double lam : eig.eigenvalues) CHECK(lam == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(reconstruct(eig).max_abs_diff(CMatrix::identity(4)) < 1e-10);
}

TEST_CASE("eig_hermitian on a diagonal matrix") {
    const auto eig = eig_hermitian(CMatrix::diagonal({-2.0, 0.0, 3.0}));
    CHECK(eig.eigenvalues[0] == doctest::Approx(-2.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.0));
    CHECK(eig.eigenvalues[2] == doctest::Approx(3.0));
    // columns are standard basis vectors up to phase
    for (std::size_t c = 0; c < 3; ++c) {
        int nonzero = 0;
        for (std::size_t r = 0; r < 3; ++r) {
            if (std::abs(eig.eigenvectors(r, c)) > 1e-12) ++nonzero;
        }
        CHECK(nonzero == 1);
    }
}

TEST_CASE("eig_hermitian reconstructs a random 8x8 Hermitian matrix") {
    const CMatrix a = random_hermitian(8, 71);
    const auto eig = eig_hermitian(a);
    CHECK(reconstruct(eig).max_abs_diff(a) < 1e-8);
    // ascending eigenvalues
    for (std::size_t i = 1; i < eig.eigenvalues.size(); ++i) {
        CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i - 1]);
    }
    // orthonormal columns
    const CMatrix g = eig.eigenvectors.adjoint() * eig.eigenvectors;
    CHECK(g.max_abs_diff(CMatrix::identity(8)) < 1e-10);
    // per-column residual A v = lambda v
    for (std::size_t c = 0; c < 8; ++c) {
        std::vector<complex> v(8);
        for (std::size_t r = 0; r < 8; ++r) v[r] = eig.eigenvectors(r, c);
        const auto av = a.apply(v);
        double resid = 0.0;
        for (std::size_t r = 0; r < 8; ++r) {
            resid += std::norm(av[r] - eig.eigenvalues[c] * v[r]);
        }
        CHECK(std::sqrt(resid) < 1e-9);
    }
}

TEST_CASE("eig_hermitian rejects bad input") {
    CHECK_THROWS_AS(eig_hermitian(CMatrix(2, 3)), DomainError);
    CMatrix notherm(2, 2, {0.0, 1.0, 0.0, 0.0});
    CHECK_THROWS_AS(eig_hermitian(notherm), DomainError);
}

TEST_CASE("eigenvalues invariant under unitary conjugation") {
    const CMatrix a = random_hermitian(6, 5);
    const CMatrix u = random_unitary(6, 6);
    const CMatrix b = u * a * u.adjoint();
    const auto ea = eig_hermitian(a);
    const auto eb = eig_hermitian(b, 1e-8);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(ea.eigenvalues[i] == doctest::Approx(eb.eigenvalues[i]).epsilon(1e-9));
    }
}

TEST_CASE("spectral_norm basics") {
    CHECK(spectral_norm(CMatrix::identity(5)) == doctest::Approx(1.0));
    CHECK(spectral_norm(CMatrix::diagonal({3.0, 1.0})) == doctest::Approx(3.0));
    CHECK_THROWS_AS(spectral_norm(CMatrix()), DomainError);
}

TEST_CASE("spectral_norm matches the A^dagger A eigensolve route") {
    const CMatrix a = random_matrix(6, 6, 99);
    const CMatrix gram = a.adjoint() * a;
    const auto eig = eig_hermitian(gram, 1e-6);
    const double expected = std::sqrt(eig.eigenvalues.back());
    CHECK(spectral_norm(a) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("norm_21") {
    CHECK(norm_21(CMatrix(3, 3)) == doctest::Approx(0.0));
    CHECK(norm_21(CMatrix::identity(7)) == doctest::Approx(7.0));
    const CMatrix m(2, 2, {3.0, 0.0, 4.0, 0.0});
    CHECK(norm_21(m) == doctest::Approx(5.0));
}

TEST_CASE("norm_21 of a unitary equals its dimension") {
    const CMatrix u = random_unitary(9, 314);
    CHECK(norm_21(u) == doctest::Approx(9.0).epsilon(1e-9));
}

TEST_CASE("trace_norm") {
    CHECK(trace_norm(CMatrix(3, 3)) == doctest::Approx(0.0));
    CHECK(trace_norm(CMatrix::diagonal({0.5, -0.5})) == doctest::Approx(1.0));

    const CMatrix a = random_hermitian(4, 17);
    const auto eig = eig_hermitian(a);
    double expected = 0.0;
    for (double lam : eig.eigenvalues) expected += std::abs(lam);
    CHECK(trace_norm(a) == doctest::Approx(expected).epsilon(1e-9));

    CMatrix notherm(2, 2, {0.0, 1.0, 0.0, 0.0});
    CHECK_THROWS_AS(trace_norm(notherm), DomainError);
}

TEST_CASE("kron") {
    const CMatrix i4 = kron(CMatrix::identity(2), CMatrix::identity(2));
    CHECK(i4.max_abs_diff(CMatrix::identity(4)) == 0.0);

    const CMatrix d = kron(CMatrix::diagonal({1.0, 2.0}), CMatrix::diagonal({3.0, 4.0}));
    CHECK(d.max_abs_diff(CMatrix::diagonal({3.0, 4.0, 6.0, 8.0})) == 0.0);

    // Z @ Z acting on |11> leaves the amplitude sign +1
    const CMatrix z = CMatrix::diagonal({1.0, -1.0});
    const CMatrix zz = kron(z, z);
    CHECK(zz(3, 3).real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(kron(CMatrix::identity(512), CMatrix::identity(512)), CapacityError);
}

TEST_CASE("norm ordering for Hermitian matrices") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const CMatrix a = random_hermitian(5, seed);
        const double spec = spectral_norm(a);
        const double tr = trace_norm(a);
        CHECK(spec <= tr + 1e-12);
        CHECK(tr <= 5.0 * spec + 1e-12);
    }
}
