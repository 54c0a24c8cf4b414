#pragma once

#include <complex>
#include <vector>

#include "qmargin/numc.hpp"
#include "qmargin/qsim.hpp"
#include "qmargin/rng.hpp"

namespace testutil {

using qmargin::Rng;
using qmargin::numc::CMatrix;
using qmargin::numc::complex;

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = complex(rng.normal(), rng.normal());
        }
    }
    return m;
}

inline CMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    CMatrix a = random_matrix(n, n, seed);
    CMatrix h(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            h(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
        }
    }
    return h;
}

/// Unitary from the eigenvectors of a random Hermitian matrix.
inline CMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    return qmargin::numc::eig_hermitian(random_hermitian(n, seed)).eigenvectors;
}

/// Seeded random circuit over the full parameterized gate set.
inline qmargin::qsim::Circuit random_circuit(int n_qubits, int n_gates, std::uint64_t seed) {
    using namespace qmargin::qsim;
    Rng rng(seed);
    Circuit c;
    c.n_qubits = n_qubits;
    int slot = 0;
    for (int i = 0; i < n_gates; ++i) {
        const int pick = int(rng.below(9));
        const int a = int(rng.below(std::uint64_t(n_qubits)));
        int b = int(rng.below(std::uint64_t(n_qubits)));
        while (b == a) b = int(rng.below(std::uint64_t(n_qubits)));
        switch (pick) {
            case 0: c.append(Gate::h(a)); break;
            case 1: c.append(Gate::x(a)); break;
            case 2: c.append(Gate::rx(a, slot++)); break;
            case 3: c.append(Gate::ry(a, slot++)); break;
            case 4: c.append(Gate::rz(a, slot++)); break;
            case 5: c.append(Gate::cnot(a, b)); break;
            case 6: c.append(Gate::cz(a, b)); break;
            case 7: c.append(Gate::rzz(a, b, slot++)); break;
            case 8: c.append(Gate::ryy(a, b, slot++)); break;
        }
    }
    c.n_params = slot;
    return c;
}

inline std::vector<double> random_params(int n, std::uint64_t seed, double lo = 0.0,
                                         double hi = 6.283185307179586) {
    Rng rng(seed);
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    for (auto& x : p) x = rng.uniform(lo, hi);
    return p;
}

} // namespace testutil
