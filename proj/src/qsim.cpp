#include "qmargin/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmargin/errors.hpp"
#include "qmargin/rng.hpp"

namespace qmargin::qsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t checked_dim(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) throw DomainError("qubit count out of range");
    return std::size_t(1) << n_qubits;
}

inline std::size_t wire_mask(int n_qubits, int wire) {
    return std::size_t(1) << (n_qubits - 1 - wire);
}

void check_unitary(const CMatrix& u, std::size_t dim) {
    if (u.rows() != dim || u.cols() != dim) {
        throw DomainError("gate matrix has wrong dimension");
    }
    const CMatrix shouldBeI = u.adjoint() * u;
    if (shouldBeI.max_abs_diff(CMatrix::identity(dim)) > 1e-10) {
        throw DomainError("gate matrix is not unitary within 1e-10");
    }
}

} // namespace

Statevector::Statevector(int n, std::vector<complex> amps)
    : n_qubits(n), amplitudes(std::move(amps)) {
    if (amplitudes.size() != checked_dim(n)) {
        throw DomainError("Statevector: amplitude count != 2^n");
    }
    if (std::abs(norm() - 1.0) > 1e-10) {
        throw DomainError("Statevector: not normalized within 1e-10");
    }
}

Statevector Statevector::zero_state(int n_qubits) {
    Statevector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(checked_dim(n_qubits), complex(0.0));
    s.amplitudes[0] = 1.0;
    return s;
}

Statevector Statevector::random(int n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    Statevector s;
    s.n_qubits = n_qubits;
    s.amplitudes.resize(checked_dim(n_qubits));
    for (auto& a : s.amplitudes) a = complex(rng.normal(), rng.normal());
    s.normalize();
    return s;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

void Statevector::normalize() {
    const double n = norm();
    if (n <= 0.0) throw DomainError("Statevector: zero vector cannot be normalized");
    for (auto& a : amplitudes) a /= n;
}

complex Statevector::inner(const Statevector& other) const {
    if (other.amplitudes.size() != amplitudes.size()) {
        throw DomainError("Statevector::inner: dimension mismatch");
    }
    complex acc = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        acc += std::conj(amplitudes[i]) * other.amplitudes[i];
    }
    return acc;
}

DensityMatrix DensityMatrix::checked(int n_qubits, CMatrix m) {
    const std::size_t dim = checked_dim(n_qubits);
    if (m.rows() != dim || m.cols() != dim) {
        throw DomainError("DensityMatrix: matrix dimension != 2^n");
    }
    if (m.hermiticity_residual() > 1e-10) {
        throw DomainError("DensityMatrix: not Hermitian within 1e-10");
    }
    if (std::abs(m.trace().real() - 1.0) > 1e-10 || std::abs(m.trace().imag()) > 1e-10) {
        throw DomainError("DensityMatrix: trace != 1 within 1e-10");
    }
    const auto eig = numc::eig_hermitian(m, 1e-9);
    if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -1e-10) {
        throw DomainError("DensityMatrix: negative eigenvalue beyond tolerance");
    }
    DensityMatrix rho;
    rho.n_qubits = n_qubits;
    rho.matrix = std::move(m);
    return rho;
}

int Gate::arity() const {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::Generic1Q:
            return 1;
        default:
            return 2;
    }
}

bool Gate::parameterized() const { return param_slot >= 0; }

Gate Gate::h(int w) { return Gate{GateKind::H, {w, -1}}; }
Gate Gate::x(int w) { return Gate{GateKind::X, {w, -1}}; }
Gate Gate::rx(int w, int slot, double coeff) { return Gate{GateKind::RX, {w, -1}, slot, coeff}; }
Gate Gate::ry(int w, int slot, double coeff) { return Gate{GateKind::RY, {w, -1}, slot, coeff}; }
Gate Gate::rz(int w, int slot, double coeff) { return Gate{GateKind::RZ, {w, -1}, slot, coeff}; }
Gate Gate::rx_fixed(int w, double angle) { return Gate{GateKind::RX, {w, -1}, -1, 1.0, angle}; }
Gate Gate::ry_fixed(int w, double angle) { return Gate{GateKind::RY, {w, -1}, -1, 1.0, angle}; }
Gate Gate::rz_fixed(int w, double angle) { return Gate{GateKind::RZ, {w, -1}, -1, 1.0, angle}; }
Gate Gate::cnot(int control, int target) { return Gate{GateKind::CNOT, {control, target}}; }
Gate Gate::cz(int a, int b) { return Gate{GateKind::CZ, {a, b}}; }
Gate Gate::rzz(int a, int b, int slot, double coeff) {
    return Gate{GateKind::RZZ, {a, b}, slot, coeff};
}
Gate Gate::rzz_fixed(int a, int b, double angle) {
    return Gate{GateKind::RZZ, {a, b}, -1, 1.0, angle};
}
Gate Gate::ryy(int a, int b, int slot, double coeff) {
    return Gate{GateKind::RYY, {a, b}, slot, coeff};
}
Gate Gate::generic1q(int w, CMatrix u) {
    check_unitary(u, 2);
    Gate g{GateKind::Generic1Q, {w, -1}};
    g.fixed_matrix = std::move(u);
    return g;
}
Gate Gate::generic2q(int a, int b, CMatrix u) {
    check_unitary(u, 4);
    Gate g{GateKind::Generic2Q, {a, b}};
    g.fixed_matrix = std::move(u);
    return g;
}

CMatrix Gate::dense(double angle) const {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const complex i1(0.0, 1.0);
    switch (kind) {
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            return CMatrix(2, 2, {r, r, r, -r});
        }
        case GateKind::X:
            return CMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
        case GateKind::RX:
            return CMatrix(2, 2, {c, -i1 * s, -i1 * s, c});
        case GateKind::RY:
            return CMatrix(2, 2, {c, -s, s, c});
        case GateKind::RZ:
            return CMatrix::diagonal({std::exp(-i1 * (angle / 2.0)), std::exp(i1 * (angle / 2.0))});
        case GateKind::CNOT:
            return CMatrix(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
        case GateKind::CZ:
            return CMatrix::diagonal({1.0, 1.0, 1.0, -1.0});
        case GateKind::RZZ: {
            const complex lo = std::exp(-i1 * (angle / 2.0));
            const complex hi = std::exp(i1 * (angle / 2.0));
            return CMatrix::diagonal({lo, hi, hi, lo});
        }
        case GateKind::RYY: {
            CMatrix m(4, 4);
            m(0, 0) = c;
            m(1, 1) = c;
            m(2, 2) = c;
            m(3, 3) = c;
            m(0, 3) = -i1 * s;
            m(3, 0) = -i1 * s;
            m(1, 2) = i1 * s;
            m(2, 1) = i1 * s;
            return m;
        }
        case GateKind::Generic1Q:
        case GateKind::Generic2Q:
            return fixed_matrix;
    }
    throw DomainError("Gate::dense: unknown kind");
}

void Circuit::validate() const {
    checked_dim(n_qubits);
    std::vector<bool> used(std::size_t(std::max(0, n_params)), false);
    for (const auto& g : gates) {
        const int ar = g.arity();
        for (int i = 0; i < ar; ++i) {
            if (g.wires[i] < 0 || g.wires[i] >= n_qubits) {
                throw DomainError("Circuit: gate wire out of range");
            }
        }
        if (ar == 2 && g.wires[0] == g.wires[1]) {
            throw DomainError("Circuit: two-qubit gate wires must be distinct");
        }
        if (g.param_slot >= 0) {
            if (g.kind == GateKind::Generic1Q || g.kind == GateKind::Generic2Q ||
                g.kind == GateKind::H || g.kind == GateKind::X ||
                g.kind == GateKind::CNOT || g.kind == GateKind::CZ) {
                throw DomainError("Circuit: non-rotation gate cannot carry a parameter slot");
            }
            if (g.param_slot >= n_params) throw DomainError("Circuit: param slot out of range");
            used[std::size_t(g.param_slot)] = true;
        }
    }
    for (std::size_t s = 0; s < used.size(); ++s) {
        if (!used[s]) throw DomainError("Circuit: declared parameter slot never used");
    }
}

void Circuit::append(Gate g) { gates.push_back(std::move(g)); }

Circuit& Circuit::operator+=(const Circuit& other) {
    if (other.n_qubits != n_qubits) throw DomainError("Circuit concat: qubit count mismatch");
    for (const auto& g : other.gates) {
        Gate shifted = g;
        if (shifted.param_slot >= 0) shifted.param_slot += n_params;
        gates.push_back(std::move(shifted));
    }
    n_params += other.n_params;
    return *this;
}

void MeasurementSet::validate() const {
    if (elements.empty()) throw DomainError("MeasurementSet: no elements");
    const std::size_t d = dim();
    CMatrix sum(d, d);
    for (const auto& e : elements) {
        if (e.rows() != d || e.cols() != d) throw DomainError("MeasurementSet: mixed dimensions");
        if (e.hermiticity_residual() > 1e-10) {
            throw DomainError("MeasurementSet: element not Hermitian");
        }
        const auto eig = numc::eig_hermitian(e, 1e-9);
        if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -1e-10) {
            throw DomainError("MeasurementSet: element not positive semidefinite");
        }
        sum = sum + e;
    }
    if (sum.max_abs_diff(CMatrix::identity(d)) > 1e-9) {
        throw DomainError("MeasurementSet: elements do not sum to identity");
    }
    if (projective) {
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if ((elements[i] * elements[i]).max_abs_diff(elements[i]) > 1e-9) {
                throw DomainError("MeasurementSet: projective element not idempotent");
            }
            for (std::size_t j = i + 1; j < elements.size(); ++j) {
                CMatrix prod = elements[i] * elements[j];
                double worst = 0.0;
                for (const auto& z : prod.entries()) worst = std::max(worst, std::abs(z));
                if (worst > 1e-9) {
                    throw DomainError("MeasurementSet: projective elements not orthogonal");
                }
            }
        }
    }
}

std::vector<double> resolve_angles(const Circuit& c, const std::vector<double>& params) {
    if (params.size() != std::size_t(c.n_params)) {
        throw DomainError("parameter vector length != circuit n_params");
    }
    std::vector<double> angles(c.gates.size(), 0.0);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        if (g.param_slot >= 0) {
            angles[i] = g.coeff * params[std::size_t(g.param_slot)];
        } else {
            angles[i] = g.fixed_angle;
        }
    }
    return angles;
}

namespace {

void apply_1q(const complex m00, const complex m01, const complex m10, const complex m11,
              std::size_t mask, std::vector<complex>& a) {
    const std::size_t dim = a.size();
    for (std::size_t hi = 0; hi < dim; hi += mask << 1) {
        for (std::size_t lo = 0; lo < mask; ++lo) {
            const std::size_t i0 = hi + lo;
            const std::size_t i1 = i0 + mask;
            const complex a0 = a[i0];
            const complex a1 = a[i1];
            a[i0] = m00 * a0 + m01 * a1;
            a[i1] = m10 * a0 + m11 * a1;
        }
    }
}

void apply_dense2q(const CMatrix& u, std::size_t ma, std::size_t mb, std::vector<complex>& a) {
    const std::size_t dim = a.size();
    const std::size_t both = ma | mb;
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & both) continue;
        const std::size_t i00 = i;
        const std::size_t i01 = i | mb;
        const std::size_t i10 = i | ma;
        const std::size_t i11 = i | both;
        const complex a00 = a[i00], a01 = a[i01], a10 = a[i10], a11 = a[i11];
        a[i00] = u(0, 0) * a00 + u(0, 1) * a01 + u(0, 2) * a10 + u(0, 3) * a11;
        a[i01] = u(1, 0) * a00 + u(1, 1) * a01 + u(1, 2) * a10 + u(1, 3) * a11;
        a[i10] = u(2, 0) * a00 + u(2, 1) * a01 + u(2, 2) * a10 + u(2, 3) * a11;
        a[i11] = u(3, 0) * a00 + u(3, 1) * a01 + u(3, 2) * a10 + u(3, 3) * a11;
    }
}

} // namespace

void apply_gate(const Gate& g, double angle, int n_qubits, std::vector<complex>& a) {
    const complex i1(0.0, 1.0);
    switch (g.kind) {
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            apply_1q(r, r, r, -r, wire_mask(n_qubits, g.wires[0]), a);
            return;
        }
        case GateKind::X: {
            const std::size_t m = wire_mask(n_qubits, g.wires[0]);
            const std::size_t dim = a.size();
            for (std::size_t hi = 0; hi < dim; hi += m << 1) {
                for (std::size_t lo = 0; lo < m; ++lo) {
                    std::swap(a[hi + lo], a[hi + lo + m]);
                }
            }
            return;
        }
        case GateKind::RX: {
            const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
            apply_1q(c, -i1 * s, -i1 * s, c, wire_mask(n_qubits, g.wires[0]), a);
            return;
        }
        case GateKind::RY: {
            const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
            apply_1q(c, -s, s, c, wire_mask(n_qubits, g.wires[0]), a);
            return;
        }
        case GateKind::RZ: {
            const complex lo = std::exp(-i1 * (angle / 2.0));
            const complex hi = std::exp(i1 * (angle / 2.0));
            const std::size_t m = wire_mask(n_qubits, g.wires[0]);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (i & m) ? hi : lo;
            return;
        }
        case GateKind::CNOT: {
            const std::size_t mc = wire_mask(n_qubits, g.wires[0]);
            const std::size_t mt = wire_mask(n_qubits, g.wires[1]);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if ((i & mc) && !(i & mt)) std::swap(a[i], a[i | mt]);
            }
            return;
        }
        case GateKind::CZ: {
            const std::size_t both =
                wire_mask(n_qubits, g.wires[0]) | wire_mask(n_qubits, g.wires[1]);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if ((i & both) == both) a[i] = -a[i];
            }
            return;
        }
        case GateKind::RZZ: {
            const complex eq = std::exp(-i1 * (angle / 2.0));
            const complex ne = std::exp(i1 * (angle / 2.0));
            const std::size_t ma = wire_mask(n_qubits, g.wires[0]);
            const std::size_t mb = wire_mask(n_qubits, g.wires[1]);
            for (std::size_t i = 0; i < a.size(); ++i) {
                const bool pa = (i & ma) != 0, pb = (i & mb) != 0;
                a[i] *= (pa == pb) ? eq : ne;
            }
            return;
        }
        case GateKind::RYY: {
            const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
            const complex is = i1 * s;
            const std::size_t ma = wire_mask(n_qubits, g.wires[0]);
            const std::size_t mb = wire_mask(n_qubits, g.wires[1]);
            const std::size_t both = ma | mb;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i & both) continue;
                const std::size_t i00 = i, i01 = i | mb, i10 = i | ma, i11 = i | both;
                const complex a00 = a[i00], a01 = a[i01], a10 = a[i10], a11 = a[i11];
                a[i00] = c * a00 - is * a11;
                a[i01] = c * a01 + is * a10;
                a[i10] = c * a10 + is * a01;
                a[i11] = c * a11 - is * a00;
            }
            return;
        }
        case GateKind::Generic1Q: {
            const CMatrix& u = g.fixed_matrix;
            apply_1q(u(0, 0), u(0, 1), u(1, 0), u(1, 1), wire_mask(n_qubits, g.wires[0]), a);
            return;
        }
        case GateKind::Generic2Q: {
            apply_dense2q(g.fixed_matrix, wire_mask(n_qubits, g.wires[0]),
                          wire_mask(n_qubits, g.wires[1]), a);
            return;
        }
    }
    throw DomainError("apply_gate: unknown kind");
}

void apply_gate_dagger(const Gate& g, double angle, int n_qubits, std::vector<complex>& a) {
    switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::CZ:
            apply_gate(g, angle, n_qubits, a);
            return;
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::RZZ:
        case GateKind::RYY:
            apply_gate(g, -angle, n_qubits, a);
            return;
        case GateKind::Generic1Q: {
            const CMatrix u = g.fixed_matrix.adjoint();
            apply_1q(u(0, 0), u(0, 1), u(1, 0), u(1, 1), wire_mask(n_qubits, g.wires[0]), a);
            return;
        }
        case GateKind::Generic2Q: {
            apply_dense2q(g.fixed_matrix.adjoint(), wire_mask(n_qubits, g.wires[0]),
                          wire_mask(n_qubits, g.wires[1]), a);
            return;
        }
    }
    throw DomainError("apply_gate_dagger: unknown kind");
}

Statevector apply_circuit(const Circuit& c, const std::vector<double>& params,
                          const Statevector& s) {
    if (s.n_qubits != c.n_qubits) throw DomainError("apply_circuit: qubit count mismatch");
    c.validate();
    const auto angles = resolve_angles(c, params);
    Statevector out = s;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        apply_gate(c.gates[i], angles[i], c.n_qubits, out.amplitudes);
    }
    return out;
}

CMatrix full_unitary(const Circuit& c, const std::vector<double>& params, std::size_t dim_cap) {
    c.validate();
    const std::size_t dim = checked_dim(c.n_qubits);
    if (dim > dim_cap) throw CapacityError("full_unitary: dimension exceeds cap");
    const auto angles = resolve_angles(c, params);
    CMatrix u(dim, dim);
    std::vector<complex> col(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        std::fill(col.begin(), col.end(), complex(0.0));
        col[b] = 1.0;
        for (std::size_t i = 0; i < c.gates.size(); ++i) {
            apply_gate(c.gates[i], angles[i], c.n_qubits, col);
        }
        for (std::size_t r = 0; r < dim; ++r) u(r, b) = col[r];
    }
    return u;
}

std::vector<double> expectations(const Statevector& s, const MeasurementSet& m) {
    if (m.dim() != s.dim()) throw DomainError("expectations: dimension mismatch");
    std::vector<double> out;
    out.reserve(m.k());
    for (const auto& e : m.elements) {
        const auto ex = e.apply(s.amplitudes);
        complex acc = 0.0;
        for (std::size_t i = 0; i < ex.size(); ++i) acc += std::conj(s.amplitudes[i]) * ex[i];
        out.push_back(acc.real());
    }
    return out;
}

std::vector<double> readout_probabilities(const Statevector& s, const std::vector<int>& wires) {
    if (wires.empty()) throw DomainError("readout_probabilities: no wires");
    for (int w : wires) {
        if (w < 0 || w >= s.n_qubits) throw DomainError("readout_probabilities: wire out of range");
    }
    const std::size_t k = std::size_t(1) << wires.size();
    std::vector<double> probs(k, 0.0);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t cls = 0;
        for (std::size_t j = 0; j < wires.size(); ++j) {
            cls = (cls << 1) | ((i >> (s.n_qubits - 1 - wires[j])) & 1u);
        }
        probs[cls] += std::norm(s.amplitudes[i]);
    }
    return probs;
}

DensityMatrix density_from_ensemble(const std::vector<Statevector>& states,
                                    const std::vector<double>& weights) {
    if (states.empty()) throw DomainError("density_from_ensemble: empty ensemble");
    if (states.size() != weights.size()) {
        throw DomainError("density_from_ensemble: weight count mismatch");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw DomainError("density_from_ensemble: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw DomainError("density_from_ensemble: weights must sum to 1");
    }
    const int n = states[0].n_qubits;
    const std::size_t dim = states[0].dim();
    CMatrix rho(dim, dim);
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (states[s].dim() != dim) throw DomainError("density_from_ensemble: mixed dimensions");
        const auto& a = states[s].amplitudes;
        const double w = weights[s];
        for (std::size_t r = 0; r < dim; ++r) {
            const complex ar = w * a[r];
            for (std::size_t c = 0; c < dim; ++c) {
                rho(r, c) += ar * std::conj(a[c]);
            }
        }
    }
    return DensityMatrix::checked(n, std::move(rho));
}

DensityMatrix density_from_ensemble(const std::vector<Statevector>& states) {
    const std::vector<double> w(states.size(), 1.0 / double(states.size()));
    return density_from_ensemble(states, w);
}

std::vector<complex> vectorize(const DensityMatrix& rho) {
    return rho.matrix.entries();
}

Observable Observable::from_diagonal(std::vector<double> d) {
    Observable o;
    o.diagonal = std::move(d);
    return o;
}

Observable Observable::from_state(std::vector<complex> w) {
    Observable o;
    o.rank1 = std::move(w);
    return o;
}

Observable Observable::from_dense(CMatrix m) {
    Observable o;
    o.dense = std::move(m);
    return o;
}

double Observable::value(const std::vector<complex>& psi) const {
    if (!diagonal.empty()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) acc += diagonal[i] * std::norm(psi[i]);
        return acc;
    }
    if (!rank1.empty()) {
        complex ip = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) ip += std::conj(rank1[i]) * psi[i];
        return std::norm(ip);
    }
    const auto mp = dense.apply(psi);
    complex acc = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(psi[i]) * mp[i];
    return acc.real();
}

std::vector<complex> Observable::apply(const std::vector<complex>& psi) const {
    if (!diagonal.empty()) {
        std::vector<complex> out(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) out[i] = diagonal[i] * psi[i];
        return out;
    }
    if (!rank1.empty()) {
        complex ip = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) ip += std::conj(rank1[i]) * psi[i];
        std::vector<complex> out(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) out[i] = rank1[i] * ip;
        return out;
    }
    return dense.apply(psi);
}

namespace {

// Apply the generator P of a rotation gate (so that U(t) = exp(-i t P / 2))
// to `src`, writing into `dst`. For RYY the generator is -Y@Y.
void apply_generator(const Gate& g, int n_qubits, const std::vector<complex>& src,
                     std::vector<complex>& dst) {
    const complex i1(0.0, 1.0);
    dst.assign(src.size(), complex(0.0));
    switch (g.kind) {
        case GateKind::RX: {
            const std::size_t m = wire_mask(n_qubits, g.wires[0]);
            for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i ^ m];
            return;
        }
        case GateKind::RY: {
            const std::size_t m = wire_mask(n_qubits, g.wires[0]);
            for (std::size_t i = 0; i < src.size(); ++i) {
                // Y|0> = i|1>, Y|1> = -i|0>
                dst[i] = (i & m) ? i1 * src[i ^ m] : -i1 * src[i ^ m];
            }
            return;
        }
        case GateKind::RZ: {
            const std::size_t m = wire_mask(n_qubits, g.wires[0]);
            for (std::size_t i = 0; i < src.size(); ++i) dst[i] = (i & m) ? -src[i] : src[i];
            return;
        }
        case GateKind::RZZ: {
            const std::size_t ma = wire_mask(n_qubits, g.wires[0]);
            const std::size_t mb = wire_mask(n_qubits, g.wires[1]);
            for (std::size_t i = 0; i < src.size(); ++i) {
                const bool eq = ((i & ma) != 0) == ((i & mb) != 0);
                dst[i] = eq ? src[i] : -src[i];
            }
            return;
        }
        case GateKind::RYY: {
            // generator -Y@Y: (Y@Y) maps a00->-a11, a01->a10, a10->a01, a11->-a00
            const std::size_t ma = wire_mask(n_qubits, g.wires[0]);
            const std::size_t mb = wire_mask(n_qubits, g.wires[1]);
            const std::size_t both = ma | mb;
            for (std::size_t i = 0; i < src.size(); ++i) {
                if (i & both) continue;
                const std::size_t i00 = i, i01 = i | mb, i10 = i | ma, i11 = i | both;
                dst[i00] = src[i11];
                dst[i11] = src[i00];
                dst[i01] = -src[i10];
                dst[i10] = -src[i01];
            }
            return;
        }
        default:
            throw DomainError("gradient: gate has no rotation generator");
    }
}

} // namespace

GradientResult expectation_angle_gradients(const Circuit& c, const std::vector<double>& angles,
                                           const Statevector& s0, const Observable& obs) {
    if (angles.size() != c.gates.size()) {
        throw DomainError("expectation_angle_gradients: angle count mismatch");
    }
    GradientResult res;
    res.angle_gradients.assign(c.gates.size(), 0.0);

    std::vector<complex> phi = s0.amplitudes;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        apply_gate(c.gates[i], angles[i], c.n_qubits, phi);
    }
    res.value = obs.value(phi);

    std::vector<complex> lam = obs.apply(phi);
    std::vector<complex> tmp;
    for (std::size_t ii = c.gates.size(); ii-- > 0;) {
        const Gate& g = c.gates[ii];
        if (g.parameterized()) {
            // d<O>/dangle = Im <lam | P | phi>, with phi the state after gate ii
            apply_generator(g, c.n_qubits, phi, tmp);
            complex ip = 0.0;
            for (std::size_t j = 0; j < phi.size(); ++j) ip += std::conj(lam[j]) * tmp[j];
            res.angle_gradients[ii] = ip.imag();
        }
        apply_gate_dagger(g, angles[ii], c.n_qubits, phi);
        apply_gate_dagger(g, angles[ii], c.n_qubits, lam);
    }
    return res;
}

GradientResult expectation_angle_gradients_shift(const Circuit& c,
                                                 const std::vector<double>& angles,
                                                 const Statevector& s0, const Observable& obs) {
    if (angles.size() != c.gates.size()) {
        throw DomainError("expectation_angle_gradients_shift: angle count mismatch");
    }
    for (const auto& g : c.gates) {
        if (g.parameterized()) {
            switch (g.kind) {
                case GateKind::RX:
                case GateKind::RY:
                case GateKind::RZ:
                case GateKind::RZZ:
                case GateKind::RYY:
                    break;
                default:
                    throw DomainError("parameter-shift: gate is not shift-compatible");
            }
        }
    }
    GradientResult res;
    res.angle_gradients.assign(c.gates.size(), 0.0);

    auto evaluate = [&](std::size_t shifted_gate, double delta) {
        std::vector<complex> psi = s0.amplitudes;
        for (std::size_t i = 0; i < c.gates.size(); ++i) {
            const double a = angles[i] + (i == shifted_gate ? delta : 0.0);
            apply_gate(c.gates[i], a, c.n_qubits, psi);
        }
        return obs.value(psi);
    };

    res.value = evaluate(c.gates.size(), 0.0);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        if (!c.gates[i].parameterized()) continue;
        const double plus = evaluate(i, kPi / 2.0);
        const double minus = evaluate(i, -kPi / 2.0);
        res.angle_gradients[i] = 0.5 * (plus - minus);
    }
    return res;
}

std::vector<double> chain_to_params(const Circuit& c, const std::vector<double>& angle_grads) {
    std::vector<double> out(std::size_t(c.n_params), 0.0);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        if (g.param_slot >= 0) {
            out[std::size_t(g.param_slot)] += g.coeff * angle_grads[i];
        }
    }
    return out;
}

} // namespace qmargin::qsim
