#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmargin/numc.hpp"

namespace qmargin::qsim {

using numc::CMatrix;
using numc::complex;

/// Pure n-qubit state. Qubit 0 is the most significant bit of the basis
/// index, so |q0 q1 ... q_{n-1}> lives at index q0*2^{n-1} + ... + q_{n-1}.
struct Statevector {
    int n_qubits = 0;
    std::vector<complex> amplitudes;

    Statevector() = default;
    Statevector(int n, std::vector<complex> amps);

    /// |00...0>
    static Statevector zero_state(int n_qubits);
    /// Haar-ish random state: i.i.d. complex Gaussian amplitudes, normalized.
    static Statevector random(int n_qubits, std::uint64_t seed);

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
    void normalize();
    complex inner(const Statevector& other) const; // <this|other>
};

struct DensityMatrix {
    int n_qubits = 0;
    CMatrix matrix;

    /// Validates Hermiticity (1e-10), unit trace (1e-10) and eigenvalue
    /// floor (-1e-10).
    static DensityMatrix checked(int n_qubits, CMatrix m);
};

enum class GateKind {
    H,
    X,
    RX,
    RY,
    RZ,
    CNOT,
    CZ,
    RZZ,
    RYY,
    Generic1Q,
    Generic2Q,
};

/// One gate. Parameterized kinds (RX/RY/RZ/RZZ/RYY) take their angle either
/// from a parameter vector (`angle = coeff * params[param_slot]`) or from
/// `fixed_angle` when `param_slot < 0`. Rotation conventions:
///   RX/RY/RZ(t) = exp(-i t P / 2),  RZZ(t) = exp(-i t Z@Z / 2),
///   RYY(t) = exp(+i t Y@Y / 2).
struct Gate {
    GateKind kind;
    int wires[2] = {-1, -1};
    int param_slot = -1;
    double coeff = 1.0;
    double fixed_angle = 0.0;
    CMatrix fixed_matrix; // Generic1Q / Generic2Q only

    int arity() const;
    bool parameterized() const;

    static Gate h(int w);
    static Gate x(int w);
    static Gate rx(int w, int slot, double coeff = 1.0);
    static Gate ry(int w, int slot, double coeff = 1.0);
    static Gate rz(int w, int slot, double coeff = 1.0);
    static Gate rx_fixed(int w, double angle);
    static Gate ry_fixed(int w, double angle);
    static Gate rz_fixed(int w, double angle);
    static Gate cnot(int control, int target);
    static Gate cz(int a, int b);
    static Gate rzz(int a, int b, int slot, double coeff = 1.0);
    static Gate rzz_fixed(int a, int b, double angle);
    static Gate ryy(int a, int b, int slot, double coeff = 1.0);
    static Gate generic1q(int w, CMatrix u);
    static Gate generic2q(int a, int b, CMatrix u);

    /// Dense matrix of this gate (2x2 or 4x4) at the given resolved angle.
    CMatrix dense(double angle) const;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
    int n_params = 0;

    /// Validates wire ranges, slot ranges and that every declared slot is
    /// referenced by at least one gate.
    void validate() const;
    void append(Gate g);
    Circuit& operator+=(const Circuit& other);
};

/// POVM {E_i}. `projective` additionally asserts E_i^2 = E_i and
/// E_i E_j = 0 for i != j.
struct MeasurementSet {
    std::vector<CMatrix> elements;
    bool projective = false;

    std::size_t k() const { return elements.size(); }
    std::size_t dim() const { return elements.empty() ? 0 : elements[0].rows(); }

    /// Full invariant check: Hermitian, PSD (-1e-10 floor), sum to identity
    /// within 1e-9; projective flags checked at 1e-9.
    void validate() const;
};

/// Resolve each gate's angle against a parameter vector.
std::vector<double> resolve_angles(const Circuit& c, const std::vector<double>& params);

/// Apply one gate in place at the given resolved angle.
void apply_gate(const Gate& g, double angle, int n_qubits, std::vector<complex>& amps);
/// Apply the inverse gate in place.
void apply_gate_dagger(const Gate& g, double angle, int n_qubits, std::vector<complex>& amps);

Statevector apply_circuit(const Circuit& c, const std::vector<double>& params,
                          const Statevector& s);

/// Dense unitary of the whole circuit (dimension capped at 512).
CMatrix full_unitary(const Circuit& c, const std::vector<double>& params,
                     std::size_t dim_cap = 512);

/// {<s|E_i|s>} for every POVM element.
std::vector<double> expectations(const Statevector& s, const MeasurementSet& m);

/// Probabilities of computational-basis projective readout on `wires`
/// (class index uses wires[0] as its most significant bit). Equivalent to
/// `expectations` with the projector set, but O(2^n).
std::vector<double> readout_probabilities(const Statevector& s,
                                          const std::vector<int>& wires);

DensityMatrix density_from_ensemble(const std::vector<Statevector>& states,
                                    const std::vector<double>& weights);
DensityMatrix density_from_ensemble(const std::vector<Statevector>& states);

/// |rho>> = sum_ij rho_ij |i>|j>.
std::vector<complex> vectorize(const DensityMatrix& rho);

/// Observable for differentiation: exactly one representation is active.
struct Observable {
    // diagonal in the computational basis
    std::vector<double> diagonal;
    // rank-1 projector |w><w|
    std::vector<complex> rank1;
    // dense Hermitian matrix
    CMatrix dense;

    static Observable from_diagonal(std::vector<double> d);
    static Observable from_state(std::vector<complex> w);
    static Observable from_dense(CMatrix m);

    double value(const std::vector<complex>& psi) const;
    /// lambda = O * psi
    std::vector<complex> apply(const std::vector<complex>& psi) const;
};

struct GradientResult {
    double value = 0.0;
    /// d value / d angle, one entry per gate (0 for non-parameterized gates).
    std::vector<double> angle_gradients;
};

/// Exact analytic gradient of <psi(angles)|O|psi(angles)> with respect to
/// every gate angle, via one reverse sweep (two cached vectors). Identical to
/// the parameter-shift values for every gate kind used here.
GradientResult expectation_angle_gradients(const Circuit& c,
                                           const std::vector<double>& angles,
                                           const Statevector& s0, const Observable& obs);

/// Same quantity evaluated per gate by the two-point parameter-shift rule
/// (angle +- pi/2 per occurrence). The reference implementation.
GradientResult expectation_angle_gradients_shift(const Circuit& c,
                                                 const std::vector<double>& angles,
                                                 const Statevector& s0,
                                                 const Observable& obs);

/// Chain per-gate angle derivatives back onto parameter slots.
std::vector<double> chain_to_params(const Circuit& c, const std::vector<double>& angle_grads);

} // namespace qmargin::qsim
