#include "qmargin/numc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qmargin/errors.hpp"

namespace qmargin::numc {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DomainError("CMatrix: entry count does not match rows*cols");
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<complex>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

complex CMatrix::trace() const {
    complex t = 0.0;
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool CMatrix::all_finite() const {
    for (const auto& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double CMatrix::hermiticity_residual() const {
    if (rows_ != cols_) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r; c < cols_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

CMatrix CMatrix::operator+(const CMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DomainError("CMatrix::operator+: shape mismatch");
    }
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DomainError("CMatrix::operator-: shape mismatch");
    }
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& other) const {
    if (cols_ != other.rows_) {
        throw DomainError("CMatrix::operator*: inner dimension mismatch");
    }
    CMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const complex a = (*this)(r, k);
            if (a == complex(0.0)) continue;
            const complex* brow = other.data() + k * other.cols_;
            complex* orow = out.data() + r * other.cols_;
            for (std::size_t c = 0; c < other.cols_; ++c) {
                orow[c] += a * brow[c];
            }
        }
    }
    return out;
}

CMatrix& CMatrix::operator*=(complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

std::vector<complex> CMatrix::apply(const std::vector<complex>& v) const {
    if (v.size() != cols_) throw DomainError("CMatrix::apply: vector length mismatch");
    std::vector<complex> out(rows_, complex(0.0));
    for (std::size_t r = 0; r < rows_; ++r) {
        const complex* row = data_.data() + r * cols_;
        complex acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * v[c];
        out[r] = acc;
    }
    return out;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

namespace {

// One cyclic Jacobi pass over the strict upper triangle. Returns the largest
// off-diagonal magnitude seen before rotating. Works in place on `a` and
// accumulates rotations into `v`.
double jacobi_sweep(CMatrix& a, CMatrix& v) {
    const std::size_t n = a.rows();
    double largest = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const complex apq = a(p, q);
            const double mag = std::abs(apq);
            largest = std::max(largest, mag);
            if (mag < 1e-300) continue;

            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const complex phase = apq / mag; // e^{i theta}

            const double tau = (aqq - app) / (2.0 * mag);
            const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                             (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;

            // column update: B = A * J with J = [[c, s*phase], [-s*conj(phase), c]]
            const complex sp = s * phase;
            const complex spc = s * std::conj(phase);
            for (std::size_t i = 0; i < n; ++i) {
                const complex aip = a(i, p);
                const complex aiq = a(i, q);
                a(i, p) = c * aip - spc * aiq;
                a(i, q) = sp * aip + c * aiq;
            }
            // row update: A' = J^dagger * B
            for (std::size_t i = 0; i < n; ++i) {
                const complex api = a(p, i);
                const complex aqi = a(q, i);
                a(p, i) = c * api - sp * aqi;
                a(q, i) = spc * api + c * aqi;
            }
            // keep the diagonal exactly real
            a(p, p) = complex(a(p, p).real(), 0.0);
            a(q, q) = complex(a(q, q).real(), 0.0);
            a(p, q) = 0.0;
            a(q, p) = 0.0;

            for (std::size_t i = 0; i < n; ++i) {
                const complex vip = v(i, p);
                const complex viq = v(i, q);
                v(i, p) = c * vip - spc * viq;
                v(i, q) = sp * vip + c * viq;
            }
        }
    }
    return largest;
}

// Real symmetric fast path; same rotations without complex arithmetic.
double jacobi_sweep_real(std::vector<double>& a, std::vector<double>& v, std::size_t n) {
    double largest = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const double apq = a[p * n + q];
            const double mag = std::abs(apq);
            largest = std::max(largest, mag);
            if (mag < 1e-300) continue;

            const double app = a[p * n + p];
            const double aqq = a[q * n + q];
            const double sign = apq >= 0.0 ? 1.0 : -1.0;

            const double tau = (aqq - app) / (2.0 * mag);
            const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                             (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c * sign;

            double* colp = a.data() + p;
            double* colq = a.data() + q;
            for (std::size_t i = 0; i < n; ++i) {
                const double aip = colp[i * n];
                const double aiq = colq[i * n];
                colp[i * n] = c * aip - s * aiq;
                colq[i * n] = s * aip + c * aiq;
            }
            double* rowp = a.data() + p * n;
            double* rowq = a.data() + q * n;
            for (std::size_t i = 0; i < n; ++i) {
                const double api = rowp[i];
                const double aqi = rowq[i];
                rowp[i] = c * api - s * aqi;
                rowq[i] = s * api + c * aqi;
            }
            rowp[q] = 0.0;
            rowq[p] = 0.0;

            double* vp = v.data() + p;
            double* vq = v.data() + q;
            for (std::size_t i = 0; i < n; ++i) {
                const double vip = vp[i * n];
                const double viq = vq[i * n];
                vp[i * n] = c * vip - s * viq;
                vq[i * n] = s * vip + c * viq;
            }
        }
    }
    return largest;
}

} // namespace

EigenDecomposition eig_hermitian(const CMatrix& input, double herm_tol) {
    if (input.empty()) throw DomainError("eig_hermitian: empty matrix");
    if (input.rows() != input.cols()) throw DomainError("eig_hermitian: matrix not square");
    if (!input.all_finite()) throw DomainError("eig_hermitian: non-finite entries");
    if (input.hermiticity_residual() > herm_tol) {
        throw DomainError("eig_hermitian: matrix not Hermitian within tolerance");
    }

    const std::size_t n = input.rows();
    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(input(r, c)));
    }
    const double stop = std::max(scale, 1.0) * 1e-15;
    constexpr int kMaxSweeps = 100;

    bool real_input = true;
    for (const auto& z : input.entries()) {
        if (z.imag() != 0.0) {
            real_input = false;
            break;
        }
    }

    EigenDecomposition out;
    out.eigenvalues.resize(n);

    if (real_input) {
        std::vector<double> a(n * n), v(n * n, 0.0);
        for (std::size_t i = 0; i < n * n; ++i) a[i] = input.entries()[i].real();
        // symmetrize so tiny asymmetries within herm_tol cannot bias rotations
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = r + 1; c < n; ++c) {
                const double m = 0.5 * (a[r * n + c] + a[c * n + r]);
                a[r * n + c] = m;
                a[c * n + r] = m;
            }
        }
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
        int sweep = 0;
        while (sweep++ < kMaxSweeps) {
            if (jacobi_sweep_real(a, v, n) <= stop) break;
        }
        if (sweep > kMaxSweeps) throw NumericError("eig_hermitian: Jacobi did not converge");
        out.eigenvectors = CMatrix(n, n);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });
        for (std::size_t c = 0; c < n; ++c) {
            out.eigenvalues[c] = a[order[c] * n + order[c]];
            for (std::size_t r = 0; r < n; ++r) {
                out.eigenvectors(r, c) = v[r * n + order[c]];
            }
        }
        return out;
    }

    CMatrix a = input;
    // exact symmetrization, as above
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = complex(a(r, r).real(), 0.0);
        for (std::size_t c = r + 1; c < n; ++c) {
            const complex m = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = m;
            a(c, r) = std::conj(m);
        }
    }
    CMatrix v = CMatrix::identity(n);
    int sweep = 0;
    while (sweep++ < kMaxSweeps) {
        if (jacobi_sweep(a, v) <= stop) break;
    }
    if (sweep > kMaxSweeps) throw NumericError("eig_hermitian: Jacobi did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    out.eigenvectors = CMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.eigenvectors(r, c) = v(r, order[c]);
        }
    }
    return out;
}

double spectral_norm(const CMatrix& a) {
    if (a.empty()) throw DomainError("spectral_norm: empty matrix");
    if (!a.all_finite()) throw DomainError("spectral_norm: non-finite entries");
    if (a.is_hermitian(1e-12)) {
        const auto eig = eig_hermitian(a, 1e-12);
        double worst = 0.0;
        for (double lam : eig.eigenvalues) worst = std::max(worst, std::abs(lam));
        return worst;
    }
    // general case: sqrt of the largest eigenvalue of A^dagger A
    const CMatrix gram = a.adjoint() * a;
    const auto eig = eig_hermitian(gram, 1e-8 * std::max(1.0, gram.frobenius_norm()));
    const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    return std::sqrt(std::max(0.0, top));
}

double norm_21(const CMatrix& a) {
    if (!a.all_finite()) throw DomainError("norm_21: non-finite entries");
    double total = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        double col = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) col += std::norm(a(r, c));
        total += std::sqrt(col);
    }
    return total;
}

double trace_norm(const CMatrix& a, double herm_tol) {
    if (a.empty()) throw DomainError("trace_norm: empty matrix");
    if (a.rows() != a.cols() || a.hermiticity_residual() > herm_tol) {
        throw DomainError("trace_norm: matrix not Hermitian within tolerance");
    }
    const auto eig = eig_hermitian(a, herm_tol);
    double total = 0.0;
    for (double lam : eig.eigenvalues) total += std::abs(lam);
    return total;
}

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t dim_cap) {
    if (!a.all_finite() || !b.all_finite()) throw DomainError("kron: non-finite entries");
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > dim_cap || cols > dim_cap) {
        throw CapacityError("kron: output dimension exceeds cap");
    }
    CMatrix out(rows, cols);
    for (std::size_t ra = 0; ra < a.rows(); ++ra) {
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            const complex f = a(ra, ca);
            if (f == complex(0.0)) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb) {
                for (std::size_t cb = 0; cb < b.cols(); ++cb) {
                    out(ra * b.rows() + rb, ca * b.cols() + cb) = f * b(rb, cb);
                }
            }
        }
    }
    return out;
}

} // namespace qmargin::numc
