#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qmargin::numc {

using complex = std::complex<double>;

/// Dense complex matrix, row-major.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(const std::vector<complex>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const complex& operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    complex* data() { return data_.data(); }
    const complex* data() const { return data_.data(); }
    const std::vector<complex>& entries() const { return data_; }

    CMatrix adjoint() const;
    complex trace() const;
    double frobenius_norm() const;
    bool all_finite() const;

    /// max elementwise |A - A^dagger|; 0 for the empty matrix.
    double hermiticity_residual() const;
    bool is_hermitian(double tol = 1e-10) const {
        return rows_ == cols_ && hermiticity_residual() <= tol;
    }

    CMatrix operator+(const CMatrix& other) const;
    CMatrix operator-(const CMatrix& other) const;
    CMatrix operator*(const CMatrix& other) const;
    CMatrix& operator*=(complex scale);
    friend CMatrix operator*(complex scale, CMatrix m) {
        m *= scale;
        return m;
    }

    std::vector<complex> apply(const std::vector<complex>& v) const;

    double max_abs_diff(const CMatrix& other) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> data_;
};

/// Result of a Hermitian eigendecomposition: A = V diag(lambda) V^dagger,
/// eigenvalues ascending, eigenvector columns orthonormal.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    CMatrix eigenvectors;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Input must be square and
/// Hermitian within `herm_tol` (max |A - A^dagger| elementwise).
EigenDecomposition eig_hermitian(const CMatrix& a, double herm_tol = 1e-10);

/// Largest singular value. For Hermitian input this equals max |eigenvalue|.
double spectral_norm(const CMatrix& a);

/// Sum over columns of the column 2-norms.
double norm_21(const CMatrix& a);

/// Sum of |eigenvalue| over the (Hermitian) input's spectrum.
double trace_norm(const CMatrix& a, double herm_tol = 1e-10);

/// Kronecker product. Throws CapacityError when either output dimension
/// exceeds `dim_cap`.
CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t dim_cap = 1u << 16);

} // namespace qmargin::numc
