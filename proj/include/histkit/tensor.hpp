#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace histkit {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Contract or numerical failure anywhere in the toolkit.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double recon = 1e-9;
inline constexpr double proj = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double unitary = 1e-10;
}  // namespace tol

/// Largest entrywise magnitude; the defect norm used for validation reports.
double max_abs(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a);

/// Ordered tensor factorization of a Hilbert space.
///
/// Composite basis indexing is lexicographic with factor 0 most significant:
/// the full-space index of (i_0, ..., i_{k-1}) is sum_f i_f * stride_f where
/// stride_f is the product of the dims of all later factors. This matches the
/// row/column layout of kron(a, b) with a on factor 0.
class CompositeSpace {
  public:
    explicit CompositeSpace(std::vector<int> factor_dims);
    static CompositeSpace bipartite(int d_sys, int d_env);

    int total_dim() const { return total_dim_; }
    int factors() const { return static_cast<int>(dims_.size()); }
    int dim(int factor) const;
    const std::vector<int>& factor_dims() const { return dims_; }

    /// stride of each factor in the lexicographic composite index
    const std::vector<long>& strides() const { return strides_; }
    long flat_index(const std::vector<int>& multi) const;

    bool operator==(const CompositeSpace& other) const { return dims_ == other.dims_; }

  private:
    std::vector<int> dims_;
    std::vector<long> strides_;
    int total_dim_ = 1;
};

/// Kronecker product, factor 0 (a) most significant:
/// (a (x) b)[(i1,i2),(j1,j2)] = a[i1,j1] * b[i2,j2].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out all factors not in `keep`; the result lives on the kept factors
/// in their original order. Tr(result) = Tr(a).
ComplexMatrix partial_trace(const ComplexMatrix& a, const CompositeSpace& space,
                            const std::vector<int>& keep);

/// I (x) ... (x) x (x) ... (x) I with x placed on `factor`.
ComplexMatrix embed(const ComplexMatrix& x, const CompositeSpace& space, int factor);

/// Eigensystem of a Hermitian matrix, eigenvalues descending, eigenvector
/// columns orthonormal.
struct Spectrum {
    RealVector eigenvalues;      // descending
    ComplexMatrix eigenvectors;  // columns, same order

    ComplexMatrix reconstruct() const;
};

/// Throws with the max asymmetry if `a` fails the Hermiticity check.
Spectrum hermitian_spectrum(const ComplexMatrix& a, double tol_herm = tol::herm);

/// exp(-i h t) for Hermitian h, via the spectral decomposition.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double t, double tol_herm = tol::herm);
ComplexMatrix unitary_exp(const Spectrum& spec, double t);

/// -sum lambda log2 lambda in bits, with 0 log 0 := 0. Eigenvalues in
/// [-tol_psd, 0] are clipped to 0; anything below -tol_psd throws.
double von_neumann_entropy(const ComplexMatrix& rho, double tol_psd = tol::psd,
                           double tol_herm = tol::herm);

/// Deterministic seeded generator used everywhere randomness is needed.
/// Gaussian deviates are produced by an explicit Box-Muller transform so the
/// stream does not depend on the standard library's distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    double uniform();  // [0, 1)
    double gaussian();
    cplx complex_gaussian();
    std::uint64_t below(std::uint64_t bound);  // [0, bound)

  private:
    std::uint64_t next_raw();
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the R
/// diagonal phases absorbed into Q.
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

/// Full-rank density operator G G^dag / Tr(G G^dag) with G complex Gaussian.
ComplexMatrix random_density(int dim, std::uint64_t seed);

/// Random d x d Hermitian with entries of order 1.
ComplexMatrix random_hermitian(int dim, std::uint64_t seed);

ComplexMatrix identity(int dim);

}  // namespace histkit
