#include "histkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace histkit {

double max_abs(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

CompositeSpace::CompositeSpace(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
    if (dims_.empty()) throw Error("CompositeSpace: need at least one factor");
    for (int d : dims_)
        if (d < 1) throw Error("CompositeSpace: factor dimension must be >= 1");
    strides_.assign(dims_.size(), 1);
    for (int f = static_cast<int>(dims_.size()) - 2; f >= 0; --f)
        strides_[f] = strides_[f + 1] * dims_[f + 1];
    long total = strides_[0] * dims_[0];
    if (total > (1L << 30)) throw Error("CompositeSpace: total dimension too large");
    total_dim_ = static_cast<int>(total);
}

CompositeSpace CompositeSpace::bipartite(int d_sys, int d_env) {
    return CompositeSpace({d_sys, d_env});
}

int CompositeSpace::dim(int factor) const {
    if (factor < 0 || factor >= factors()) throw Error("CompositeSpace: factor index out of range");
    return dims_[factor];
}

long CompositeSpace::flat_index(const std::vector<int>& multi) const {
    long idx = 0;
    for (std::size_t f = 0; f < dims_.size(); ++f) idx += multi[f] * strides_[f];
    return idx;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a, const CompositeSpace& space,
                            const std::vector<int>& keep) {
    if (a.rows() != a.cols() || a.rows() != space.total_dim())
        throw Error("partial_trace: operator dimension does not match the composite space");
    if (keep.empty()) throw Error("partial_trace: keep set must be nonempty (use trace instead)");

    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw Error("partial_trace: duplicate factor in keep set");
    for (int f : kept)
        if (f < 0 || f >= space.factors()) throw Error("partial_trace: keep factor out of range");

    std::vector<int> traced;
    for (int f = 0; f < space.factors(); ++f)
        if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);

    long dim_kept = 1, dim_traced = 1;
    for (int f : kept) dim_kept *= space.dim(f);
    for (int f : traced) dim_traced *= space.dim(f);

    const auto& strides = space.strides();
    // base offsets of each kept sub-index and each traced configuration
    std::vector<long> kept_offsets(dim_kept, 0);
    for (long k = 0; k < dim_kept; ++k) {
        long rem = k;
        for (int pos = static_cast<int>(kept.size()) - 1; pos >= 0; --pos) {
            int f = kept[pos];
            kept_offsets[k] += (rem % space.dim(f)) * strides[f];
            rem /= space.dim(f);
        }
    }
    std::vector<long> traced_offsets(dim_traced, 0);
    for (long e = 0; e < dim_traced; ++e) {
        long rem = e;
        for (int pos = static_cast<int>(traced.size()) - 1; pos >= 0; --pos) {
            int f = traced[pos];
            traced_offsets[e] += (rem % space.dim(f)) * strides[f];
            rem /= space.dim(f);
        }
    }

    ComplexMatrix out = ComplexMatrix::Zero(dim_kept, dim_kept);
    for (long r = 0; r < dim_kept; ++r)
        for (long c = 0; c < dim_kept; ++c) {
            cplx sum = 0.0;
            for (long e = 0; e < dim_traced; ++e)
                sum += a(kept_offsets[r] + traced_offsets[e], kept_offsets[c] + traced_offsets[e]);
            out(r, c) = sum;
        }
    return out;
}

ComplexMatrix embed(const ComplexMatrix& x, const CompositeSpace& space, int factor) {
    if (factor < 0 || factor >= space.factors()) throw Error("embed: factor index out of range");
    if (x.rows() != x.cols() || x.rows() != space.dim(factor))
        throw Error("embed: operator dimension does not match the factor");
    long before = 1, after = 1;
    for (int f = 0; f < factor; ++f) before *= space.dim(f);
    for (int f = factor + 1; f < space.factors(); ++f) after *= space.dim(f);
    ComplexMatrix out = x;
    if (before > 1) out = kron(ComplexMatrix::Identity(before, before), out);
    if (after > 1) out = kron(out, ComplexMatrix::Identity(after, after));
    return out;
}

ComplexMatrix Spectrum::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

Spectrum hermitian_spectrum(const ComplexMatrix& a, double tol_herm) {
    if (a.rows() != a.cols()) throw Error("hermitian_spectrum: matrix must be square");
    const double asym = max_abs(a - a.adjoint());
    if (asym > tol_herm) {
        std::ostringstream msg;
        msg << "hermitian_spectrum: input not Hermitian, max asymmetry " << asym;
        throw Error(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    if (solver.info() != Eigen::Success) throw Error("hermitian_spectrum: eigensolver failed");
    const int n = static_cast<int>(a.rows());
    Spectrum spec;
    spec.eigenvalues = solver.eigenvalues().reverse();
    spec.eigenvectors = ComplexMatrix(n, n);
    for (int i = 0; i < n; ++i) spec.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    return spec;
}

ComplexMatrix unitary_exp(const Spectrum& spec, double t) {
    const Eigen::Index n = spec.eigenvalues.size();
    ComplexVector phases(n);
    for (Eigen::Index i = 0; i < n; ++i)
        phases(i) = std::exp(cplx(0.0, -spec.eigenvalues(i) * t));
    return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double t, double tol_herm) {
    return unitary_exp(hermitian_spectrum(h, tol_herm), t);
}

double von_neumann_entropy(const ComplexMatrix& rho, double tol_psd, double tol_herm) {
    Spectrum spec = hermitian_spectrum(rho, tol_herm);
    const double tr = spec.eigenvalues.sum();
    if (std::abs(tr - 1.0) > 1e-8) {
        std::ostringstream msg;
        msg << "von_neumann_entropy: trace is " << tr << ", expected 1";
        throw Error(msg.str());
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        double lambda = spec.eigenvalues(i);
        if (lambda < -tol_psd) {
            std::ostringstream msg;
            msg << "von_neumann_entropy: negative eigenvalue " << lambda;
            throw Error(msg.str());
        }
        if (lambda <= 0.0) continue;  // clip numerical dust
        s -= lambda * std::log2(lambda);
    }
    return s;
}

std::uint64_t Rng::next_raw() {
    // splitmix64; stable across platforms and standard libraries
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

cplx Rng::complex_gaussian() {
    return cplx(gaussian(), gaussian()) / std::sqrt(2.0);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw Error("Rng::below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = next_raw();
    } while (x >= limit);
    return x % bound;
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw Error("random_unitary: dim must be >= 1");
    Rng rng(seed);
    ComplexMatrix g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // absorb the R diagonal phases so the distribution is Haar
    for (int j = 0; j < dim; ++j) {
        cplx d = r(j, j);
        q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : cplx(1.0, 0.0);
    }
    return q;
}

ComplexMatrix random_density(int dim, std::uint64_t seed) {
    if (dim < 1) throw Error("random_density: dim must be >= 1");
    Rng rng(seed);
    ComplexMatrix g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
    ComplexMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
    return (g + g.adjoint()) / 2.0;
}

ComplexMatrix identity(int dim) {
    return ComplexMatrix::Identity(dim, dim);
}

}  // namespace histkit
