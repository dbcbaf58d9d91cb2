#include "histkit/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace histkit {

DensityOperator::DensityOperator(ComplexMatrix matrix, CompositeSpace space, double tol_herm,
                                 double tol_psd, double tol_trace)
    : matrix_(std::move(matrix)), space_(std::move(space)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() != space_.total_dim())
        throw Error("DensityOperator: matrix dimension does not match the space");
    revalidate(tol_herm, tol_psd, tol_trace);
}

DensityOperator::DensityOperator(UncheckedTag, ComplexMatrix matrix, CompositeSpace space)
    : matrix_(std::move(matrix)), space_(std::move(space)) {}

DensityOperator DensityOperator::unchecked(ComplexMatrix matrix, CompositeSpace space) {
    return DensityOperator(UncheckedTag{}, std::move(matrix), std::move(space));
}

void DensityOperator::revalidate(double tol_herm, double tol_psd, double tol_trace) const {
    if (!all_finite(matrix_)) throw Error("DensityOperator: non-finite entries");
    const double asym = max_abs(matrix_ - matrix_.adjoint());
    if (asym > tol_herm) {
        std::ostringstream msg;
        msg << "DensityOperator: not Hermitian, max asymmetry " << asym;
        throw Error(msg.str());
    }
    const double tr_defect = std::abs(matrix_.trace() - cplx(1.0, 0.0));
    if (tr_defect > tol_trace) {
        std::ostringstream msg;
        msg << "DensityOperator: trace defect " << tr_defect;
        throw Error(msg.str());
    }
    Spectrum spec = hermitian_spectrum(matrix_, tol_herm);
    const double lambda_min = spec.eigenvalues(spec.eigenvalues.size() - 1);
    if (lambda_min < -tol_psd) {
        std::ostringstream msg;
        msg << "DensityOperator: negative eigenvalue " << lambda_min;
        throw Error(msg.str());
    }
}

DensityOperator pure_density(const ComplexVector& psi) {
    return pure_density(psi, CompositeSpace({static_cast<int>(psi.size())}));
}

DensityOperator pure_density(const ComplexVector& psi, const CompositeSpace& space) {
    if (psi.size() != space.total_dim())
        throw Error("pure_density: vector dimension does not match the space");
    const double norm2 = psi.squaredNorm();
    if (norm2 <= 0.0) throw Error("pure_density: zero vector");
    ComplexMatrix rho = (psi * psi.adjoint()) / norm2;
    return DensityOperator::unchecked(std::move(rho), space);
}

FamilyValidation validate_family(const ProjectorFamily& f, double tolerance) {
    FamilyValidation report;
    report.tolerance = tolerance;
    if (f.projectors.empty()) return report;
    const int d = f.dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t a = 0; a < f.size(); ++a) {
        const ComplexMatrix& pa = f.projectors[a];
        report.max_hermiticity_defect =
            std::max(report.max_hermiticity_defect, max_abs(pa - pa.adjoint()));
        sum += pa;
        for (std::size_t b = 0; b < f.size(); ++b) {
            ComplexMatrix prod = pa * f.projectors[b];
            if (a == b) prod -= pa;
            report.max_exclusivity_defect = std::max(report.max_exclusivity_defect, max_abs(prod));
        }
    }
    report.completeness_defect = max_abs(sum - ComplexMatrix::Identity(d, d));
    report.passes = report.max_exclusivity_defect <= tolerance &&
                    report.max_hermiticity_defect <= tolerance &&
                    report.completeness_defect <= tolerance;
    return report;
}

ProjectorFamily family_from_basis(const ComplexMatrix& vectors,
                                  const std::vector<std::string>& labels,
                                  const std::optional<std::vector<std::vector<int>>>& grouping,
                                  double tolerance) {
    const int d = static_cast<int>(vectors.rows());
    const int n = static_cast<int>(vectors.cols());
    const double ortho_defect = max_abs(vectors.adjoint() * vectors - ComplexMatrix::Identity(n, n));
    if (ortho_defect > tolerance) {
        std::ostringstream msg;
        msg << "family_from_basis: vectors not orthonormal, defect " << ortho_defect;
        throw Error(msg.str());
    }
    if (n < d) throw Error("family_from_basis: vectors do not span the space (exhaustivity fails)");
    if (n > d) throw Error("family_from_basis: more vectors than the dimension allows");

    std::vector<std::vector<int>> groups;
    if (grouping) {
        groups = *grouping;
        std::set<int> seen;
        for (const auto& g : groups)
            for (int i : g) {
                if (i < 0 || i >= n) throw Error("family_from_basis: grouping index out of range");
                if (!seen.insert(i).second) throw Error("family_from_basis: grouping overlaps");
            }
        if (static_cast<int>(seen.size()) != n)
            throw Error("family_from_basis: grouping does not cover all vectors");
    } else {
        for (int i = 0; i < n; ++i) groups.push_back({i});
    }
    if (!labels.empty() && labels.size() != groups.size())
        throw Error("family_from_basis: label count does not match group count");

    ProjectorFamily fam;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        ComplexMatrix p = ComplexMatrix::Zero(d, d);
        for (int i : groups[g]) p += vectors.col(i) * vectors.col(i).adjoint();
        fam.projectors.push_back(std::move(p));
        if (!labels.empty()) {
            fam.labels.push_back(labels[g]);
        } else {
            std::string lbl;
            for (std::size_t k = 0; k < groups[g].size(); ++k)
                lbl += (k ? "+" : "") + std::to_string(groups[g][k]);
            fam.labels.push_back(lbl);
        }
    }
    return fam;
}

ProjectorFamily coarse_grain_family(const ProjectorFamily& f,
                                    const std::vector<std::vector<int>>& partition,
                                    const std::vector<std::string>& labels) {
    const int n = static_cast<int>(f.size());
    std::set<int> seen;
    for (const auto& block : partition)
        for (int i : block) {
            if (i < 0 || i >= n) throw Error("coarse_grain_family: partition index out of range");
            if (!seen.insert(i).second) throw Error("coarse_grain_family: partition overlaps");
        }
    if (static_cast<int>(seen.size()) != n)
        throw Error("coarse_grain_family: partition does not cover the family");
    if (!labels.empty() && labels.size() != partition.size())
        throw Error("coarse_grain_family: label count does not match partition");

    ProjectorFamily out;
    for (std::size_t b = 0; b < partition.size(); ++b) {
        ComplexMatrix p = ComplexMatrix::Zero(f.dim(), f.dim());
        std::string lbl;
        for (std::size_t k = 0; k < partition[b].size(); ++k) {
            int i = partition[b][k];
            p += f.projectors[i];
            lbl += (k ? "+" : "") + f.labels[i];
        }
        out.projectors.push_back(std::move(p));
        out.labels.push_back(labels.empty() ? lbl : labels[b]);
    }
    return out;
}

ProjectorFamily embed_family(const ProjectorFamily& f, const CompositeSpace& space, int factor) {
    ProjectorFamily out;
    out.labels = f.labels;
    for (const auto& p : f.projectors) out.projectors.push_back(embed(p, space, factor));
    return out;
}

std::string ReferenceEnvState::describe() const {
    switch (kind) {
        case RefKind::CompleteIgnorance:
            return "complete_ignorance(dim=" + std::to_string(dim()) + ")";
        case RefKind::Thermal: {
            std::ostringstream s;
            s << "thermal(beta=" << beta << ",dim=" << dim() << ")";
            return s.str();
        }
        case RefKind::Explicit:
            return "explicit(dim=" + std::to_string(dim()) + ")";
    }
    return "?";
}

ReferenceEnvState ignorance_reference(int dim_env) {
    if (dim_env < 1) throw Error("ignorance_reference: dimension must be >= 1");
    ReferenceEnvState ref;
    ref.kind = RefKind::CompleteIgnorance;
    ref.matrix = ComplexMatrix::Identity(dim_env, dim_env) / static_cast<double>(dim_env);
    return ref;
}

ReferenceEnvState thermal_reference(const ComplexMatrix& h_env, double beta) {
    if (h_env.rows() == 0) throw Error("thermal_reference: environment Hamiltonian required");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw Error("thermal_reference: beta must be finite and >= 0");
    ReferenceEnvState ref;
    ref.kind = RefKind::Thermal;
    ref.beta = beta;
    const int d = static_cast<int>(h_env.rows());
    if (beta == 0.0) {
        ref.matrix = ComplexMatrix::Identity(d, d) / static_cast<double>(d);  // exact beta->0 limit
        return ref;
    }
    Spectrum spec = hermitian_spectrum(h_env);
    RealVector weights(d);
    // shift by the ground energy before exponentiating
    const double e_min = spec.eigenvalues.minCoeff();
    for (int i = 0; i < d; ++i) weights(i) = std::exp(-beta * (spec.eigenvalues(i) - e_min));
    weights /= weights.sum();
    ref.matrix = spec.eigenvectors * weights.cast<cplx>().asDiagonal() * spec.eigenvectors.adjoint();
    return ref;
}

ReferenceEnvState explicit_reference(const DensityOperator& rho_env) {
    ReferenceEnvState ref;
    ref.kind = RefKind::Explicit;
    ref.matrix = rho_env.matrix();
    return ref;
}

}  // namespace histkit
