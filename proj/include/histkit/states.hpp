#pragma once

#include "histkit/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace histkit {

/// Validated density operator on a composite space: Hermitian, PSD up to an
/// eigenvalue floor, unit trace. Construction checks the invariants; the
/// `unchecked` factory is for internal intermediates only.
class DensityOperator {
  public:
    DensityOperator(ComplexMatrix matrix, CompositeSpace space, double tol_herm = tol::herm,
                    double tol_psd = tol::psd, double tol_trace = tol::trace);
    static DensityOperator unchecked(ComplexMatrix matrix, CompositeSpace space);

    const ComplexMatrix& matrix() const { return matrix_; }
    const CompositeSpace& space() const { return space_; }
    int dim() const { return space_.total_dim(); }

    void revalidate(double tol_herm = tol::herm, double tol_psd = tol::psd,
                    double tol_trace = tol::trace) const;

  private:
    struct UncheckedTag {};
    DensityOperator(UncheckedTag, ComplexMatrix matrix, CompositeSpace space);
    ComplexMatrix matrix_;
    CompositeSpace space_;
};

/// |psi><psi| / <psi|psi>. The space defaults to a single factor.
DensityOperator pure_density(const ComplexVector& psi);
DensityOperator pure_density(const ComplexVector& psi, const CompositeSpace& space);

/// Exclusive and exhaustive set of Hermitian projectors on a common space.
struct ProjectorFamily {
    std::vector<ComplexMatrix> projectors;
    std::vector<std::string> labels;

    std::size_t size() const { return projectors.size(); }
    int dim() const { return projectors.empty() ? 0 : static_cast<int>(projectors[0].rows()); }
};

struct FamilyValidation {
    double max_exclusivity_defect = 0.0;  // max ||P_a P_b - delta_ab P_a||
    double max_hermiticity_defect = 0.0;
    double completeness_defect = 0.0;     // ||sum P - I||
    double tolerance = tol::proj;
    bool passes = false;
};

/// Report-style check of the family invariants; never throws.
FamilyValidation validate_family(const ProjectorFamily& f, double tolerance = tol::proj);

/// One projector per group of columns of `vectors` (orthonormal, spanning).
/// Without a grouping, every column becomes its own rank-1 projector.
ProjectorFamily family_from_basis(const ComplexMatrix& vectors,
                                  const std::vector<std::string>& labels = {},
                                  const std::optional<std::vector<std::vector<int>>>& grouping =
                                      std::nullopt,
                                  double tolerance = tol::proj);

/// Sum projectors over each partition block. The partition must cover every
/// member exactly once. Block labels join the member labels with '+'.
ProjectorFamily coarse_grain_family(const ProjectorFamily& f,
                                    const std::vector<std::vector<int>>& partition,
                                    const std::vector<std::string>& labels = {});

/// Lift a subsystem family to the full space: P -> I (x) P (x) I.
ProjectorFamily embed_family(const ProjectorFamily& f, const CompositeSpace& space, int factor);

enum class RefKind { CompleteIgnorance, Thermal, Explicit };

/// Reference state of the environment used by the affine decomposition.
struct ReferenceEnvState {
    RefKind kind = RefKind::CompleteIgnorance;
    ComplexMatrix matrix;
    double beta = 0.0;  // thermal only

    int dim() const { return static_cast<int>(matrix.rows()); }
    std::string describe() const;
};

/// I / dim: the state of complete ignorance.
ReferenceEnvState ignorance_reference(int dim_env);
/// exp(-beta h_env) / Z. beta = 0 returns I / dim exactly.
ReferenceEnvState thermal_reference(const ComplexMatrix& h_env, double beta);
ReferenceEnvState explicit_reference(const DensityOperator& rho_env);

}  // namespace histkit
