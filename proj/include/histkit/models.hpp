#pragma once

#include "histkit/states.hpp"
#include "histkit/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace histkit {

/// Time-independent Hamiltonian on a composite space (hbar = 1).
struct HamiltonianModel {
    ComplexMatrix h;
    CompositeSpace space;
    int system_factor = 0;
    std::string description;
};

/// Strictly increasing history times t_0 < t_1 < ... < t_n.
class Schedule {
  public:
    explicit Schedule(std::vector<double> times);
    const std::vector<double>& times() const { return times_; }
    int intervals() const { return static_cast<int>(times_.size()) - 1; }
    double dt(int interval) const { return times_[interval + 1] - times_[interval]; }

  private:
    std::vector<double> times_;
};

/// Unitaries for each adjacent interval of a schedule plus the accumulated
/// products back to t_0.
class PropagatorSet {
  public:
    static PropagatorSet from_steps(std::vector<ComplexMatrix> steps, double tolerance = tol::unitary);

    int intervals() const { return static_cast<int>(steps_.size()); }
    /// U(t_i -> t_{i+1})
    const ComplexMatrix& step(int interval) const;
    /// U(t_0 -> t_i); i = 0 gives the identity
    const ComplexMatrix& to_time(int i) const;
    int dim() const { return steps_.empty() ? 0 : static_cast<int>(steps_[0].rows()); }

  private:
    std::vector<ComplexMatrix> steps_;
    std::vector<ComplexMatrix> cumulative_;
};

/// exp(-i H dt) for every interval of the schedule.
PropagatorSet propagators(const HamiltonianModel& model, const Schedule& schedule);

/// The same prescribed step unitary for every interval.
PropagatorSet step_propagators(const ComplexMatrix& step, int n_intervals);
PropagatorSet step_propagators(std::vector<ComplexMatrix> steps);

/// Heisenberg-picture projector P(t) = U^dag P U for U = U(t_0 -> t).
ComplexMatrix heisenberg_projector(const ComplexMatrix& p, const ComplexMatrix& u_0_to_t,
                                   double tolerance = tol::unitary);

/// Central spin with pure sigma_z (x) sigma_z couplings to each bath spin:
/// H = sum_k g_k sz^(S) sz^(k) on 2 (x) 2^n. Commutes with sz^(S) exactly.
HamiltonianModel central_spin_dephasing(int n_bath, const std::vector<double>& couplings);
/// Couplings drawn uniformly from [g_min, g_max], deterministically per seed.
HamiltonianModel central_spin_dephasing(int n_bath, double g_min, double g_max, std::uint64_t seed);

/// Free model: H = 0 on the given factor dims (no decoherence mechanism).
HamiltonianModel free_model(const std::vector<int>& dims);

/// Truncated oscillator linearly coupled to truncated oscillator baths:
/// H = omega a^dag a + sum_k omega_k b_k^dag b_k + sum_k c_k (a + a^dag)(b_k + b_k^dag).
HamiltonianModel truncated_oscillator_bath(int d_sys, int n_bath, int d_bath, double omega,
                                           const std::vector<double>& bath_omegas,
                                           const std::vector<double>& couplings);

/// Truncated annihilation operator, a |n> = sqrt(n) |n-1>.
ComplexMatrix ladder_lowering(int dim);

/// Population of the top truncation level of `factor` in `rho`; values above
/// ~1e-3 mean the truncated model is leaking.
double top_level_occupation(const DensityOperator& rho, int factor);
/// Worst top-level occupation over all factors of the model's space.
double truncation_leakage(const DensityOperator& rho, const HamiltonianModel& model);

/// Two-slit interferometer decohered by a spin it never couples to directly:
/// passage rotates the spin about x by +theta behind slit L and -theta behind
/// slit R, so the two spin records overlap by cos(theta).
struct TwoSlitModel {
    HamiltonianModel model;        // slit (x) spin, H = 0 (no direct coupling)
    ComplexMatrix passage_unitary; // prescribed slit-passage step
    double theta = 0.0;
};
TwoSlitModel third_party_two_slit(double theta);

/// System qubit copied into environment qubits by controlled flips; the
/// canonical exact generator of medium decoherence.
struct RecorderModel {
    CompositeSpace space;  // [2] * (n_env + 1), factor 0 = system
    int system_factor = 0;
    int n_env = 0;
    ComplexMatrix copy_all_step;  // copies the system z-value into every environment qubit

    /// Copies the system z-value into environment qubit `env_index` only;
    /// stepping through fresh qubits keeps every record intact.
    ComplexMatrix copy_step(int env_index) const;
    /// |0...0> on the environment qubits.
    ComplexVector initial_env() const;
};
RecorderModel perfect_recorder(int n_env);

}  // namespace histkit
