#include "histkit/models.hpp"

#include <cmath>
#include <sstream>

namespace histkit {

namespace {

ComplexMatrix sigma_z() {
    ComplexMatrix s(2, 2);
    s << 1, 0, 0, -1;
    return s;
}

ComplexMatrix sigma_x() {
    ComplexMatrix s(2, 2);
    s << 0, 1, 1, 0;
    return s;
}

}  // namespace

Schedule::Schedule(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) throw Error("Schedule: need at least two times");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1])) throw Error("Schedule: times must be strictly increasing");
}

PropagatorSet PropagatorSet::from_steps(std::vector<ComplexMatrix> steps, double tolerance) {
    if (steps.empty()) throw Error("PropagatorSet: need at least one interval");
    PropagatorSet set;
    const Eigen::Index d = steps[0].rows();
    for (const auto& u : steps) {
        if (u.rows() != d || u.cols() != d) throw Error("PropagatorSet: inconsistent dimensions");
        const double defect = max_abs(u.adjoint() * u - ComplexMatrix::Identity(d, d));
        if (defect > tolerance) {
            std::ostringstream msg;
            msg << "PropagatorSet: step not unitary, defect " << defect;
            throw Error(msg.str());
        }
    }
    set.cumulative_.push_back(ComplexMatrix::Identity(d, d));
    for (std::size_t i = 0; i < steps.size(); ++i)
        set.cumulative_.push_back(steps[i] * set.cumulative_[i]);
    set.steps_ = std::move(steps);
    return set;
}

const ComplexMatrix& PropagatorSet::step(int interval) const {
    if (interval < 0 || interval >= intervals()) throw Error("PropagatorSet: interval out of range");
    return steps_[interval];
}

const ComplexMatrix& PropagatorSet::to_time(int i) const {
    if (i < 0 || i > intervals()) throw Error("PropagatorSet: time index out of range");
    return cumulative_[i];
}

PropagatorSet propagators(const HamiltonianModel& model, const Schedule& schedule) {
    Spectrum spec = hermitian_spectrum(model.h);
    std::vector<ComplexMatrix> steps;
    steps.reserve(schedule.intervals());
    for (int i = 0; i < schedule.intervals(); ++i) steps.push_back(unitary_exp(spec, schedule.dt(i)));
    return PropagatorSet::from_steps(std::move(steps));
}

PropagatorSet step_propagators(const ComplexMatrix& step, int n_intervals) {
    if (n_intervals < 1) throw Error("step_propagators: need at least one interval");
    return PropagatorSet::from_steps(std::vector<ComplexMatrix>(n_intervals, step));
}

PropagatorSet step_propagators(std::vector<ComplexMatrix> steps) {
    return PropagatorSet::from_steps(std::move(steps));
}

ComplexMatrix heisenberg_projector(const ComplexMatrix& p, const ComplexMatrix& u_0_to_t,
                                   double tolerance) {
    const Eigen::Index d = u_0_to_t.rows();
    if (u_0_to_t.cols() != d || p.rows() != d || p.cols() != d)
        throw Error("heisenberg_projector: dimension mismatch");
    const double defect = max_abs(u_0_to_t.adjoint() * u_0_to_t - ComplexMatrix::Identity(d, d));
    if (defect > tolerance) {
        std::ostringstream msg;
        msg << "heisenberg_projector: u not unitary, defect " << defect;
        throw Error(msg.str());
    }
    return u_0_to_t.adjoint() * p * u_0_to_t;
}

HamiltonianModel central_spin_dephasing(int n_bath, const std::vector<double>& couplings) {
    if (n_bath < 1 || n_bath > 12) throw Error("central_spin_dephasing: n_bath must be in [1, 12]");
    if (static_cast<int>(couplings.size()) != n_bath)
        throw Error("central_spin_dephasing: couplings length must equal n_bath");
    CompositeSpace space(std::vector<int>(n_bath + 1, 2));
    const int d = space.total_dim();
    ComplexMatrix sz_sys = embed(sigma_z(), space, 0);
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < n_bath; ++k)
        h += couplings[k] * (sz_sys * embed(sigma_z(), space, k + 1)).eval();
    std::ostringstream desc;
    desc << "central spin dephasing, " << n_bath << " bath spins";
    return HamiltonianModel{std::move(h), space, 0, desc.str()};
}

HamiltonianModel central_spin_dephasing(int n_bath, double g_min, double g_max,
                                        std::uint64_t seed) {
    if (!(g_max >= g_min)) throw Error("central_spin_dephasing: g_max must be >= g_min");
    Rng rng(seed);
    std::vector<double> g(n_bath);
    for (double& v : g) v = g_min + (g_max - g_min) * rng.uniform();
    return central_spin_dephasing(n_bath, g);
}

HamiltonianModel free_model(const std::vector<int>& dims) {
    CompositeSpace space(dims);
    return HamiltonianModel{ComplexMatrix::Zero(space.total_dim(), space.total_dim()), space, 0,
                            "free model (H = 0)"};
}

ComplexMatrix ladder_lowering(int dim) {
    if (dim < 1) throw Error("ladder_lowering: dim must be >= 1");
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

HamiltonianModel truncated_oscillator_bath(int d_sys, int n_bath, int d_bath, double omega,
                                           const std::vector<double>& bath_omegas,
                                           const std::vector<double>& couplings) {
    if (d_sys < 2 || d_bath < 2) throw Error("truncated_oscillator_bath: level counts must be >= 2");
    if (static_cast<int>(bath_omegas.size()) != n_bath ||
        static_cast<int>(couplings.size()) != n_bath)
        throw Error("truncated_oscillator_bath: need one frequency and one coupling per bath mode");
    double total = d_sys;
    for (int k = 0; k < n_bath; ++k) total *= d_bath;
    if (total > 4096) throw Error("truncated_oscillator_bath: dimension budget (4096) exceeded");

    std::vector<int> dims{d_sys};
    dims.insert(dims.end(), n_bath, d_bath);
    CompositeSpace space(dims);
    const int d = space.total_dim();

    ComplexMatrix a_sys = ladder_lowering(d_sys);
    ComplexMatrix x_sys = embed(a_sys + a_sys.adjoint().eval(), space, 0);
    ComplexMatrix h = omega * embed((a_sys.adjoint() * a_sys).eval(), space, 0);
    ComplexMatrix a_bath = ladder_lowering(d_bath);
    ComplexMatrix n_bath_op = (a_bath.adjoint() * a_bath).eval();
    ComplexMatrix x_bath = (a_bath + a_bath.adjoint().eval()).eval();
    for (int k = 0; k < n_bath; ++k) {
        h += bath_omegas[k] * embed(n_bath_op, space, k + 1);
        h += couplings[k] * (x_sys * embed(x_bath, space, k + 1)).eval();
    }
    (void)d;
    std::ostringstream desc;
    desc << "truncated oscillator (" << d_sys << " levels) with " << n_bath << " bath modes ("
         << d_bath << " levels each)";
    return HamiltonianModel{std::move(h), space, 0, desc.str()};
}

double top_level_occupation(const DensityOperator& rho, int factor) {
    const CompositeSpace& space = rho.space();
    const int d = space.dim(factor);
    ComplexMatrix top = ComplexMatrix::Zero(d, d);
    top(d - 1, d - 1) = 1.0;
    return (embed(top, space, factor) * rho.matrix()).trace().real();
}

double truncation_leakage(const DensityOperator& rho, const HamiltonianModel& model) {
    if (!(rho.space() == model.space)) throw Error("truncation_leakage: space mismatch");
    double worst = 0.0;
    for (int f = 0; f < model.space.factors(); ++f)
        worst = std::max(worst, top_level_occupation(rho, f));
    return worst;
}

TwoSlitModel third_party_two_slit(double theta) {
    CompositeSpace space({2, 2});
    // Bloch rotation about x by angle phi: exp(-i phi sx / 2)
    auto rot_x = [](double phi) {
        ComplexMatrix r(2, 2);
        const double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
        r << cplx(c, 0), cplx(0, -s), cplx(0, -s), cplx(c, 0);
        return r;
    };
    ComplexMatrix p_l = ComplexMatrix::Zero(2, 2), p_r = ComplexMatrix::Zero(2, 2);
    p_l(0, 0) = 1.0;
    p_r(1, 1) = 1.0;
    ComplexMatrix passage = kron(p_l, rot_x(theta)) + kron(p_r, rot_x(-theta));

    TwoSlitModel ts;
    ts.model = HamiltonianModel{ComplexMatrix::Zero(4, 4), space, 0,
                                "two-slit with third-party spin"};
    ts.passage_unitary = std::move(passage);
    ts.theta = theta;
    return ts;
}

RecorderModel perfect_recorder(int n_env) {
    if (n_env < 1 || n_env > 10) throw Error("perfect_recorder: n_env must be in [1, 10]");
    RecorderModel rec;
    rec.space = CompositeSpace(std::vector<int>(n_env + 1, 2));
    rec.n_env = n_env;
    const int d = rec.space.total_dim();
    // permutation: when the system bit (most significant) is 1, flip every environment bit
    ComplexMatrix u = ComplexMatrix::Zero(d, d);
    const int env_mask = d / 2 - 1;
    for (int b = 0; b < d; ++b) {
        const bool sys_on = (b & (d / 2)) != 0;
        const int target = sys_on ? (b ^ env_mask) : b;
        u(target, b) = 1.0;
    }
    rec.copy_all_step = std::move(u);
    return rec;
}

ComplexMatrix RecorderModel::copy_step(int env_index) const {
    if (env_index < 0 || env_index >= n_env) throw Error("RecorderModel: env_index out of range");
    const int d = space.total_dim();
    const int sys_bit = d / 2;
    const int env_bit = 1 << (n_env - 1 - env_index);  // factor env_index, lexicographic order
    ComplexMatrix u = ComplexMatrix::Zero(d, d);
    for (int b = 0; b < d; ++b) {
        const int target = (b & sys_bit) ? (b ^ env_bit) : b;
        u(target, b) = 1.0;
    }
    return u;
}

ComplexVector RecorderModel::initial_env() const {
    ComplexVector v = ComplexVector::Zero(1ated << n_env);
    v(0) = 1.0;
    return v;
}

}  // namespace histkit
