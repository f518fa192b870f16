#include "ptm/models.hpp"

#include <cmath>

#include "ptm/errors.hpp"

namespace ptm {

namespace {

const cplx kI(0.0, 1.0);

// Rotate the global phase so that PT psi = psi. Assumes psi is (up to phase)
// a PT eigenstate; the remaining sign freedom is anchored on the largest
// component.
CVector fix_pt_eigenstate_phase(CVector psi, const ComplexMatrix& parity) {
    const CVector image = pt_apply(parity, psi);
    const cplx overlap = vdot(psi, image); // = e^{i delta} ||psi||^2
    const double mag = std::abs(overlap);
    if (mag > 0.0) {
        const double half = 0.5 * std::arg(overlap);
        vscale(psi, cplx(std::cos(half), std::sin(half)));
    }
    std::size_t k = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i)
        if (std::abs(psi[i]) > best) { best = std::abs(psi[i]); k = i; }
    const cplx lead = psi[k];
    if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0))
        vscale(psi, -1.0);
    return psi;
}

CVector normalized(CVector v, InnerProduct norm, const MetricOperator* g) {
    if (norm == InnerProduct::g_metric) return g_normalize(*g, v);
    const double nn = vnorm(v);
    if (nn == 0.0) throw ZeroVector("cannot normalize the zero vector");
    vscale(v, 1.0 / nn);
    return v;
}

} // namespace

std::string to_string(StateLabel label) {
    return label == StateLabel::pt_symmetric_state ? "pt_symmetric_state" : "pt_broken_state";
}

ComplexMatrix h2(double gamma) {
    return ComplexMatrix{{kI * gamma, 1.0}, {1.0, -kI * gamma}};
}

ComplexMatrix pauli(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::x: return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
        case PauliAxis::y: return ComplexMatrix{{0.0, -kI}, {kI, 0.0}};
        case PauliAxis::z: return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
    }
    throw OutOfDomain("unknown Pauli axis");
}

ComplexMatrix lattice_hamiltonian(const ModelSpec& spec) {
    if (spec.kind == ModelKind::h2) return h2(spec.gamma);
    if (spec.kind == ModelKind::custom)
        throw BadDimension("custom models carry their own matrix");

    const std::size_t n = spec.n;
    if (n < 4 || n % 2 != 0)
        throw BadDimension("lattice models require an even site count of at least 4");

    ComplexMatrix h(n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        h(j, j + 1) = 1.0;
        h(j + 1, j) = 1.0;
    }
    const std::size_t half = n / 2; // 1-based central site
    const cplx gain = kI * spec.gamma;
    if (spec.kind == ModelKind::lattice_a) {
        h(half - 1, half - 1) = gain;
        h(half, half) = -gain;
    } else {
        h(half - 2, half - 2) = gain;
        h(half - 1, half - 1) = gain;
        h(half, half) = -gain;
        h(half + 1, half + 1) = -gain;
    }
    return h;
}

ComplexMatrix parity_op(std::size_t n) {
    if (n < 2) throw BadDimension("parity needs at least two sites");
    ComplexMatrix p(n);
    for (std::size_t j = 0; j < n; ++j) p(j, n - 1 - j) = 1.0;
    return p;
}

CVector pt_apply(const ComplexMatrix& parity, const CVector& psi) {
    CVector conj(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) conj[i] = std::conj(psi[i]);
    return parity * conj;
}

CVector generic_state(const BiorthogonalSystem& sys, double p, double theta,
                      InnerProduct norm, const MetricOperator* g) {
    if (sys.size() != 2)
        throw DimensionMismatch("generic states are defined for two-level systems");
    if (norm == InnerProduct::g_metric && g == nullptr)
        throw MissingMetric("the g-metric normalization needs a metric");
    if (p < 0.0) throw OutOfDomain("the superposition weight p must be non-negative");

    const ComplexMatrix parity = parity_op(2);
    const double scale = std::max({1.0, std::abs(sys.eigenvalues[0]), std::abs(sys.eigenvalues[1])});
    const bool symmetric = std::max(std::abs(sys.eigenvalues[0].imag()),
                                    std::abs(sys.eigenvalues[1].imag())) <= 1e-9 * scale;

    CVector e1, e2;
    if (symmetric) {
        e1 = normalized(fix_pt_eigenstate_phase(sys.right[0], parity), norm, g);
        e2 = normalized(fix_pt_eigenstate_phase(sys.right[1], parity), norm, g);
    } else {
        CVector lead = sys.right[0];
        phase_fix_largest(lead);
        e1 = normalized(std::move(lead), norm, g);
        // The PT image of E_1 is the eigenvector of the conjugate eigenvalue
        // and inherits unit norm under either inner product.
        e2 = pt_apply(parity, e1);
    }

    if (std::isinf(p)) return normalized(std::move(e2), norm, g);
    CVector psi = e1;
    vaxpy(p * cplx(std::cos(theta), std::sin(theta)), e2, psi);
    return normalized(std::move(psi), norm, g);
}

StateClass classify_state(const CVector& psi, const ComplexMatrix& parity) {
    const double nn = vnorm(psi);
    if (nn == 0.0) throw ZeroVector("cannot classify the zero vector");
    const CVector image = pt_apply(parity, psi);
    const double collinearity = std::abs(vdot(psi, image)) / (nn * vnorm(image));
    const StateLabel label = collinearity >= 1.0 - 1e-8 ? StateLabel::pt_symmetric_state
                                                        : StateLabel::pt_broken_state;
    return {label, collinearity};
}

} // namespace ptm
