#pragma once

#include <string>

#include "ptm/complex_matrix.hpp"
#include "ptm/metric.hpp"
#include "ptm/spectral.hpp"

namespace ptm {

enum class ModelKind { h2, lattice_a, lattice_b, custom };

/// Which model to build: the two-level gain/loss dimer or one of the
/// open-chain lattices with balanced on-site gain and loss.
struct ModelSpec {
    ModelKind kind = ModelKind::h2;
    std::size_t n = 2;    ///< site count; even and >= 4 for the lattices
    double gamma = 0.0;   ///< gain/loss strength
};

enum class PauliAxis { x, y, z };

enum class StateLabel { pt_symmetric_state, pt_broken_state };

std::string to_string(StateLabel label);

struct StateClass {
    StateLabel label;
    double collinearity; ///< |<psi|PT psi>| / (||psi|| ||PT psi||), in [0,1]
};

enum class InnerProduct { dirac, g_metric };

/// Two-level gain/loss dimer [[i gamma, 1], [1, -i gamma]].
ComplexMatrix h2(double gamma);

ComplexMatrix pauli(PauliAxis axis);

/// Open chain with unit hoppings and on-site gain/loss:
///   lattice_a: +i gamma at site N/2, -i gamma at site N/2+1
///   lattice_b: +i gamma at sites N/2-1 and N/2, -i gamma at N/2+1 and N/2+2
/// (1-based sites). Both are invariant under parity reversal combined with
/// complex conjugation.
ComplexMatrix lattice_hamiltonian(const ModelSpec& spec);

/// Site-reversal permutation P_{j,k} = delta_{j, N+1-k}; P^2 = 1.
ComplexMatrix parity_op(std::size_t n);

/// P conj(psi), the antiunitary PT action on a state.
CVector pt_apply(const ComplexMatrix& parity, const CVector& psi);

/// The superposition |E_1> + p e^{i theta} |E_2> of the two-level
/// eigenstates, normalized under the requested inner product. p may be
/// +infinity, which selects |E_2> exactly.
///
/// Eigenvector conventions: in the symmetric phase each |E_i> is fixed to be
/// a PT eigenstate; in the broken phase |E_2> = PT|E_1| with the phase of
/// |E_1> anchored on its largest component. These are the conventions under
/// which the minimum-uncertainty lines fall on the p and theta axes of the
/// parameter grid.
CVector generic_state(const BiorthogonalSystem& sys, double p, double theta,
                      InnerProduct norm, const MetricOperator* g = nullptr);

/// PT classification of a state by collinearity with its PT image.
StateClass classify_state(const CVector& psi, const ComplexMatrix& parity);

} // namespace ptm
