#pragma once

#include "fockbundle/loopgroup.hpp"

namespace fockbundle {

// Connection along the loop, supplied directly as a band-limited
// antisymmetric d x d trig polynomial.
struct LoopConnection {
    TrigPolyMatrix coeff;
    explicit LoopConnection(TrigPolyMatrix a);
};

struct TransportPath {
    int steps;
    std::vector<Eigen::MatrixXd> pt; // samples at t_k = 2 pi k / steps, k = 0..steps
    double orthogonality_defect;
};

// solves pt' = -A(t) pt, pt(0) = 1, by RK4 with re-orthonormalization
// every 16 steps
TransportPath parallel_transport(const LoopConnection& conn, int steps);

struct HolonomySpectrum {
    Eigen::VectorXd phis; // ascending, in [-pi, pi)
    Mat vectors;          // pt(2pi) v_j = e^{i phi_j} v_j; conjugation-compatible
};

HolonomySpectrum holonomy_spectrum(const TransportPath& path);

// Sampled eigenbasis eta_{n,j}(t) = e^{-i(n+1/2+phi_j/2pi) t} pt(t) v_j of
// D = i(d/dt + A(t)) with eigenvalues n + 1/2 + phi_j / 2 pi.
struct DiracEigensystem {
    int d = 0;
    int cutoff = 0; // mode range n in {-N,...,N-1}
    int steps = 0;
    Eigen::VectorXd phis;
    Mat samples;                 // (steps*d) x (2Nd), columns in odd-basis order
    std::vector<double> lambdas; // per column
    double max_eigen_residual = 0;
    double antiperiodicity_defect = 0;
};

DiracEigensystem dirac_eigenbasis(const HolonomySpectrum& spectrum, const TransportPath& path,
                                  int N, const LoopConnection& conn, double residual_tol = 1e-4);

// sampled L^2 pairing (measure dt / 2 pi) of flattened sample vectors
Complex sampled_inner(const Vec& a, const Vec& b, int steps);

// coefficients of a sampled function on the truncated odd basis
Mat embedding_matrix(const ModeSpace& space, int steps); // (steps*d) x dim, columns = sampled xi
Vec embed(const ModeSpace& space, const Vec& sampled, int steps);

// span{eta : lambda > tol} as a sublagrangian of the truncated odd space,
// plus its completion; the kernel (phi = -pi modes) is paired deterministically
std::pair<Sublagrangian, Lagrangian> dirac_sublagrangian(const DiracEigensystem& es,
                                                         const ModeSpace& space, double tol = 1e-8);

// Gram of the Dirac frame psi(xi_{n,j}) = eta_{n,j} in the sampled product
Mat dirac_frame_gram(const DiracEigensystem& es);

struct EquivalenceClassReport {
    std::vector<int> cutoffs;
    std::vector<double> inclusion_residuals; // psi^{-1}(Eig_{>0}) against L_odd
    std::vector<double> hs_sq;               // psi(L_odd) vs completed Dirac Lagrangian
    std::string verdict;
};

EquivalenceClassReport equivalence_class_check(const LoopConnection& conn, int steps,
                                               const std::vector<int>& cutoffs);

} // namespace fockbundle
