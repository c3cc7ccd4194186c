#pragma once

#include "fockbundle/fock.hpp"

#include <string>

namespace fockbundle {

struct Implementer {
    Mat matrix;             // unitary on the Fock space
    Mat implements;         // the one-particle map g
    double residual;        // verify_implements value
    std::string phase_rule; // "vacuum-positive" | "first-coord"
};

// max over one-particle basis vectors v of ||rho(g v) - U rho(v) U^*||
double verify_implements(const FockSpace& f, const Mat& u, const Mat& g);

// functorial wedge action of a unitary T on the L-frame (compound matrices)
Mat wedge_power(const FockSpace& src, const FockSpace& dst, const Mat& basis_change);

// Lambda_T of the splitting over U(L): fixes the vacuum, acts on monomials
// factor-wise, implements embed_unitary(L, T)
Implementer section_ul(const FockSpace& f, const Mat& t_on_l);

// general implementer via the transformed vacuum: Omega_g is the kernel of
// the stacked annihilators rho(g alpha(l_i)); U sends a monomial to the
// normalized product of rho(g l_i) applied to Omega_g
Implementer implement_general(const OrthogonalMap& g, const FockSpace& f, double residual_tol = 1e-8);

struct CocycleValue {
    Complex value; // unit modulus
    double conditioning; // largest |entry| used for the ratio
};

CocycleValue cocycle_value(const OrthogonalMap& g, const OrthogonalMap& h, const FockSpace& f);

// deviation of a b^* from the closest scalar multiple of the identity
double scalar_deviation(const Mat& a, const Mat& b);

// Lambda_nu: F_L -> F_{nu(L)}; requires nu(L) = L' as subspaces
Mat transport_fock(const SpaceMap& nu, const FockSpace& src, const FockSpace& dst);

CliffordWord transport_clifford(const SpaceMap& nu, const CliffordWord& w);

// unitary equivalence F_{L1} -> F_{L2} from an implementer of g2^{-1} g1,
// where g_i(L) = L_i and F, F1, F2 are the Fock spaces over L, L1, L2
Mat equivalence_from_implementer(const Mat& u, const OrthogonalMap& g1, const OrthogonalMap& g2,
                                 const FockSpace& f, const FockSpace& f1, const FockSpace& f2);

// max over basis v of ||rho_{L2}(v) T - T rho_{L1}(v)||
double intertwining_residual(const FockSpace& f1, const FockSpace& f2, const Mat& t);

} // namespace fockbundle
