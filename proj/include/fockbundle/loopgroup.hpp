#pragma once

#include "fockbundle/lagrangian.hpp"

#include <map>

namespace fockbundle {

enum class LoopFlavor { Group, Algebra };

// Band-limited loop of real d x d matrices,
//   f(t) = M_0 + sum_{k>0} M_k cos(kt) + M_{-k} sin(kt).
// Group flavor: f(t) orthogonal for all t; algebra flavor: f(t) antisymmetric.
class TrigPolyMatrix {
  public:
    TrigPolyMatrix(int d, LoopFlavor flavor, std::map<int, Eigen::MatrixXd> coeffs);

    int fibre_dim() const { return d_; }
    LoopFlavor flavor() const { return flavor_; }
    const std::map<int, Eigen::MatrixXd>& coeffs() const { return coeffs_; }
    int bandwidth() const { return bandwidth_; }

    Eigen::MatrixXd eval(double t) const;

    // complex coefficients of f(t) = sum_k C_k e^{ikt}
    std::map<int, Mat> exponential_coeffs() const;

    TrigPolyMatrix derivative() const;

  private:
    int d_;
    LoopFlavor flavor_;
    std::map<int, Eigen::MatrixXd> coeffs_;
    int bandwidth_;
};

// [f1(t), f2(t)] as a trig polynomial; both arguments algebra flavor
TrigPolyMatrix pointwise_bracket(const TrigPolyMatrix& f1, const TrigPolyMatrix& f2);

// winding-w rotation loop in SO(2)
TrigPolyMatrix rotation_loop(int winding);

struct LoopAction {
    Mat matrix;
    bool exact;                  // no truncation spill (bandwidth 0)
    double orthogonality_defect; // ||M^* M - 1|| of the compressed matrix
};

// pointwise multiplication in Fourier modes, compressed to the truncation
LoopAction act(const TrigPolyMatrix& f, const ModeSpace& space);

// compressed multiplication operator of an algebra loop; exactly skew
SkewSymmetricMap algebra_action(const TrigPolyMatrix& f, const ModeSpace& space);

// exp of the compressed algebra action; exactly orthogonal and alpha-commuting
OrthogonalMap loop_exponential(const TrigPolyMatrix& f, const ModeSpace& space);

struct CocyclePairing {
    double value;    // omega with the pairing = i * omega
    double off_axis; // residue on the real axis, ~0 for antisymmetric loops
};

// trace([a1,a2] - a3) with a_i = P_L A_i P_L, A_i the multiplication
// operators and A_3 = [A_1, A_2]; requires N >= bw1 + bw2 + 1
CocyclePairing lie_cocycle_lhs(const TrigPolyMatrix& f1, const TrigPolyMatrix& f2,
                               const ModeSpace& space, const Lagrangian& l);

// -(1/2 pi i) \int trace(f1 f2') dt by exact Fourier pairing
CocyclePairing lie_cocycle_rhs(const TrigPolyMatrix& f1, const TrigPolyMatrix& f2);

} // namespace fockbundle
