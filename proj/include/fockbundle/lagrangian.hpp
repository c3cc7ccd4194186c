#pragma once

#include "fockbundle/orthogonal.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fockbundle {

// Subspace given by an orthonormal frame (dim x k).
class Subspace {
  public:
    Subspace(const ModeSpace& space, Mat frame, double tol = 1e-10);

    const ModeSpace& space() const { return space_; }
    const Mat& frame() const { return frame_; }
    int rank() const { return static_cast<int>(frame_.cols()); }

    Mat projector() const { return frame_ * frame_.adjoint(); }

  private:
    ModeSpace space_;
    Mat frame_;
};

// frame for alpha(S): alpha applied column-wise
Mat alpha_frame(const ModeSpace& space, const Mat& frame);

class Lagrangian {
  public:
    explicit Lagrangian(Subspace sub, double tol = 1e-10);

    const ModeSpace& space() const { return sub_.space(); }
    const Subspace& subspace() const { return sub_; }
    const Mat& frame() const { return sub_.frame(); }
    int rank() const { return sub_.rank(); }

    Mat projector() const { return sub_.projector(); }
    // J_L = i(P - P_perp)
    Mat complex_structure() const;

  private:
    Subspace sub_;
};

class Sublagrangian {
  public:
    explicit Sublagrangian(Subspace sub, double tol = 1e-10);

    const ModeSpace& space() const { return sub_.space(); }
    const Subspace& subspace() const { return sub_; }
    const Mat& frame() const { return sub_.frame(); }
    int codim() const { return codim_; }

  private:
    Subspace sub_;
    int codim_; // codimension of S + alpha(S), always even
};

Lagrangian standard_lagrangian_odd(const ModeSpace& space);
Lagrangian standard_lagrangian_even(const ModeSpace& space);

struct LagrangianCheck {
    bool ok;
    double isotropy_residual;  // max |<alpha(s_a), s_b>|
    int dimension_defect;      // 2k - dim V
    double splitting_residual; // ||P + alpha P alpha - 1||
};

LagrangianCheck is_lagrangian(const ModeSpace& space, const Subspace& s, double tol = 1e-10);

// Frobenius norm of P_{L1} - P_{L2}
double hs_distance(const Lagrangian& l1, const Lagrangian& l2);

struct DivergenceReport {
    std::vector<int> cutoffs;
    std::vector<double> hs_sq; // ||P_{L1}^perp P_{L2}||_2^2 per cutoff
    std::string verdict;       // "bounded" | "divergent" | "inconclusive"
};

// verdict rule shared by all cutoff-sequence diagnostics: divergent when the
// squared quantity grows by more than factor 1.5 across the top half
std::string growth_verdict(const std::vector<double>& values_sq);

using LagrangianRule = std::function<Lagrangian(const ModeSpace&)>;

DivergenceReport equivalence_diagnostic(const LagrangianRule& l1, const LagrangianRule& l2,
                                        Parity parity, int d, const std::vector<int>& cutoffs);

// fixed-cutoff value behind the diagnostic
double offdiag_hs_sq(const Lagrangian& l1, const Lagrangian& l2);

Lagrangian complete_sublagrangian(const Sublagrangian& s);

// block-diagonal embedding of a unitary T on L: acts by T on L, alpha T alpha on alpha(L)
OrthogonalMap embed_unitary(const Lagrangian& l, const Mat& t_on_l);

// image Lagrangian g(L) (or nu(L) across spaces)
Lagrangian map_lagrangian(const OrthogonalMap& g, const Lagrangian& l);
Lagrangian map_lagrangian(const SpaceMap& nu, const Lagrangian& l);

Lagrangian alpha_lagrangian(const Lagrangian& l);

} // namespace fockbundle
