#pragma once

#include "fockbundle/clifford.hpp"

#include <cstdint>

namespace fockbundle {

// Exterior algebra over an ordered orthonormal L-basis. Wedge monomials are
// indexed by subsets of {1..m} in graded-lexicographic order and declared
// orthonormal; this normalization makes c and a mutually adjoint and gives
// rho(v)^2 = <alpha(v), v> exactly.
class FockSpace {
  public:
    explicit FockSpace(Lagrangian lagrangian);

    const Lagrangian& lagrangian() const { return lagrangian_; }
    const ModeSpace& mode_space() const { return lagrangian_.space(); }
    int m() const { return lagrangian_.rank(); }
    int dim() const { return static_cast<int>(subsets_.size()); }

    const std::vector<std::uint32_t>& subsets() const { return subsets_; }
    int index_of(std::uint32_t mask) const { return index_of_[mask]; }
    int degree_of(int idx) const;

    Vec vacuum() const;

    // elementary wedge / contraction for the i-th L-basis vector (0-based)
    Mat create_op(int i) const;
    Mat annihilate_op(int i) const;

    Mat create(const ModeVector& v) const;     // requires v in L
    Mat annihilate(const ModeVector& w) const; // requires w in alpha(L)
    Mat rho(const ModeVector& v) const;        // sqrt(2)(c(P v) + a(P_perp v))

    Vec apply_rho(const ModeVector& v, const Vec& x) const; // matrix-free
    Vec apply_rho_coeffs(const Vec& mode_coeffs, const Vec& x) const;

    // split of a one-particle vector into (F^* v, (alpha F)^* v)
    std::pair<Vec, Vec> mode_to_ca(const Vec& mode_coeffs) const;
    // sqrt(2) (sum_i c_i create_i + a_i annihilate_i) applied to x
    Vec apply_ca(const Vec& create_coeffs, const Vec& annihilate_coeffs, const Vec& x) const;

    Vec clifford_act(const CliffordWord& w, const Vec& x) const;
    Mat clifford_act_matrix(const CliffordWord& w) const;

    // second-quantized derivation of a block-diagonal skew map (given in
    // L-frame coordinates): d/dt Lambda_{exp(tT)} at t = 0
    Mat derivation(const Mat& t_on_l) const;

    // maximal Fock dimension; FOCKBUNDLE_MAX_FOCK_DIM overrides, default 65536
    static long max_dim();
    static void set_max_dim(long dim);

  private:
    Lagrangian lagrangian_;
    std::vector<std::uint32_t> subsets_;
    std::vector<int> index_of_;

    struct RhoCoeffs {
        Vec create;     // F^* v
        Vec annihilate; // (alpha F)^* v
    };
    RhoCoeffs rho_coeffs(const Vec& mode_coeffs) const;
};

double seminorm_estimate(const FockSpace& f, const Vec& x, int n, int samples,
                         const std::vector<Mat>& lie_basis_on_l, std::uint64_t seed);

} // namespace fockbundle
