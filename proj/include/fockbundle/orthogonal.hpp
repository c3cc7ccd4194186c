#pragma once

#include "fockbundle/modespace.hpp"
#include "fockbundle/rng.hpp"

namespace fockbundle {

// Unitary on V commuting with the real structure. Validated on construction.
class OrthogonalMap {
  public:
    OrthogonalMap(const ModeSpace& space, Mat matrix, double tol = 1e-10);

    const ModeSpace& space() const { return space_; }
    const Mat& matrix() const { return matrix_; }

    double unitarity_defect() const { return unitarity_defect_; }
    double alpha_commutator_norm() const { return alpha_defect_; }

    OrthogonalMap inverse() const;
    OrthogonalMap operator*(const OrthogonalMap& rhs) const;

  private:
    ModeSpace space_;
    Mat matrix_;
    double unitarity_defect_;
    double alpha_defect_;
};

// X* = -X, [X, alpha] = 0. The Lie algebra side of OrthogonalMap.
class SkewSymmetricMap {
  public:
    SkewSymmetricMap(const ModeSpace& space, Mat matrix, double tol = 1e-10);

    const ModeSpace& space() const { return space_; }
    const Mat& matrix() const { return matrix_; }

  private:
    ModeSpace space_;
    Mat matrix_;
};

// Unitary between two (possibly distinct) mode spaces intertwining the real
// structures; the "change of one-particle space" nu of the functoriality ops.
class SpaceMap {
  public:
    SpaceMap(const ModeSpace& src, const ModeSpace& dst, Mat matrix, double tol = 1e-10);
    explicit SpaceMap(const OrthogonalMap& g) : SpaceMap(g.space(), g.space(), g.matrix()) {}

    const ModeSpace& src() const { return src_; }
    const ModeSpace& dst() const { return dst_; }
    const Mat& matrix() const { return matrix_; }

    SpaceMap inverse() const;

  private:
    ModeSpace src_, dst_;
    Mat matrix_;
};

OrthogonalMap exp_skew(const SkewSymmetricMap& x);

// projection of an arbitrary matrix onto { X : X* = -X, [X, alpha] = 0 }
Mat restricted_skew_projection(const ModeSpace& space, const Mat& raw);

// random alpha-commuting skew map coupling only modes with |n - n'| <= band
SkewSymmetricMap random_restricted_skew(const ModeSpace& space, int band, double scale, Rng& rng);

OrthogonalMap random_restricted_orthogonal(const ModeSpace& space, int band, double scale, Rng& rng);

double operator_norm(const Mat& m);

} // namespace fockbundle
