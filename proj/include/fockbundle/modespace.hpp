#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace fockbundle {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

enum class Parity { Even, Odd };

struct ModeIndex {
    int n;
    int j; // fibre component, 1..d
};

// Truncated one-particle space of circle spinors. Odd (antiperiodic) modes
// run over n in {-N,...,N-1}, even (periodic) over {-N,...,N}; both ranges
// are closed under the real-structure index map.
class ModeSpace {
  public:
    ModeSpace(Parity parity, int d, int N);

    Parity parity() const { return parity_; }
    int fibre_dim() const { return d_; }
    int cutoff() const { return N_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    const std::vector<ModeIndex>& basis() const { return basis_; }
    bool contains_mode(int n) const { return n >= n_min_ && n <= n_max_; }
    int min_mode() const { return n_min_; }
    int max_mode() const { return n_max_; }

    // position of (n, j) in the coefficient array; throws if out of range
    int position(int n, int j) const;

    // real-structure index map: odd n -> -n-1, even n -> -n
    int alpha_mode(int n) const { return parity_ == Parity::Odd ? -n - 1 : -n; }
    int alpha_position(int pos) const;

    bool operator==(const ModeSpace& o) const {
        return parity_ == o.parity_ && d_ == o.d_ && N_ == o.N_;
    }
    bool operator!=(const ModeSpace& o) const { return !(*this == o); }

  private:
    Parity parity_;
    int d_;
    int N_;
    int n_min_, n_max_;
    std::vector<ModeIndex> basis_;
};

class ModeVector {
  public:
    explicit ModeVector(const ModeSpace& space) : space_(space), coeffs_(Vec::Zero(space.dim())) {}
    ModeVector(const ModeSpace& space, Vec coeffs);

    const ModeSpace& space() const { return space_; }
    const Vec& coeffs() const { return coeffs_; }
    Vec& coeffs() { return coeffs_; }

    double norm() const { return coeffs_.norm(); }

  private:
    ModeSpace space_;
    Vec coeffs_;
};

ModeVector basis_vector(const ModeSpace& space, int n, int j);

// matrix P with alpha(v) = P * conj(v)
Eigen::MatrixXd alpha_permutation(const ModeSpace& space);

ModeVector apply_alpha(const ModeVector& v);

// applied to a matrix M (as an operator), returns the matrix of alpha o M o alpha
Mat alpha_conjugate(const ModeSpace& space, const Mat& m);

// inner product, conjugate-linear in the FIRST argument (project-wide convention)
Complex inner(const ModeVector& v, const ModeVector& w);

// the bilinear symmetric Clifford pairing <alpha(v), w>; under the project
// inner-product convention this is the coefficient in
// f(v)f(w) + f(w)f(v) = 2 <v, alpha(w)> 1 written slot-free
Complex car_pairing(const ModeVector& v, const ModeVector& w);

// truncation to a coarser cutoff of the same parity and fibre dimension
ModeVector project(const ModeSpace& target, const ModeVector& v);

} // namespace fockbundle
