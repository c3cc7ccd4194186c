#include "fockbundle/modespace.hpp"

#include <stdexcept>

namespace fockbundle {

ModeSpace::ModeSpace(Parity parity, int d, int N) : parity_(parity), d_(d), N_(N) {
    if (d < 1)
        throw std::invalid_argument("ModeSpace: fibre dimension must be >= 1");
    if (N < 1)
        throw std::invalid_argument("ModeSpace: cutoff must be >= 1");
    n_min_ = -N;
    n_max_ = (parity == Parity::Odd) ? N - 1 : N;
    basis_.reserve(static_cast<std::size_t>(n_max_ - n_min_ + 1) * d);
    for (int n = n_min_; n <= n_max_; ++n)
        for (int j = 1; j <= d; ++j)
            basis_.push_back({n, j});
}

int ModeSpace::position(int n, int j) const {
    if (!contains_mode(n) || j < 1 || j > d_)
        throw std::out_of_range("ModeSpace::position: index outside basis");
    return (n - n_min_) * d_ + (j - 1);
}

int ModeSpace::alpha_position(int pos) const {
    const ModeIndex& idx = basis_.at(static_cast<std::size_t>(pos));
    return position(alpha_mode(idx.n), idx.j);
}

ModeVector::ModeVector(const ModeSpace& space, Vec coeffs) : space_(space), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != space_.dim())
        throw std::invalid_argument("ModeVector: coefficient length does not match space dimension");
}

ModeVector basis_vector(const ModeSpace& space, int n, int j) {
    ModeVector v(space);
    v.coeffs()(space.position(n, j)) = 1.0;
    return v;
}

Eigen::MatrixXd alpha_permutation(const ModeSpace& space) {
    const int dim = space.dim();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k)
        p(space.alpha_position(k), k) = 1.0;
    return p;
}

ModeVector apply_alpha(const ModeVector& v) {
    const ModeSpace& s = v.space();
    Vec out(s.dim());
    for (int k = 0; k < s.dim(); ++k)
        out(s.alpha_position(k)) = std::conj(v.coeffs()(k));
    return {s, std::move(out)};
}

Mat alpha_conjugate(const ModeSpace& space, const Mat& m) {
    Eigen::MatrixXd p = alpha_permutation(space);
    return p * m.conjugate() * p;
}

Complex inner(const ModeVector& v, const ModeVector& w) {
    if (v.space() != w.space())
        throw std::invalid_argument("inner: vectors live in different mode spaces");
    return v.coeffs().dot(w.coeffs()); // Eigen dot conjugates the first factor
}

Complex car_pairing(const ModeVector& v, const ModeVector& w) {
    return inner(apply_alpha(v), w);
}

ModeVector project(const ModeSpace& target, const ModeVector& v) {
    const ModeSpace& src = v.space();
    if (target.parity() != src.parity() || target.fibre_dim() != src.fibre_dim())
        throw std::invalid_argument("project: incompatible mode spaces");
    if (target.cutoff() > src.cutoff())
        throw std::invalid_argument("project: target cutoff exceeds source cutoff");
    ModeVector out(target);
    for (int k = 0; k < target.dim(); ++k) {
        const ModeIndex& idx = target.basis()[static_cast<std::size_t>(k)];
        out.coeffs()(k) = v.coeffs()(src.position(idx.n, idx.j));
    }
    return out;
}

} // namespace fockbundle
