#include "fockbundle/orthogonal.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace fockbundle {

OrthogonalMap::OrthogonalMap(const ModeSpace& space, Mat matrix, double tol)
    : space_(space), matrix_(std::move(matrix)) {
    const int dim = space_.dim();
    if (matrix_.rows() != dim || matrix_.cols() != dim)
        throw std::invalid_argument("OrthogonalMap: matrix shape does not match space");
    unitarity_defect_ = (matrix_.adjoint() * matrix_ - Mat::Identity(dim, dim)).norm();
    alpha_defect_ = (alpha_conjugate(space_, matrix_) - matrix_).norm();
    if (unitarity_defect_ > tol)
        throw std::invalid_argument("OrthogonalMap: matrix is not unitary within tolerance");
    if (alpha_defect_ > tol)
        throw std::invalid_argument("OrthogonalMap: matrix does not commute with the real structure");
}

OrthogonalMap OrthogonalMap::inverse() const { return {space_, matrix_.adjoint().eval(), 1e-8}; }

OrthogonalMap OrthogonalMap::operator*(const OrthogonalMap& rhs) const {
    if (space_ != rhs.space_)
        throw std::invalid_argument("OrthogonalMap: composing maps over different spaces");
    return {space_, (matrix_ * rhs.matrix_).eval(), 1e-8};
}

SkewSymmetricMap::SkewSymmetricMap(const ModeSpace& space, Mat matrix, double tol)
    : space_(space), matrix_(std::move(matrix)) {
    const int dim = space_.dim();
    if (matrix_.rows() != dim || matrix_.cols() != dim)
        throw std::invalid_argument("SkewSymmetricMap: matrix shape does not match space");
    if ((matrix_.adjoint() + matrix_).norm() > tol)
        throw std::invalid_argument("SkewSymmetricMap: matrix is not skew-adjoint");
    if ((alpha_conjugate(space_, matrix_) - matrix_).norm() > tol)
        throw std::invalid_argument("SkewSymmetricMap: matrix does not commute with the real structure");
}

SpaceMap::SpaceMap(const ModeSpace& src, const ModeSpace& dst, Mat matrix, double tol)
    : src_(src), dst_(dst), matrix_(std::move(matrix)) {
    if (matrix_.rows() != dst_.dim() || matrix_.cols() != src_.dim())
        throw std::invalid_argument("SpaceMap: matrix shape does not match spaces");
    if (src_.dim() != dst_.dim())
        throw std::invalid_argument("SpaceMap: spaces have different dimension");
    if ((matrix_.adjoint() * matrix_ - Mat::Identity(src_.dim(), src_.dim())).norm() > tol)
        throw std::invalid_argument("SpaceMap: matrix is not unitary within tolerance");
    // alpha' o nu = nu o alpha
    Eigen::MatrixXd p_src = alpha_permutation(src_);
    Eigen::MatrixXd p_dst = alpha_permutation(dst_);
    if ((p_dst * matrix_.conjugate() - matrix_ * p_src).norm() > tol)
        throw std::invalid_argument("SpaceMap: matrix does not intertwine the real structures");
}

SpaceMap SpaceMap::inverse() const { return {dst_, src_, matrix_.adjoint().eval(), 1e-8}; }

OrthogonalMap exp_skew(const SkewSymmetricMap& x) {
    // X = iH with H hermitian; exp through the spectral decomposition of H
    const Mat h = Complex(0, -1) * x.matrix();
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        phases(k) = std::exp(Complex(0, es.eigenvalues()(k)));
    Mat g = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return {x.space(), std::move(g), 1e-8};
}

Mat restricted_skew_projection(const ModeSpace& space, const Mat& raw) {
    Mat skew = 0.5 * (raw - raw.adjoint());
    return 0.5 * (skew + alpha_conjugate(space, skew));
}

SkewSymmetricMap random_restricted_skew(const ModeSpace& space, int band, double scale, Rng& rng) {
    const int dim = space.dim();
    Mat raw = Mat::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            int dn = space.basis()[a].n - space.basis()[b].n;
            if (std::abs(dn) <= band)
                raw(a, b) = scale * rng.cnormal();
        }
    }
    return {space, restricted_skew_projection(space, raw)};
}

OrthogonalMap random_restricted_orthogonal(const ModeSpace& space, int band, double scale, Rng& rng) {
    return exp_skew(random_restricted_skew(space, band, scale, rng));
}

double operator_norm(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0)
        return 0.0;
    Eigen::BDCSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

} // namespace fockbundle
