#include "fockbundle/lagrangian.hpp"

#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

namespace fockbundle {

Subspace::Subspace(const ModeSpace& space, Mat frame, double tol) : space_(space), frame_(std::move(frame)) {
    if (frame_.rows() != space_.dim())
        throw std::invalid_argument("Subspace: frame row count does not match space dimension");
    if (frame_.cols() > frame_.rows())
        throw std::invalid_argument("Subspace: more frame columns than space dimensions");
    const Eigen::Index k = frame_.cols();
    double defect = (frame_.adjoint() * frame_ - Mat::Identity(k, k)).norm();
    if (defect > tol)
        throw std::invalid_argument("Subspace: frame columns are not orthonormal within tolerance");
}

Mat alpha_frame(const ModeSpace& space, const Mat& frame) {
    Eigen::MatrixXd p = alpha_permutation(space);
    return p * frame.conjugate();
}

Lagrangian::Lagrangian(Subspace sub, double tol) : sub_(std::move(sub)) {
    LagrangianCheck check = is_lagrangian(sub_.space(), sub_, tol);
    if (!check.ok)
        throw std::invalid_argument("Lagrangian: subspace fails the splitting V = L + alpha(L)");
}

Mat Lagrangian::complex_structure() const {
    const int dim = space().dim();
    Mat p = projector();
    return Complex(0, 1) * (2.0 * p - Mat::Identity(dim, dim));
}

Sublagrangian::Sublagrangian(Subspace sub, double tol) : sub_(std::move(sub)) {
    double iso = 0.0;
    if (sub_.rank() > 0) {
        const Mat& f = sub_.frame();
        Mat af = alpha_frame(sub_.space(), f);
        iso = (af.adjoint() * f).cwiseAbs().maxCoeff();
    }
    if (iso > tol)
        throw std::invalid_argument("Sublagrangian: subspace is not isotropic for the alpha pairing");
    codim_ = sub_.space().dim() - 2 * sub_.rank();
    if (codim_ < 0 || codim_ % 2 != 0)
        throw std::invalid_argument("Sublagrangian: S + alpha(S) must have even non-negative codimension");
}

Lagrangian standard_lagrangian_odd(const ModeSpace& space) {
    if (space.parity() != Parity::Odd)
        throw std::invalid_argument("standard_lagrangian_odd: space must have odd parity");
    const int d = space.fibre_dim();
    const int N = space.cutoff();
    Mat frame = Mat::Zero(space.dim(), N * d);
    int col = 0;
    for (int n = 0; n <= N - 1; ++n)
        for (int j = 1; j <= d; ++j)
            frame(space.position(n, j), col++) = 1.0;
    return Lagrangian(Subspace(space, std::move(frame)));
}

Lagrangian standard_lagrangian_even(const ModeSpace& space) {
    if (space.parity() != Parity::Even)
        throw std::invalid_argument("standard_lagrangian_even: space must have even parity");
    const int d = space.fibre_dim();
    if (d % 2 != 0)
        throw std::invalid_argument("standard_lagrangian_even: fibre dimension must be even");
    const int N = space.cutoff();
    const double isq = 1.0 / std::sqrt(2.0);
    Mat frame = Mat::Zero(space.dim(), d / 2 + N * d);
    int col = 0;
    // mode-0 block: (e_j + i e_{j+1})/sqrt(2) for odd j
    for (int j = 1; j <= d; j += 2) {
        frame(space.position(0, j), col) = isq;
        frame(space.position(0, j + 1), col) = Complex(0, isq);
        ++col;
    }
    for (int n = 1; n <= N; ++n)
        for (int j = 1; j <= d; ++j)
            frame(space.position(n, j), col++) = 1.0;
    return Lagrangian(Subspace(space, std::move(frame)));
}

LagrangianCheck is_lagrangian(const ModeSpace& space, const Subspace& s, double tol) {
    LagrangianCheck out{};
    const Mat& f = s.frame();
    Mat af = alpha_frame(space, f);
    out.isotropy_residual = s.rank() == 0 ? 0.0 : (af.adjoint() * f).cwiseAbs().maxCoeff();
    out.dimension_defect = 2 * s.rank() - space.dim();
    Mat p = s.projector();
    out.splitting_residual = (p + alpha_conjugate(space, p) - Mat::Identity(space.dim(), space.dim())).norm();
    out.ok = out.isotropy_residual <= tol && out.dimension_defect == 0 && out.splitting_residual <= 100 * tol;
    return out;
}

double hs_distance(const Lagrangian& l1, const Lagrangian& l2) {
    if (l1.space() != l2.space())
        throw std::invalid_argument("hs_distance: Lagrangians live in different spaces");
    return (l1.projector() - l2.projector()).norm();
}

double offdiag_hs_sq(const Lagrangian& l1, const Lagrangian& l2) {
    if (l1.space() != l2.space())
        throw std::invalid_argument("offdiag_hs_sq: Lagrangians live in different spaces");
    // ||P1^perp P2||_2^2 = rank(L2) - ||F1^* F2||_F^2
    Mat overlap = l1.frame().adjoint() * l2.frame();
    double val = static_cast<double>(l2.rank()) - overlap.squaredNorm();
    return std::max(val, 0.0);
}

std::string growth_verdict(const std::vector<double>& values_sq) {
    if (values_sq.size() < 3)
        return "inconclusive";
    const std::size_t mid = values_sq.size() / 2;
    const double base = values_sq[mid];
    const double last = values_sq.back();
    if (last < 1e-12)
        return "bounded";
    if (base < 1e-12)
        return last < 1e-10 ? "bounded" : "divergent";
    return last > 1.5 * base ? "divergent" : "bounded";
}

DivergenceReport equivalence_diagnostic(const LagrangianRule& l1, const LagrangianRule& l2,
                                        Parity parity, int d, const std::vector<int>& cutoffs) {
    DivergenceReport rep;
    rep.cutoffs = cutoffs;
    for (int N : cutoffs) {
        ModeSpace space(parity, d, N);
        rep.hs_sq.push_back(offdiag_hs_sq(l1(space), l2(space)));
    }
    rep.verdict = growth_verdict(rep.hs_sq);
    return rep;
}

Lagrangian complete_sublagrangian(const Sublagrangian& s) {
    const ModeSpace& space = s.space();
    const int dim = space.dim();
    const int k = s.subspace().rank();

    if (k == 0) {
        // documented default for the zero subspace
        return space.parity() == Parity::Odd ? standard_lagrangian_odd(space)
                                             : standard_lagrangian_even(space);
    }
    if (2 * k == dim)
        return Lagrangian(s.subspace());

    const Mat& f = s.frame();
    Mat af = alpha_frame(space, f);
    Mat pw = Mat::Identity(dim, dim) - f * f.adjoint() - af * af.adjoint();

    // orthonormal basis of the alpha-invariant complement W
    Eigen::ColPivHouseholderQR<Mat> qr(pw);
    const int w_dim = s.codim();
    Mat q = qr.householderQ();
    Mat w_basis = q.leftCols(w_dim);

    // alpha-fixed real spanning set of W, Gram-Schmidt with tolerance dropping
    std::vector<Vec> fixed;
    auto alpha_vec = [&](const Vec& v) {
        Vec out(dim);
        for (int i = 0; i < dim; ++i)
            out(space.alpha_position(i)) = std::conj(v(i));
        return out;
    };
    std::vector<Vec> candidates;
    for (int c = 0; c < w_dim; ++c) {
        Vec u = w_basis.col(c);
        Vec au = alpha_vec(u);
        candidates.push_back(u + au);
        candidates.push_back(Complex(0, 1) * (u - au));
    }
    for (Vec cand : candidates) {
        for (const Vec& r : fixed)
            cand -= r.dot(cand) * r;
        double nrm = cand.norm();
        if (nrm > 1e-7) {
            fixed.push_back(cand / nrm);
            if (static_cast<int>(fixed.size()) == w_dim)
                break;
        }
    }
    if (static_cast<int>(fixed.size()) != w_dim)
        throw std::runtime_error("complete_sublagrangian: failed to realify the complement");

    // isotropic half: pair consecutive alpha-fixed vectors
    const int kappa = w_dim / 2;
    Mat ext(dim, k + kappa);
    ext.leftCols(k) = f;
    const double isq = 1.0 / std::sqrt(2.0);
    for (int r = 0; r < kappa; ++r)
        ext.col(k + r) = isq * (fixed[2 * r] + Complex(0, 1) * fixed[2 * r + 1]);
    return Lagrangian(Subspace(space, std::move(ext), 1e-8), 1e-7);
}

OrthogonalMap embed_unitary(const Lagrangian& l, const Mat& t_on_l) {
    const int m = l.rank();
    if (t_on_l.rows() != m || t_on_l.cols() != m)
        throw std::invalid_argument("embed_unitary: T has wrong shape for the L-frame");
    if ((t_on_l.adjoint() * t_on_l - Mat::Identity(m, m)).norm() > 1e-10)
        throw std::invalid_argument("embed_unitary: T is not unitary");
    Mat block = l.frame() * t_on_l * l.frame().adjoint();
    Mat g = block + alpha_conjugate(l.space(), block);
    return {l.space(), std::move(g), 1e-8};
}

Lagrangian map_lagrangian(const OrthogonalMap& g, const Lagrangian& l) {
    if (g.space() != l.space())
        throw std::invalid_argument("map_lagrangian: spaces differ");
    return Lagrangian(Subspace(l.space(), (g.matrix() * l.frame()).eval(), 1e-8), 1e-7);
}

Lagrangian map_lagrangian(const SpaceMap& nu, const Lagrangian& l) {
    if (nu.src() != l.space())
        throw std::invalid_argument("map_lagrangian: source space mismatch");
    return Lagrangian(Subspace(nu.dst(), (nu.matrix() * l.frame()).eval(), 1e-8), 1e-7);
}

Lagrangian alpha_lagrangian(const Lagrangian& l) {
    return Lagrangian(Subspace(l.space(), alpha_frame(l.space(), l.frame()), 1e-8), 1e-7);
}

} // namespace fockbundle
