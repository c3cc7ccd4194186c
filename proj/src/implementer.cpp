#include "fockbundle/implementer.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <stdexcept>

namespace fockbundle {

namespace {

std::vector<int> mask_elements(std::uint32_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

} // namespace

double verify_implements(const FockSpace& f, const Mat& u, const Mat& g) {
    const ModeSpace& space = f.mode_space();
    if (u.rows() != f.dim() || u.cols() != f.dim() || g.rows() != space.dim() || g.cols() != space.dim())
        throw std::invalid_argument("verify_implements: shape mismatch");
    double worst = 0.0;
    Mat uh = u.adjoint();
    for (int k = 0; k < space.dim(); ++k) {
        Vec e = Vec::Zero(space.dim());
        e(k) = 1.0;
        Mat lhs = f.rho(ModeVector(space, (g * e).eval()));
        Mat rhs = u * f.rho(ModeVector(space, e)) * uh;
        worst = std::max(worst, operator_norm(lhs - rhs));
    }
    return worst;
}

Mat wedge_power(const FockSpace& src, const FockSpace& dst, const Mat& basis_change) {
    const int m = src.m();
    if (dst.m() != m || basis_change.rows() != m || basis_change.cols() != m)
        throw std::invalid_argument("wedge_power: shape mismatch");
    const int dim = src.dim();
    Mat out = Mat::Zero(dim, dim);
    out(0, 0) = 1.0;
    for (int s = 1; s < dim; ++s) {
        std::vector<int> cols = mask_elements(src.subsets()[static_cast<std::size_t>(s)]);
        const int k = static_cast<int>(cols.size());
        for (int t = 1; t < dim; ++t) {
            if (dst.degree_of(t) != k)
                continue;
            std::vector<int> rows = mask_elements(dst.subsets()[static_cast<std::size_t>(t)]);
            Mat minor(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    minor(a, b) = basis_change(rows[a], cols[b]);
            out(t, s) = minor.determinant();
        }
    }
    return out;
}

Implementer section_ul(const FockSpace& f, const Mat& t_on_l) {
    const int m = f.m();
    if (t_on_l.rows() != m || t_on_l.cols() != m)
        throw std::invalid_argument("section_ul: T has wrong shape");
    if ((t_on_l.adjoint() * t_on_l - Mat::Identity(m, m)).norm() > 1e-10)
        throw std::invalid_argument("section_ul: T is not unitary");
    Implementer out;
    out.matrix = wedge_power(f, f, t_on_l);
    out.implements = embed_unitary(f.lagrangian(), t_on_l).matrix();
    out.residual = verify_implements(f, out.matrix, out.implements);
    out.phase_rule = "vacuum-positive";
    return out;
}

Implementer implement_general(const OrthogonalMap& g, const FockSpace& f, double residual_tol) {
    if (g.space() != f.mode_space())
        throw std::invalid_argument("implement_general: g lives in a different space");
    const int dim = f.dim();
    const int m = f.m();
    const Mat& frame = f.lagrangian().frame();
    Mat aframe = alpha_frame(f.mode_space(), frame);

    // transformed vacuum: joint kernel of rho(g alpha(l_i))
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < m; ++i) {
        Mat r = f.rho(ModeVector(f.mode_space(), (g.matrix() * aframe.col(i)).eval()));
        h += r.adjoint() * r;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const double kernel_value = es.eigenvalues()(0);
    const double spectral_gap = es.eigenvalues()(1);
    if (kernel_value > 1e-9 || spectral_gap < 1e-6)
        throw std::runtime_error("implement_general: vacuum solve is degenerate (kernel value " +
                                 std::to_string(kernel_value) + ", gap " + std::to_string(spectral_gap) + ")");
    Vec vacuum_g = es.eigenvectors().col(0);

    // monomial columns by prefix recursion: col(S) = rho(g l_min) col(S \ min) / sqrt(2)
    std::vector<std::pair<Vec, Vec>> creator_ca;
    creator_ca.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        creator_ca.push_back(f.mode_to_ca((g.matrix() * frame.col(i)).eval()));
    Mat u(dim, dim);
    u.col(0) = vacuum_g;
    const double inv_s2 = 1.0 / std::sqrt(2.0);
    for (int s = 1; s < dim; ++s) {
        std::uint32_t mask = f.subsets()[static_cast<std::size_t>(s)];
        int lead = std::countr_zero(mask);
        int rest = f.index_of(mask & (mask - 1)); // mask without its lowest bit
        const auto& ca = creator_ca[static_cast<std::size_t>(lead)];
        u.col(s) = inv_s2 * f.apply_ca(ca.first, ca.second, u.col(rest));
    }

    // phase convention
    Implementer out;
    Complex z = u(0, 0);
    if (std::abs(z) > 1e-8) {
        out.phase_rule = "vacuum-positive";
    } else {
        out.phase_rule = "first-coord";
        for (int i = 0; i < dim; ++i) {
            if (std::abs(u(i, 0)) > 1e-8) {
                z = u(i, 0);
                break;
            }
        }
    }
    u *= std::conj(z) / std::abs(z);

    double unitarity = (u.adjoint() * u - Mat::Identity(dim, dim)).norm();
    if (unitarity > 1e-9)
        throw std::runtime_error("implement_general: constructed map is not unitary (defect " +
                                 std::to_string(unitarity) + ")");
    out.matrix = std::move(u);
    out.implements = g.matrix();
    out.residual = verify_implements(f, out.matrix, out.implements);
    if (out.residual > residual_tol)
        throw std::runtime_error("implement_general: implementation residual " +
                                 std::to_string(out.residual) + " exceeds tolerance");
    return out;
}

CocycleValue cocycle_value(const OrthogonalMap& g, const OrthogonalMap& h, const FockSpace& f) {
    Implementer ug = implement_general(g, f);
    Implementer uh = implement_general(h, f);
    Implementer ugh = implement_general(g * h, f);
    Mat prod = ug.matrix * uh.matrix;
    Eigen::Index row = 0, col = 0;
    ugh.matrix.cwiseAbs().maxCoeff(&row, &col);
    Complex denom = ugh.matrix(row, col);
    if (std::abs(denom) < 1e-8)
        throw std::runtime_error("cocycle_value: reference entry is ill-conditioned");
    CocycleValue out;
    out.value = prod(row, col) / denom;
    out.conditioning = std::abs(denom);
    if (std::abs(std::abs(out.value) - 1.0) > 1e-8)
        throw std::runtime_error("cocycle_value: extracted ratio is not unimodular");
    if ((prod - out.value * ugh.matrix).norm() > 1e-7 * prod.norm())
        throw std::runtime_error("cocycle_value: products differ by more than a scalar");
    return out;
}

double scalar_deviation(const Mat& a, const Mat& b) {
    Mat prod = a * b.adjoint();
    Complex mu = prod.trace() / static_cast<double>(prod.rows());
    return (prod - mu * Mat::Identity(prod.rows(), prod.cols())).norm();
}

Mat transport_fock(const SpaceMap& nu, const FockSpace& src, const FockSpace& dst) {
    if (nu.src() != src.mode_space() || nu.dst() != dst.mode_space())
        throw std::invalid_argument("transport_fock: space mismatch");
    Mat basis_change = dst.lagrangian().frame().adjoint() * nu.matrix() * src.lagrangian().frame();
    double defect = (nu.matrix() * src.lagrangian().frame() - dst.lagrangian().frame() * basis_change).norm();
    if (defect > 1e-8)
        throw std::invalid_argument("transport_fock: nu does not map L onto the target Lagrangian");
    return wedge_power(src, dst, basis_change);
}

CliffordWord transport_clifford(const SpaceMap& nu, const CliffordWord& w) {
    std::vector<CliffordTerm> out;
    out.reserve(w.terms().size());
    for (const CliffordTerm& t : w.terms()) {
        CliffordTerm s{t.scalar, {}};
        s.letters.reserve(t.letters.size());
        for (const ModeVector& v : t.letters) {
            if (v.space() != nu.src())
                throw std::invalid_argument("transport_clifford: letter lives in a different space");
            s.letters.emplace_back(nu.dst(), (nu.matrix() * v.coeffs()).eval());
        }
        out.push_back(std::move(s));
    }
    return CliffordWord(std::move(out));
}

Mat equivalence_from_implementer(const Mat& u, const OrthogonalMap& g1, const OrthogonalMap& g2,
                                 const FockSpace& f, const FockSpace& f1, const FockSpace& f2) {
    Mat rel = g2.matrix().adjoint() * g1.matrix();
    double residual = verify_implements(f, u, rel);
    if (residual > 1e-6)
        throw std::invalid_argument("equivalence_from_implementer: U does not implement g2^{-1} g1 (residual " +
                                    std::to_string(residual) + ")");
    Mat lambda1 = transport_fock(SpaceMap(g1), f, f1);
    Mat lambda2 = transport_fock(SpaceMap(g2), f, f2);
    return lambda2 * u * lambda1.adjoint();
}

double intertwining_residual(const FockSpace& f1, const FockSpace& f2, const Mat& t) {
    const ModeSpace& space = f1.mode_space();
    if (f2.mode_space() != space)
        throw std::invalid_argument("intertwining_residual: spaces differ");
    double worst = 0.0;
    for (int k = 0; k < space.dim(); ++k) {
        Vec e = Vec::Zero(space.dim());
        e(k) = 1.0;
        ModeVector v(space, e);
        worst = std::max(worst, operator_norm(f2.rho(v) * t - t * f1.rho(v)));
    }
    return worst;
}

} // namespace fockbundle
