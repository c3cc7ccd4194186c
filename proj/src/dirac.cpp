#include "fockbundle/dirac.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace fockbundle {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

Eigen::MatrixXd polar_orthogonal(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

double circle_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

} // namespace

LoopConnection::LoopConnection(TrigPolyMatrix a) : coeff(std::move(a)) {
    if (coeff.flavor() != LoopFlavor::Algebra)
        throw std::invalid_argument("LoopConnection: coefficient must be an algebra loop");
}

TransportPath parallel_transport(const LoopConnection& conn, int steps) {
    if (steps < 64)
        throw std::invalid_argument("parallel_transport: need at least 64 steps");
    const int d = conn.coeff.fibre_dim();
    const double h = kTwoPi / steps;
    TransportPath path;
    path.steps = steps;
    path.pt.reserve(static_cast<std::size_t>(steps) + 1);
    Eigen::MatrixXd cur = Eigen::MatrixXd::Identity(d, d);
    path.pt.push_back(cur);
    auto rhs = [&](double t, const Eigen::MatrixXd& y) { return (-conn.coeff.eval(t) * y).eval(); };
    for (int k = 0; k < steps; ++k) {
        double t = k * h;
        Eigen::MatrixXd k1 = rhs(t, cur);
        Eigen::MatrixXd k2 = rhs(t + 0.5 * h, cur + 0.5 * h * k1);
        Eigen::MatrixXd k3 = rhs(t + 0.5 * h, cur + 0.5 * h * k2);
        Eigen::MatrixXd k4 = rhs(t + h, cur + h * k3);
        cur += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((k + 1) % 16 == 0)
            cur = polar_orthogonal(cur);
        path.pt.push_back(cur);
    }
    double defect = 0.0;
    for (const Eigen::MatrixXd& m : path.pt) {
        defect = std::max(defect, (m.transpose() * m - Eigen::MatrixXd::Identity(d, d)).norm());
        defect = std::max(defect, std::abs(m.determinant() - 1.0));
    }
    path.orthogonality_defect = defect;
    if (defect > 1e-6)
        throw std::runtime_error("parallel_transport: transport drifted off SO(d); increase steps");
    return path;
}

HolonomySpectrum holonomy_spectrum(const TransportPath& path) {
    const Eigen::MatrixXd& mono = path.pt.back();
    const int d = static_cast<int>(mono.rows());
    Eigen::ComplexEigenSolver<Mat> es(mono.cast<Complex>());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("holonomy_spectrum: eigendecomposition failed");

    std::vector<double> raw(d);
    for (int i = 0; i < d; ++i) {
        double phi = std::atan2(es.eigenvalues()(i).imag(), es.eigenvalues()(i).real());
        if (phi >= kPi - 1e-12)
            phi = -kPi; // wrap convention: [-pi, pi)
        raw[i] = phi;
    }

    // cluster angles on the circle
    const double cluster_tol = 1e-8;
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return raw[a] < raw[b]; });
    std::vector<std::vector<int>> clusters;
    for (int idx : order) {
        if (!clusters.empty() && circle_distance(raw[clusters.back().back()], raw[idx]) < cluster_tol)
            clusters.back().push_back(idx);
        else
            clusters.push_back({idx});
    }

    struct Entry {
        double phi;
        Vec v;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(d));

    auto cluster_onb = [&](const std::vector<int>& cl) {
        // deterministic basis of the eigenspace through its projector
        Mat pi = Mat::Zero(d, d);
        for (int i : cl) {
            Vec u = es.eigenvectors().col(i);
            u /= u.norm();
            pi += u * u.adjoint();
        }
        // re-orthonormalize the projector sum in case of solver skew
        Eigen::ColPivHouseholderQR<Mat> qr(pi);
        Mat q = qr.householderQ();
        return Mat(q.leftCols(static_cast<int>(cl.size())));
    };

    std::vector<bool> used(clusters.size(), false);
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        if (used[ci])
            continue;
        double phi = raw[clusters[ci].front()];
        const int k = static_cast<int>(clusters[ci].size());
        if (std::abs(phi) < cluster_tol || std::abs(phi + kPi) < cluster_tol) {
            // real eigenvalue: choose a real orthonormal basis
            double snapped = std::abs(phi) < cluster_tol ? 0.0 : -kPi;
            Mat q = cluster_onb(clusters[ci]);
            std::vector<Eigen::VectorXd> real_basis;
            for (int c = 0; c < q.cols() && static_cast<int>(real_basis.size()) < k; ++c) {
                for (Eigen::VectorXd cand : {Eigen::VectorXd(q.col(c).real()), Eigen::VectorXd(q.col(c).imag())}) {
                    for (const auto& r : real_basis)
                        cand -= r.dot(cand) * r;
                    if (cand.norm() > 1e-7) {
                        real_basis.push_back(cand / cand.norm());
                        if (static_cast<int>(real_basis.size()) == k)
                            break;
                    }
                }
            }
            if (static_cast<int>(real_basis.size()) != k)
                throw std::runtime_error("holonomy_spectrum: failed to realify a real eigenvalue cluster");
            for (const auto& r : real_basis)
                entries.push_back({snapped, r.cast<Complex>()});
            used[ci] = true;
        } else {
            // pair the cluster with its conjugate partner at -phi
            std::size_t partner = clusters.size();
            for (std::size_t cj = 0; cj < clusters.size(); ++cj)
                if (!used[cj] && cj != ci && circle_distance(raw[clusters[cj].front()], -phi) < cluster_tol)
                    partner = cj;
            if (partner == clusters.size())
                throw std::runtime_error("holonomy_spectrum: missing conjugate eigenvalue partner");
            const std::vector<int>& pos_cl = phi > 0 ? clusters[ci] : clusters[partner];
            double pos_phi = std::abs(phi);
            Mat q = cluster_onb(pos_cl);
            for (int c = 0; c < q.cols(); ++c) {
                entries.push_back({pos_phi, q.col(c)});
                entries.push_back({-pos_phi, q.col(c).conjugate()});
            }
            used[ci] = used[partner] = true;
        }
    }

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.phi != b.phi)
            return a.phi < b.phi;
        // tie-break: lexicographic on (Re, Im) coordinates
        for (Eigen::Index i = 0; i < a.v.size(); ++i) {
            if (a.v(i).real() != b.v(i).real())
                return a.v(i).real() < b.v(i).real();
            if (a.v(i).imag() != b.v(i).imag())
                return a.v(i).imag() < b.v(i).imag();
        }
        return false;
    });

    HolonomySpectrum spec;
    spec.phis.resize(d);
    spec.vectors.resize(d, d);
    for (int i = 0; i < d; ++i) {
        spec.phis(i) = entries[static_cast<std::size_t>(i)].phi;
        spec.vectors.col(i) = entries[static_cast<std::size_t>(i)].v;
        double check = (mono.cast<Complex>() * spec.vectors.col(i) -
                        std::exp(Complex(0, spec.phis(i))) * spec.vectors.col(i))
                           .norm();
        if (check > 1e-7)
            throw std::runtime_error("holonomy_spectrum: eigenpair residual too large");
    }
    return spec;
}

DiracEigensystem dirac_eigenbasis(const HolonomySpectrum& spectrum, const TransportPath& path,
                                  int N, const LoopConnection& conn, double residual_tol) {
    const int d = static_cast<int>(spectrum.vectors.rows());
    const int steps = path.steps;
    const double h = kTwoPi / steps;
    DiracEigensystem es;
    es.d = d;
    es.cutoff = N;
    es.steps = steps;
    es.phis = spectrum.phis;
    es.samples.resize(static_cast<Eigen::Index>(steps) * d, 2 * N * d);
    es.lambdas.resize(static_cast<std::size_t>(2 * N * d));

    std::vector<Vec> transported(static_cast<std::size_t>(steps));
    for (int col = 0; col < 2 * N * d; ++col) {
        int n = col / d - N;
        int j = col % d;
        double lambda = n + 0.5 + spectrum.phis(j) / kTwoPi;
        es.lambdas[static_cast<std::size_t>(col)] = lambda;
        for (int k = 0; k < steps; ++k) {
            Complex scalar = std::exp(Complex(0, -lambda * k * h));
            Vec block = scalar * (path.pt[static_cast<std::size_t>(k)].cast<Complex>() * spectrum.vectors.col(j));
            es.samples.block(static_cast<Eigen::Index>(k) * d, col, d, 1) = block;
        }
        // antiperiodicity at the endpoint sample
        Vec end = std::exp(Complex(0, -lambda * kTwoPi)) *
                  (path.pt.back().cast<Complex>() * spectrum.vectors.col(j));
        Vec start = es.samples.block(0, col, d, 1);
        es.antiperiodicity_defect = std::max(es.antiperiodicity_defect, (end + start).norm());
    }

    // eigen-residual with a 5-point centered stencil; the antiperiodic wrap
    // eta(t + 2 pi) = -eta(t) closes the grid
    auto sample_at = [&](int col, int k) -> Vec {
        double sign = 1.0;
        while (k < 0) {
            k += steps;
            sign = -sign;
        }
        while (k >= steps) {
            k -= steps;
            sign = -sign;
        }
        return sign * es.samples.block(static_cast<Eigen::Index>(k) * d, col, d, 1);
    };
    double worst = 0.0;
    for (int col = 0; col < 2 * N * d; ++col) {
        double lambda = es.lambdas[static_cast<std::size_t>(col)];
        double acc = 0.0;
        for (int k = 0; k < steps; ++k) {
            Vec der = (-sample_at(col, k + 2) + 8.0 * sample_at(col, k + 1) - 8.0 * sample_at(col, k - 1) +
                       sample_at(col, k - 2)) /
                      (12.0 * h);
            Vec val = es.samples.block(static_cast<Eigen::Index>(k) * d, col, d, 1);
            Vec resid = Complex(0, 1) * (der + conn.coeff.eval(k * h).cast<Complex>() * val) - lambda * val;
            acc += resid.squaredNorm();
        }
        worst = std::max(worst, std::sqrt(acc / steps));
    }
    es.max_eigen_residual = worst;
    if (worst > residual_tol)
        throw std::runtime_error("dirac_eigenbasis: eigen-residual " + std::to_string(worst) +
                                 " exceeds tolerance; insufficient resolution");
    return es;
}

Complex sampled_inner(const Vec& a, const Vec& b, int steps) {
    if (a.size() != b.size())
        throw std::invalid_argument("sampled_inner: length mismatch");
    return a.dot(b) / static_cast<double>(steps);
}

Mat embedding_matrix(const ModeSpace& space, int steps) {
    if (space.parity() != Parity::Odd)
        throw std::invalid_argument("embedding_matrix: odd parity expected");
    const int d = space.fibre_dim();
    const double h = kTwoPi / steps;
    Mat xi = Mat::Zero(static_cast<Eigen::Index>(steps) * d, space.dim());
    for (int col = 0; col < space.dim(); ++col) {
        const ModeIndex& idx = space.basis()[static_cast<std::size_t>(col)];
        for (int k = 0; k < steps; ++k)
            xi(static_cast<Eigen::Index>(k) * d + (idx.j - 1), col) = std::exp(Complex(0, -(idx.n + 0.5) * k * h));
    }
    return xi;
}

Vec embed(const ModeSpace& space, const Vec& sampled, int steps) {
    Mat xi = embedding_matrix(space, steps);
    return xi.adjoint() * sampled / static_cast<double>(steps);
}

std::pair<Sublagrangian, Lagrangian> dirac_sublagrangian(const DiracEigensystem& es,
                                                         const ModeSpace& space, double tol) {
    if (space.parity() != Parity::Odd || space.fibre_dim() != es.d || space.cutoff() != es.cutoff)
        throw std::invalid_argument("dirac_sublagrangian: mode space does not match the eigensystem");
    Mat xi = embedding_matrix(space, es.steps);
    Mat emb = xi.adjoint() * es.samples / static_cast<double>(es.steps);

    std::vector<int> positive, kernel;
    for (int col = 0; col < emb.cols(); ++col) {
        if (es.lambdas[static_cast<std::size_t>(col)] > tol)
            positive.push_back(col);
        else if (std::abs(es.lambdas[static_cast<std::size_t>(col)]) <= tol)
            kernel.push_back(col);
    }
    if (kernel.size() % 2 != 0)
        throw std::runtime_error("dirac_sublagrangian: odd-dimensional kernel signals numerical inconsistency");

    Mat pos(space.dim(), static_cast<Eigen::Index>(positive.size()));
    for (std::size_t i = 0; i < positive.size(); ++i)
        pos.col(static_cast<Eigen::Index>(i)) = emb.col(positive[i]);
    Eigen::HouseholderQR<Mat> qr(pos);
    Mat q = qr.householderQ();
    Mat pos_frame = q.leftCols(static_cast<Eigen::Index>(positive.size()));
    Sublagrangian sub(Subspace(space, pos_frame, 1e-8), 1e-5);

    // deterministic kernel pairing: alpha-fixed real basis, consecutive pairs
    Mat ext_frame = pos_frame;
    if (!kernel.empty()) {
        std::vector<Vec> fixed;
        for (int col : kernel) {
            Vec u = emb.col(col);
            for (const Vec& r : fixed)
                u -= r.dot(u) * r;
            if (u.norm() > 1e-7)
                fixed.push_back(u / u.norm());
        }
        if (fixed.size() != kernel.size())
            throw std::runtime_error("dirac_sublagrangian: kernel embedding degenerate");
        const std::size_t kappa = fixed.size() / 2;
        Mat paired(space.dim(), static_cast<Eigen::Index>(kappa));
        const double isq = 1.0 / std::sqrt(2.0);
        for (std::size_t r = 0; r < kappa; ++r)
            paired.col(static_cast<Eigen::Index>(r)) = isq * (fixed[2 * r] + Complex(0, 1) * fixed[2 * r + 1]);
        // orthonormalize against the positive block
        paired -= pos_frame * (pos_frame.adjoint() * paired);
        Eigen::HouseholderQR<Mat> qr2(paired);
        Mat q2 = qr2.householderQ();
        ext_frame.conservativeResize(Eigen::NoChange, ext_frame.cols() + static_cast<Eigen::Index>(kappa));
        ext_frame.rightCols(static_cast<Eigen::Index>(kappa)) = q2.leftCols(static_cast<Eigen::Index>(kappa));
    }
    Sublagrangian extended(Subspace(space, ext_frame, 1e-7), 1e-4);
    Lagrangian completed = complete_sublagrangian(extended);
    return {std::move(sub), std::move(completed)};
}

Mat dirac_frame_gram(const DiracEigensystem& es) {
    return es.samples.adjoint() * es.samples / static_cast<double>(es.steps);
}

EquivalenceClassReport equivalence_class_check(const LoopConnection& conn, int steps,
                                               const std::vector<int>& cutoffs) {
    EquivalenceClassReport rep;
    rep.cutoffs = cutoffs;
    TransportPath path = parallel_transport(conn, steps);
    HolonomySpectrum spectrum = holonomy_spectrum(path);
    const int d = conn.coeff.fibre_dim();
    for (int N : cutoffs) {
        DiracEigensystem es = dirac_eigenbasis(spectrum, path, N, conn);
        Mat gram = dirac_frame_gram(es);
        ModeSpace space(Parity::Odd, d, N);

        // inclusion of psi^{-1}(Eig_{>0}) in L_odd: rows of the Gram at
        // negative modes against positive-eigenvalue columns
        double inclusion = 0.0;
        for (int col = 0; col < gram.cols(); ++col) {
            if (es.lambdas[static_cast<std::size_t>(col)] <= 1e-8)
                continue;
            double acc = 0.0;
            for (int row = 0; row < N * d; ++row) // rows n < 0 come first in basis order
                acc += std::norm(gram(row, col));
            inclusion = std::max(inclusion, std::sqrt(acc));
        }
        rep.inclusion_residuals.push_back(inclusion);

        // hs diagnostic between psi(L_odd) and the completed Dirac Lagrangian,
        // both as subspaces of the truncated odd space
        auto [sub, lag] = dirac_sublagrangian(es, space);
        Mat xi = embedding_matrix(space, es.steps);
        Mat odd_emb(space.dim(), static_cast<Eigen::Index>(N) * d);
        for (int col = 0; col < 2 * N * d; ++col) {
            int n = col / d - N;
            if (n >= 0)
                odd_emb.col(static_cast<Eigen::Index>((n)*d + col % d)) =
                    (xi.adjoint() * es.samples.col(col) / static_cast<double>(es.steps));
        }
        Eigen::HouseholderQR<Mat> qr(odd_emb);
        Mat odd_frame = qr.householderQ();
        Lagrangian psi_odd(Subspace(space, odd_frame.leftCols(static_cast<Eigen::Index>(N) * d), 1e-6), 1e-4);
        rep.hs_sq.push_back(offdiag_hs_sq(psi_odd, lag));
    }
    rep.verdict = growth_verdict(rep.hs_sq);
    return rep;
}

} // namespace fockbundle
