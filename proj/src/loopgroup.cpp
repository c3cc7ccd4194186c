#include "fockbundle/loopgroup.hpp"

#include <cmath>
#include <stdexcept>

namespace fockbundle {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TrigPolyMatrix::TrigPolyMatrix(int d, LoopFlavor flavor, std::map<int, Eigen::MatrixXd> coeffs)
    : d_(d), flavor_(flavor), coeffs_(std::move(coeffs)) {
    if (d < 1)
        throw std::invalid_argument("TrigPolyMatrix: fibre dimension must be >= 1");
    bandwidth_ = 0;
    for (const auto& [k, mat] : coeffs_) {
        if (mat.rows() != d || mat.cols() != d)
            throw std::invalid_argument("TrigPolyMatrix: coefficient has wrong shape");
        bandwidth_ = std::max(bandwidth_, std::abs(k));
    }
    if (flavor_ == LoopFlavor::Algebra) {
        for (const auto& [k, mat] : coeffs_)
            if ((mat + mat.transpose()).norm() > 1e-10)
                throw std::invalid_argument("TrigPolyMatrix: algebra coefficients must be antisymmetric");
    } else {
        const int samples = 8 * (bandwidth_ + 1);
        for (int s = 0; s < samples; ++s) {
            Eigen::MatrixXd v = eval(kTwoPi * s / samples);
            if ((v.transpose() * v - Eigen::MatrixXd::Identity(d, d)).norm() > 1e-8)
                throw std::invalid_argument("TrigPolyMatrix: group loop is not orthogonal at sampled t");
        }
    }
}

Eigen::MatrixXd TrigPolyMatrix::eval(double t) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d_, d_);
    for (const auto& [k, mat] : coeffs_) {
        if (k == 0)
            out += mat;
        else if (k > 0)
            out += std::cos(k * t) * mat;
        else
            out += std::sin(-k * t) * mat;
    }
    return out;
}

std::map<int, Mat> TrigPolyMatrix::exponential_coeffs() const {
    std::map<int, Mat> out;
    auto add = [&](int k, const Mat& m) {
        auto it = out.find(k);
        if (it == out.end())
            out.emplace(k, m);
        else
            it->second += m;
    };
    const Complex half(0.5, 0);
    const Complex half_i(0, 0.5);
    for (const auto& [k, mat] : coeffs_) {
        Mat mc = mat.cast<Complex>();
        if (k == 0) {
            add(0, mc);
        } else if (k > 0) { // cos(kt) = (e^{ikt} + e^{-ikt})/2
            add(k, half * mc);
            add(-k, half * mc);
        } else { // sin(|k|t) = -i/2 e^{i|k|t} + i/2 e^{-i|k|t}
            add(-k, -half_i * mc);
            add(k, half_i * mc);
        }
    }
    return out;
}

TrigPolyMatrix TrigPolyMatrix::derivative() const {
    if (flavor_ != LoopFlavor::Algebra)
        throw std::invalid_argument("TrigPolyMatrix::derivative: implemented for algebra loops");
    // d/dt cos(kt) = -k sin(kt) and d/dt sin(kt) = k cos(kt); in the signed
    // encoding both move key k to -k with factor -k
    std::map<int, Eigen::MatrixXd> out;
    for (const auto& [k, mat] : coeffs_)
        if (k != 0)
            out[-k] = static_cast<double>(-k) * mat;
    return {d_, LoopFlavor::Algebra, std::move(out)};
}

TrigPolyMatrix pointwise_bracket(const TrigPolyMatrix& f1, const TrigPolyMatrix& f2) {
    if (f1.fibre_dim() != f2.fibre_dim())
        throw std::invalid_argument("pointwise_bracket: fibre dimensions differ");
    const int d = f1.fibre_dim();
    std::map<int, Mat> e1 = f1.exponential_coeffs();
    std::map<int, Mat> e2 = f2.exponential_coeffs();
    std::map<int, Mat> prod;
    for (const auto& [m, a] : e1) {
        for (const auto& [k, b] : e2) {
            Mat contrib = a * b - b * a;
            auto it = prod.find(m + k);
            if (it == prod.end())
                prod.emplace(m + k, contrib);
            else
                it->second += contrib;
        }
    }
    // back to the real cos/sin encoding; the bracket of real loops is real
    std::map<int, Eigen::MatrixXd> out;
    auto put = [&](int k, const Eigen::MatrixXd& m) {
        if (m.norm() > 1e-14)
            out[k] = m;
    };
    for (const auto& [k, c] : prod) {
        if (k < 0)
            continue;
        if (k == 0) {
            put(0, c.real());
            continue;
        }
        Mat cneg = prod.count(-k) ? prod.at(-k) : Mat::Zero(d, d);
        put(k, (c + cneg).real());                  // cos part
        put(-k, (Complex(0, 1) * (c - cneg)).real()); // sin part
    }
    return {d, LoopFlavor::Algebra, std::move(out)};
}

TrigPolyMatrix rotation_loop(int winding) {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    Eigen::MatrixXd j(2, 2);
    j << 0, -1, 1, 0;
    std::map<int, Eigen::MatrixXd> coeffs;
    if (winding == 0) {
        coeffs[0] = id;
    } else {
        coeffs[std::abs(winding)] = id;
        coeffs[-std::abs(winding)] = (winding > 0 ? 1.0 : -1.0) * j;
    }
    return {2, LoopFlavor::Group, std::move(coeffs)};
}

LoopAction act(const TrigPolyMatrix& f, const ModeSpace& space) {
    if (f.fibre_dim() != space.fibre_dim())
        throw std::invalid_argument("act: fibre dimensions differ");
    const int dim = space.dim();
    const int d = space.fibre_dim();
    Mat out = Mat::Zero(dim, dim);
    // multiplication by e^{ikt} shifts the basis mode n to n - k
    for (const auto& [k, c] : f.exponential_coeffs()) {
        for (int n = space.min_mode(); n <= space.max_mode(); ++n) {
            if (!space.contains_mode(n - k))
                continue;
            for (int j = 1; j <= d; ++j)
                for (int i = 1; i <= d; ++i)
                    out(space.position(n - k, i), space.position(n, j)) += c(i - 1, j - 1);
        }
    }
    LoopAction action;
    action.orthogonality_defect = (out.adjoint() * out - Mat::Identity(dim, dim)).norm();
    action.exact = f.bandwidth() == 0;
    action.matrix = std::move(out);
    return action;
}

SkewSymmetricMap algebra_action(const TrigPolyMatrix& f, const ModeSpace& space) {
    if (f.flavor() != LoopFlavor::Algebra)
        throw std::invalid_argument("algebra_action: loop must have algebra flavor");
    return {space, act(f, space).matrix};
}

OrthogonalMap loop_exponential(const TrigPolyMatrix& f, const ModeSpace& space) {
    return exp_skew(algebra_action(f, space));
}

CocyclePairing lie_cocycle_lhs(const TrigPolyMatrix& f1, const TrigPolyMatrix& f2,
                               const ModeSpace& space, const Lagrangian& l) {
    if (space.cutoff() < f1.bandwidth() + f2.bandwidth() + 1)
        throw std::invalid_argument("lie_cocycle_lhs: cutoff too small, the compressed trace would be truncated");
    if (l.space() != space)
        throw std::invalid_argument("lie_cocycle_lhs: Lagrangian lives in a different space");
    Mat a1 = act(f1, space).matrix;
    Mat a2 = act(f2, space).matrix;
    Mat p = l.projector();
    Mat pperp = Mat::Identity(space.dim(), space.dim()) - p;
    // [a1,a2] - a3 = -P A1 P_perp A2 P + P A2 P_perp A1 P as operators. The
    // commutator trace vanishes identically in finite dimensions; this edge
    // form is the finitely-supported operator the cutoff captures exactly.
    Mat t = -p * a1 * pperp * a2 * p + p * a2 * pperp * a1 * p;
    Complex tr = t.trace();
    return {tr.imag(), std::abs(tr.real())};
}

CocyclePairing lie_cocycle_rhs(const TrigPolyMatrix& f1, const TrigPolyMatrix& f2) {
    if (f1.fibre_dim() != f2.fibre_dim())
        throw std::invalid_argument("lie_cocycle_rhs: fibre dimensions differ");
    // -(1/2 pi i) \int tr(f1 f2') dt = sum_m m tr(C1_m C2_{-m})
    std::map<int, Mat> e1 = f1.exponential_coeffs();
    std::map<int, Mat> e2 = f2.exponential_coeffs();
    Complex total(0, 0);
    for (const auto& [m, a] : e1) {
        auto it = e2.find(-m);
        if (it == e2.end())
            continue;
        total += static_cast<double>(m) * (a * it->second).trace();
    }
    return {total.imag(), std::abs(total.real())};
}

} // namespace fockbundle
