#include "fockbundle/fock.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace fockbundle {

namespace {

std::atomic<long> g_max_fock_dim{0}; // 0 = uninitialized

long read_max_dim() {
    long cur = g_max_fock_dim.load();
    if (cur != 0)
        return cur;
    long v = 65536;
    if (const char* env = std::getenv("FOCKBUNDLE_MAX_FOCK_DIM")) {
        char* end = nullptr;
        long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed > 0)
            v = parsed;
    }
    g_max_fock_dim.store(v);
    return v;
}

// subsets of {0..m-1} of size k, lexicographic on the ascending element list
void emit_combinations(int m, int k, std::vector<std::uint32_t>& out) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        std::uint32_t mask = 0;
        for (int i : idx)
            mask |= (1u << i);
        out.push_back(mask);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == m - k + pos)
            --pos;
        if (pos < 0)
            break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i)
            idx[i] = idx[i - 1] + 1;
    }
}

} // namespace

long FockSpace::max_dim() { return read_max_dim(); }
void FockSpace::set_max_dim(long dim) { g_max_fock_dim.store(dim); }

FockSpace::FockSpace(Lagrangian lagrangian) : lagrangian_(std::move(lagrangian)) {
    const int m = lagrangian_.rank();
    if (m > 31 || (1L << m) > read_max_dim())
        throw std::invalid_argument("FockSpace: dimension 2^m exceeds the configured guard");
    subsets_.reserve(1u << m);
    subsets_.push_back(0);
    for (int k = 1; k <= m; ++k)
        emit_combinations(m, k, subsets_);
    index_of_.assign(1u << m, -1);
    for (int i = 0; i < static_cast<int>(subsets_.size()); ++i)
        index_of_[subsets_[i]] = i;
}

int FockSpace::degree_of(int idx) const { return std::popcount(subsets_[static_cast<std::size_t>(idx)]); }

Vec FockSpace::vacuum() const {
    Vec v = Vec::Zero(dim());
    v(0) = 1.0;
    return v;
}

Mat FockSpace::create_op(int i) const {
    Mat c = Mat::Zero(dim(), dim());
    const std::uint32_t bit = 1u << i;
    const std::uint32_t below = bit - 1;
    for (int s = 0; s < dim(); ++s) {
        std::uint32_t mask = subsets_[static_cast<std::size_t>(s)];
        if (mask & bit)
            continue;
        double sign = (std::popcount(mask & below) % 2 == 0) ? 1.0 : -1.0;
        c(index_of_[mask | bit], s) = sign;
    }
    return c;
}

Mat FockSpace::annihilate_op(int i) const { return create_op(i).adjoint(); }

FockSpace::RhoCoeffs FockSpace::rho_coeffs(const Vec& mode_coeffs) const {
    const Mat& f = lagrangian_.frame();
    Mat af = alpha_frame(mode_space(), f);
    return {f.adjoint() * mode_coeffs, af.adjoint() * mode_coeffs};
}

Mat FockSpace::create(const ModeVector& v) const {
    if (v.space() != mode_space())
        throw std::invalid_argument("create: vector lives in a different space");
    RhoCoeffs rc = rho_coeffs(v.coeffs());
    double out_of_l = std::sqrt(std::max(0.0, v.coeffs().squaredNorm() - rc.create.squaredNorm()));
    if (out_of_l > 1e-10 * std::max(1.0, v.norm()))
        throw std::invalid_argument("create: vector is not in L");
    Mat c = Mat::Zero(dim(), dim());
    for (int i = 0; i < m(); ++i)
        if (std::abs(rc.create(i)) > 0)
            c += rc.create(i) * create_op(i);
    return c;
}

Mat FockSpace::annihilate(const ModeVector& w) const {
    if (w.space() != mode_space())
        throw std::invalid_argument("annihilate: vector lives in a different space");
    RhoCoeffs rc = rho_coeffs(w.coeffs());
    double out_of_al = std::sqrt(std::max(0.0, w.coeffs().squaredNorm() - rc.annihilate.squaredNorm()));
    if (out_of_al > 1e-10 * std::max(1.0, w.norm()))
        throw std::invalid_argument("annihilate: vector is not in alpha(L)");
    Mat a = Mat::Zero(dim(), dim());
    for (int i = 0; i < m(); ++i)
        if (std::abs(rc.annihilate(i)) > 0)
            a += rc.annihilate(i) * annihilate_op(i);
    return a;
}

Mat FockSpace::rho(const ModeVector& v) const {
    if (v.space() != mode_space())
        throw std::invalid_argument("rho: vector lives in a different space");
    RhoCoeffs rc = rho_coeffs(v.coeffs());
    const double s2 = std::sqrt(2.0);
    Mat r = Mat::Zero(dim(), dim());
    for (int i = 0; i < m(); ++i) {
        if (std::abs(rc.create(i)) > 0)
            r += (s2 * rc.create(i)) * create_op(i);
        if (std::abs(rc.annihilate(i)) > 0)
            r += (s2 * rc.annihilate(i)) * annihilate_op(i);
    }
    return r;
}

std::pair<Vec, Vec> FockSpace::mode_to_ca(const Vec& mode_coeffs) const {
    RhoCoeffs rc = rho_coeffs(mode_coeffs);
    return {std::move(rc.create), std::move(rc.annihilate)};
}

Vec FockSpace::apply_rho_coeffs(const Vec& mode_coeffs, const Vec& x) const {
    RhoCoeffs rc = rho_coeffs(mode_coeffs);
    return apply_ca(rc.create, rc.annihilate, x);
}

Vec FockSpace::apply_ca(const Vec& create_coeffs, const Vec& annihilate_coeffs, const Vec& x) const {
    const double s2 = std::sqrt(2.0);
    Vec out = Vec::Zero(dim());
    for (int i = 0; i < m(); ++i) {
        const std::uint32_t bit = 1u << i;
        const std::uint32_t below = bit - 1;
        const Complex cc = s2 * create_coeffs(i);
        const Complex ca = s2 * annihilate_coeffs(i);
        const bool use_c = std::abs(cc) > 0;
        const bool use_a = std::abs(ca) > 0;
        if (!use_c && !use_a)
            continue;
        for (int s = 0; s < dim(); ++s) {
            std::uint32_t mask = subsets_[static_cast<std::size_t>(s)];
            double sign = (std::popcount(mask & below) % 2 == 0) ? 1.0 : -1.0;
            if (mask & bit) {
                if (use_a)
                    out(index_of_[mask ^ bit]) += ca * sign * x(s);
            } else {
                if (use_c)
                    out(index_of_[mask | bit]) += cc * sign * x(s);
            }
        }
    }
    return out;
}

Vec FockSpace::apply_rho(const ModeVector& v, const Vec& x) const {
    if (v.space() != mode_space())
        throw std::invalid_argument("apply_rho: vector lives in a different space");
    return apply_rho_coeffs(v.coeffs(), x);
}

Vec FockSpace::clifford_act(const CliffordWord& w, const Vec& x) const {
    Vec out = Vec::Zero(dim());
    for (const CliffordTerm& t : w.terms()) {
        Vec acc = x;
        for (auto it = t.letters.rbegin(); it != t.letters.rend(); ++it)
            acc = apply_rho(*it, acc);
        out += t.scalar * acc;
    }
    return out;
}

Mat FockSpace::clifford_act_matrix(const CliffordWord& w) const {
    Mat out = Mat::Zero(dim(), dim());
    for (const CliffordTerm& t : w.terms()) {
        Mat acc = Mat::Identity(dim(), dim());
        for (const ModeVector& v : t.letters)
            acc = acc * rho(v);
        out += t.scalar * acc;
    }
    return out;
}

Mat FockSpace::derivation(const Mat& t_on_l) const {
    const int mm = m();
    if (t_on_l.rows() != mm || t_on_l.cols() != mm)
        throw std::invalid_argument("derivation: matrix shape does not match the L-frame");
    Mat out = Mat::Zero(dim(), dim());
    for (int s = 0; s < dim(); ++s) {
        std::uint32_t mask = subsets_[static_cast<std::size_t>(s)];
        for (int i = 0; i < mm; ++i) {
            if (!(mask & (1u << i)))
                continue;
            for (int j = 0; j < mm; ++j) {
                if (j == i) {
                    out(s, s) += t_on_l(i, i);
                    continue;
                }
                if (mask & (1u << j))
                    continue;
                // replace element i by j and resort; sign counts elements
                // strictly between them
                std::uint32_t lo = 1u << std::min(i, j);
                std::uint32_t hi = 1u << std::max(i, j);
                std::uint32_t between = (hi - 1) & ~(2 * lo - 1);
                int crossings = std::popcount(mask & between);
                double sign = (crossings % 2 == 0) ? 1.0 : -1.0;
                out(index_of_[(mask ^ (1u << i)) | (1u << j)], s) += sign * t_on_l(j, i);
            }
        }
    }
    return out;
}

double seminorm_estimate(const FockSpace& f, const Vec& x, int n, int samples,
                         const std::vector<Mat>& lie_basis_on_l, std::uint64_t seed) {
    if (n < 0)
        throw std::invalid_argument("seminorm_estimate: order must be non-negative");
    if (x.size() != f.dim())
        throw std::invalid_argument("seminorm_estimate: vector length mismatch");
    if (n == 0)
        return x.norm();
    if (lie_basis_on_l.empty())
        throw std::invalid_argument("seminorm_estimate: empty Lie basis");
    for (const Mat& b : lie_basis_on_l) {
        if (b.rows() != f.m() || b.cols() != f.m())
            throw std::invalid_argument("seminorm_estimate: basis element has wrong shape");
        if (operator_norm(b) > 1.0 + 1e-8)
            throw std::invalid_argument("seminorm_estimate: basis element exceeds unit operator norm");
    }
    Rng rng(seed);
    double best = 0.0;
    for (int s = 0; s < samples; ++s) {
        Vec acc = x;
        for (int step = 0; step < n; ++step) {
            Mat t = Mat::Zero(f.m(), f.m());
            for (const Mat& b : lie_basis_on_l)
                t += rng.uniform(-1.0, 1.0) * b;
            double nrm = operator_norm(t);
            if (nrm > 1.0)
                t /= nrm; // stay in the unit ball; the estimate is a lower bound
            acc = f.derivation(t) * acc;
        }
        best = std::max(best, acc.norm());
    }
    return best;
}

} // namespace fockbundle
