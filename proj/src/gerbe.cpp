#include "fockbundle/gerbe.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace fockbundle {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool ascending(const int* idx, int n) {
    for (int i = 0; i + 1 < n; ++i)
        if (idx[i] >= idx[i + 1])
            return false;
    return true;
}
} // namespace

Nerve full_nerve(int charts, bool with_quads) {
    Nerve n;
    n.charts = charts;
    for (int i = 0; i < charts; ++i)
        for (int j = i + 1; j < charts; ++j)
            n.doubles.push_back({i, j});
    for (int i = 0; i < charts; ++i)
        for (int j = i + 1; j < charts; ++j)
            for (int k = j + 1; k < charts; ++k)
                n.triples.push_back({i, j, k});
    if (with_quads)
        for (int i = 0; i < charts; ++i)
            for (int j = i + 1; j < charts; ++j)
                for (int k = j + 1; k < charts; ++k)
                    for (int l = k + 1; l < charts; ++l)
                        n.quads.push_back({i, j, k, l});
    return n;
}

void validate_nerve(const Nerve& nerve) {
    std::set<std::array<int, 2>> dbl(nerve.doubles.begin(), nerve.doubles.end());
    std::set<std::array<int, 3>> tri(nerve.triples.begin(), nerve.triples.end());
    for (const auto& d : nerve.doubles)
        if (!ascending(d.data(), 2) || d[0] < 0 || d[1] >= nerve.charts)
            throw std::invalid_argument("Nerve: doubles must be ascending pairs of chart indices");
    for (const auto& t : nerve.triples) {
        if (!ascending(t.data(), 3) || t[0] < 0 || t[2] >= nerve.charts)
            throw std::invalid_argument("Nerve: triples must be ascending chart triples");
        std::array<std::array<int, 2>, 3> faces = {{{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}}};
        for (const auto& f : faces)
            if (!dbl.count(f))
                throw std::invalid_argument("Nerve: face of a triple is missing from the doubles");
    }
    for (const auto& q : nerve.quads) {
        if (!ascending(q.data(), 4) || q[0] < 0 || q[3] >= nerve.charts)
            throw std::invalid_argument("Nerve: quads must be ascending chart quadruples");
        std::array<std::array<int, 3>, 4> faces = {
            {{q[1], q[2], q[3]}, {q[0], q[2], q[3]}, {q[0], q[1], q[3]}, {q[0], q[1], q[2]}}};
        for (const auto& f : faces)
            if (!tri.count(f))
                throw std::invalid_argument("Nerve: face of a quad is missing from the triples");
    }
}

double mod_2pi_distance(double angle) {
    double r = angle - kTwoPi * std::round(angle / kTwoPi);
    return std::abs(r);
}

double CircleCochain::at(const std::vector<int>& key) const {
    if (static_cast<int>(key.size()) != degree_ + 1)
        throw std::invalid_argument("CircleCochain: key arity does not match degree");
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::out_of_range("CircleCochain: no value for the requested overlap");
    return it->second;
}

void CircleCochain::set(std::vector<int> key, double angle) {
    if (static_cast<int>(key.size()) != degree_ + 1)
        throw std::invalid_argument("CircleCochain: key arity does not match degree");
    if (!std::is_sorted(key.begin(), key.end()))
        throw std::invalid_argument("CircleCochain: keys must be ascending");
    if (!std::isfinite(angle))
        throw std::invalid_argument("CircleCochain: angle must be finite");
    values_[std::move(key)] = angle;
}

CircleCochain cech_delta(const Nerve& nerve, const CircleCochain& c) {
    if (c.degree() == 1) {
        CircleCochain out(2);
        for (const auto& t : nerve.triples) {
            double v = c.at({t[1], t[2]}) - c.at({t[0], t[2]}) + c.at({t[0], t[1]});
            out.set({t[0], t[1], t[2]}, v);
        }
        return out;
    }
    if (c.degree() == 2) {
        CircleCochain out(3);
        for (const auto& q : nerve.quads) {
            double v = c.at({q[1], q[2], q[3]}) - c.at({q[0], q[2], q[3]}) + c.at({q[0], q[1], q[3]}) -
                       c.at({q[0], q[1], q[2]});
            out.set({q[0], q[1], q[2], q[3]}, v);
        }
        return out;
    }
    throw std::invalid_argument("cech_delta: degree must be 1 or 2");
}

double delta_residual(const Nerve& nerve, const CircleCochain& c) {
    CircleCochain d = cech_delta(nerve, c);
    double worst = 0.0;
    for (const auto& [key, v] : d.values())
        worst = std::max(worst, mod_2pi_distance(v));
    return worst;
}

GroupCocycle::GroupCocycle(const ModeSpace& space, Nerve nerve, std::map<std::pair<int, int>, Mat> transitions,
                           double tol)
    : space_(space), nerve_(std::move(nerve)), transitions_(std::move(transitions)) {
    validate_nerve(nerve_);
    const int dim = space_.dim();
    for (const auto& d : nerve_.doubles) {
        auto it = transitions_.find({d[0], d[1]});
        if (it == transitions_.end())
            throw std::invalid_argument("GroupCocycle: missing transition for a listed double overlap");
        OrthogonalMap check(space_, it->second, 1e-7); // validates unitarity and alpha-commutation
        (void)check;
        if (it->second.rows() != dim)
            throw std::invalid_argument("GroupCocycle: transition has wrong shape");
    }
    cocycle_residual_ = 0.0;
    for (const auto& t : nerve_.triples)
        cocycle_residual_ = std::max(cocycle_residual_, (at(t[0], t[1]) * at(t[1], t[2]) - at(t[0], t[2])).norm());
    if (cocycle_residual_ > tol)
        throw std::invalid_argument("GroupCocycle: transition maps violate the cocycle law");
}

Mat GroupCocycle::at(int i, int j) const {
    if (i == j)
        return Mat::Identity(space_.dim(), space_.dim());
    if (i < j) {
        auto it = transitions_.find({i, j});
        if (it == transitions_.end())
            throw std::out_of_range("GroupCocycle: no transition for the requested overlap");
        return it->second;
    }
    auto it = transitions_.find({j, i});
    if (it == transitions_.end())
        throw std::out_of_range("GroupCocycle: no transition for the requested overlap");
    return it->second.adjoint();
}

GroupCocycle coboundary_cocycle(const ModeSpace& space, Nerve nerve, const std::vector<Mat>& chart_maps) {
    if (static_cast<int>(chart_maps.size()) != nerve.charts)
        throw std::invalid_argument("coboundary_cocycle: one chart map per chart required");
    std::map<std::pair<int, int>, Mat> transitions;
    for (const auto& d : nerve.doubles)
        transitions[{d[0], d[1]}] = chart_maps[static_cast<std::size_t>(d[0])].adjoint() *
                                    chart_maps[static_cast<std::size_t>(d[1])];
    return {space, std::move(nerve), std::move(transitions)};
}

Mat LiftingGerbeData::lift_at(int i, int j) const {
    if (i == j)
        return Mat::Identity(fock.dim(), fock.dim());
    if (i < j)
        return lifts.at({i, j});
    return lifts.at({j, i}).adjoint();
}

namespace {

// phase z with a = z b, read off at b's largest entry
Complex phase_ratio(const Mat& a, const Mat& b, double tol, const char* who) {
    Eigen::Index row = 0, col = 0;
    b.cwiseAbs().maxCoeff(&row, &col);
    Complex denom = b(row, col);
    if (std::abs(denom) < 1e-8)
        throw std::runtime_error(std::string(who) + ": phase extraction entry is ill-conditioned");
    Complex z = a(row, col) / denom;
    if (std::abs(std::abs(z) - 1.0) > 1e-6)
        throw std::runtime_error(std::string(who) + ": extracted ratio is not unimodular");
    if ((a - z * b).norm() > tol * std::max(1.0, a.norm()))
        throw std::runtime_error(std::string(who) + ": matrices do not differ by a scalar");
    return z;
}

} // namespace

LiftingGerbeData lifting_cocycle(const GroupCocycle& gc, const FockSpace& fock) {
    if (gc.space() != fock.mode_space())
        throw std::invalid_argument("lifting_cocycle: Fock space lives over a different mode space");
    std::map<std::pair<int, int>, Mat> lifts;
    double max_resid = 0.0;
    for (const auto& d : gc.nerve().doubles) {
        Implementer imp = implement_general(OrthogonalMap(gc.space(), gc.at(d[0], d[1]), 1e-7), fock);
        max_resid = std::max(max_resid, imp.residual);
        lifts[{d[0], d[1]}] = std::move(imp.matrix);
    }
    LiftingGerbeData data{gc, fock, std::move(lifts), CircleCochain(2), 0.0, 0.0, max_resid};
    for (const auto& t : gc.nerve().triples) {
        Mat prod = data.lift_at(t[0], t[1]) * data.lift_at(t[1], t[2]);
        Mat ref = data.lift_at(t[0], t[2]);
        Complex z = phase_ratio(prod, ref, 1e-7, "lifting_cocycle");
        data.cocycle_fit = std::max(data.cocycle_fit, (prod - z * ref).norm());
        data.two_cocycle.set({t[0], t[1], t[2]}, std::arg(z));
    }
    data.delta_residual = fockbundle::delta_residual(gc.nerve(), data.two_cocycle);
    if (data.delta_residual > 1e-8)
        throw std::runtime_error("lifting_cocycle: extracted 2-cocycle is not closed mod 2pi");
    return data;
}

TrivializeResult trivialize(const Nerve& nerve, const CircleCochain& c, double tol) {
    if (c.degree() != 2)
        throw std::invalid_argument("trivialize: expected a degree-2 cochain");
    if (delta_residual(nerve, c) > 1e-8)
        throw std::invalid_argument("trivialize: input cochain is not closed mod 2pi");

    const int n_doubles = static_cast<int>(nerve.doubles.size());
    const int n_triples = static_cast<int>(nerve.triples.size());
    std::map<std::array<int, 2>, int> dbl_index;
    for (int i = 0; i < n_doubles; ++i)
        dbl_index[nerve.doubles[static_cast<std::size_t>(i)]] = i;

    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_triples, n_doubles);
    Eigen::VectorXd rhs(n_triples);
    for (int r = 0; r < n_triples; ++r) {
        const auto& t = nerve.triples[static_cast<std::size_t>(r)];
        d(r, dbl_index.at({t[1], t[2]})) += 1.0;
        d(r, dbl_index.at({t[0], t[2]})) -= 1.0;
        d(r, dbl_index.at({t[0], t[1]})) += 1.0;
        rhs(r) = -c.at({t[0], t[1], t[2]});
    }

    Eigen::VectorXd b = d.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    Eigen::VectorXd resid = d * b - rhs;

    TrivializeResult out;
    out.b = CircleCochain(1);
    out.residuals.resize(static_cast<std::size_t>(n_triples));
    out.max_lattice_distance = 0.0;
    for (int r = 0; r < n_triples; ++r) {
        out.residuals[static_cast<std::size_t>(r)] = resid(r);
        out.max_lattice_distance = std::max(out.max_lattice_distance, mod_2pi_distance(resid(r)));
    }
    out.trivializable = out.max_lattice_distance <= tol;
    if (out.trivializable)
        for (int i = 0; i < n_doubles; ++i)
            out.b.set({nerve.doubles[static_cast<std::size_t>(i)][0], nerve.doubles[static_cast<std::size_t>(i)][1]},
                      b(i));
    return out;
}

TwistedFockBundleData twisted_fock_bundle(const LiftingGerbeData& data) {
    TwistedFockBundleData out{data.transitions, data.fock, data.lifts, data.two_cocycle, 0.0};
    for (const auto& [key, u] : out.fock_transitions) {
        double r = verify_implements(out.fock, u, out.transitions.at(key.first, key.second));
        out.intertwining_residual = std::max(out.intertwining_residual, r);
    }
    return out;
}

UntwistResult untwist(const TwistedFockBundleData& data, const CircleCochain& b, double tol) {
    if (b.degree() != 1)
        throw std::invalid_argument("untwist: expected a degree-1 cochain");
    const Nerve& nerve = data.transitions.nerve();
    // delta(b) = -c mod 2pi is what makes the phases cancel
    for (const auto& t : nerve.triples) {
        double db = b.at({t[1], t[2]}) - b.at({t[0], t[2]}) + b.at({t[0], t[1]});
        if (mod_2pi_distance(db + data.two_cocycle.at({t[0], t[1], t[2]})) > tol)
            throw std::invalid_argument("untwist: cochain does not trivialize the 2-cocycle");
    }
    UntwistResult out;
    for (const auto& [key, u] : data.fock_transitions)
        out.cocycle[key] = std::exp(Complex(0, b.at({key.first, key.second}))) * u;
    auto hat = [&](int i, int j) -> Mat {
        if (i == j)
            return Mat::Identity(data.fock.dim(), data.fock.dim());
        if (i < j)
            return out.cocycle.at({i, j});
        return out.cocycle.at({j, i}).adjoint();
    };
    out.cocycle_residual = 0.0;
    for (const auto& t : nerve.triples)
        out.cocycle_residual = std::max(out.cocycle_residual, (hat(t[0], t[1]) * hat(t[1], t[2]) - hat(t[0], t[2])).norm());
    out.implements_residual = 0.0;
    for (const auto& [key, u] : out.cocycle) {
        double r = verify_implements(data.fock, u, data.transitions.at(key.first, key.second));
        out.implements_residual = std::max(out.implements_residual, r);
    }
    return out;
}

LiftingGerbeData refine(const LiftingGerbeData& src, const Nerve& dst, const std::vector<int>& chart_map,
                        const std::optional<SpaceMap>& hom) {
    validate_nerve(dst);
    if (static_cast<int>(chart_map.size()) != dst.charts)
        throw std::invalid_argument("refine: chart map must assign a source chart to every destination chart");
    const Nerve& src_nerve = src.transitions.nerve();
    std::set<std::array<int, 2>> src_doubles(src_nerve.doubles.begin(), src_nerve.doubles.end());
    for (int v : chart_map)
        if (v < 0 || v >= src_nerve.charts)
            throw std::invalid_argument("refine: chart map value out of range");
    for (const auto& d : dst.doubles) {
        int a = chart_map[static_cast<std::size_t>(d[0])];
        int b = chart_map[static_cast<std::size_t>(d[1])];
        if (a != b && !src_doubles.count({std::min(a, b), std::max(a, b)}))
            throw std::invalid_argument("refine: chart map does not respect overlaps");
    }

    const FockSpace* fock_out = &src.fock;
    std::optional<FockSpace> transported_fock;
    Mat lambda_nu;
    if (hom) {
        if (hom->src() != src.transitions.space())
            throw std::invalid_argument("refine: hom source space mismatch");
        transported_fock.emplace(map_lagrangian(*hom, src.fock.lagrangian()));
        lambda_nu = transport_fock(*hom, src.fock, *transported_fock);
        fock_out = &*transported_fock;
    }

    auto map_g = [&](int a, int b) -> Mat {
        Mat g = src.transitions.at(a, b);
        if (hom)
            g = hom->matrix() * g * hom->matrix().adjoint();
        return g;
    };
    auto map_u = [&](int a, int b) -> Mat {
        Mat u = src.lift_at(a, b);
        if (hom)
            u = lambda_nu * u * lambda_nu.adjoint();
        return u;
    };

    std::map<std::pair<int, int>, Mat> transitions;
    std::map<std::pair<int, int>, Mat> lifts;
    for (const auto& d : dst.doubles) {
        int a = chart_map[static_cast<std::size_t>(d[0])];
        int b = chart_map[static_cast<std::size_t>(d[1])];
        transitions[{d[0], d[1]}] = map_g(a, b);
        lifts[{d[0], d[1]}] = map_u(a, b);
    }
    GroupCocycle gc(hom ? hom->dst() : src.transitions.space(), dst, std::move(transitions));

    LiftingGerbeData out{std::move(gc), *fock_out, std::move(lifts), CircleCochain(2), 0.0, 0.0,
                         src.max_implementer_residual};
    for (const auto& t : dst.triples) {
        Mat prod = out.lift_at(t[0], t[1]) * out.lift_at(t[1], t[2]);
        Mat ref = out.lift_at(t[0], t[2]);
        Complex z = phase_ratio(prod, ref, 1e-7, "refine");
        out.cocycle_fit = std::max(out.cocycle_fit, (prod - z * ref).norm());
        out.two_cocycle.set({t[0], t[1], t[2]}, std::arg(z));
    }
    out.delta_residual = fockbundle::delta_residual(dst, out.two_cocycle);

    // pushed-forward cocycle: antisymmetrized pullback of the source values
    auto pulled = [&](int i, int j, int k) -> double {
        std::array<int, 3> img = {chart_map[static_cast<std::size_t>(i)], chart_map[static_cast<std::size_t>(j)],
                                  chart_map[static_cast<std::size_t>(k)]};
        if (img[0] == img[1] || img[1] == img[2] || img[0] == img[2])
            return 0.0;
        std::array<int, 3> sorted = img;
        std::sort(sorted.begin(), sorted.end());
        int sign = 1;
        std::array<int, 3> work = img;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (work[a] > work[b]) {
                    std::swap(work[a], work[b]);
                    sign = -sign;
                }
        return sign * src.two_cocycle.at({sorted[0], sorted[1], sorted[2]});
    };
    for (const auto& t : dst.triples) {
        double diff = mod_2pi_distance(out.two_cocycle.at({t[0], t[1], t[2]}) - pulled(t[0], t[1], t[2]));
        if (diff > 1e-8)
            throw std::runtime_error("refine: pulled-back 2-cocycle differs from the re-extracted one");
    }
    return out;
}

AssociatedCocycle associated_cocycle(const GroupCocycle& gc, FibreRep rep, const LiftingGerbeData* lifts) {
    AssociatedCocycle out;
    out.rep = rep;
    out.cocycle_residual = 0.0;
    const Nerve& nerve = gc.nerve();
    if (rep == FibreRep::Mode) {
        for (const auto& d : nerve.doubles)
            out.matrices[{d[0], d[1]}] = gc.at(d[0], d[1]);
        for (const auto& t : nerve.triples)
            out.cocycle_residual =
                std::max(out.cocycle_residual, (gc.at(t[0], t[1]) * gc.at(t[1], t[2]) - gc.at(t[0], t[2])).norm());
        return out;
    }
    if (rep == FibreRep::Fock) {
        if (!lifts)
            throw std::invalid_argument("associated_cocycle: Fock representation requires lifting data");
        for (const auto& d : nerve.doubles)
            out.matrices[{d[0], d[1]}] = lifts->lift_at(d[0], d[1]);
        for (const auto& t : nerve.triples) {
            Mat prod = lifts->lift_at(t[0], t[1]) * lifts->lift_at(t[1], t[2]);
            Mat ref = lifts->lift_at(t[0], t[2]);
            Complex z = phase_ratio(prod, ref, 1e-7, "associated_cocycle");
            out.fock_phase_defects.push_back(
                mod_2pi_distance(std::arg(z) - lifts->two_cocycle.at({t[0], t[1], t[2]})));
        }
        return out;
    }
    // Clifford: the adjoint action on represented algebra elements; the
    // implementer phases cancel, so this cocycle is strict
    if (!lifts)
        throw std::invalid_argument("associated_cocycle: Clifford representation requires lifting data");
    const FockSpace& fock = lifts->fock;
    if (fock.dim() > 64)
        throw std::invalid_argument("associated_cocycle: Clifford superoperator limited to Fock dim <= 64");
    auto superop = [&](const Mat& u) {
        const Eigen::Index n = u.rows();
        Mat s(n * n, n * n);
        // vec(U A U^*) = (conj(U) kron U) vec(A), column-major vec
        for (Eigen::Index c1 = 0; c1 < n; ++c1)
            for (Eigen::Index c2 = 0; c2 < n; ++c2)
                for (Eigen::Index r1 = 0; r1 < n; ++r1)
                    for (Eigen::Index r2 = 0; r2 < n; ++r2)
                        s(c1 * n + r1, c2 * n + r2) = std::conj(u(c1, c2)) * u(r1, r2);
        return s;
    };
    std::map<std::pair<int, int>, Mat> theta;
    for (const auto& d : nerve.doubles) {
        Mat s = superop(lifts->lift_at(d[0], d[1]));
        out.matrices[{d[0], d[1]}] = s;
        theta[{d[0], d[1]}] = std::move(s);
    }
    auto theta_at = [&](int i, int j) -> Mat {
        if (i < j)
            return theta.at({i, j});
        return theta.at({j, i}).adjoint();
    };
    for (const auto& t : nerve.triples)
        out.cocycle_residual = std::max(
            out.cocycle_residual, (theta_at(t[0], t[1]) * theta_at(t[1], t[2]) - theta_at(t[0], t[2])).norm());
    return out;
}

} // namespace fockbundle
