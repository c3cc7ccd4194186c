#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockbundle/implementer.hpp"

#include <Eigen/QR>

using namespace fockbundle;

namespace {

Mat random_unitary(int n, Rng& rng) {
    Eigen::HouseholderQR<Mat> qr(rng.cnormal_matrix(n, n));
    return qr.householderQ();
}

} // namespace

TEST_CASE("wedge power is functorial") {
    FockSpace f(standard_lagrangian_odd(ModeSpace(Parity::Odd, 1, 3)));
    Rng rng(2);
    Mat t = random_unitary(f.m(), rng);
    Mat s = random_unitary(f.m(), rng);
    Mat wt = wedge_power(f, f, t);
    Mat ws = wedge_power(f, f, s);
    Mat wts = wedge_power(f, f, (t * s).eval());
    CHECK((wt * ws - wts).norm() < 1e-10);
    CHECK((wedge_power(f, f, Mat::Identity(f.m(), f.m())) - Mat::Identity(f.dim(), f.dim())).norm() < 1e-14);
}

TEST_CASE("section over U(L)") {
    FockSpace f(standard_lagrangian_odd(ModeSpace(Parity::Odd, 1, 2)));
    Rng rng(5);

    Implementer id = section_ul(f, Mat::Identity(f.m(), f.m()));
    CHECK((id.matrix - Mat::Identity(f.dim(), f.dim())).norm() < 1e-14);
    CHECK(id.residual < 1e-12);

    // phase on one L-basis vector scales exactly the monomials containing it
    Mat t = Mat::Identity(f.m(), f.m());
    Complex phase = std::exp(Complex(0, 1.234));
    t(0, 0) = phase;
    Implementer lam = section_ul(f, t);
    for (int s = 0; s < f.dim(); ++s) {
        Complex expect = (f.subsets()[static_cast<std::size_t>(s)] & 1u) ? phase : Complex(1, 0);
        CHECK(std::abs(lam.matrix(s, s) - expect) < 1e-14);
    }
    CHECK(lam.residual < 1e-10);

    // group homomorphism on the nose
    Mat t2 = random_unitary(f.m(), rng);
    Mat prod = section_ul(f, (t * t2).eval()).matrix;
    CHECK((section_ul(f, t).matrix * section_ul(f, t2).matrix - prod).norm() < 1e-10);

    CHECK_THROWS_AS(section_ul(f, (2.0 * t).eval()), std::invalid_argument);
}

TEST_CASE("implement_general basics") {
    ModeSpace s(Parity::Odd, 2, 2);
    FockSpace f(standard_lagrangian_odd(s));
    Rng rng(8);

    Implementer id = implement_general(OrthogonalMap(s, Mat::Identity(s.dim(), s.dim())), f);
    CHECK((id.matrix - Mat::Identity(f.dim(), f.dim())).norm() < 1e-10);
    CHECK(id.phase_rule == "vacuum-positive");

    // block-diagonal g reproduces the U(L) section with unit phase
    Mat t = random_unitary(f.m(), rng);
    OrthogonalMap g = embed_unitary(f.lagrangian(), t);
    Implementer u = implement_general(g, f);
    CHECK((u.matrix - section_ul(f, t).matrix).norm() < 1e-9);

    // random restricted orthogonal maps
    for (int trial = 0; trial < 5; ++trial) {
        OrthogonalMap h = random_restricted_orthogonal(s, 2, 0.6, rng);
        Implementer uh = implement_general(h, f);
        CHECK(uh.residual <= 1e-8);
        CHECK((uh.matrix.adjoint() * uh.matrix - Mat::Identity(f.dim(), f.dim())).norm() < 1e-9);
    }
}

TEST_CASE("verify_implements is phase blind") {
    ModeSpace s(Parity::Odd, 1, 2);
    FockSpace f(standard_lagrangian_odd(s));
    Rng rng(11);
    OrthogonalMap g = random_restricted_orthogonal(s, 1, 0.5, rng);
    Implementer u = implement_general(g, f);
    Mat rotated = std::exp(Complex(0, 0.77)) * u.matrix;
    CHECK(std::abs(verify_implements(f, rotated, g.matrix()) - u.residual) < 1e-10);
    CHECK(verify_implements(f, Mat::Identity(f.dim(), f.dim()), Mat::Identity(s.dim(), s.dim())) < 1e-14);
}

TEST_CASE("implementers of the same map differ by a phase") {
    ModeSpace s(Parity::Odd, 2, 2);
    FockSpace f(standard_lagrangian_odd(s));
    Rng rng(14);
    OrthogonalMap g = random_restricted_orthogonal(s, 2, 0.5, rng);
    OrthogonalMap h = random_restricted_orthogonal(s, 2, 0.5, rng);

    Implementer direct = implement_general(g, f);
    // a second implementer of g through the product route
    Implementer gh = implement_general(g * h, f);
    Implementer uh = implement_general(h, f);
    Mat indirect = gh.matrix * uh.matrix.adjoint();
    CHECK(verify_implements(f, indirect, g.matrix()) < 1e-8);
    CHECK(scalar_deviation(direct.matrix, indirect) < 1e-8);

    // q is a homomorphism
    CHECK(verify_implements(f, (direct.matrix * uh.matrix).eval(), (g.matrix() * h.matrix()).eval()) < 1e-7);
}

TEST_CASE("cocycle values") {
    ModeSpace s(Parity::Odd, 2, 2);
    FockSpace f(standard_lagrangian_odd(s));
    Rng rng(17);

    OrthogonalMap id(s, Mat::Identity(s.dim(), s.dim()));
    OrthogonalMap g = random_restricted_orthogonal(s, 2, 0.5, rng);
    CHECK(std::abs(cocycle_value(id, g, f).value - 1.0) < 1e-9);

    // the extension splits over U(L)
    Mat t1 = random_unitary(f.m(), rng);
    Mat t2 = random_unitary(f.m(), rng);
    OrthogonalMap b1 = embed_unitary(f.lagrangian(), t1);
    OrthogonalMap b2 = embed_unitary(f.lagrangian(), t2);
    CHECK(std::abs(cocycle_value(b1, b2, f).value - 1.0) < 1e-10);

    // cocycle identity c(g,h) c(gh,k) = c(h,k) c(g,hk)
    OrthogonalMap h = random_restricted_orthogonal(s, 2, 0.5, rng);
    OrthogonalMap k = random_restricted_orthogonal(s, 2, 0.5, rng);
    Complex lhs = cocycle_value(g, h, f).value * cocycle_value(g * h, k, f).value;
    Complex rhs = cocycle_value(h, k, f).value * cocycle_value(g, h * k, f).value;
    CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("transport along an orthogonal change of space") {
    ModeSpace s(Parity::Odd, 2, 2);
    Lagrangian l = standard_lagrangian_odd(s);
    FockSpace f(l);
    Rng rng(20);

    OrthogonalMap nu_map = random_restricted_orthogonal(s, 2, 0.5, rng);
    SpaceMap nu(nu_map);
    FockSpace f2(map_lagrangian(nu_map, l));

    Mat lam = transport_fock(nu, f, f2);
    CHECK((lam.adjoint() * lam - Mat::Identity(f.dim(), f.dim())).norm() < 1e-10);

    // identity transports to the identity
    SpaceMap nu_id(OrthogonalMap(s, Mat::Identity(s.dim(), s.dim())));
    CHECK((transport_fock(nu_id, f, f) - Mat::Identity(f.dim(), f.dim())).norm() < 1e-12);

    // Lambda_{nu^{-1}} Lambda_nu = 1
    Mat lam_back = transport_fock(nu.inverse(), f2, f);
    CHECK((lam_back * lam - Mat::Identity(f.dim(), f.dim())).norm() < 1e-10);

    // intertwiner along the algebra homomorphism Cl(nu)
    for (int trial = 0; trial < 6; ++trial) {
        CliffordWord w = generator(ModeVector(s, rng.cnormal_vector(s.dim()))) *
                         generator(ModeVector(s, rng.cnormal_vector(s.dim())));
        Vec x = rng.cnormal_vector(f.dim());
        Vec lhs = lam * f.clifford_act(w, x);
        Vec rhs = f2.clifford_act(transport_clifford(nu, w), (lam * x).eval());
        CHECK((lhs - rhs).norm() < 1e-9);
    }

    // mismatched target Lagrangian is rejected
    CHECK_THROWS_AS(transport_fock(nu, f, f), std::invalid_argument);
}

TEST_CASE("unitary equivalences between Fock spaces") {
    ModeSpace s(Parity::Odd, 2, 2);
    Lagrangian l = standard_lagrangian_odd(s);
    FockSpace f(l);
    Rng rng(23);

    OrthogonalMap g1 = random_restricted_orthogonal(s, 2, 0.4, rng);
    OrthogonalMap g2 = random_restricted_orthogonal(s, 2, 0.4, rng);
    FockSpace f1(map_lagrangian(g1, l));
    FockSpace f2(map_lagrangian(g2, l));

    OrthogonalMap rel(s, (g2.matrix().adjoint() * g1.matrix()).eval(), 1e-8);
    Implementer u = implement_general(rel, f);

    Mat t = equivalence_from_implementer(u.matrix, g1, g2, f, f1, f2);
    CHECK((t.adjoint() * t - Mat::Identity(f.dim(), f.dim())).norm() < 1e-9);
    CHECK(intertwining_residual(f1, f2, t) < 1e-8);

    // trivial case
    Mat t_id = equivalence_from_implementer(Mat::Identity(f.dim(), f.dim()), g1, g1, f, f1, f1);
    CHECK((t_id - Mat::Identity(f.dim(), f.dim())).norm() < 1e-10);

    // the composition square commutes up to the stated tolerance
    OrthogonalMap g3 = random_restricted_orthogonal(s, 2, 0.4, rng);
    FockSpace f3(map_lagrangian(g3, l));
    OrthogonalMap rel23(s, (g3.matrix().adjoint() * g2.matrix()).eval(), 1e-8);
    Implementer u23 = implement_general(rel23, f);
    Mat t23 = equivalence_from_implementer(u23.matrix, g2, g3, f, f2, f3);
    OrthogonalMap rel13(s, (g3.matrix().adjoint() * g1.matrix()).eval(), 1e-8);
    Implementer u13 = implement_general(rel13, f);
    Mat t13 = equivalence_from_implementer(u13.matrix, g1, g3, f, f1, f3);
    // both t23 t and t13 intertwine F_{L1} -> F_{L3}, hence agree up to phase
    CHECK(intertwining_residual(f1, f3, (t23 * t).eval()) < 1e-8);
    CHECK(scalar_deviation((t23 * t).eval(), t13) < 1e-8);

    // a non-implementer is rejected
    CHECK_THROWS_AS(equivalence_from_implementer(Mat::Identity(f.dim(), f.dim()), g1, g2, f, f1, f2),
                    std::invalid_argument);
}
