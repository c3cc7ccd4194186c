#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockbundle/fock.hpp"
#include "fockbundle/implementer.hpp"
#include "fockbundle/loopgroup.hpp"

#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

using namespace fockbundle;

namespace {
ModeVector random_vector(const ModeSpace& s, Rng& rng) { return {s, rng.cnormal_vector(s.dim())}; }

FockSpace odd_fock(int d, int N) { return FockSpace(standard_lagrangian_odd(ModeSpace(Parity::Odd, d, N))); }
}

TEST_CASE("fock space enumeration") {
    FockSpace f = odd_fock(1, 2);
    CHECK(f.m() == 2);
    CHECK(f.dim() == 4);
    // graded-lex order: {}, {1}, {2}, {1,2}
    CHECK(f.subsets() == std::vector<std::uint32_t>{0b00, 0b01, 0b10, 0b11});

    FockSpace g = odd_fock(2, 2);
    CHECK(g.dim() == 16);
    CHECK(g.degree_of(0) == 0);
    CHECK(g.degree_of(g.dim() - 1) == 4);

    long before = FockSpace::max_dim();
    FockSpace::set_max_dim(8);
    CHECK_THROWS_AS(odd_fock(2, 2), std::invalid_argument);
    FockSpace::set_max_dim(before);
}

TEST_CASE("vacuum") {
    FockSpace f = odd_fock(1, 2);
    Vec omega = f.vacuum();
    CHECK(omega.norm() == doctest::Approx(1.0));
    const ModeSpace& s = f.mode_space();
    // annihilated by every a(w), w in alpha(L)
    for (int n = -2; n <= -1; ++n) {
        Mat a = f.annihilate(basis_vector(s, n, 1));
        CHECK((a * omega).norm() < 1e-14);
    }
    // no overlap with degree-1 images
    Vec x = f.create(basis_vector(s, 0, 1)) * omega;
    CHECK(std::abs(omega.dot(x)) < 1e-14);
}

TEST_CASE("create and annihilate") {
    FockSpace f = odd_fock(1, 3);
    const ModeSpace& s = f.mode_space();
    Rng rng(4);

    // membership is enforced
    CHECK_THROWS_AS(f.create(basis_vector(s, -1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(f.annihilate(basis_vector(s, 0, 1)), std::invalid_argument);

    // a(alpha(v)) c(v) vacuum = |v|^2 vacuum for v in L
    Vec lv = Vec::Zero(s.dim());
    lv(s.position(0, 1)) = Complex(0.3, 0.2);
    lv(s.position(2, 1)) = Complex(-1.0, 0.4);
    ModeVector v(s, lv);
    Vec omega = f.vacuum();
    Vec res = f.annihilate(apply_alpha(v)) * (f.create(v) * omega);
    CHECK((res - lv.squaredNorm() * omega).norm() < 1e-12);

    // wedge monomials are unit vectors
    Vec mono = f.create(basis_vector(s, 0, 1)) * (f.create(basis_vector(s, 1, 1)) * omega);
    CHECK(mono.norm() == doctest::Approx(1.0));

    // adjointness c(v)^* = a(alpha(v))
    ModeVector u = random_vector(s, rng);
    ModeVector vu(s, (f.lagrangian().projector() * u.coeffs()).eval());
    Mat c = f.create(vu);
    Mat a = f.annihilate(apply_alpha(vu));
    CHECK((c.adjoint() - a).norm() < 1e-12);

    // grading: c raises degree by one
    Mat cmat = f.create_op(0);
    for (int col = 0; col < f.dim(); ++col)
        for (int row = 0; row < f.dim(); ++row)
            if (std::abs(cmat(row, col)) > 0)
                CHECK(f.degree_of(row) == f.degree_of(col) + 1);
}

TEST_CASE("rho is a Clifford map") {
    Rng rng(9);
    for (Parity parity : {Parity::Odd, Parity::Even}) {
        ModeSpace s(parity, 2, 2);
        Lagrangian l = parity == Parity::Odd ? standard_lagrangian_odd(s) : standard_lagrangian_even(s);
        FockSpace f(l);
        Mat id = Mat::Identity(f.dim(), f.dim());
        for (int trial = 0; trial < 16; ++trial) {
            ModeVector v = random_vector(s, rng);
            ModeVector w = random_vector(s, rng);
            Mat rv = f.rho(v);
            Mat rw = f.rho(w);
            CHECK((rv * rw + rw * rv - 2.0 * car_pairing(v, w) * id).norm() < 1e-9);
            CHECK((rv * rv - car_pairing(v, v) * id).norm() < 1e-9);
            CHECK((rv.adjoint() - f.rho(apply_alpha(v))).norm() < 1e-9);
        }
        // v in L acts on the vacuum as sqrt(2) v, a degree-1 monomial
        Vec image = f.rho(ModeVector(s, l.frame().col(0))) * f.vacuum();
        CHECK(std::abs(image.norm() - std::sqrt(2.0)) < 1e-12);
        CHECK(f.degree_of(1) == 1);
    }
}

TEST_CASE("matrix-free application agrees with the dense matrix") {
    FockSpace f = odd_fock(2, 2);
    Rng rng(21);
    ModeVector v = random_vector(f.mode_space(), rng);
    Vec x = rng.cnormal_vector(f.dim());
    CHECK((f.apply_rho(v, x) - f.rho(v) * x).norm() < 1e-12);
}

TEST_CASE("clifford words on Fock space") {
    FockSpace f = odd_fock(1, 2);
    const ModeSpace& s = f.mode_space();
    Rng rng(13);
    Vec x = rng.cnormal_vector(f.dim());

    CHECK((f.clifford_act(CliffordWord::unit(), x) - x).norm() < 1e-14);

    ModeVector v = random_vector(s, rng);
    ModeVector w = random_vector(s, rng);
    CliffordWord anticomm = generator(v) * generator(w) + generator(w) * generator(v);
    CHECK((f.clifford_act(anticomm, x) - 2.0 * car_pairing(v, w) * x).norm() < 1e-9);

    // f(xi_{0,1})^2 = 0 and f(xi_{0,1} + xi_{-1,1})^2 = 2
    ModeVector basis = basis_vector(s, 0, 1);
    CHECK(f.clifford_act_matrix(generator(basis) * generator(basis)).norm() < 1e-12);
    ModeVector mixed(s, (basis_vector(s, 0, 1).coeffs() + basis_vector(s, -1, 1).coeffs()).eval());
    Mat sq2 = f.clifford_act_matrix(generator(mixed) * generator(mixed));
    CHECK((sq2 - 2.0 * Mat::Identity(f.dim(), f.dim())).norm() < 1e-12);
}

TEST_CASE("star is the represented adjoint") {
    FockSpace f = odd_fock(2, 2);
    const ModeSpace& s = f.mode_space();
    Rng rng(17);

    ModeVector v = random_vector(s, rng);
    CHECK((f.clifford_act_matrix(star(generator(v))) - f.clifford_act_matrix(generator(apply_alpha(v)))).norm() <
          1e-10);

    CliffordWord w = generator(random_vector(s, rng)) * generator(random_vector(s, rng)) +
                     generator(random_vector(s, rng)) * Complex(0.3, -0.8);
    Mat m = f.clifford_act_matrix(w);
    CHECK((f.clifford_act_matrix(star(w)) - m.adjoint()).norm() < 1e-9);
    CHECK((f.clifford_act_matrix(star(star(w))) - m).norm() < 1e-9);
    CHECK((f.clifford_act_matrix(star(CliffordWord::unit())) - Mat::Identity(f.dim(), f.dim())).norm() < 1e-14);
}

TEST_CASE("bogoliubov automorphism") {
    ModeSpace s(Parity::Odd, 2, 2);
    FockSpace f(standard_lagrangian_odd(s));
    Rng rng(23);

    CliffordWord w = generator(random_vector(s, rng)) * generator(random_vector(s, rng));
    OrthogonalMap id(s, Mat::Identity(s.dim(), s.dim()));
    CHECK((f.clifford_act_matrix(bogoliubov(id, w)) - f.clifford_act_matrix(w)).norm() < 1e-12);

    OrthogonalMap g = random_restricted_orthogonal(s, 1, 0.5, rng);
    OrthogonalMap h = random_restricted_orthogonal(s, 1, 0.5, rng);
    Mat lhs = f.clifford_act_matrix(bogoliubov(g * h, w));
    Mat rhs = f.clifford_act_matrix(bogoliubov(g, bogoliubov(h, w)));
    CHECK((lhs - rhs).norm() < 1e-9);

    // automorphism is a *-map and preserves the represented norm
    ModeVector v = random_vector(s, rng);
    Mat a1 = f.clifford_act_matrix(bogoliubov(g, star(generator(v))));
    Mat a2 = f.clifford_act_matrix(star(bogoliubov(g, generator(v))));
    CHECK((a1 - a2).norm() < 1e-10);
    CHECK(operator_norm(f.clifford_act_matrix(bogoliubov(g, w))) ==
          doctest::Approx(operator_norm(f.clifford_act_matrix(w))).epsilon(1e-8));
}

TEST_CASE("restricted diagnostics") {
    ModeSpace s(Parity::Odd, 2, 3);
    Lagrangian l = standard_lagrangian_odd(s);

    RestrictedDiagnostics id_diag = restricted_diagnostics(Mat::Identity(s.dim(), s.dim()), l);
    CHECK(id_diag.offdiag_hs < 1e-14);
    CHECK(id_diag.j_commutator_hs < 1e-14);
    CHECK(id_diag.j_norm == doctest::Approx(1.0));

    // block-diagonal embeddings have no off-diagonal part
    Rng rng(3);
    Mat raw = rng.cnormal_matrix(l.rank(), l.rank());
    Eigen::HouseholderQR<Mat> qr(raw);
    Mat t = qr.householderQ();
    OrthogonalMap g = embed_unitary(l, t);
    RestrictedDiagnostics block = restricted_diagnostics(g.matrix(), l);
    CHECK(block.offdiag_hs < 1e-12);

    // a winding-1 loop action: bounded, nonzero, stabilizing in N
    TrigPolyMatrix loop = rotation_loop(1);
    auto g_rule = [&](const ModeSpace& sp) { return act(loop, sp).matrix; };
    auto l_rule = [](const ModeSpace& sp) { return standard_lagrangian_odd(sp); };
    RestrictedSequenceReport rep = restricted_diagnostics_sequence(g_rule, l_rule, Parity::Odd, 2, {4, 8, 16});
    CHECK(rep.verdict == "bounded");
    CHECK(rep.offdiag_hs.back() > 0.1);
    CHECK(std::abs(rep.offdiag_hs[2] - rep.offdiag_hs[1]) < 1e-10);
}

TEST_CASE("representation is faithful on normal-ordered monomials") {
    FockSpace f = odd_fock(1, 2);
    const ModeSpace& s = f.mode_space();
    std::vector<Mat> reps;
    std::vector<ModeVector> ls = {basis_vector(s, 0, 1), basis_vector(s, 1, 1)};
    std::vector<ModeVector> ms = {basis_vector(s, -1, 1), basis_vector(s, -2, 1)};
    for (int mask = 0; mask < 16; ++mask) {
        CliffordWord w = CliffordWord::unit();
        for (int i = 0; i < 2; ++i)
            if (mask & (1 << i))
                w = w * generator(ls[static_cast<std::size_t>(i)]);
        for (int i = 0; i < 2; ++i)
            if (mask & (4 << i))
                w = w * generator(ms[static_cast<std::size_t>(i)]);
        reps.push_back(f.clifford_act_matrix(w));
    }
    Mat gram(reps.size(), reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j)
            gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (reps[i].adjoint() * reps[j]).trace();
    Eigen::ColPivHouseholderQR<Mat> qr(gram);
    qr.setThreshold(1e-9);
    CHECK(qr.rank() == static_cast<Eigen::Index>(reps.size()));
}

TEST_CASE("vacuum is cyclic for the creation operators") {
    FockSpace f = odd_fock(1, 3);
    Mat span(f.dim(), f.dim());
    int col = 0;
    for (std::uint32_t mask : f.subsets()) {
        Vec x = f.vacuum();
        for (int i = f.m() - 1; i >= 0; --i)
            if (mask & (1u << i))
                x = f.create_op(i) * x;
        span.col(col++) = x;
    }
    Eigen::ColPivHouseholderQR<Mat> qr(span);
    qr.setThreshold(1e-9);
    CHECK(qr.rank() == f.dim());
}

TEST_CASE("derivation of a block-diagonal skew map") {
    ModeSpace s(Parity::Odd, 2, 2);
    Lagrangian l = standard_lagrangian_odd(s);
    FockSpace f(l);
    Rng rng(31);

    Mat raw = rng.cnormal_matrix(f.m(), f.m());
    Mat t = 0.5 * (raw - raw.adjoint());
    Mat derivation = f.derivation(t);

    // [dGamma(T), rho(v)] = rho(X v) with X the block-diagonal extension
    Mat x = l.frame() * t * l.frame().adjoint();
    x += alpha_conjugate(s, x);
    for (int trial = 0; trial < 8; ++trial) {
        ModeVector v(s, rng.cnormal_vector(s.dim()));
        Mat rv = f.rho(v);
        Mat rxv = f.rho(ModeVector(s, (x * v.coeffs()).eval()));
        CHECK((derivation * rv - rv * derivation - rxv).norm() < 1e-9);
    }

    // matches the derivative of the wedge functor through the exponential
    double eps = 1e-6;
    Mat t_eps = (eps * t).exp();
    Mat finite = (wedge_power(f, f, t_eps) - Mat::Identity(f.dim(), f.dim())) / eps;
    CHECK((finite - derivation).norm() < 1e-4);
}

TEST_CASE("seminorm estimates") {
    FockSpace f = odd_fock(1, 2);
    Rng rng(37);
    Vec x = rng.cnormal_vector(f.dim());

    CHECK(seminorm_estimate(f, x, 0, 1, {}, 1) == doctest::Approx(x.norm()));
    CHECK_THROWS_AS(seminorm_estimate(f, x, -1, 1, {}, 1), std::invalid_argument);

    Mat j = Mat::Zero(2, 2);
    j(0, 1) = 1;
    j(1, 0) = -1;
    std::vector<Mat> basis = {j};

    // derivations kill the vacuum, and the estimate agrees
    Vec omega = f.vacuum();
    CHECK((f.derivation(j) * omega).norm() == doctest::Approx(0.0));
    CHECK(seminorm_estimate(f, omega, 1, 32, basis, 5) == doctest::Approx(0.0));

    // lower bound against the directly assembled derivation
    double est = seminorm_estimate(f, x, 1, 64, basis, 7);
    CHECK(est <= operator_norm(f.derivation(j)) * x.norm() + 1e-12);

    // monotone in the sample count under nested seeds
    double e1 = seminorm_estimate(f, x, 2, 4, basis, 42);
    double e2 = seminorm_estimate(f, x, 2, 16, basis, 42);
    CHECK(e1 <= e2 + 1e-15);

    Mat too_big = 3.0 * j;
    CHECK_THROWS_AS(seminorm_estimate(f, x, 1, 4, {too_big}, 1), std::invalid_argument);
}
