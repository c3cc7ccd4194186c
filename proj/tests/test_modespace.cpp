#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockbundle/modespace.hpp"
#include "fockbundle/rng.hpp"

using namespace fockbundle;

namespace {
ModeVector random_vector(const ModeSpace& s, Rng& rng) { return {s, rng.cnormal_vector(s.dim())}; }
}

TEST_CASE("mode space construction") {
    ModeSpace odd(Parity::Odd, 1, 2);
    CHECK(odd.dim() == 4);
    std::vector<int> modes;
    for (const auto& idx : odd.basis())
        modes.push_back(idx.n);
    CHECK(modes == std::vector<int>{-2, -1, 0, 1});

    ModeSpace even(Parity::Even, 2, 1);
    CHECK(even.dim() == 6);

    CHECK_THROWS_AS(ModeSpace(Parity::Odd, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(ModeSpace(Parity::Even, 1, 0), std::invalid_argument);
}

TEST_CASE("index set closed under the real-structure map") {
    ModeSpace s(Parity::Odd, 2, 3);
    CHECK(s.dim() == 12);
    for (const auto& idx : s.basis())
        CHECK(s.contains_mode(s.alpha_mode(idx.n)));
    ModeSpace e(Parity::Even, 3, 2);
    for (const auto& idx : e.basis())
        CHECK(e.contains_mode(e.alpha_mode(idx.n)));
}

TEST_CASE("alpha on basis vectors") {
    ModeSpace s(Parity::Odd, 1, 3);
    ModeVector v = apply_alpha(basis_vector(s, 2, 1));
    CHECK(std::abs(v.coeffs()(s.position(-3, 1)) - 1.0) < 1e-15);
    CHECK(v.coeffs().norm() == doctest::Approx(1.0));

    ModeSpace e(Parity::Even, 2, 1);
    ModeVector w = basis_vector(e, 0, 2);
    CHECK((apply_alpha(w).coeffs() - w.coeffs()).norm() < 1e-15);
}

TEST_CASE("alpha is an anti-unitary involution") {
    Rng rng(7);
    for (Parity p : {Parity::Odd, Parity::Even}) {
        ModeSpace s(p, 2, 3);
        ModeVector v = random_vector(s, rng);
        ModeVector w = random_vector(s, rng);
        CHECK((apply_alpha(apply_alpha(v)).coeffs() - v.coeffs()).norm() < 1e-12);
        CHECK(std::abs(inner(apply_alpha(v), apply_alpha(w)) - std::conj(inner(v, w))) < 1e-12);
    }
}

TEST_CASE("inner product") {
    ModeSpace s(Parity::Odd, 1, 2);
    CHECK(std::abs(inner(basis_vector(s, 0, 1), basis_vector(s, 0, 1)) - 1.0) < 1e-15);
    CHECK(std::abs(inner(basis_vector(s, 0, 1), basis_vector(s, 1, 1))) < 1e-15);

    Rng rng(3);
    ModeVector v = random_vector(s, rng);
    ModeVector w = random_vector(s, rng);
    CHECK(std::abs(inner(v, w) - std::conj(inner(w, v))) < 1e-12);
    // conjugate-linear in the first slot
    Complex z(0.3, -1.2);
    ModeVector zv(s, (z * v.coeffs()).eval());
    CHECK(std::abs(inner(zv, w) - std::conj(z) * inner(v, w)) < 1e-12);

    ModeSpace other(Parity::Odd, 1, 3);
    CHECK_THROWS_AS(inner(v, ModeVector(other)), std::invalid_argument);
}

TEST_CASE("car pairing is bilinear and symmetric") {
    ModeSpace s(Parity::Odd, 2, 2);
    Rng rng(11);
    ModeVector v = random_vector(s, rng);
    ModeVector w = random_vector(s, rng);
    CHECK(std::abs(car_pairing(v, w) - car_pairing(w, v)) < 1e-12);
    Complex z(0.7, 0.4);
    ModeVector zv(s, (z * v.coeffs()).eval());
    CHECK(std::abs(car_pairing(zv, w) - z * car_pairing(v, w)) < 1e-12);

    // the pairing of xi_{0,1} against xi_{-1,1} is 1: not isotropic together
    ModeSpace d1(Parity::Odd, 1, 2);
    CHECK(std::abs(car_pairing(basis_vector(d1, 0, 1), basis_vector(d1, -1, 1)) - 1.0) < 1e-15);
}

TEST_CASE("projection between cutoffs") {
    ModeSpace big(Parity::Odd, 1, 3);
    ModeSpace small(Parity::Odd, 1, 2);

    ModeVector inside = basis_vector(big, 1, 1);
    CHECK((project(small, inside).coeffs() - basis_vector(small, 1, 1).coeffs()).norm() < 1e-15);

    ModeVector edge = basis_vector(big, 2, 1);
    CHECK(project(small, edge).coeffs().norm() < 1e-15);

    Rng rng(5);
    ModeVector v = random_vector(big, rng);
    CHECK(project(small, v).norm() <= v.norm() + 1e-12);

    CHECK_THROWS_AS(project(big, ModeVector(small)), std::invalid_argument);
    CHECK_THROWS_AS(project(ModeSpace(Parity::Even, 1, 2), v), std::invalid_argument);

    // the square form of the truncation is an orthogonal projector
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(big.dim(), big.dim());
    for (int k = 0; k < small.dim(); ++k) {
        const ModeIndex& idx = small.basis()[static_cast<std::size_t>(k)];
        int pos = big.position(idx.n, idx.j);
        p(pos, pos) = 1.0;
    }
    CHECK((p * p - p).norm() < 1e-15);
    CHECK((p - p.transpose()).norm() < 1e-15);
}
