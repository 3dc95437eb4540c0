#include "bhsim/measurement_channel.hpp"

#include "bhsim/info_entropy.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace bhsim;

namespace {

HartleHawkingState thermal_state(double ratio, int n_trunc) {
    return hh_state({ratio, 1.0, n_trunc, TailMode::relaxed});
}

}  // namespace

TEST_CASE("validate_kraus: identity, projective, over-complete") {
    CHECK_NOTHROW(validate_kraus({Matrix::Identity(3, 3)}));

    std::vector<Matrix> projective{Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
    projective[0](0, 0) = 1.0;
    projective[1](1, 1) = 1.0;
    CHECK_NOTHROW(validate_kraus(projective));

    CHECK_THROWS_WITH_AS(validate_kraus({Matrix::Identity(2, 2), Matrix::Identity(2, 2)}),
                         doctest::Contains("residual norm 1"), std::invalid_argument);
}

TEST_CASE("apply_povm: identity channel and projective measurement") {
    const auto rho = reduce_to_A(thermal_state(std::log(2.0), 2));

    const auto ident = apply_povm(rho, validate_kraus({Matrix::Identity(2, 2)}));
    CHECK(ident.probs(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_abs(Matrix(ident.states[0].mat - rho.mat)) < 1e-14);

    const auto proj = apply_povm(rho, eigenbasis_projective_kraus(2));
    CHECK(proj.probs(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(proj.probs(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(proj.states[0].mat(0, 0).real() - 1.0) < 1e-14);
    CHECK(std::abs(proj.states[1].mat(1, 1).real() - 1.0) < 1e-14);
}

TEST_CASE("apply_povm: average of a random channel is a valid state") {
    RandomStream rng(21);
    const auto rho = random_density(3, rng);
    const auto kraus = random_kraus(3, 2, rng);
    const auto outcome = apply_povm(rho, kraus);
    CHECK(std::abs(outcome.probs.sum() - 1.0) < 1e-10);
    CHECK_NOTHROW(validate_density(outcome.average.mat));
}

TEST_CASE("dilate: a single unitary Kraus operator dilates to itself") {
    RandomStream rng(22);
    const auto u = haar_unitary(3, rng);
    const auto dil = dilate(validate_kraus({u.matrix()}));
    CHECK(max_abs(Matrix(dil.unitary.matrix() - u.matrix())) < 1e-12);
}

TEST_CASE("dilate: projective qubit measurement acts as a controlled copy") {
    const auto dil = dilate(eigenbasis_projective_kraus(2));
    // |0>|Phi_0> -> |0>|Phi_0>, |1>|Phi_0> -> |1>|Phi_1>.
    Vector in0 = Vector::Zero(4);
    in0(0) = 1.0;
    Vector in1 = Vector::Zero(4);
    in1(2) = 1.0;
    Vector out0 = dil.unitary.matrix() * in0;
    Vector out1 = dil.unitary.matrix() * in1;
    CHECK(std::abs(out0(0) - 1.0) < 1e-12);
    CHECK(std::abs(out1(3) - 1.0) < 1e-12);
}

TEST_CASE("dilate: extraction identity and unitarity on random sets") {
    RandomStream rng(23);
    const auto kraus = random_kraus(4, 3, rng);
    const auto dil = dilate(kraus);
    const Matrix& u = dil.unitary.matrix();
    CHECK(max_abs(Matrix(u.adjoint() * u - Matrix::Identity(12, 12))) < 1e-12);
    for (int a = 0; a < 3; ++a) {
        CHECK(max_abs(Matrix(extract_kraus(dil, a) -
                             kraus.operators[static_cast<std::size_t>(a)])) < 1e-12);
    }
}

TEST_CASE("joint_post_state: identity channel leaves the detector ready") {
    const auto state = thermal_state(std::log(2.0), 2);
    const auto joint = joint_post_state(state, validate_kraus({Matrix::Identity(2, 2)}));
    Matrix phi0 = Matrix::Zero(1, 1);
    phi0(0, 0) = 1.0;  // K = 1 detector
    CHECK(max_abs(Matrix(joint.reduced.mat - reduce_to_A(state).mat)) < 1e-12);
}

TEST_CASE("joint_post_state: detector trace reproduces the POVM average") {
    RandomStream rng(24);
    for (int trial = 0; trial < 5; ++trial) {
        const int d = rng.uniform_int(2, 4);
        const int K = rng.uniform_int(1, 3);
        const auto state = thermal_state(rng.uniform(0.5, 2.0), d);
        const auto kraus = random_kraus(d, K, rng);
        const auto joint = joint_post_state(state, kraus);
        const auto povm = apply_povm(reduce_to_A(state), kraus);
        const Matrix traced = partial_trace(joint.reduced.mat, {d, K}, {0});
        CHECK(max_abs(Matrix(traced - povm.average.mat)) < 1e-12);
    }
}

TEST_CASE("joint_post_state: projective measurement gives detector-correlated blocks") {
    const auto state = thermal_state(std::log(2.0), 2);
    const auto joint = joint_post_state(state, eigenbasis_projective_kraus(2));
    // rho'_{A Phi} = (2/3)|0><0| x |Phi_0><Phi_0| + (1/3)|1><1| x |Phi_1><Phi_1|
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 2.0 / 3.0;
    expected(3, 3) = 1.0 / 3.0;
    CHECK(max_abs(Matrix(joint.reduced.mat - expected)) < 1e-12);
}

TEST_CASE("drop_state: empty drop set reduces to the no-drop state") {
    RandomStream rng(25);
    const auto state = thermal_state(1.2, 3);
    const auto kraus = random_kraus(3, 2, rng);
    const auto drop = drop_state(state, kraus, DropPlan{});
    CHECK(drop.p_drop == 0.0);
    const auto joint = joint_post_state(state, kraus);
    CHECK(max_abs(Matrix(drop.joint.mat - joint.reduced.mat)) < 1e-12);
}

TEST_CASE("drop_state: dropping every outcome gives the product form") {
    RandomStream rng(26);
    const auto state = thermal_state(0.8, 3);
    const auto kraus = random_kraus(3, 3, rng);
    DropPlan plan;
    plan.drop_set = {0, 1, 2};
    const auto drop = drop_state(state, kraus, plan);
    const auto povm = apply_povm(reduce_to_A(state), kraus);
    Matrix rho_d = Matrix::Zero(3, 3);
    for (int a = 0; a < 3; ++a) rho_d(a, a) = povm.probs(a);
    CHECK(max_abs(Matrix(drop.joint.mat - tensor(povm.average.mat, rho_d))) < 1e-12);
    CHECK(drop.p_drop == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("drop_state: inside unitaries wash out") {
    RandomStream rng(27);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = rng.uniform_int(2, 5);
        const int K = rng.uniform_int(1, 4);
        const auto state = thermal_state(rng.uniform(0.5, 2.5), d);
        const auto kraus = random_kraus(d, K, rng);
        DropPlan plan;
        plan.drop_set.push_back(rng.uniform_int(0, K - 1));
        const auto plain = drop_state(state, kraus, plan);
        DropPlan stirred = plan;
        stirred.inside_unitaries.push_back(haar_unitary(d, rng));
        const auto twisted = drop_state(state, kraus, stirred);
        CHECK(max_abs(Matrix(plain.joint.mat - twisted.joint.mat)) < 1e-12);
    }
}

TEST_CASE("drop_state: input validation") {
    RandomStream rng(28);
    const auto state = thermal_state(1.0, 2);
    const auto kraus = random_kraus(2, 2, rng);
    DropPlan bad_label;
    bad_label.drop_set = {5};
    CHECK_THROWS_AS(drop_state(state, kraus, bad_label), std::invalid_argument);
    DropPlan bad_dim;
    bad_dim.drop_set = {0};
    bad_dim.inside_unitaries.push_back(haar_unitary(3, rng));
    CHECK_THROWS_AS(drop_state(state, kraus, bad_dim), std::invalid_argument);
}

TEST_CASE("matter_entropy_closed_form: no-drop and deterministic-drop forms") {
    RandomStream rng(29);
    const auto state = thermal_state(1.4, 3);
    const auto kraus = random_kraus(3, 3, rng);

    const auto no_drop = drop_state(state, kraus, DropPlan{});
    double expected = 0.0;
    for (int a = 0; a < 3; ++a) {
        const double p = no_drop.branches.probs(a);
        expected += p * von_neumann(no_drop.branches.states[static_cast<std::size_t>(a)]);
        expected -= p * std::log(p);
    }
    CHECK(matter_entropy_closed_form(no_drop) == doctest::Approx(expected).epsilon(1e-12));

    // Identity channel with its single outcome dropped: S'_M = S(rho_A).
    DropPlan drop_all;
    drop_all.drop_set = {0};
    const auto ident = drop_state(state, validate_kraus({Matrix::Identity(3, 3)}), drop_all);
    CHECK(matter_entropy_closed_form(ident) ==
          doctest::Approx(von_neumann(reduce_to_A(state))).epsilon(1e-9));
}

TEST_CASE("matter_entropy_closed_form: matches the joint-matrix entropy") {
    RandomStream rng(30);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = rng.uniform_int(2, 6);
        const int K = rng.uniform_int(1, 4);
        const auto state = thermal_state(rng.uniform(0.5, 3.0), d);
        const auto kraus = random_kraus(d, K, rng);
        DropPlan plan;
        for (int a = 0; a < K; ++a) {
            if (rng.uniform() < 0.5) plan.drop_set.push_back(a);
        }
        const auto drop = drop_state(state, kraus, plan);
        CHECK(std::abs(matter_entropy_closed_form(drop) - von_neumann(drop.joint)) < 1e-9);
    }
}

TEST_CASE("random_kraus: completeness and determinism") {
    RandomStream rng(31);
    const auto single = random_kraus(3, 1, rng);
    CHECK(max_abs(Matrix(single.operators[0].adjoint() * single.operators[0] -
                         Matrix::Identity(3, 3))) < 1e-12);

    for (int trial = 0; trial < 5; ++trial) {
        const int d = rng.uniform_int(2, 5);
        const int K = rng.uniform_int(1, 4);
        const auto kraus = random_kraus(d, K, rng);
        Matrix sum = Matrix::Zero(d, d);
        for (const auto& a : kraus.operators) sum += a.adjoint() * a;
        CHECK(max_abs(Matrix(sum - Matrix::Identity(d, d))) < 1e-12);
    }

    RandomStream a(7), b(7);
    const auto ka = random_kraus(4, 2, a);
    const auto kb = random_kraus(4, 2, b);
    for (int i = 0; i < 2; ++i) {
        CHECK(max_abs(Matrix(ka.operators[static_cast<std::size_t>(i)] -
                             kb.operators[static_cast<std::size_t>(i)])) == 0.0);
    }
}

TEST_CASE("diagonal_random_kraus: complete and energy conserving") {
    RandomStream rng(32);
    const ThermalSpec spec{1.0, 1.0, 4, TailMode::relaxed};
    const auto state = hh_state(spec);
    const auto rho = reduce_to_A(state);
    const auto kraus = diagonal_random_kraus(4, 3, rng);
    const auto outcome = apply_povm(rho, kraus);
    const Matrix h = mode_hamiltonian(spec);
    const double e0 = (h * rho.mat).trace().real();
    double e_after = 0.0;
    for (int a = 0; a < 3; ++a) {
        e_after += outcome.probs(a) *
                   (h * outcome.states[static_cast<std::size_t>(a)].mat).trace().real();
    }
    CHECK(std::abs(e0 - e_after) < 1e-12);
}
