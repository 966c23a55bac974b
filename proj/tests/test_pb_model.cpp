#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "esopt/errors.hpp"
#include "esopt/pb_model.hpp"
#include "oracles.hpp"

using namespace esopt;

namespace {

std::vector<std::vector<double>> zeros(int n) {
    return std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0));
}

PbVector vec9(std::initializer_list<double> head) {
    std::vector<double> v(head);
    v.resize(9, 0.0);
    return PbVector(v);
}

}  // namespace

TEST_CASE("human_impact matches hand-computed values") {
    const InteractionMatrix g0 = InteractionMatrix::zero(9);
    CHECK(human_impact(PbVector::zeros(9), g0) == 0.0);

    CHECK(human_impact(vec9({0.5, 0.3}), g0) == doctest::Approx(0.8).epsilon(1e-15));

    // 0.5 + 0.3 + 2 * 0.1 * 0.5 * 0.3
    auto raw2 = zeros(2);
    raw2[0][1] = raw2[1][0] = 0.1;
    const InteractionMatrix g2 = InteractionMatrix::validate(raw2);
    CHECK(human_impact(PbVector({0.5, 0.3}), g2) ==
          doctest::Approx(0.83).epsilon(1e-15));
}

TEST_CASE("human_impact rejects dimension mismatch") {
    CHECK_THROWS_AS(human_impact(PbVector::zeros(3), InteractionMatrix::zero(4)),
                    InputError);
    CHECK_THROWS_AS(impact_delta(PbVector::zeros(3), PbVector::zeros(4),
                                 InteractionMatrix::zero(3)),
                    InputError);
}

TEST_CASE("impact_delta sign convention and coupling") {
    const InteractionMatrix g0 = InteractionMatrix::zero(9);
    const PbVector a = vec9({0.5});
    CHECK(impact_delta(a, a, g0) == 0.0);
    CHECK(impact_delta(a, vec9({0.3}), g0) == doctest::Approx(-0.2).epsilon(1e-14));

    // Coupling sized so the cross term contributes 10% of h1 + h2 at (1, 1):
    // 2 * g12 * 1 * 1 = 0.1 * (1 + 1)  =>  g12 = 0.1.
    auto raw = zeros(2);
    raw[0][1] = raw[1][0] = 0.1;
    const InteractionMatrix g = InteractionMatrix::validate(raw);
    const PbVector start({0.0, 0.0});
    const PbVector end({1.0, 1.0});
    const double expected = oracles::naive_impact({1.0, 1.0}, raw);
    CHECK(impact_delta(start, end, g) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(impact_delta(start, end, g) == doctest::Approx(2.2).epsilon(1e-15));
}

TEST_CASE("validate_matrix accepts identity and the zero sentinel") {
    auto id = zeros(9);
    for (int i = 0; i < 9; ++i) id[i][i] = 1.0;
    CHECK_NOTHROW(InteractionMatrix::validate(id));
    const InteractionMatrix z = InteractionMatrix::validate(zeros(9));
    CHECK(z.is_zero());
    CHECK(z.determinant() == 0.0);
}

TEST_CASE("validate_matrix rejects a singular embedded block") {
    auto raw = zeros(4);
    raw[0][0] = raw[0][1] = raw[1][0] = raw[1][1] = 1.0;
    CHECK_THROWS_AS(InteractionMatrix::validate(raw), DegenerateMatrixError);
}

TEST_CASE("validate_matrix symmetry handling") {
    auto raw = zeros(2);
    raw[0][0] = raw[1][1] = 1.0;
    raw[0][1] = 0.2;
    raw[1][0] = 0.2 + 5e-10;  // within tolerance: symmetrised
    const InteractionMatrix g = InteractionMatrix::validate(raw);
    CHECK(g(0, 1) == g(1, 0));
    CHECK(g(0, 1) == doctest::Approx(0.2 + 2.5e-10).epsilon(1e-15));

    raw[1][0] = 0.3;  // far beyond tolerance
    CHECK_THROWS_AS(InteractionMatrix::validate(raw), InputError);
}

TEST_CASE("symmetrised input leaves the quadratic form unchanged") {
    std::mt19937_64 rng(7001);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        auto raw = zeros(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) raw[i][j] = unif(rng);
            raw[i][i] += 2.0;  // keep it comfortably non-degenerate
        }
        // build the exactly symmetric average of the asymmetric draw by hand
        auto sym = raw;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sym[i][j] = 0.5 * (raw[i][j] + raw[j][i]);

        MatrixValidation loose;
        loose.symmetry_tol = 10.0;  // admit the raw asymmetric draw
        const InteractionMatrix ga = InteractionMatrix::validate(raw, loose);
        const InteractionMatrix gs = InteractionMatrix::validate(sym, loose);

        std::vector<double> hv(n);
        for (double& v : hv) v = unif(rng) + 1.0;
        const PbVector h(hv);
        CHECK(human_impact(h, ga) ==
              doctest::Approx(human_impact(h, gs)).epsilon(1e-13));
    }
}

TEST_CASE("zero coupling reduces to the plain sum") {
    std::mt19937_64 rng(7002);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<double> hv(n);
        double sum = 0.0;
        for (double& v : hv) {
            v = unif(rng);
            sum += v;
        }
        CHECK(human_impact(PbVector(hv), InteractionMatrix::zero(n)) ==
              doctest::Approx(sum).epsilon(1e-15));
    }
}

TEST_CASE("impact_delta is antisymmetric") {
    std::mt19937_64 rng(7003);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        auto raw = zeros(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) raw[i][j] = raw[j][i] = 0.1 * unif(rng);
            raw[i][i] += 1.0;
        }
        const InteractionMatrix g = InteractionMatrix::validate(raw);
        std::vector<double> av(n), bv(n);
        for (int i = 0; i < n; ++i) {
            av[i] = unif(rng);
            bv[i] = unif(rng);
        }
        const PbVector a(av), b(bv);
        CHECK(impact_delta(a, b, g) ==
              doctest::Approx(-impact_delta(b, a, g)).epsilon(1e-13));
    }
}

TEST_CASE("human_impact agrees with the naive double-loop oracle") {
    std::mt19937_64 rng(7004);
    std::uniform_real_distribution<double> hdist(0.1, 2.0);
    std::uniform_real_distribution<double> gdist(-0.05, 0.05);
    for (int n : {2, 9, 20}) {
        for (int trial = 0; trial < 300; ++trial) {
            auto raw = zeros(n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j <= i; ++j) raw[i][j] = raw[j][i] = gdist(rng);
                raw[i][i] += 0.5;
            }
            std::vector<double> hv(n);
            for (double& v : hv) v = hdist(rng);

            const InteractionMatrix g = InteractionMatrix::validate(raw);
            const double got = human_impact(PbVector(hv), g);
            const double want = oracles::naive_impact(hv, raw);
            CHECK(std::abs(got - want) <= 1e-14 * std::abs(want));
        }
    }
}

TEST_CASE("pb vector construction guards") {
    CHECK_THROWS_AS(PbVector({}), InputError);
    CHECK_THROWS_AS(PbVector({1.0, std::nan("")}), InputError);
    CHECK(canonical_pb_labels().size() == 9);
}
