#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "pathsum/reference.hpp"
#include "test_helpers.hpp"

using namespace pathsum;
using namespace testutil;

using C = std::complex<double>;

TEST_CASE("series exponential on closed forms") {
    MatF zero = MatF::Zero(3, 3);
    CHECK(max_abs_diff(ref_exp(zero, 1.0), MatF(MatF::Identity(3, 3))) == 0.0);

    MatF d(2, 2);
    d << C(1.0, 0.0), C(0.0, 0.0), C(0.0, 0.0), C(-2.0, 0.5);
    MatF e = ref_exp(d, 0.9);
    CHECK(std::abs(e(0, 0) - std::exp(C(0.9, 0.0))) < 1e-13);
    CHECK(std::abs(e(1, 1) - std::exp(C(-1.8, 0.45))) < 1e-13);
    CHECK(std::abs(e(0, 1)) == 0.0);

    MatF n(2, 2);
    n << C(0.0, 0.0), C(1.0, 0.0), C(0.0, 0.0), C(0.0, 0.0);
    MatF en = ref_exp(n, 2.5);
    CHECK(std::abs(en(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(en(0, 1) - 2.5) < 1e-15);
    CHECK(std::abs(en(1, 0)) < 1e-15);
    CHECK(std::abs(en(1, 1) - 1.0) < 1e-15);
}

TEST_CASE("series exponential is additive in time") {
    std::mt19937 rng(90);
    MatF m = random_float_matrix(4, 4, rng);
    MatF whole = ref_exp(m, 1.3);
    MatF split = MatF(ref_exp(m, 0.8) * ref_exp(m, 0.5));
    CHECK(max_abs_diff(whole, split) < 1e-10 * std::max(1.0, max_abs(whole)));
}

TEST_CASE("integer matrix powers by repeated squaring") {
    MatX m = chain_example_matrix();
    CHECK(exact_equal(ref_power_int(m, 0L), MatX(MatX::Identity(5, 5))));
    CHECK(exact_equal(ref_power_int(m, 1L), m));
    MatX m5 = m;
    for (int i = 0; i < 4; ++i) m5 = MatX(m5 * m);
    CHECK(exact_equal(ref_power_int(m, 5L), m5));
    CHECK(exact_equal(ref_power_int(m, -2L), dense_inverse(MatX(m * m))));

    std::mt19937 rng(91);
    MatF f = random_float_matrix(3, 3, rng);
    CHECK(max_abs_diff(ref_power_int(f, 3L), MatF(f * f * f)) < 1e-12);
}

TEST_CASE("identity report collects residuals") {
    IdentityReport rep;
    MatF a = MatF::Identity(2, 2);
    MatF b = a;
    b(0, 1) = C(3e-7, 0.0);
    rep.add("same", a, a);
    rep.add("off", a, b);
    CHECK(rep.entries.size() == 2);
    CHECK(rep.entries[0].residual == 0.0);
    CHECK(rep.entries[1].residual == doctest::Approx(3e-7));
    CHECK(rep.max_residual() == doctest::Approx(3e-7));
    CHECK(rep.all_below(1e-6));
    CHECK(!rep.all_below(1e-8));

    IdentityReport ex;
    ex.add_exact("eq", MatX(MatX::Identity(2, 2)), MatX(MatX::Identity(2, 2)));
    CHECK(ex.max_residual() == 0.0);
}
