#include <random>

#include "doctest.h"

#include "pathsum/matrix.hpp"

#include "test_helpers.hpp"

using namespace pathsum;
using testutil::exact_matrix;
using testutil::q;
using CF = std::complex<double>;
using PolyX = Poly<GaussianRational>;

namespace {

// det(x I - M) by cofactor expansion over the polynomial ring; test-only
// oracle for permutation invariance.
PolyX poly_det(const std::vector<std::vector<PolyX>>& m) {
    const size_t n = m.size();
    if (n == 1) return m[0][0];
    PolyX acc;
    for (size_t k = 0; k < n; ++k) {
        if (m[0][k].is_zero()) continue;
        std::vector<std::vector<PolyX>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<PolyX> row;
            for (size_t j = 0; j < n; ++j)
                if (j != k) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        PolyX term = m[0][k] * poly_det(minor);
        if (k % 2 == 1) term = -term;
        acc = acc + term;
    }
    return acc;
}

PolyX charpoly(const MatX& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<std::vector<PolyX>> a(static_cast<size_t>(n), std::vector<PolyX>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                a[i][j] = PolyX{-m(i, j), GaussianRational(1)};
            else
                a[i][j] = PolyX{-m(i, j)};
        }
    return poly_det(a);
}

}  // namespace

TEST_CASE("mat_mul basics") {
    std::mt19937 rng(5);
    MatX a = testutil::random_int_matrix(3, 3, rng);
    CHECK(exact_equal(mat_mul(MatX(MatX::Identity(3, 3)), a), a));
    MatX swap(2, 2);
    swap << q("0"), q("1"), q("1"), q("0");
    CHECK(exact_equal(mat_mul(swap, swap), MatX(MatX::Identity(2, 2))));
    MatX bad(2, 3);
    bad.setZero();
    CHECK_THROWS_AS(mat_mul(bad, bad), DimensionMismatch);
}

TEST_CASE("dense_inverse trivial cases") {
    CHECK(exact_equal(dense_inverse(MatX(MatX::Identity(3, 3))), MatX(MatX::Identity(3, 3))));
    MatX d(2, 2);
    d << q("2"), q("0"), q("0"), q("4");
    MatX expect(2, 2);
    expect << q("1/2"), q("0"), q("0"), q("1/4");
    CHECK(exact_equal(dense_inverse(d), expect));
}

TEST_CASE("dense_inverse matches the printed chain-example inverse exactly") {
    MatX m = testutil::chain_example_matrix();
    CHECK(exact_equal(dense_inverse(m), testutil::chain_example_inverse()));
}

TEST_CASE("dense_inverse roundtrips") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        MatX a = testutil::random_int_matrix(6, 6, rng);
        MatX inv;
        try {
            inv = dense_inverse(a);
        } catch (const Singular&) {
            continue;  // exact-singular random draws are fine to skip
        }
        CHECK(exact_equal(mat_mul(a, inv), MatX(MatX::Identity(6, 6))));
        CHECK(exact_equal(mat_mul(inv, a), MatX(MatX::Identity(6, 6))));
    }
    for (int trial = 0; trial < 6; ++trial) {
        int n = 8 + (trial % 3) * 2;  // up to 12x12
        MatF a = testutil::random_float_matrix(n, n, rng);
        a += MatF(MatF::Identity(n, n)) * CF(3.0, 0.0);  // keep well-conditioned
        MatF inv = dense_inverse(a);
        double resid = max_abs_diff(MatF(a * inv), MatF(MatF::Identity(n, n)));
        CHECK(resid <= 1e-10 * max_abs(a));
    }
}

TEST_CASE("dense_inverse rejects singular input") {
    MatX z(2, 2);
    z << q("1"), q("1"), q("1"), q("1");
    CHECK_THROWS_AS(dense_inverse(z), Singular);
    MatF f(2, 2);
    f << CF(1.0), CF(1.0), CF(1.0), CF(1.0 + 1e-16);
    CHECK_THROWS_AS(dense_inverse(f), Singular);
    MatX rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(dense_inverse(rect), NonSquare);
}

TEST_CASE("ratmat_inverse trivial cases") {
    using RF = RatFnX;
    RF z = RF::variable();
    RF one(1);
    RatMat a(1, 1);
    a(0, 0) = one / (one - z);
    RatMat inv = ratmat_inverse(a);
    CHECK(inv(0, 0) == one - z);

    RatMat d(2, 2);
    d.setZero();
    d(0, 0) = z;
    d(1, 1) = z * z;
    RatMat dinv = ratmat_inverse(d);
    CHECK(dinv(0, 0) == one / z);
    CHECK(dinv(1, 1) == one / (z * z));
    CHECK(dinv(0, 1).is_zero());
}

TEST_CASE("ratmat_inverse roundtrips and specializes") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 3;
        RatMat a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                PolyX num{GaussianRational(d(rng)), GaussianRational(d(rng))};
                PolyX den{GaussianRational(1), GaussianRational(d(rng))};
                a(i, j) = RatFnX(num, den);
            }
        RatMat inv;
        try {
            inv = ratmat_inverse(a);
        } catch (const SingularOverField&) {
            continue;
        }
        RatMat prod = a * inv;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(prod(i, j) == (i == j ? RatFnX(1) : RatFnX()));

        // specialization: inverting then evaluating = evaluating then inverting
        GaussianRational z0 = q("1/3");
        bool pole = false;
        for (int i = 0; i < n && !pole; ++i)
            for (int j = 0; j < n && !pole; ++j)
                if (ScalarTraits<GaussianRational>::is_zero(a(i, j).den().eval(z0)) ||
                    ScalarTraits<GaussianRational>::is_zero(inv(i, j).den().eval(z0)))
                    pole = true;
        if (pole) continue;
        MatX at_point = eval_ratmat(a, z0);
        MatX inv_at_point = eval_ratmat(inv, z0);
        CHECK(exact_equal(dense_inverse(at_point), inv_at_point));
    }
}

TEST_CASE("ratmat_inverse rejects rank-deficient input") {
    RatFnX z = RatFnX::variable();
    RatMat a(2, 2);
    a(0, 0) = z;
    a(0, 1) = z;
    a(1, 0) = z;
    a(1, 1) = z;
    CHECK_THROWS_AS(ratmat_inverse(a), SingularOverField);
}

TEST_CASE("permute_symmetric") {
    MatX m(2, 2);
    m << q("1"), q("2"), q("3"), q("4");  // [[a,b],[c,d]]
    MatX swapped = permute_symmetric(m, {1, 0});
    MatX expect(2, 2);
    expect << q("4"), q("3"), q("2"), q("1");
    CHECK(exact_equal(swapped, expect));
    CHECK(exact_equal(permute_symmetric(m, {0, 1}), m));
    CHECK_THROWS_AS(permute_symmetric(m, {0, 0}), InvalidPermutation);
    CHECK_THROWS_AS(permute_symmetric(m, {0, 2}), InvalidPermutation);
    CHECK_THROWS_AS(permute_symmetric(m, {0}), InvalidPermutation);
}

TEST_CASE("conjugation by a permutation preserves the characteristic polynomial") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        MatX m = testutil::random_int_matrix(4, 4, rng);
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(charpoly(m) == charpoly(permute_symmetric(m, perm)));
    }
}
