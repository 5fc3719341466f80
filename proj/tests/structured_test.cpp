#include "doctest.h"

#include <complex>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pathsum/dressing.hpp"
#include "pathsum/functions.hpp"
#include "pathsum/reference.hpp"
#include "pathsum/structured.hpp"
#include "test_helpers.hpp"

using namespace pathsum;
using namespace testutil;

using C = std::complex<double>;
using Edges = std::vector<std::pair<int, int>>;

namespace {

// random exact chain with per-vertex dims; diagonally shifted to be invertible
LnBlocks<GaussianRational> random_chain(const std::vector<int>& dims, std::mt19937& rng, int shift) {
    LnBlocks<GaussianRational> b;
    for (int d : dims) {
        MatX m = random_int_matrix(d, d, rng);
        for (int i = 0; i < d; ++i) m(i, i) = m(i, i) + GaussianRational(shift);
        b.statics.push_back(m);
    }
    for (size_t k = 0; k + 1 < dims.size(); ++k) {
        b.super.push_back(random_int_matrix(dims[k], dims[k + 1], rng));
        b.sub.push_back(random_int_matrix(dims[k + 1], dims[k], rng));
    }
    return b;
}

std::vector<std::vector<int>> contiguous_groups(const std::vector<int>& dims) {
    std::vector<std::vector<int>> groups;
    int at = 0;
    for (int d : dims) {
        std::vector<int> g;
        for (int i = 0; i < d; ++i) g.push_back(at++);
        groups.push_back(g);
    }
    return groups;
}

// decode a Prufer code into tree edges
Edges prufer_tree(const std::vector<int>& code, int n) {
    std::vector<int> degree(static_cast<size_t>(n), 1);
    for (int v : code) degree[static_cast<size_t>(v)]++;
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (degree[static_cast<size_t>(v)] == 1) leaves.insert(v);
    Edges edges;
    for (int v : code) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(leaf, v);
        if (--degree[static_cast<size_t>(v)] == 1) leaves.insert(v);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    edges.emplace_back(a, b);
    return edges;
}

// tree-structured exact matrix: nonzero blocks exactly on tree edges
MatX tree_matrix(const std::vector<int>& dims, const Edges& edges, std::mt19937& rng, int shift,
                 std::vector<std::vector<int>>* groups_out) {
    const int n = static_cast<int>(dims.size());
    std::vector<int> offset(static_cast<size_t>(n) + 1, 0);
    for (int k = 0; k < n; ++k) offset[static_cast<size_t>(k) + 1] = offset[static_cast<size_t>(k)] + dims[static_cast<size_t>(k)];
    MatX m = MatX::Zero(offset.back(), offset.back());
    auto nonzero_block = [&](int rows, int cols) {
        MatX blk = random_int_matrix(rows, cols, rng, 1, 4);
        return blk;
    };
    for (int k = 0; k < n; ++k) {
        MatX d = random_int_matrix(dims[static_cast<size_t>(k)], dims[static_cast<size_t>(k)], rng);
        for (int i = 0; i < dims[static_cast<size_t>(k)]; ++i) d(i, i) = d(i, i) + GaussianRational(shift);
        m.block(offset[static_cast<size_t>(k)], offset[static_cast<size_t>(k)], dims[static_cast<size_t>(k)],
                dims[static_cast<size_t>(k)]) = d;
    }
    for (const auto& [u, v] : edges) {
        m.block(offset[static_cast<size_t>(u)], offset[static_cast<size_t>(v)], dims[static_cast<size_t>(u)],
                dims[static_cast<size_t>(v)]) = nonzero_block(dims[static_cast<size_t>(u)], dims[static_cast<size_t>(v)]);
        m.block(offset[static_cast<size_t>(v)], offset[static_cast<size_t>(u)], dims[static_cast<size_t>(v)],
                dims[static_cast<size_t>(u)]) = nonzero_block(dims[static_cast<size_t>(v)], dims[static_cast<size_t>(u)]);
    }
    *groups_out = contiguous_groups(dims);
    return m;
}

const Edges kFiveTree = {{0, 1}, {1, 2}, {2, 3}, {2, 4}};  // vertex 2 carries three branches

}  // namespace

TEST_CASE("chain blocks extract and validate") {
    MatX m = chain_example_matrix();
    const std::vector<std::vector<int>> groups = {{0}, {2, 4}, {1, 3}};
    LnBlocks<GaussianRational> b = ln_blocks(m, groups);
    REQUIRE(b.size() == 3);
    CHECK(b.dim(0) == 1);
    CHECK(b.dim(1) == 2);
    CHECK(b.dim(2) == 2);
    CHECK(b.total_dim() == 5);

    auto p = general_partition(m, groups);
    CHECK(exact_equal(b.super[0], p.block(0, 1)));
    CHECK(exact_equal(b.sub[1], p.block(2, 1)));

    // a grouping that leaves a far block nonzero is rejected
    CHECK_THROWS_AS(ln_blocks(m, {{0}, {1, 3}, {2, 4}}), BadGroups);
}

TEST_CASE("chain resolvent: single vertex and printed-example partition") {
    std::mt19937 rng(100);
    MatX one = random_int_matrix(3, 3, rng);
    LnBlocks<GaussianRational> single;
    single.statics.push_back(one);
    const GaussianRational s0 = q("22/7");
    auto table = ln_resolvent(single, s0);
    REQUIRE(table.size() == 1);
    CHECK(exact_equal(table[0], dense_inverse(MatX(s0 * MatX::Identity(3, 3) - one))));

    MatX m = chain_example_matrix();
    const std::vector<std::vector<int>> groups = {{0}, {2, 4}, {1, 3}};
    auto chain = ln_blocks(m, groups);
    MatX mine = scatter_chain_table(ln_resolvent(chain, s0), groups, 5);
    CHECK(exact_equal(mine, ps_resolvent(m, groups, s0)));
}

TEST_CASE("chain resolvent satisfies the defining identity") {
    std::mt19937 rng(101);
    const std::vector<int> dims = {2, 2, 2, 2};
    LnBlocks<GaussianRational> b = random_chain(dims, rng, 3);
    MatX m = assemble_chain(b);
    const GaussianRational s0 = q("5/3");
    MatX u = scatter_chain_table(ln_resolvent(b, s0), contiguous_groups(dims), 8);
    CHECK(exact_equal(MatX((s0 * MatX::Identity(8, 8) - m) * u), MatX(MatX::Identity(8, 8))));

    // float chain
    MatF mf = to_float(m);
    LnBlocks<C> bf = ln_blocks(mf, contiguous_groups(dims));
    C sf(0.7, 1.3);
    MatF uf = scatter_chain_table(ln_resolvent(bf, sf), contiguous_groups(dims), 8);
    CHECK(max_abs_diff(MatF((sf * MatF::Identity(8, 8) - mf) * uf), MatF(MatF::Identity(8, 8))) <= 1e-10);
}

TEST_CASE("symbolic chain resolvent matches the pointwise one") {
    std::mt19937 rng(102);
    const std::vector<int> dims = {1, 2, 1};
    LnBlocks<GaussianRational> b = random_chain(dims, rng, 4);
    auto sym = ln_resolvent_symbolic(b);
    const GaussianRational s0 = qi("1", "2");
    auto point = ln_resolvent(b, s0);
    REQUIRE(sym.size() == point.size());
    for (size_t i = 0; i < sym.size(); ++i) CHECK(exact_equal(eval_ratmat(sym[i], s0), point[i]));
}

TEST_CASE("chain exponential") {
    std::mt19937 rng(103);
    MatX one = random_int_matrix(2, 2, rng);
    LnBlocks<GaussianRational> single;
    single.statics.push_back(one);
    auto t0 = ln_exp(single, 0.0);
    CHECK(max_abs_diff(t0[0], MatF(MatF::Identity(2, 2))) < 1e-12);
    auto t1 = ln_exp(single, 0.8);
    CHECK(max_abs_diff(t1[0], ref_exp(to_float(one), 0.8)) < 1e-11);

    const std::vector<int> dims = {2, 1, 2};
    LnBlocks<GaussianRational> b = random_chain(dims, rng, 2);
    MatX m = assemble_chain(b);
    MatF mine = scatter_chain_table(ln_exp(b, 1.0), contiguous_groups(dims), 5);
    MatF generic = ps_exp(m, contiguous_groups(dims), 1.0);
    CHECK(max_abs_diff(mine, generic) <= 1e-10);
}

TEST_CASE("chain inverse: identity, printed example, random chains") {
    LnBlocks<GaussianRational> eye;
    eye.statics.push_back(MatX::Identity(2, 2));
    eye.statics.push_back(MatX::Identity(1, 1));
    eye.super.push_back(MatX::Zero(2, 1));
    eye.sub.push_back(MatX::Zero(1, 2));
    MatX u = scatter_chain_table(ln_inverse(eye), {{0, 1}, {2}}, 3);
    CHECK(exact_equal(u, MatX(MatX::Identity(3, 3))));

    MatX m = chain_example_matrix();
    const std::vector<std::vector<int>> groups = {{0}, {2, 4}, {1, 3}};
    MatX inv = scatter_chain_table(ln_inverse(ln_blocks(m, groups)), groups, 5);
    CHECK(exact_equal(inv, chain_example_inverse()));

    std::mt19937 rng(104);
    const std::vector<int> dims = {2, 3, 1, 2};
    LnBlocks<GaussianRational> b = random_chain(dims, rng, 6);
    MatX chain = assemble_chain(b);
    CHECK(exact_equal(scatter_chain_table(ln_inverse(b), contiguous_groups(dims), 8), dense_inverse(chain)));

    LnBlocks<C> bf = ln_blocks(to_float(chain), contiguous_groups(dims));
    CHECK(max_abs_diff(scatter_chain_table(ln_inverse(bf), contiguous_groups(dims), 8),
                       dense_inverse(to_float(chain))) <= 1e-10);
}

TEST_CASE("substituted statics invert the shifted matrix, not the matrix") {
    std::mt19937 rng(105);
    const std::vector<int> dims = {2, 2, 1};
    LnBlocks<GaussianRational> b = random_chain(dims, rng, 5);
    MatX m = assemble_chain(b);
    const auto groups = contiguous_groups(dims);

    // statics I - M_k with unchanged flips: the assembled target is I - M
    MatX shifted = scatter_chain_table(ln_shifted_inverse(b), groups, 5);
    CHECK(exact_equal(shifted, dense_inverse(MatX(MatX::Identity(5, 5) - m))));

    // feeding the blocks of I - M recovers M^{-1}: the negated flips supply
    // exactly the path signs the plain-inverse expansion carries
    LnBlocks<GaussianRational> complement = ln_blocks(MatX(MatX::Identity(5, 5) - m), groups);
    MatX recovered = scatter_chain_table(ln_shifted_inverse(complement), groups, 5);
    CHECK(exact_equal(recovered, dense_inverse(m)));
    CHECK(exact_equal(recovered, scatter_chain_table(ln_inverse(b), groups, 5)));
}

TEST_CASE("tree cost: diagonal dressing counts") {
    CostReport single = tree_cost(1, {}, 0, 0);
    CHECK(single.inversions == 1);
    CHECK(single.multiplications == 0);
    CHECK(single.additions == 0);

    // five-vertex tree, dressing the three-branch vertex: one inversion per
    // vertex, two multiplications and one addition per edge cycle
    CostReport hub = tree_cost(5, kFiveTree, 2, 2);
    CHECK(hub.inversions == 5);
    CHECK(hub.multiplications == 8);
    CHECK(hub.additions == 4);
    CHECK(hub.flops(2) == (5 + 8) * 8 + 4 * 4);

    CostReport leaf = tree_cost(5, kFiveTree, 0, 0);
    CHECK(leaf.inversions == 5);
    CHECK(leaf.multiplications == 8);
    CHECK(leaf.additions == 4);
}

TEST_CASE("tree cost: diagonal cost depends only on the vertex count") {
    for (int n = 2; n <= 7; ++n) {
        long codes = 1;
        for (int i = 0; i < n - 2; ++i) codes *= n;
        for (long c = 0; c < codes; ++c) {
            std::vector<int> code(static_cast<size_t>(n - 2));
            long rem = c;
            for (int i = 0; i < n - 2; ++i) {
                code[static_cast<size_t>(i)] = static_cast<int>(rem % n);
                rem /= n;
            }
            Edges edges = prufer_tree(code, n);
            for (int v = 0; v < n; ++v) {
                CostReport r = tree_cost(n, edges, v, v);
                if (r.inversions != n || r.multiplications != 2 * (n - 1) || r.additions != n - 1) {
                    CAPTURE(n);
                    CAPTURE(c);
                    CAPTURE(v);
                    REQUIRE(false);
                }
            }
        }
        CHECK(true);
    }
}

TEST_CASE("tree cost: off-diagonal pruning") {
    // chain 0-1-2-3-4, end to end: successive dressings on 5,4,3,2,1 vertices
    Edges chain = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    CostReport r = tree_cost(5, chain, 0, 4);
    CHECK(r.inversions == 5 + 4 + 3 + 2 + 1);
    CHECK(r.multiplications == 2 * 4 + 2 * (4 + 3 + 2 + 1));
    CHECK(r.additions == 4 + 3 + 2 + 1);

    // on the five-vertex tree from 0 to 4 the path is 0-1-2-4; vertex 3 is
    // cut off once 2 is removed and is never dressed
    CostReport s = tree_cost(5, kFiveTree, 0, 4);
    CHECK(s.inversions == 5 + 4 + 3 + 1);
    CHECK(s.multiplications == 2 * 3 + (8 + 6 + 4 + 0));
    CHECK(s.additions == 4 + 3 + 2 + 0);
}

TEST_CASE("tree cost rejects non-trees") {
    CHECK_THROWS_AS(tree_cost(3, {{0, 1}, {1, 2}, {2, 0}}, 0, 0), NotATree);
    CHECK_THROWS_AS(tree_cost(4, {{0, 1}, {2, 3}}, 0, 0), NotATree);
    CHECK_THROWS_AS(tree_cost(4, {{0, 1}, {2, 3}, {3, 2}}, 0, 0), NotATree);
    CHECK_THROWS_AS(tree_cost(2, {{0, 0}}, 0, 0), NotATree);
    CHECK_THROWS_AS(tree_cost(2, {{0, 1}}, 0, 2), NotATree);
}

TEST_CASE("engine counters reproduce the cost model") {
    std::mt19937 rng(106);
    const std::vector<int> dims = {2, 1, 2, 1, 2};
    std::vector<std::vector<int>> groups;
    MatX m = tree_matrix(dims, kFiveTree, rng, 9, &groups);

    auto p = general_partition(m, groups);
    auto g = partition_graph(p, GraphVariant::OfMMinusI);
    MatX minv = dense_inverse(m);
    auto pinv = general_partition(minv, groups);

    for (int v = 0; v < 5; ++v) {
        auto ctx = make_context(g, inverse_variant<GaussianRational>(), false);
        Mat<GaussianRational> f = dress(ctx, VertexSet{}, v);
        CHECK(exact_equal(f, pinv.block(v, v)));
        CostReport model = tree_cost(5, kFiveTree, v, v);
        CHECK(ctx.counts.inversions == model.inversions);
        CHECK(ctx.counts.multiplications == model.multiplications);
        CHECK(ctx.counts.additions == model.additions);
    }

    const std::vector<std::pair<int, int>> pairs = {{0, 4}, {4, 0}, {0, 3}, {3, 1}, {1, 2}};
    for (const auto& [alpha, omega] : pairs) {
        auto ctx = make_context(g, inverse_variant<GaussianRational>(), false);
        Mat<GaussianRational> blk = path_sum_block(ctx, alpha, omega);
        CHECK(exact_equal(blk, pinv.block(omega, alpha)));
        CostReport model = tree_cost(5, kFiveTree, alpha, omega);
        CHECK(ctx.counts.inversions == model.inversions);
        CHECK(ctx.counts.multiplications == model.multiplications);
        CHECK(ctx.counts.additions == model.additions);
    }
}

TEST_CASE("chain recursion reports singular steps") {
    LnBlocks<GaussianRational> z;
    z.statics.push_back(MatX::Zero(1, 1));
    CHECK_THROWS_AS(ln_inverse(z), SingularChain);
    CHECK_THROWS_AS(ln_resolvent(z, GaussianRational(0)), SingularChain);
}
