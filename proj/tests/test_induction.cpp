#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hgk/constructions.hpp"
#include "hgk/induction.hpp"
#include "hgk/iso.hpp"
#include "test_support.hpp"

using namespace hgk;

namespace {

Subhypergroup whole(const Hypergroup& H) {
    std::vector<int> all(H.size());
    for (int i = 0; i < H.size(); ++i) all[i] = i;
    return Subhypergroup{all};
}

bool tensors_equal_real(const RealHypergroup& A, const Hypergroup& B, double tol) {
    if (A.size() != B.size()) return false;
    for (int i = 0; i < A.size(); ++i)
        for (int j = 0; j < A.size(); ++j)
            for (int k = 0; k < A.size(); ++k)
                if (std::abs(A.c(i, j, k) - to_double(B.c(i, j, k))) > tol) return false;
    return true;
}

} // namespace

TEST_CASE("context with the full subhypergroup has singleton fibers") {
    auto H = cyclic_group(6);
    auto ctx = build_context(H, whole(H));
    CHECK(ctx.perp == std::vector<int>{0});
    for (const auto& fiber : ctx.fibers) CHECK(fiber.size() == 1);
    // induction is then just the point mass
    for (int t = 0; t < ctx.table_H0.rows(); ++t) {
        auto m = induce(ctx, t);
        for (int r = 0; r < ctx.table_H.rows(); ++r)
            CHECK(m[r] == doctest::Approx(r == ctx.fiber_rep[t] ? 1.0 : 0.0).epsilon(1e-9));
    }
}

TEST_CASE("context with the trivial subhypergroup has a single full fiber") {
    auto H = cyclic_group(6);
    auto ctx = build_context(H, Subhypergroup{{0}});
    CHECK(ctx.perp.size() == 6);
    REQUIRE(ctx.fibers.size() == 1);
    CHECK(ctx.fibers[0].size() == 6);
    // inducing the only character gives the uniform measure on the dual group
    auto m = induce(ctx, 0);
    for (double v : m) CHECK(v == doctest::Approx(1.0 / 6).epsilon(1e-9));
}

TEST_CASE("fibers of the index-two subgroup pair up the characters") {
    auto H = cyclic_group(6);
    auto ctx = build_context(H, Subhypergroup{{0, 2, 4}});
    CHECK(ctx.perp.size() == 2);
    REQUIRE(ctx.fibers.size() == 3);
    for (const auto& fiber : ctx.fibers) CHECK(fiber.size() == 2);
    // each induced measure is uniform on its two-element fiber
    for (int t = 0; t < 3; ++t) {
        auto m = induce(ctx, t);
        double mass = 0.0;
        for (int r : ctx.fibers[t]) {
            CHECK(m[r] == doctest::Approx(0.5).epsilon(1e-9));
            mass += m[r];
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("induced measures are invariant under the annihilator") {
    auto H = cyclic_group(12);
    auto ctx = build_context(H, Subhypergroup{{0, 4, 8}});
    for (int t = 0; t < ctx.table_H0.rows(); ++t) {
        auto m = induce(ctx, t);
        auto mm = convolve(RealMeasure(ctx.dual_H.hypergroup, m),
                           RealMeasure(ctx.dual_H.hypergroup, ctx.omega_perp));
        for (int r = 0; r < ctx.table_H.rows(); ++r)
            CHECK(mm[r] == doctest::Approx(m[r]).epsilon(1e-9));
    }
}

TEST_CASE("inducing a product against the trivial factor") {
    auto H = cyclic_group(6);
    auto ctx = build_context(H, Subhypergroup{{0, 2, 4}});
    for (int t = 0; t < 3; ++t) {
        auto lhs = induce_product(ctx, 0, t);
        auto rhs = induce(ctx, t);
        for (int r = 0; r < 6; ++r) CHECK(lhs[r] == doctest::Approx(rhs[r]).epsilon(1e-9));
    }
}

TEST_CASE("inducing a product with the conjugate lands the right identity mass") {
    auto H = cyclic_group(6);
    auto ctx = build_context(H, Subhypergroup{{0, 2, 4}});
    for (int t = 0; t < 3; ++t) {
        auto m = induce_product(ctx, t, ctx.table_H0.conj_row(t));
        // tau * conj(tau) contains the trivial subgroup character once, and the
        // induced trivial fiber spreads uniformly over the annihilator.
        CHECK(m[0] == doctest::Approx(1.0 / ctx.perp.size()).epsilon(1e-9));
    }
}

TEST_CASE("two-sheet object for the index-two pair validates and has nine points") {
    auto H = cyclic_group(6);
    auto ctx = build_context(H, Subhypergroup{{0, 2, 4}});
    auto ts = build_two_sheet(ctx, parse_rational("1/2"));
    CHECK(ts.hypergroup.size() == 9);
    CHECK(ts.n_circ == 6);
    CHECK(ts.n_bullet == 3);
}

TEST_CASE("two-sheet rule for the bullet product of trivial characters") {
    Rat q = parse_rational("1/3");
    auto H = cyclic_group(6);
    auto ctx = build_context(H, Subhypergroup{{0, 2, 4}});
    auto ts = build_two_sheet(ctx, q);
    int b0 = ts.bullet(0);
    // q part: induced trivial fiber = omega_perp on the circle sheet
    for (int r = 0; r < ts.n_circ; ++r)
        CHECK(ts.hypergroup.c(b0, b0, r) ==
              doctest::Approx(to_double(q) * ctx.omega_perp[r]).epsilon(1e-9));
    // (1-q) part: trivial bullet product stays at the trivial bullet
    CHECK(ts.hypergroup.c(b0, b0, b0) == doctest::Approx(1.0 - to_double(q)).epsilon(1e-9));
}

TEST_CASE("boundary parameter q = 1 keeps the two-sheet object valid") {
    auto H = cyclic_group(6);
    auto ctx_full = build_context(H, whole(H));
    CHECK(build_two_sheet(ctx_full, Rat(1)).hypergroup.size() == 12);
    auto ctx = build_context(H, Subhypergroup{{0, 2, 4}});
    CHECK(build_two_sheet(ctx, Rat(1)).hypergroup.size() == 9);
}

TEST_CASE("q outside (0,1] is rejected") {
    auto H = cyclic_group(6);
    auto ctx = build_context(H, Subhypergroup{{0, 2, 4}});
    CHECK_THROWS_AS((void)build_two_sheet(ctx, Rat(0)), Error);
    CHECK_THROWS_AS((void)build_two_sheet(ctx, parse_rational("5/4")), Error);
}

TEST_CASE("degenerate pair H0 = H gives the product with the deformation") {
    Rat q = parse_rational("1/2");
    auto H = cyclic_group(4);
    auto ctx = build_context(H, whole(H));
    auto ts = build_two_sheet(ctx, q);
    // perp is trivial, so the extension side is a plain direct product
    auto expected = direct_product(dual_hypergroup(ctx.table_H).hypergroup,
                                   to_real(zq_family(2, q)));
    auto iso = find_isomorphism(ts.hypergroup, expected, 1e-9);
    CHECK(iso.has_value());
    CHECK(verify_sheet_isomorphism(ctx, q).ok());
    // and its dual is the product on the primal side
    auto K53 = dual_side_extension(H, whole(H), q);
    CHECK(tensors_equal_real(to_real(K53.hypergroup), direct_product(zq_family(2, q), H), 1e-12));
    CHECK(verify_sheet_dual(ctx, q).ok());
}

TEST_CASE("degenerate pair H0 = {e} gives the join with the deformation") {
    Rat q = parse_rational("1/2");
    auto H = cyclic_group(4);
    auto ctx = build_context(H, Subhypergroup{{0}});
    auto ts = build_two_sheet(ctx, q);
    auto expected = join(dual_hypergroup(ctx.table_H).hypergroup, to_real(zq_family(2, q)));
    auto iso = find_isomorphism(ts.hypergroup, expected, 1e-9);
    CHECK(iso.has_value());
    CHECK(verify_sheet_isomorphism(ctx, q).ok());
    auto K53 = dual_side_extension(H, Subhypergroup{{0}}, q);
    CHECK(tensors_equal_real(to_real(K53.hypergroup), join(zq_family(2, q), H), 1e-12));
    CHECK(verify_sheet_dual(ctx, q).ok());
}

TEST_CASE("sheet isomorphism and dual for the index-two pair") {
    auto H = cyclic_group(6);
    auto ctx = build_context(H, Subhypergroup{{0, 2, 4}});
    for (const char* qs : {"1/2", "1"}) {
        Rat q = parse_rational(qs);
        CHECK(verify_sheet_isomorphism(ctx, q).ok());
        CHECK(verify_sheet_dual(ctx, q).ok());
    }
}

TEST_CASE("restriction and induction identities on the named pairs") {
    struct Pair {
        int N;
        int d;
    };
    for (auto [N, d] : {Pair{6, 3}, Pair{6, 2}, Pair{12, 4}}) {
        INFO(N << "/" << d);
        auto H = cyclic_group(N);
        auto ctx = build_context(H, cyclic_subgroup(H, d));
        auto rep = res_ind_identities(ctx);
        CHECK(rep.ok());
    }
}

TEST_CASE("the whole pipeline also runs on a deformation pair") {
    // a hypergroup (not group) host: the join of Z2 with the deformation
    auto H = join(cyclic_group(2), zq_family(2, parse_rational("1/2")));
    auto ctx = build_context(H, Subhypergroup{{0, 1}});
    CHECK(verify_sheet_isomorphism(ctx, parse_rational("1/2")).ok());
    CHECK(verify_sheet_dual(ctx, parse_rational("1/2")).ok());
    CHECK(res_ind_identities(ctx).ok());
}
