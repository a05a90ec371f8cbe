#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgk/constructions.hpp"
#include "hgk/hypergroup.hpp"
#include "test_support.hpp"

using namespace hgk;

namespace {

bool tensors_equal(const Hypergroup& A, const Hypergroup& B) {
    if (A.size() != B.size()) return false;
    for (int i = 0; i < A.size(); ++i)
        for (int j = 0; j < A.size(); ++j)
            for (int k = 0; k < A.size(); ++k)
                if (A.c(i, j, k) != B.c(i, j, k)) return false;
    return A.identity() == B.identity() && A.involution() == B.involution();
}

} // namespace

TEST_CASE("subhypergroup enumeration of the order-two deformation") {
    auto H = zq_family(2, parse_rational("1/2"));
    auto subs = enumerate_subhypergroups(H);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].members == std::vector<int>{0});
    CHECK(subs[1].members == std::vector<int>{0, 1});
}

TEST_CASE("subhypergroup lattice of the cyclic group of order six") {
    auto H = cyclic_group(6);
    auto subs = enumerate_subhypergroups(H);
    REQUIRE(subs.size() == 4);
    CHECK(subs[0].members == std::vector<int>{0});
    CHECK(subs[1].members == std::vector<int>{0, 3});
    CHECK(subs[2].members == std::vector<int>{0, 2, 4});
    CHECK(subs[3].members == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("enumeration respects the size bound") {
    Config cfg;
    cfg.enumeration_size_bound = 4;
    CHECK_THROWS_AS((void)enumerate_subhypergroups(cyclic_group(6), cfg), Error);
}

TEST_CASE("a join always contains the compact factor as a subhypergroup") {
    auto H = cyclic_group(4);
    auto L = zq_family(2, parse_rational("1/2"));
    auto J = join(H, L);
    std::vector<int> front(H.size());
    for (int i = 0; i < H.size(); ++i) front[i] = i;
    CHECK(is_subhypergroup(J, front));
}

TEST_CASE("generated subhypergroups") {
    auto H = cyclic_group(6);
    CHECK(generated_subhypergroup(H, {}).members == std::vector<int>{0});
    CHECK(generated_subhypergroup(H, {2}).members == std::vector<int>{0, 2, 4});
    CHECK(generated_subhypergroup(H, {3, 2}).members == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("quotient by the trivial subhypergroup returns the original") {
    auto H = zq_family(3, parse_rational("1/2"));
    auto Q = quotient(H, Subhypergroup{{0}});
    CHECK(Q.target.size() == H.size());
    for (int i = 0; i < H.size(); ++i)
        for (int j = 0; j < H.size(); ++j)
            for (int k = 0; k < H.size(); ++k) CHECK(Q.target.c(i, j, k) == H.c(i, j, k));
}

TEST_CASE("cyclic quotient is the cyclic group of the index") {
    auto H = cyclic_group(6);
    auto Q = quotient(H, Subhypergroup{{0, 2, 4}});
    CHECK(tensors_equal(Q.target, cyclic_group(2)));
    CHECK(Q.class_of == std::vector<int>{0, 1, 0, 1, 0, 1});
}

TEST_CASE("quotient by everything is trivial") {
    auto H = zq_family(2, parse_rational("1/2"));
    auto Q = quotient(H, Subhypergroup{{0, 1}});
    CHECK(Q.target.size() == 1);
}

TEST_CASE("projection commutes with convolution") {
    auto H = cyclic_group(12);
    auto Q = quotient(H, Subhypergroup{{0, 4, 8}});
    for (int a = 0; a < H.size(); ++a)
        for (int b = 0; b < H.size(); ++b) {
            auto prod = convolve(H.dirac(a), H.dirac(b));
            std::vector<Rat> pushed(Q.target.size(), Rat(0));
            for (int x = 0; x < H.size(); ++x) pushed[Q.class_of[x]] += prod[x];
            auto qprod = convolve(Q.target.dirac(Q.class_of[a]), Q.target.dirac(Q.class_of[b]));
            for (int c = 0; c < Q.target.size(); ++c) CHECK(pushed[c] == qprod[c]);
        }
}

TEST_CASE("product of two copies of the two-element group is the Klein four-group") {
    auto Z2 = cyclic_group(2);
    auto P = direct_product(Z2, Z2);
    REQUIRE(P.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(P.inv(i) == i);
        CHECK(P.c(i, i, 0) == Rat(1));
    }
    CHECK(P.c(1, 2, 3) == Rat(1));
}

TEST_CASE("product with the one-element hypergroup changes nothing") {
    auto H = zq_family(3, parse_rational("1/2"));
    auto P = direct_product(H, cyclic_group(1));
    REQUIRE(P.size() == H.size());
    for (int i = 0; i < H.size(); ++i)
        for (int j = 0; j < H.size(); ++j)
            for (int k = 0; k < H.size(); ++k) CHECK(P.c(i, j, k) == H.c(i, j, k));
}

TEST_CASE("join with the one-element hypergroup changes nothing") {
    auto H = zq_family(3, parse_rational("1/2"));
    auto J = join(H, cyclic_group(1));
    REQUIRE(J.size() == H.size());
    for (int i = 0; i < H.size(); ++i)
        for (int j = 0; j < H.size(); ++j)
            for (int k = 0; k < H.size(); ++k) CHECK(J.c(i, j, k) == H.c(i, j, k));
}

TEST_CASE("join of the two-element group with the deformation, expanded by hand") {
    Rat q = parse_rational("1/3");
    auto J = join(cyclic_group(2), zq_family(2, q));
    REQUIRE(J.size() == 3);
    // h * l = l for the appended element
    CHECK(J.c(0, 2, 2) == Rat(1));
    CHECK(J.c(1, 2, 2) == Rat(1));
    // l * l = q * Haar(Z2) + (1-q) * delta_l
    CHECK(J.c(2, 2, 0) == q / 2);
    CHECK(J.c(2, 2, 1) == q / 2);
    CHECK(J.c(2, 2, 2) == 1 - q);
}

TEST_CASE("the deformed family degenerates to the group at q = 1") {
    for (int n : {2, 3, 4, 5, 7}) {
        INFO(n);
        CHECK(tensors_equal(zq_family(n, Rat(1)), cyclic_group(n)));
    }
}

TEST_CASE("the order-two deformation rule") {
    Rat q = parse_rational("1/4");
    auto H = zq_family(2, q);
    CHECK(H.c(1, 1, 0) == q);
    CHECK(H.c(1, 1, 1) == 1 - q);
    CHECK(H.inv(1) == 1);
}

TEST_CASE("order-three deformation validates and follows the derived rule") {
    Rat q = parse_rational("1/2");
    auto H = zq_family(3, q); // construction itself re-validates
    Rat b = (1 - q) / 2;
    CHECK(H.c(1, 1, 1) == b);
    CHECK(H.c(1, 1, 2) == 1 - b);
    CHECK(H.c(1, 2, 0) == q);
    CHECK(H.c(1, 2, 1) == b);
    CHECK(H.inv(1) == 2);
}

TEST_CASE("order-four deformation validates across parameters") {
    for (const char* q : {"1/5", "1/2", "2/3", "9/10"})
        CHECK(zq_family(4, parse_rational(q)).size() == 4);
}

TEST_CASE("no deformation is available for n >= 5 below q = 1") {
    CHECK_THROWS_AS((void)zq_family(5, parse_rational("1/2")), Error);
    try {
        (void)zq_family(5, parse_rational("1/2"));
    } catch (const Error& e) {
        CHECK(e.code() == errc::axiom_failure);
    }
}

TEST_CASE("out-of-range q fails the axiom gate") {
    CHECK_THROWS_AS((void)zq_family(2, Rat(0)), Error);
    CHECK_THROWS_AS((void)zq_family(2, parse_rational("3/2")), Error);
}

TEST_CASE("orbit under the trivial action is the original hypergroup") {
    auto H = cyclic_group(2);
    std::vector<int> identity_map = {0, 1};
    CHECK(tensors_equal(orbit_hypergroup(H, {identity_map}), H));
}

TEST_CASE("negation orbit of the five-element group against direct enumeration") {
    auto H = cyclic_group(5);
    auto O = orbit_hypergroup(H, {negation_of_cyclic(5)});
    REQUIRE(O.size() == 3);

    // Independent oracle: average the group convolutions over orbit members.
    std::vector<std::vector<int>> orbits = {{0}, {1, 4}, {2, 3}};
    auto orbit_of = [&](int x) { return x == 0 ? 0 : (x == 1 || x == 4 ? 1 : 2); };
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            std::vector<Rat> expect(3, Rat(0));
            for (int x : orbits[a])
                for (int y : orbits[b])
                    expect[orbit_of((x + y) % 5)] +=
                        Rat(1) / Rat(static_cast<long>(orbits[a].size() * orbits[b].size()));
            for (int c = 0; c < 3; ++c) CHECK(O.c(a, b, c) == expect[c]);
        }
    // Spot value: {1,4} * {1,4} = 1/2 {0} + 1/2 {2,3}
    CHECK(O.c(1, 1, 0) == Rat(1) / 2);
    CHECK(O.c(1, 1, 2) == Rat(1) / 2);
}

TEST_CASE("orbit element count equals the orbit count") {
    auto H = cyclic_group(6);
    auto orbits = orbit_partition(H, {negation_of_cyclic(6)});
    CHECK(orbits.size() == 4);
    CHECK(orbit_hypergroup(H, {negation_of_cyclic(6)}).size() == 4);
}

TEST_CASE("maps that break the structure constants are rejected") {
    auto H = cyclic_group(3);
    std::vector<int> swap01 = {1, 0, 2};
    CHECK_THROWS_AS((void)orbit_hypergroup(H, {swap01}), Error);
}

TEST_CASE("every construction output revalidates exactly") {
    for (const auto& entry : hgk::testing::full_catalog()) {
        INFO(entry.label);
        CHECK(Hypergroup::validate(entry.hypergroup.raw()).ok);
    }
}
