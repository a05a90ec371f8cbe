#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hgk/constructions.hpp"
#include "hgk/hypergroup.hpp"
#include "test_support.hpp"

using namespace hgk;
using hgk::testing::base_catalog;
using hgk::testing::full_catalog;

TEST_CASE("validation accepts the order-two deformation and the cyclic group") {
    CHECK(Hypergroup::validate(zq_family_raw(2, parse_rational("1/2"))).ok);
    CHECK(Hypergroup::validate(cyclic_group(3).raw()).ok);
}

TEST_CASE("validation pinpoints the negative weight for q = 3/2") {
    auto report = Hypergroup::validate(zq_family_raw(2, parse_rational("3/2")));
    CHECK_FALSE(report.ok);
    bool found = false;
    for (const auto& v : report.violations)
        found = found || (v.axiom == "nonnegative" && v.indices == std::vector<int>{1, 1, 1});
    CHECK(found);
}

TEST_CASE("validation rejects q = 0 through the identity-support axiom") {
    auto report = Hypergroup::validate(zq_family_raw(2, Rat(0)));
    CHECK_FALSE(report.ok);
    bool found = false;
    for (const auto& v : report.violations) found = found || v.axiom == "support";
    CHECK(found);
}

TEST_CASE("shape errors are malformed input, not axiom failures") {
    RawHypergroup raw = zq_family_raw(2, parse_rational("1/2"));
    raw.tensor.pop_back();
    CHECK_THROWS_AS((void)Hypergroup::validate(raw), Error);
    RawHypergroup bad_inv = zq_family_raw(2, parse_rational("1/2"));
    bad_inv.involution = {0, 0};
    CHECK_THROWS_AS((void)Hypergroup::validate(bad_inv), Error);
}

TEST_CASE("unit convolution is the identity") {
    for (const auto& entry : base_catalog()) {
        const auto& H = entry.hypergroup;
        for (int x = 0; x < H.size(); ++x) {
            auto m = convolve(H.dirac(H.identity()), H.dirac(x));
            for (int k = 0; k < H.size(); ++k) CHECK(m[k] == (k == x ? Rat(1) : Rat(0)));
        }
    }
}

TEST_CASE("deformed point product follows the q-rule") {
    Rat q = parse_rational("1/2");
    auto H = zq_family(2, q);
    auto m = convolve(H.dirac(1), H.dirac(1));
    CHECK(m[0] == q);
    CHECK(m[1] == 1 - q);
}

TEST_CASE("cyclic group convolution adds indices") {
    auto H = cyclic_group(6);
    auto m = convolve(H.dirac(2), H.dirac(3));
    for (int k = 0; k < 6; ++k) CHECK(m[k] == (k == 5 ? Rat(1) : Rat(0)));
}

TEST_CASE("probability in, probability out") {
    std::mt19937_64 rng(7);
    for (const auto& entry : base_catalog()) {
        const auto& H = entry.hypergroup;
        auto random_prob = [&] {
            std::vector<Rat> w(H.size(), Rat(0));
            Rat total(0);
            for (int i = 0; i < H.size(); ++i) {
                w[i] = Rat(static_cast<long>(rng() % 7)) / 7;
                total += w[i];
            }
            if (sgn(total) == 0) {
                w[0] = 1;
                total = 1;
            }
            for (auto& v : w) v /= total;
            return Measure(H, std::move(w));
        };
        auto a = random_prob();
        auto b = random_prob();
        CHECK(convolve(a, b).total() == Rat(1));
    }
}

TEST_CASE("convolution requires a shared host") {
    auto A = cyclic_group(3);
    auto B = cyclic_group(3);
    CHECK_THROWS_AS((void)convolve(A.dirac(0), B.dirac(0)), Error);
}

TEST_CASE("Haar measure of the group case is uniform") {
    auto H = cyclic_group(2);
    auto w = haar_measure(H);
    CHECK(w[0] == Rat(1) / 2);
    CHECK(w[1] == Rat(1) / 2);
}

TEST_CASE("Haar weights of the order-two deformation") {
    // Solving delta_x * w = w by hand gives unnormalized weights (1, 1/q).
    auto H = zq_family(2, parse_rational("1/2"));
    auto w = haar_measure(H);
    CHECK(w[0] == Rat(1) / 3);
    CHECK(w[1] == Rat(2) / 3);
}

TEST_CASE("Haar measure of a product is the product of Haar measures") {
    auto A = zq_family(2, parse_rational("1/2"));
    auto B = cyclic_group(3);
    auto P = direct_product(A, B);
    auto wa = haar_measure(A);
    auto wb = haar_measure(B);
    auto wp = haar_measure(P);
    for (int b = 0; b < B.size(); ++b)
        for (int a = 0; a < A.size(); ++a) CHECK(wp[b * A.size() + a] == wa[a] * wb[b]);
}

TEST_CASE("Haar matches the reciprocal identity-mass oracle on the catalog") {
    for (const auto& entry : full_catalog()) {
        const auto& H = entry.hypergroup;
        INFO(entry.label);
        std::vector<Rat> oracle(H.size());
        Rat total(0);
        for (int x = 0; x < H.size(); ++x) {
            oracle[x] = 1 / H.c(x, H.inv(x), H.identity());
            total += oracle[x];
        }
        auto w = haar_measure(H);
        for (int x = 0; x < H.size(); ++x) CHECK(w[x] == oracle[x] / total);
    }
}

TEST_CASE("Haar is invariant under every translation") {
    for (const auto& entry : base_catalog()) {
        const auto& H = entry.hypergroup;
        auto w = haar_measure(H);
        for (int x = 0; x < H.size(); ++x) {
            auto t = convolve(H.dirac(x), w);
            for (int k = 0; k < H.size(); ++k) CHECK(t[k] == w[k]);
        }
    }
}

TEST_CASE("idempotent of the trivial subhypergroup is the unit mass") {
    auto H = cyclic_group(6);
    auto e = idempotent_of_subhypergroup(H, Subhypergroup{{0}});
    for (int k = 0; k < 6; ++k) CHECK(e[k] == (k == 0 ? Rat(1) : Rat(0)));
}

TEST_CASE("idempotent of the order-3 subgroup is uniform on it") {
    auto H = cyclic_group(6);
    auto e = idempotent_of_subhypergroup(H, Subhypergroup{{0, 2, 4}});
    for (int k = 0; k < 6; ++k) CHECK(e[k] == ((k % 2 == 0) ? Rat(1) / 3 : Rat(0)));
}

TEST_CASE("idempotent of the full deformation equals its Haar measure") {
    auto H = zq_family(2, parse_rational("1/2"));
    auto e = idempotent_of_subhypergroup(H, Subhypergroup{{0, 1}});
    CHECK(e[0] == Rat(1) / 3);
    CHECK(e[1] == Rat(2) / 3);
}

TEST_CASE("idempotent identities e*e = e and delta_s * e = e") {
    auto H = cyclic_group(6);
    for (const auto& members : {std::vector<int>{0}, {0, 3}, {0, 2, 4}, {0, 1, 2, 3, 4, 5}}) {
        Subhypergroup S{members};
        auto e = idempotent_of_subhypergroup(H, S);
        auto ee = convolve(e, e);
        for (int k = 0; k < 6; ++k) CHECK(ee[k] == e[k]);
        for (int s : members) {
            auto se = convolve(H.dirac(s), e);
            for (int k = 0; k < 6; ++k) CHECK(se[k] == e[k]);
        }
    }
}

TEST_CASE("idempotent rejects non-subhypergroups") {
    auto H = cyclic_group(6);
    CHECK_THROWS_AS((void)idempotent_of_subhypergroup(H, Subhypergroup{{0, 1}}), Error);
}

TEST_CASE("point-mass convolution is associative across the catalog") {
    for (const auto& entry : full_catalog()) {
        const auto& H = entry.hypergroup;
        INFO(entry.label);
        bool ok = true;
        for (int i = 0; i < H.size() && ok; ++i)
            for (int j = 0; j < H.size() && ok; ++j)
                for (int k = 0; k < H.size() && ok; ++k) {
                    auto lhs = convolve(convolve(H.dirac(i), H.dirac(j)), H.dirac(k));
                    auto rhs = convolve(H.dirac(i), convolve(H.dirac(j), H.dirac(k)));
                    for (int t = 0; t < H.size(); ++t) ok = ok && lhs[t] == rhs[t];
                }
        CHECK(ok);
    }
}

TEST_CASE("random measures convolve associatively and bilinearly") {
    std::mt19937_64 rng(42);
    for (const auto& entry : base_catalog()) {
        const auto& H = entry.hypergroup;
        auto random_measure = [&] {
            std::vector<Rat> w(H.size(), Rat(0));
            for (int i = 0; i < H.size(); ++i) w[i] = Rat(static_cast<long>(rng() % 5)) / 4;
            return Measure(H, std::move(w));
        };
        for (int trial = 0; trial < 4; ++trial) {
            auto a = random_measure();
            auto b = random_measure();
            auto c = random_measure();
            auto lhs = convolve(convolve(a, b), c);
            auto rhs = convolve(a, convolve(b, c));
            for (int k = 0; k < H.size(); ++k) CHECK(lhs[k] == rhs[k]);
            // bilinearity against a split of b
            std::vector<Rat> half(b.weights());
            for (auto& v : half) v /= 2;
            auto b2 = Measure(H, half);
            auto split = convolve(a, b2);
            auto full = convolve(a, b);
            for (int k = 0; k < H.size(); ++k) CHECK(split[k] * 2 == full[k]);
        }
    }
}

TEST_CASE("identity mass appears exactly on involution pairs") {
    for (const auto& entry : full_catalog()) {
        const auto& H = entry.hypergroup;
        INFO(entry.label);
        for (int i = 0; i < H.size(); ++i)
            for (int j = 0; j < H.size(); ++j)
                CHECK((sgn(H.c(i, j, H.identity())) > 0) == (j == H.inv(i)));
    }
}
