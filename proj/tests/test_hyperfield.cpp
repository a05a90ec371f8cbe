#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgk/constructions.hpp"
#include "hgk/hyperfield.hpp"
#include "hgk/iso.hpp"
#include "test_support.hpp"

using namespace hgk;

namespace {

Hyperfield trivial_field(const Hypergroup& H, const Hypergroup& L) {
    Hyperfield f{H, L, {}};
    f.assignment.assign(L.size(), Subhypergroup{{H.identity()}});
    return f;
}

Hyperfield full_field(const Hypergroup& H, const Hypergroup& L) {
    std::vector<int> all(H.size());
    for (int i = 0; i < H.size(); ++i) all[i] = i;
    Hyperfield f{H, L, {}};
    f.assignment.assign(L.size(), Subhypergroup{all});
    f.assignment[L.identity()] = Subhypergroup{{H.identity()}};
    return f;
}

Hyperfield mixed_z6_field(const char* q, const std::vector<int>& members) {
    Hypergroup H = cyclic_group(6);
    Hyperfield f{H, zq_family(2, parse_rational(q)), {}};
    f.assignment = {Subhypergroup{{0}}, Subhypergroup{members}};
    return f;
}

bool tensors_equal(const Hypergroup& A, const Hypergroup& B) {
    if (A.size() != B.size() || A.identity() != B.identity() || A.involution() != B.involution())
        return false;
    for (int i = 0; i < A.size(); ++i)
        for (int j = 0; j < A.size(); ++j)
            for (int k = 0; k < A.size(); ++k)
                if (A.c(i, j, k) != B.c(i, j, k)) return false;
    return true;
}

} // namespace

TEST_CASE("the trivial assignment is a hyperfield") {
    auto f = trivial_field(cyclic_group(6), zq_family(2, parse_rational("1/2")));
    CHECK(validate_hyperfield(f).ok);
}

TEST_CASE("the order-3 subgroup assignment over the deformation is a hyperfield") {
    CHECK(validate_hyperfield(mixed_z6_field("1/2", {0, 2, 4})).ok);
}

TEST_CASE("a mismatched pair of subgroups violates the generation condition") {
    Hypergroup H = cyclic_group(6);
    Hyperfield f{H, zq_family(3, parse_rational("1/2")), {}};
    f.assignment = {Subhypergroup{{0}}, Subhypergroup{{0, 3}}, Subhypergroup{{0, 2, 4}}};
    auto report = validate_hyperfield(f);
    CHECK_FALSE(report.ok);
    bool witnessed = false;
    for (const auto& v : report.violations)
        witnessed = witnessed || (v.axiom == "generation" && v.indices == std::vector<int>{1, 1, 2});
    CHECK(witnessed);
}

TEST_CASE("identity and involution assignment conditions are checked") {
    Hypergroup H = cyclic_group(6);
    Hyperfield f{H, zq_family(2, parse_rational("1/2")), {}};
    f.assignment = {Subhypergroup{{0, 3}}, Subhypergroup{{0, 2, 4}}};
    auto report = validate_hyperfield(f);
    CHECK_FALSE(report.ok);
    bool witnessed = false;
    for (const auto& v : report.violations) witnessed = witnessed || v.axiom == "identity-assignment";
    CHECK(witnessed);
}

TEST_CASE("the trivial hyperfield builds the direct product, tensor-exactly") {
    auto H = cyclic_group(6);
    auto L = zq_family(2, parse_rational("1/2"));
    auto K = build_K(trivial_field(H, L));
    CHECK(tensors_equal(K.hypergroup, direct_product(H, L)));
}

TEST_CASE("the full hyperfield builds the join, tensor-exactly") {
    auto H = cyclic_group(6);
    auto L = zq_family(2, parse_rational("1/2"));
    auto K = build_K(full_field(H, L));
    CHECK(tensors_equal(K.hypergroup, join(H, L)));
}

TEST_CASE("the mixed instance has one full sheet and one quotient sheet") {
    auto K = build_K(mixed_z6_field("1/2", {0, 2, 4}));
    CHECK(K.hypergroup.size() == 8); // 6 + 6/3
    CHECK(K.sheet_offset == std::vector<int>{0, 6, 8});
    // identity and involution live where the sheet structure says
    CHECK(K.sheet_of[K.hypergroup.identity()] == 0);
    for (int g = 0; g < K.hypergroup.size(); ++g)
        CHECK(K.sheet_of[K.hypergroup.inv(g)] == K.sheet_of[g]);
}

TEST_CASE("mixed-instance masses expanded by hand") {
    // Sheet 0 is Z6; sheet 1 holds the two cosets of {0,2,4}: element 6 the
    // even coset, element 7 the odd coset (ordered by smallest representative).
    Rat q = parse_rational("1/2");
    auto K = build_K(mixed_z6_field("1/2", {0, 2, 4})).hypergroup;
    // translating a coset point by 1 flips the coset
    CHECK(K.c(1, 6, 7) == Rat(1));
    CHECK(K.c(1, 7, 6) == Rat(1));
    // coset * coset: q spreads uniformly over the target coset downstairs,
    // 1-q stays at the target coset upstairs
    for (int k : {1, 3, 5}) CHECK(K.c(6, 7, k) == q / 3);
    CHECK(K.c(6, 7, 7) == 1 - q);
    for (int k : {0, 2, 4}) CHECK(K.c(7, 7, k) == q / 3);
    CHECK(K.c(7, 7, 6) == 1 - q);
    // involution swaps nothing here: both cosets are self-inverse
    CHECK(K.inv(6) == 6);
    CHECK(K.inv(7) == 7);
}

TEST_CASE("substitution delegates to the sheeted extension") {
    auto H = cyclic_group(6);
    auto L3 = zq_family(3, parse_rational("1/2"));
    auto L2 = zq_family(2, parse_rational("1/2"));
    CHECK(tensors_equal(substitution(H, Subhypergroup{{0}}, L2), direct_product(H, L2)));
    std::vector<int> all = {0, 1, 2, 3, 4, 5};
    CHECK(tensors_equal(substitution(H, Subhypergroup{all}, L2), join(H, L2)));
    CHECK(substitution(H, Subhypergroup{{0, 2, 4}}, L3).size() == 10); // 6 + 2 + 2
}

TEST_CASE("every catalog hyperfield builds a valid extension") {
    auto H6 = cyclic_group(6);
    auto L2 = zq_family(2, parse_rational("1/2"));
    auto orbit6 = orbit_hypergroup(cyclic_group(6), {negation_of_cyclic(6)});
    std::vector<Hyperfield> fields;
    fields.push_back(trivial_field(H6, L2));
    fields.push_back(full_field(H6, L2));
    fields.push_back(mixed_z6_field("1/2", {0, 2, 4}));
    fields.push_back(mixed_z6_field("1/4", {0, 3}));
    {
        Hyperfield f{H6, zq_family(3, parse_rational("1/2")), {}};
        f.assignment = {Subhypergroup{{0}}, Subhypergroup{{0, 2, 4}}, Subhypergroup{{0, 2, 4}}};
        fields.push_back(f);
    }
    {
        Hyperfield f{orbit6, zq_family(2, parse_rational("1/2")), {}};
        f.assignment = {Subhypergroup{{0}}, Subhypergroup{{0, 2}}}; // orbits {0} and {2,4}
        fields.push_back(f);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        INFO(i);
        auto K = build_K(fields[i]);
        CHECK(Hypergroup::validate(K.hypergroup.raw()).ok);
        int expected = 0;
        for (int l = 0; l < fields[i].base.size(); ++l)
            expected += static_cast<int>(K.sheets[l].class_members.size());
        CHECK(K.hypergroup.size() == expected);
    }
}

TEST_CASE("building on an invalid hyperfield is refused") {
    Hypergroup H = cyclic_group(6);
    Hyperfield f{H, zq_family(3, parse_rational("1/2")), {}};
    f.assignment = {Subhypergroup{{0}}, Subhypergroup{{0, 3}}, Subhypergroup{{0, 2, 4}}};
    CHECK_THROWS_AS((void)build_K(f), Error);
}

TEST_CASE("dual hyperfield of the mixed instance") {
    auto f = mixed_z6_field("1/2", {0, 2, 4});
    auto dual = dual_hyperfield(f);
    // trivial character annihilates everything: Y = L, so the assignment is {rho_0}
    CHECK(dual.Y[0] == std::vector<int>{0, 1});
    CHECK(dual.field.assignment[0].members == std::vector<int>{0});
    // exactly the two characters trivial on the order-3 subgroup have Y = L
    int full_count = 0;
    for (int r = 0; r < 6; ++r) {
        CHECK((dual.Y[r] == std::vector<int>{0, 1} || dual.Y[r] == std::vector<int>{0}));
        full_count += dual.Y[r] == std::vector<int>{0, 1};
    }
    CHECK(full_count == 2);
    CHECK(validate_hyperfield(dual.field).ok);
}

TEST_CASE("dualizing twice preserves the hyperfield shape") {
    auto f = mixed_z6_field("1/2", {0, 2, 4});
    auto dual = dual_hyperfield(f);
    auto dd = dual_hyperfield(dual.field);
    CHECK(dd.field.base.size() == f.base.size());
    CHECK(dd.field.target.size() == f.target.size());
    auto sizes = [](const auto& field) {
        std::vector<std::size_t> out;
        for (const auto& s : field.assignment) out.push_back(s.members.size());
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(sizes(dd.field) == sizes(f));
}

TEST_CASE("duality verification on the degenerate and mixed instances") {
    auto H = cyclic_group(6);
    auto L = zq_family(2, parse_rational("1/2"));
    CHECK(verify_duality(trivial_field(H, L)).ok());
    CHECK(verify_duality(full_field(H, L)).ok());
    auto rep = verify_duality(mixed_z6_field("1/2", {0, 2, 4}));
    CHECK(rep.ok());
}

TEST_CASE("the dual of a join is the join of the duals") {
    auto H = cyclic_group(4);
    auto L = zq_family(2, parse_rational("1/2"));
    auto dual = dual_hyperfield(full_field(H, L));
    auto K2 = build_K(dual.field);
    auto expected = join(dual.base_dual.hypergroup, dual.target_dual.hypergroup);
    auto iso = find_isomorphism(K2.hypergroup, expected, 1e-9);
    CHECK(iso.has_value());
}

TEST_CASE("duality on the order-three deformation base") {
    Hypergroup H = cyclic_group(6);
    Hyperfield f{H, zq_family(3, parse_rational("1/2")), {}};
    f.assignment = {Subhypergroup{{0}}, Subhypergroup{{0, 2, 4}}, Subhypergroup{{0, 2, 4}}};
    auto rep = verify_duality(f);
    CHECK(rep.ok());
}

TEST_CASE("exact sequences for every built instance") {
    auto H = cyclic_group(6);
    auto L = zq_family(2, parse_rational("1/2"));
    for (const auto& f : {trivial_field(H, L), full_field(H, L), mixed_z6_field("1/2", {0, 2, 4})}) {
        auto K = build_K(f);
        auto rep = exact_sequence_check(K);
        CHECK(rep.ok());
    }
    Hyperfield f3{H, zq_family(3, parse_rational("1/2")), {}};
    f3.assignment = {Subhypergroup{{0}}, Subhypergroup{{0, 2, 4}}, Subhypergroup{{0, 2, 4}}};
    auto rep = exact_sequence_check(build_K(f3));
    CHECK(rep.ok());
}

TEST_CASE("the quotient sheet count matches the base size in the exact sequence") {
    auto K = build_K(mixed_z6_field("1/2", {0, 2, 4}));
    auto rep = exact_sequence_check(K);
    bool found = false;
    for (const auto& [k, v] : rep.fields())
        if (k == "quotient_classes") {
            found = true;
            CHECK(v == "2");
        }
    CHECK(found);
}
