#include "hgk/hyperfield.hpp"

#include <algorithm>
#include <cmath>

#include "hgk/iso.hpp"

namespace hgk {

namespace {

template <class S>
bool weights_close(const std::vector<S>& a, const std::vector<S>& b, double tol, double& dev) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if constexpr (std::is_same_v<S, Rat>) {
            if (a[i] != b[i]) {
                ok = false;
                dev = std::max(dev, std::abs(to_double(a[i] - b[i])));
            }
        } else {
            double d = std::abs(a[i] - b[i]);
            dev = std::max(dev, d);
            if (d > tol) ok = false;
        }
    }
    return ok;
}

bool subset_of(const std::vector<int>& small, const std::vector<int>& big) {
    for (int x : small)
        if (!std::binary_search(big.begin(), big.end(), x)) return false;
    return true;
}

} // namespace

template <class S>
ValidationReport validate_hyperfield(const HyperfieldT<S>& field, const Config& cfg) {
    const auto& H = field.target;
    const auto& L = field.base;
    if (field.assignment.size() != static_cast<std::size_t>(L.size()))
        fail(errc::malformed_input, "assignment size does not match the base");
    ValidationReport report;
    auto flag = [&](const char* axiom, std::initializer_list<int> idx, double mag = 0.0) {
        report.ok = false;
        report.violations.push_back({axiom, std::vector<int>(idx), mag});
    };

    for (int l = 0; l < L.size(); ++l) {
        auto sorted = field.assignment[l].members;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != field.assignment[l].members || !is_subhypergroup(H, sorted))
            flag("assignment-subhypergroup", {l});
    }
    if (!report.ok) return report; // everything below needs honest subhypergroups

    if (field.assignment[L.identity()].members != std::vector<int>{H.identity()})
        flag("identity-assignment", {L.identity()});
    for (int l = 0; l < L.size(); ++l)
        if (field.assignment[L.inv(l)].members != field.assignment[l].members)
            flag("involution-assignment", {l});

    // Generated-closure containment on convolution supports.
    for (int i = 0; i < L.size(); ++i)
        for (int j = 0; j < L.size(); ++j) {
            std::vector<int> seed = field.assignment[i].members;
            seed.insert(seed.end(), field.assignment[j].members.begin(),
                        field.assignment[j].members.end());
            auto generated = generated_subhypergroup(H, seed).members;
            for (int k : L.support(i, j))
                if (!subset_of(field.assignment[k].members, generated)) flag("generation", {i, j, k});
        }

    // Implied idempotent identity e(i) * e(j) * e(k) = e(i) * e(j).
    std::vector<MeasureT<S>> idem;
    idem.reserve(L.size());
    for (int l = 0; l < L.size(); ++l)
        idem.push_back(idempotent_of_subhypergroup(H, field.assignment[l], cfg));
    for (int i = 0; i < L.size(); ++i)
        for (int j = 0; j < L.size(); ++j) {
            MeasureT<S> prod = convolve(idem[i], idem[j]);
            for (int k : L.support(i, j)) {
                MeasureT<S> absorbed = convolve(prod, idem[k]);
                double dev = 0.0;
                if (!weights_close(absorbed.weights(), prod.weights(), cfg.tau_char, dev))
                    flag("idempotent-product", {i, j, k}, dev);
            }
        }
    return report;
}

template <class S>
SheetedHypergroupT<S> build_K(const HyperfieldT<S>& field, const Config& cfg) {
    ValidationReport check = validate_hyperfield(field, cfg);
    if (!check.ok)
        fail(errc::hyperfield_invalid, "hyperfield conditions violated\n" + check.to_text(field.base.names()));

    const auto& H = field.target;
    const auto& L = field.base;
    const int nl = L.size();

    std::vector<QuotientT<S>> sheets;
    sheets.reserve(nl);
    std::vector<MeasureT<S>> idem;
    idem.reserve(nl);
    for (int l = 0; l < nl; ++l) {
        sheets.push_back(quotient(H, field.assignment[l], cfg));
        idem.push_back(idempotent_of_subhypergroup(H, field.assignment[l], cfg));
    }

    std::vector<int> sheet_offset(nl + 1, 0);
    for (int l = 0; l < nl; ++l)
        sheet_offset[l + 1] = sheet_offset[l] + static_cast<int>(sheets[l].class_members.size());
    const int n = sheet_offset[nl];

    std::vector<int> sheet_of(n), coset_of(n);
    RawHypergroupT<S> raw;
    raw.names.reserve(n);
    for (int l = 0; l < nl; ++l)
        for (std::size_t c = 0; c < sheets[l].class_members.size(); ++c) {
            int g = sheet_offset[l] + static_cast<int>(c);
            sheet_of[g] = l;
            coset_of[g] = static_cast<int>(c);
            raw.names.push_back("(" + H.name(sheets[l].class_members[c][0]) + "|" + L.name(l) + ")");
        }
    raw.identity = sheet_offset[L.identity()] + sheets[L.identity()].class_of[H.identity()];
    raw.involution.resize(n);
    for (int g = 0; g < n; ++g) {
        int l = sheet_of[g];
        int rep = sheets[l].class_members[coset_of[g]][0];
        int li = L.inv(l);
        raw.involution[g] = sheet_offset[li] + sheets[li].class_of[H.inv(rep)];
    }
    raw.tensor.assign(static_cast<std::size_t>(n) * n * n, S{});

    // Convolution rule: distribute the base product over sheets, convolve the
    // five factors in the target, and push forward to the sheet quotient.
    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j) {
            MeasureT<S> eij = convolve(idem[i], idem[j]);
            for (int k : L.support(i, j)) {
                const S& base_mass = L.c(i, j, k);
                MeasureT<S> eijk = convolve(eij, idem[k]);
                const auto& sheet_k = sheets[k];
                for (std::size_t p = 0; p < sheets[i].class_members.size(); ++p) {
                    int rp = sheets[i].class_members[p][0];
                    for (std::size_t q = 0; q < sheets[j].class_members.size(); ++q) {
                        int rq = sheets[j].class_members[q][0];
                        MeasureT<S> prod =
                            convolve(convolve(H.dirac(rp), H.dirac(rq)), eijk);
                        int gp = sheet_offset[i] + static_cast<int>(p);
                        int gq = sheet_offset[j] + static_cast<int>(q);
                        for (std::size_t c = 0; c < sheet_k.class_members.size(); ++c) {
                            S mass{};
                            for (int x : sheet_k.class_members[c]) mass += prod[x];
                            if constexpr (std::is_same_v<S, Rat>) {
                                if (sgn(mass) == 0) continue;
                            } else {
                                if (std::abs(mass) <= cfg.tau_char) continue;
                            }
                            for (int x : sheet_k.class_members[c]) {
                                S expect = mass * sheet_k.class_weights[c][x];
                                double d = std::abs(to_double(prod[x]) - to_double(expect));
                                bool bad;
                                if constexpr (std::is_same_v<S, Rat>)
                                    bad = prod[x] != expect;
                                else
                                    bad = d > cfg.support_eps;
                                if (bad)
                                    fail(errc::decomposition_failure,
                                         "sheet product is not constant on a coset of sheet " +
                                             L.name(k));
                            }
                            raw.at(gp, gq, sheet_offset[k] + static_cast<int>(c)) += base_mass * mass;
                        }
                    }
                }
            }
        }

    double tol = std::is_same_v<S, Rat> ? -1.0 : cfg.tau_char;
    SheetedHypergroupT<S> K{HypergroupT<S>::create(std::move(raw), cfg, tol),
                            std::move(sheet_of),
                            std::move(coset_of),
                            std::move(sheet_offset),
                            std::move(sheets),
                            field};
    return K;
}

template <class S>
DualHyperfieldResult dual_hyperfield(const HyperfieldT<S>& field, const Config& cfg) {
    const auto& H = field.target;
    const auto& L = field.base;
    CharacterTable table_H = character_table(H, cfg);
    CharacterTable table_L = character_table(L, cfg);
    DualHypergroup dual_H = dual_hypergroup(table_H, cfg);
    DualHypergroup dual_L = dual_hypergroup(table_L, cfg);

    std::vector<std::vector<int>> Y(table_H.rows());
    for (int r = 0; r < table_H.rows(); ++r) {
        for (int l = 0; l < L.size(); ++l) {
            bool annihilates = true;
            for (int h : field.assignment[l].members)
                if (std::abs(table_H.value(r, h) - 1.0) > cfg.tau_char) {
                    annihilates = false;
                    break;
                }
            if (annihilates) Y[r].push_back(l);
        }
        if (!is_subhypergroup(L, Y[r]))
            fail(errc::internal_inconsistency,
                 "Y(chi" + std::to_string(r) + ") is not a subhypergroup of the base");
    }

    RealHyperfield dual{dual_L.hypergroup, dual_H.hypergroup, {}};
    dual.assignment.resize(table_H.rows());
    for (int r = 0; r < table_H.rows(); ++r)
        dual.assignment[r] = Subhypergroup{annihilator(table_L, Subhypergroup{Y[r]}, cfg)};

    ValidationReport check = validate_hyperfield(dual, cfg);
    if (!check.ok)
        fail(errc::hyperfield_invalid,
             "dual hyperfield conditions violated\n" + check.to_text(dual.base.names()));
    return DualHyperfieldResult{std::move(dual), std::move(table_H), std::move(table_L),
                                std::move(dual_H), std::move(dual_L), std::move(Y)};
}

namespace {

/// Bijective nearest-row matching of candidate character value vectors against
/// the rows of a computed table. Returns candidate -> row, or fails.
std::vector<int> match_rows(const std::vector<std::vector<Complex>>& candidates,
                            const CharacterTable& table, const Config& cfg, Report& rep,
                            const char* stage) {
    const int n = static_cast<int>(candidates.size());
    std::vector<int> match(n, -1);
    std::vector<char> used(table.rows(), 0);
    double worst = 0.0;
    for (int a = 0; a < n; ++a) {
        int best = -1, second = -1;
        double best_d = std::numeric_limits<double>::infinity(), second_d = best_d;
        for (int r = 0; r < table.rows(); ++r) {
            double d = 0.0;
            for (std::size_t x = 0; x < candidates[a].size(); ++x)
                d = std::max(d, std::abs(candidates[a][x] - table.row(r).values[x]));
            if (d < best_d) {
                second = best;
                second_d = best_d;
                best = r;
                best_d = d;
            } else if (d < second_d) {
                second = r;
                second_d = d;
            }
        }
        (void)second;
        if (best < 0 || best_d > cfg.tau_char) {
            rep.add(std::string(stage) + ".unmatched_candidate", static_cast<long long>(a));
            rep.add(std::string(stage) + ".distance", best_d);
            rep.set_failed(std::string(stage));
            return {};
        }
        if (second >= 0 && second_d <= cfg.tau_char)
            fail(errc::ambiguous_match, "two table rows match one candidate within tau_char");
        if (used[best]) {
            rep.add(std::string(stage) + ".duplicate_match", static_cast<long long>(a));
            rep.set_failed(std::string(stage));
            return {};
        }
        used[best] = 1;
        match[a] = best;
        worst = std::max(worst, best_d);
    }
    rep.add(std::string(stage) + ".max_row_distance", worst);
    return match;
}

} // namespace

template <class S>
Report verify_duality(const HyperfieldT<S>& field, const Config& cfg) {
    Report rep("duality");
    SheetedHypergroupT<S> K = build_K(field, cfg);
    rep.add("elements.primal", static_cast<long long>(K.hypergroup.size()));

    DualHyperfieldResult dual = dual_hyperfield(field, cfg);
    RealSheetedHypergroup K2 = build_K(dual.field, cfg);
    rep.add("elements.dual_side", static_cast<long long>(K2.hypergroup.size()));
    if (K.hypergroup.size() != K2.hypergroup.size()) {
        rep.set_failed("size_identity");
        return rep;
    }

    const auto& H = field.target;
    const auto& L = field.base;
    const CharacterTable& tH = dual.target_table;
    const CharacterTable& tL = dual.base_table;

    // Membership duality: l in Y(chi) iff chi annihilates the assigned
    // subhypergroup, computed along both routes.
    {
        bool relation_ok = true;
        for (int l = 0; l < L.size(); ++l) {
            auto ann = annihilator(tH, field.assignment[l], cfg);
            for (int r = 0; r < tH.rows(); ++r) {
                bool in_Y = std::binary_search(dual.Y[r].begin(), dual.Y[r].end(), l);
                bool in_ann = std::binary_search(ann.begin(), ann.end(), r);
                relation_ok = relation_ok && in_Y == in_ann;
            }
        }
        rep.add_flag("membership_duality", relation_ok);
        if (!relation_ok) rep.set_failed("membership_duality");
    }

    // Idempotent transforms: chi(e(l)) and e(chi)(l) are 0/1 indicators of the
    // annihilator relation and agree with each other.
    double transform_dev = 0.0;
    {
        std::vector<std::vector<double>> e_l(L.size());
        for (int l = 0; l < L.size(); ++l) {
            auto w = idempotent_of_subhypergroup(H, field.assignment[l], cfg).weights();
            for (const auto& v : w) e_l[l].push_back(to_double(v));
        }
        std::vector<std::vector<double>> e_chi(tH.rows());
        for (int r = 0; r < tH.rows(); ++r) {
            auto w = idempotent_of_subhypergroup(dual.base_dual.hypergroup, dual.field.assignment[r], cfg)
                         .weights();
            e_chi[r] = w;
        }
        for (int r = 0; r < tH.rows(); ++r)
            for (int l = 0; l < L.size(); ++l) {
                Complex chi_el = 0.0;
                for (int h = 0; h < H.size(); ++h) chi_el += e_l[l][h] * tH.value(r, h);
                Complex echi_l = 0.0;
                for (int rho = 0; rho < tL.rows(); ++rho) echi_l += e_chi[r][rho] * tL.value(rho, l);
                bool in_perp = std::binary_search(dual.Y[r].begin(), dual.Y[r].end(), l);
                double want = in_perp ? 1.0 : 0.0;
                transform_dev = std::max(transform_dev, std::abs(chi_el - want));
                transform_dev = std::max(transform_dev, std::abs(echi_l - want));
                transform_dev = std::max(transform_dev, std::abs(chi_el - echi_l));
            }
    }
    rep.add("idempotent_transform_deviation", transform_dev);
    if (transform_dev > cfg.tau_char) rep.set_failed("idempotent_transform");

    // Candidate characters of K from the coset measures of the dual-side
    // extension, matched against the computed table.
    CharacterTable tK = character_table(K.hypergroup, cfg);
    DualHypergroup dK = dual_hypergroup(tK, cfg);

    const int nk = K.hypergroup.size();
    std::vector<std::vector<Complex>> candidates(nk, std::vector<Complex>(nk));
    for (int a = 0; a < nk; ++a) {
        int chi = K2.sheet_of[a];
        const auto& wa = K2.coset_weights(a);
        for (int b = 0; b < nk; ++b) {
            int l = K.sheet_of[b];
            const auto& vb = K.coset_weights(b);
            Complex factor_base = 0.0;
            for (int rho = 0; rho < tL.rows(); ++rho) factor_base += wa[rho] * tL.value(rho, l);
            Complex factor_target = 0.0;
            for (int h = 0; h < H.size(); ++h) factor_target += to_double(vb[h]) * tH.value(chi, h);
            candidates[a][b] = factor_base * factor_target;
        }
    }
    std::vector<int> match = match_rows(candidates, tK, cfg, rep, "character_match");
    if (!rep.ok()) return rep;

    double tensor_dev = 0.0;
    int worst_triple[3] = {-1, -1, -1};
    for (int a = 0; a < nk; ++a)
        for (int b = 0; b < nk; ++b)
            for (int c = 0; c < nk; ++c) {
                double d = std::abs(K2.hypergroup.c(a, b, c) -
                                    dK.hypergroup.c(match[a], match[b], match[c]));
                if (d > tensor_dev) {
                    tensor_dev = d;
                    worst_triple[0] = a;
                    worst_triple[1] = b;
                    worst_triple[2] = c;
                }
            }
    rep.add("tensor_deviation", tensor_dev);
    if (tensor_dev > cfg.tau_char) {
        rep.add("first_failing_triple", "(" + K2.hypergroup.name(worst_triple[0]) + "," +
                                            K2.hypergroup.name(worst_triple[1]) + "," +
                                            K2.hypergroup.name(worst_triple[2]) + ")");
        rep.set_failed("tensor_deviation");
    }
    return rep;
}

template <class S>
Report exact_sequence_check(const SheetedHypergroupT<S>& K, const Config& cfg) {
    Report rep("exact-sequence");
    const auto& H = K.field.target;
    const auto& L = K.field.base;
    const auto& KH = K.hypergroup;
    const int l0 = L.identity();

    // Stage 1: h -> (h, l0) is an injective homomorphism onto sheet l0.
    int count = K.sheet_offset[l0 + 1] - K.sheet_offset[l0];
    if (count != H.size()) {
        rep.add("injection", "sheet of the base identity has wrong size");
        rep.set_failed("injection");
        return rep;
    }
    std::vector<int> image(H.size());
    for (int h = 0; h < H.size(); ++h) image[h] = K.sheet_offset[l0] + K.sheets[l0].class_of[h];
    double inj_dev = 0.0;
    for (int a = 0; a < H.size(); ++a)
        for (int b = 0; b < H.size(); ++b) {
            std::vector<double> want(KH.size(), 0.0);
            for (int k = 0; k < H.size(); ++k) want[image[k]] = to_double(H.c(a, b, k));
            for (int g = 0; g < KH.size(); ++g)
                inj_dev = std::max(inj_dev, std::abs(to_double(KH.c(image[a], image[b], g)) - want[g]));
        }
    rep.add("injection_deviation", inj_dev);
    if (inj_dev > (std::is_same_v<S, Rat> ? 0.0 : cfg.tau_char)) {
        rep.set_failed("injection");
        return rep;
    }

    // Stage 2: quotient by the image.
    std::vector<int> members = image;
    std::sort(members.begin(), members.end());
    QuotientT<S> Q = [&] {
        try {
            return quotient(KH, Subhypergroup{members}, cfg);
        } catch (const Error& e) {
            fail(errc::sequence_broken, std::string("quotient stage: ") + e.what());
        }
    }();
    rep.add("quotient_classes", static_cast<long long>(Q.target.size()));

    // Stage 3: the quotient is isomorphic to the base.
    double tol = std::is_same_v<S, Rat> ? 0.0 : cfg.tau_char;
    auto iso = find_isomorphism(Q.target, L, tol, cfg);
    if (!iso) {
        rep.add("isomorphism", "no isomorphism with the base found");
        rep.set_failed("isomorphism");
        return rep;
    }
    rep.add("isomorphism_deviation", iso->max_deviation);
    return rep;
}

template ValidationReport validate_hyperfield(const HyperfieldT<Rat>&, const Config&);
template ValidationReport validate_hyperfield(const HyperfieldT<double>&, const Config&);
template SheetedHypergroupT<Rat> build_K(const HyperfieldT<Rat>&, const Config&);
template SheetedHypergroupT<double> build_K(const HyperfieldT<double>&, const Config&);
template DualHyperfieldResult dual_hyperfield(const HyperfieldT<Rat>&, const Config&);
template DualHyperfieldResult dual_hyperfield(const HyperfieldT<double>&, const Config&);
template Report verify_duality(const HyperfieldT<Rat>&, const Config&);
template Report verify_duality(const HyperfieldT<double>&, const Config&);
template Report exact_sequence_check(const SheetedHypergroupT<Rat>&, const Config&);
template Report exact_sequence_check(const SheetedHypergroupT<double>&, const Config&);

} // namespace hgk
