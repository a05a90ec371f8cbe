#include "hgk/induction.hpp"

#include <algorithm>
#include <cmath>

#include "hgk/constructions.hpp"

namespace hgk {

namespace {

double vec_dev(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

std::vector<double> convolve_in(const RealHypergroup& H, const std::vector<double>& a,
                                const std::vector<double>& b) {
    return convolve(RealMeasure(H, a), RealMeasure(H, b)).weights();
}

std::vector<double> dirac_vec(int n, int i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    return v;
}

} // namespace

InductionContext build_context(const Hypergroup& H, const Subhypergroup& H0, const Config& cfg) {
    if (!is_subhypergroup(H, H0.members)) fail(errc::not_subhypergroup, "H0 is not a subhypergroup of H");
    Hypergroup H0_hyp = restrict_to_subhypergroup(H, H0, cfg);
    CharacterTable table_H = character_table(H, cfg);
    CharacterTable table_H0 = character_table(H0_hyp, cfg);
    DualHypergroup dual_H = dual_hypergroup(table_H, cfg);
    DualHypergroup dual_H0 = dual_hypergroup(table_H0, cfg);

    std::vector<int> perp = annihilator(table_H, H0, cfg);
    if (!is_subhypergroup(dual_H.hypergroup, perp))
        fail(errc::internal_inconsistency, "annihilator is not a subhypergroup of the dual");
    std::vector<double> omega_perp =
        idempotent_of_subhypergroup(dual_H.hypergroup, Subhypergroup{perp}, cfg).weights();

    const int nc = table_H.rows();
    const int nb = table_H0.rows();
    std::vector<int> res_of(nc);
    std::vector<std::vector<int>> fibers(nb);
    for (int r = 0; r < nc; ++r) {
        res_of[r] = restrict_character(table_H, H0, table_H0, r, cfg);
        fibers[res_of[r]].push_back(r);
    }
    std::vector<int> fiber_rep(nb, -1);
    for (int t = 0; t < nb; ++t) {
        if (fibers[t].empty())
            fail(errc::res_not_surjective,
                 "no character of H restricts to row " + std::to_string(t) + " of the subhypergroup");
        fiber_rep[t] = fibers[t][0];
    }

    // Each fiber must be a single orbit of the annihilator: the support of
    // delta_rep * omega_perp in the dual.
    for (int t = 0; t < nb; ++t) {
        auto m = convolve_in(dual_H.hypergroup, dirac_vec(nc, fiber_rep[t]), omega_perp);
        std::vector<int> supp;
        for (int r = 0; r < nc; ++r)
            if (m[r] > cfg.support_eps) supp.push_back(r);
        if (supp != fibers[t])
            fail(errc::internal_inconsistency,
                 "fiber of row " + std::to_string(t) + " differs from its annihilator orbit");
    }
    return InductionContext{H,
                            H0,
                            std::move(H0_hyp),
                            std::move(table_H),
                            std::move(table_H0),
                            std::move(dual_H),
                            std::move(dual_H0),
                            std::move(perp),
                            std::move(omega_perp),
                            std::move(res_of),
                            std::move(fibers),
                            std::move(fiber_rep),
                            cfg};
}

std::vector<double> induce(const InductionContext& ctx, int tau) {
    const int nc = ctx.table_H.rows();
    return convolve_in(ctx.dual_H.hypergroup, dirac_vec(nc, ctx.fiber_rep[tau]), ctx.omega_perp);
}

std::vector<double> induce_product(const InductionContext& ctx, int tau_i, int tau_j) {
    const int nc = ctx.table_H.rows();
    const int nb = ctx.table_H0.rows();
    // Route (a): decompose the product in the dual of H0 and average inductions.
    std::vector<double> via_decomposition(nc, 0.0);
    for (int s = 0; s < nb; ++s) {
        double coeff = ctx.dual_H0.hypergroup.c(tau_i, tau_j, s);
        if (std::abs(coeff) <= ctx.cfg.tau_char) continue;
        auto ind = induce(ctx, s);
        for (int r = 0; r < nc; ++r) via_decomposition[r] += coeff * ind[r];
    }
    // Route (b): convolve fiber representatives with the annihilator Haar.
    auto via_representatives = convolve_in(
        ctx.dual_H.hypergroup,
        convolve_in(ctx.dual_H.hypergroup, dirac_vec(nc, ctx.fiber_rep[tau_i]),
                    dirac_vec(nc, ctx.fiber_rep[tau_j])),
        ctx.omega_perp);
    double dev = vec_dev(via_decomposition, via_representatives);
    if (dev > ctx.cfg.tau_char)
        fail(errc::internal_inconsistency,
             "the two induction routes disagree by " + fmt_real(dev) + " at (" +
                 std::to_string(tau_i) + "," + std::to_string(tau_j) + ")");
    return via_decomposition;
}

TwoSheet build_two_sheet(const InductionContext& ctx, const Rat& q) {
    if (!(q > 0 && q <= 1)) fail(errc::malformed_input, "q must lie in (0, 1]");
    const double qd = to_double(q);
    const int nc = ctx.table_H.rows();
    const int nb = ctx.table_H0.rows();
    const int n = nc + nb;
    const auto& DH = ctx.dual_H.hypergroup;
    const auto& DH0 = ctx.dual_H0.hypergroup;

    RawRealHypergroup raw;
    raw.names.reserve(n);
    for (int r = 0; r < nc; ++r) raw.names.push_back("(pi" + std::to_string(r) + ",o)");
    for (int t = 0; t < nb; ++t) raw.names.push_back("(tau" + std::to_string(t) + ",*)");
    raw.identity = 0; // trivial character of H
    raw.involution.resize(n);
    for (int r = 0; r < nc; ++r) raw.involution[r] = ctx.table_H.conj_row(r);
    for (int t = 0; t < nb; ++t) raw.involution[nc + t] = nc + ctx.table_H0.conj_row(t);
    raw.tensor.assign(static_cast<std::size_t>(n) * n * n, 0.0);

    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j)
            for (int k = 0; k < nc; ++k) raw.at(i, j, k) = DH.c(i, j, k);
    for (int i = 0; i < nc; ++i)
        for (int t = 0; t < nb; ++t)
            for (int s = 0; s < nb; ++s) {
                double v = DH0.c(ctx.res_of[i], t, s);
                raw.at(i, nc + t, nc + s) = v;
                raw.at(nc + t, i, nc + s) = v;
            }
    for (int t1 = 0; t1 < nb; ++t1)
        for (int t2 = 0; t2 < nb; ++t2) {
            auto ind = induce_product(ctx, t1, t2);
            for (int r = 0; r < nc; ++r) raw.at(nc + t1, nc + t2, r) = qd * ind[r];
            for (int s = 0; s < nb; ++s) raw.at(nc + t1, nc + t2, nc + s) = (1.0 - qd) * DH0.c(t1, t2, s);
        }

    ValidationReport check = RealHypergroup::validate(raw, ctx.cfg, ctx.cfg.tau_char);
    if (!check.ok) {
        // Pin the failure on the associativity family from the two-sheet rules.
        for (const auto& v : check.violations)
            if (v.axiom == "associative") {
                int bullets = 0;
                for (int t = 0; t < 3; ++t) bullets += v.indices[t] >= nc;
                fail(errc::axiom_failure, "associativity family (A" + std::to_string(bullets + 1) +
                                              ") failed, deviation " + fmt_real(v.magnitude));
            }
        fail(errc::axiom_failure, "two-sheet axioms violated\n" + check.to_text(raw.names));
    }
    return TwoSheet{RealHypergroup::create(std::move(raw), ctx.cfg, ctx.cfg.tau_char), nc, nb};
}

namespace {

struct SheetIso {
    TwoSheet sheet;
    RealSheetedHypergroup extension;
    std::vector<int> psi; ///< two-sheet element -> extension element
};

SheetIso build_sheet_iso(const InductionContext& ctx, const Rat& q, Report& rep) {
    TwoSheet ts = build_two_sheet(ctx, q);
    RealHypergroup zq2 = to_real(zq_family(2, q, ctx.cfg), ctx.cfg);
    RealHyperfield field{ctx.dual_H.hypergroup, zq2, {}};
    field.assignment.resize(2);
    field.assignment[0] = Subhypergroup{{0}};
    field.assignment[1] = Subhypergroup{ctx.perp};
    RealSheetedHypergroup K2 = build_K(field, ctx.cfg);

    rep.add("elements.two_sheet", static_cast<long long>(ts.hypergroup.size()));
    rep.add("elements.extension", static_cast<long long>(K2.hypergroup.size()));
    if (ts.hypergroup.size() != K2.hypergroup.size()) {
        rep.set_failed("size");
        return {std::move(ts), std::move(K2), {}};
    }

    const int nc = ts.n_circ, nb = ts.n_bullet;
    std::vector<int> psi(nc + nb, -1);
    for (int r = 0; r < nc; ++r) psi[r] = K2.sheet_offset[0] + K2.sheets[0].class_of[r];
    for (int t = 0; t < nb; ++t)
        psi[nc + t] = K2.sheet_offset[1] + K2.sheets[1].class_of[ctx.fiber_rep[t]];
    std::vector<char> used(nc + nb, 0);
    for (int g = 0; g < nc + nb; ++g) {
        if (used[psi[g]]) {
            rep.add("bijection", "collision at " + ts.hypergroup.name(g));
            rep.set_failed("bijection");
            return {std::move(ts), std::move(K2), {}};
        }
        used[psi[g]] = 1;
    }
    return {std::move(ts), std::move(K2), std::move(psi)};
}

} // namespace

Report verify_sheet_isomorphism(const InductionContext& ctx, const Rat& q) {
    Report rep("two-sheet-isomorphism");
    SheetIso iso = build_sheet_iso(ctx, q, rep);
    if (!rep.ok()) return rep;
    const auto& A = iso.sheet.hypergroup;
    const auto& B = iso.extension.hypergroup;
    const auto& psi = iso.psi;

    bool identity_ok = psi[A.identity()] == B.identity();
    rep.add_flag("identity_preserved", identity_ok);
    bool inv_ok = true;
    for (int g = 0; g < A.size(); ++g) inv_ok = inv_ok && psi[A.inv(g)] == B.inv(psi[g]);
    rep.add_flag("involution_preserved", inv_ok);
    if (!identity_ok || !inv_ok) {
        rep.set_failed("structure_maps");
        return rep;
    }

    double dev = 0.0;
    int worst[3] = {0, 0, 0};
    for (int a = 0; a < A.size(); ++a)
        for (int b = 0; b < A.size(); ++b)
            for (int c = 0; c < A.size(); ++c) {
                double d = std::abs(A.c(a, b, c) - B.c(psi[a], psi[b], psi[c]));
                if (d > dev) {
                    dev = d;
                    worst[0] = a;
                    worst[1] = b;
                    worst[2] = c;
                }
            }
    rep.add("tensor_deviation", dev);
    if (dev > ctx.cfg.tau_char) {
        rep.add("witness", "(" + A.name(worst[0]) + "," + A.name(worst[1]) + ")");
        rep.set_failed("tensor_deviation");
    }
    return rep;
}

SheetedHypergroup dual_side_extension(const Hypergroup& H, const Subhypergroup& H0, const Rat& q,
                                      const Config& cfg) {
    if (!is_subhypergroup(H, H0.members)) fail(errc::not_subhypergroup, "H0 is not a subhypergroup of H");
    Hyperfield field{zq_family(2, q, cfg), H, {}};
    field.assignment.resize(H.size());
    for (int h = 0; h < H.size(); ++h)
        field.assignment[h] =
            H0.contains(h) ? Subhypergroup{{0}} : Subhypergroup{{0, 1}};
    return build_K(field, cfg);
}

Report verify_sheet_dual(const InductionContext& ctx, const Rat& q) {
    Report rep("two-sheet-dual");
    SheetIso iso = build_sheet_iso(ctx, q, rep);
    if (!rep.ok()) return rep;

    CharacterTable t2 = character_table(iso.sheet.hypergroup, ctx.cfg);
    DualHypergroup d2 = dual_hypergroup(t2, ctx.cfg);
    SheetedHypergroup K53 = dual_side_extension(ctx.H, ctx.H0, q, ctx.cfg);
    CharacterTable tz = character_table(K53.field.target, ctx.cfg);

    rep.add("elements.dual_side", static_cast<long long>(K53.hypergroup.size()));
    if (K53.hypergroup.size() != iso.sheet.hypergroup.size()) {
        rep.set_failed("size");
        return rep;
    }
    const int n = K53.hypergroup.size();

    // Candidate characters of the two-sheet hypergroup, parameterized by the
    // elements of the dual-side extension through psi: the base factor lives
    // on Z_q(2) (self-dual), the target factor is the evaluation character of
    // the coset measure in H^.
    std::vector<std::vector<Complex>> candidates(n, std::vector<Complex>(n));
    for (int a = 0; a < n; ++a) {
        int h = K53.sheet_of[a];
        const auto& wa = K53.coset_weights(a); // over Z_q(2) elements, exact
        for (int g = 0; g < n; ++g) {
            int b = iso.psi[g];
            int l = iso.extension.sheet_of[b];
            const auto& vb = iso.extension.coset_weights(b); // over H^ rows
            Complex factor_base = 0.0;
            for (int s = 0; s < 2; ++s) factor_base += to_double(wa[s]) * tz.value(s, l);
            Complex factor_target = 0.0;
            for (int r = 0; r < ctx.table_H.rows(); ++r)
                factor_target += vb[r] * ctx.table_H.value(r, h);
            candidates[a][g] = factor_base * factor_target;
        }
    }

    std::vector<int> match(n, -1);
    std::vector<char> used(n, 0);
    double worst_row = 0.0;
    for (int a = 0; a < n; ++a) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int r = 0; r < n; ++r) {
            double d = 0.0;
            for (int g = 0; g < n; ++g) d = std::max(d, std::abs(candidates[a][g] - t2.value(r, g)));
            if (d < best_d) {
                best = r;
                best_d = d;
            }
        }
        if (best < 0 || best_d > ctx.cfg.tau_char || used[best]) {
            rep.add("character_match", "candidate " + K53.hypergroup.name(a) + " unmatched (distance " +
                                           fmt_real(best_d) + ")");
            rep.set_failed("character_match");
            return rep;
        }
        used[best] = 1;
        match[a] = best;
        worst_row = std::max(worst_row, best_d);
    }
    rep.add("character_match.max_row_distance", worst_row);

    double dev = 0.0;
    int worst[3] = {0, 0, 0};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double d = std::abs(to_double(K53.hypergroup.c(a, b, c)) -
                                    d2.hypergroup.c(match[a], match[b], match[c]));
                if (d > dev) {
                    dev = d;
                    worst[0] = a;
                    worst[1] = b;
                    worst[2] = c;
                }
            }
    rep.add("tensor_deviation", dev);
    if (dev > ctx.cfg.tau_char) {
        rep.add("first_failing_triple", "(" + K53.hypergroup.name(worst[0]) + "," +
                                            K53.hypergroup.name(worst[1]) + "," +
                                            K53.hypergroup.name(worst[2]) + ")");
        rep.set_failed("tensor_deviation");
    }
    return rep;
}

Report res_ind_identities(const InductionContext& ctx) {
    Report rep("res-ind-identities");
    const int nc = ctx.table_H.rows();
    const int nb = ctx.table_H0.rows();
    const auto& DH = ctx.dual_H.hypergroup;
    const auto& DH0 = ctx.dual_H0.hypergroup;

    auto push_res = [&](const std::vector<double>& on_H) {
        std::vector<double> out(nb, 0.0);
        for (int r = 0; r < nc; ++r) out[ctx.res_of[r]] += on_H[r];
        return out;
    };

    // (i) res(ind tau) = tau.
    double dev_i = 0.0;
    for (int t = 0; t < nb; ++t) {
        auto pushed = push_res(induce(ctx, t));
        for (int s = 0; s < nb; ++s) dev_i = std::max(dev_i, std::abs(pushed[s] - (s == t ? 1.0 : 0.0)));
    }
    rep.add("res_of_ind_deviation", dev_i);

    // (ii) res is multiplicative on products of H characters.
    double dev_ii = 0.0;
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) {
            std::vector<double> lhs(nb, 0.0);
            for (int r = 0; r < nc; ++r) lhs[ctx.res_of[r]] += DH.c(i, j, r);
            for (int s = 0; s < nb; ++s)
                dev_ii = std::max(dev_ii, std::abs(lhs[s] - DH0.c(ctx.res_of[i], ctx.res_of[j], s)));
        }
    rep.add("res_multiplicative_deviation", dev_ii);

    // (iii) pi * ind(t_i t_j) = ind(res(pi) t_i t_j).
    double dev_iii = 0.0;
    for (int p = 0; p < nc; ++p)
        for (int ti = 0; ti < nb; ++ti)
            for (int tj = 0; tj < nb; ++tj) {
                auto lhs = convolve_in(DH, dirac_vec(nc, p), induce_product(ctx, ti, tj));
                auto nu = convolve_in(DH0,
                                      convolve_in(DH0, dirac_vec(nb, ctx.res_of[p]), dirac_vec(nb, ti)),
                                      dirac_vec(nb, tj));
                std::vector<double> rhs(nc, 0.0);
                for (int s = 0; s < nb; ++s) {
                    if (std::abs(nu[s]) <= ctx.cfg.tau_char) continue;
                    auto ind = induce(ctx, s);
                    for (int r = 0; r < nc; ++r) rhs[r] += nu[s] * ind[r];
                }
                dev_iii = std::max(dev_iii, vec_dev(lhs, rhs));
            }
    rep.add("ind_compatibility_deviation", dev_iii);

    // (iv) res(ind(t_i t_j)) = t_i t_j.
    double dev_iv = 0.0;
    for (int ti = 0; ti < nb; ++ti)
        for (int tj = 0; tj < nb; ++tj) {
            auto pushed = push_res(induce_product(ctx, ti, tj));
            for (int s = 0; s < nb; ++s)
                dev_iv = std::max(dev_iv, std::abs(pushed[s] - DH0.c(ti, tj, s)));
        }
    rep.add("res_of_ind_product_deviation", dev_iv);

    double worst = std::max(std::max(dev_i, dev_ii), std::max(dev_iii, dev_iv));
    rep.add("max_deviation", worst);
    if (worst > ctx.cfg.tau_char) rep.set_failed("max_deviation");
    return rep;
}

} // namespace hgk
