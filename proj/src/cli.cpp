#include "hgk/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "hgk/constructions.hpp"
#include "hgk/duality.hpp"
#include "hgk/hyperfield.hpp"
#include "hgk/induction.hpp"
#include "hgk/io.hpp"
#include "hgk/iso.hpp"

namespace hgk::cli {

namespace {

struct Options {
    Config cfg;
    std::string out_dir;
    std::string format; // "", "report", "definition"
};

void load_config_env(Config& cfg) {
    const char* path = std::getenv("HGK_CONFIG");
    if (!path || !*path) return;
    nlohmann::json j = nlohmann::json::parse(read_file(path));
    if (j.contains("tau_axiom")) cfg.tau_axiom = j["tau_axiom"].get<double>();
    if (j.contains("tau_char")) cfg.tau_char = j["tau_char"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("size_bound")) cfg.enumeration_size_bound = j["size_bound"].get<int>();
}

void emit(const Options& opt, std::ostream& out, const std::string& filename,
          const std::string& content) {
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        write_file((std::filesystem::path(opt.out_dir) / filename).string(), content);
    }
    out << content;
}

// Split on commas outside (), {} so product and orbit element names survive.
std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string token;
    int depth = 0;
    for (char ch : csv) {
        if (ch == '(' || ch == '{') ++depth;
        if (ch == ')' || ch == '}') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(token);
            token.clear();
        } else {
            token += ch;
        }
    }
    if (!token.empty()) out.push_back(token);
    return out;
}

int element_index(const Hypergroup& H, const std::string& name, const char* where) {
    for (int i = 0; i < H.size(); ++i)
        if (H.name(i) == name) return i;
    fail(errc::malformed_input, "unknown element '" + name + "' in " + where);
}

Subhypergroup parse_subset(const Hypergroup& H, const std::string& csv) {
    std::vector<int> members;
    for (const auto& token : split_names(csv)) members.push_back(element_index(H, token, "subset"));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return Subhypergroup{std::move(members)};
}

std::vector<int> parse_perm(const Hypergroup& H, const std::string& csv) {
    std::vector<int> image;
    for (const auto& token : split_names(csv))
        image.push_back(element_index(H, token, "permutation"));
    return image;
}

Rat parse_q(const std::string& text) {
    Rat q = parse_rational(text);
    if (!(q > 0 && q <= 1)) fail(errc::malformed_input, "q must lie in (0, 1]");
    return q;
}

int finish_report(const Report& rep, std::ostream& out, std::ostream& err, const Options& opt,
                  const std::string& filename) {
    std::string text = rep.to_text();
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        write_file((std::filesystem::path(opt.out_dir) / filename).string(), text);
    }
    out << text;
    if (!rep.ok()) {
        err << "failed: " << rep.first_failure() << "\n";
        return 1;
    }
    return 0;
}

int emit_hypergroup(const Hypergroup& H, const Options& opt, std::ostream& out,
                    const std::string& name) {
    if (opt.format == "report") {
        Report rep(name);
        rep.add("elements", static_cast<long long>(H.size()));
        rep.add("identity", H.name(H.identity()));
        rep.add_flag("valid", true);
        out << rep.to_text();
        return 0;
    }
    emit(opt, out, name + ".json", serialize_definition(H, DefinitionMeta{name, "generated"}));
    return 0;
}

int emit_real_hypergroup(const RealHypergroup& H, const Options& opt, std::ostream& out,
                         const std::string& name) {
    if (opt.format == "report") {
        Report rep(name);
        rep.add("elements", static_cast<long long>(H.size()));
        rep.add("identity", H.name(H.identity()));
        rep.add_flag("valid", true);
        out << rep.to_text();
        return 0;
    }
    emit(opt, out, name + ".json", serialize_definition(H, DefinitionMeta{name, "generated"}));
    return 0;
}

// ---------------------------------------------------------------------------
// Demo catalog: small worked instances exercising the full pipeline
// (finite stand-ins for the continuous originals, parameterized by N, n, m, q).
// ---------------------------------------------------------------------------

Subhypergroup product_subgroup(int na, const std::vector<int>& ma, const std::vector<int>& mb) {
    std::vector<int> members;
    for (int b : mb)
        for (int a : ma) members.push_back(b * na + a);
    std::sort(members.begin(), members.end());
    return Subhypergroup{std::move(members)};
}

Subhypergroup multiples_subgroup(const Hypergroup& zn, int step) {
    // step Z_N: requires step | N; order N/step
    const int N = zn.size();
    if (step < 1 || N % step != 0) fail(errc::malformed_input, "demo parameter must divide N");
    return cyclic_subgroup(zn, N / step);
}

Subhypergroup orbit_members_within(const std::vector<std::vector<int>>& orbits,
                                   const Subhypergroup& inner) {
    std::vector<int> members;
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        bool inside = true;
        for (int x : orbits[o]) inside = inside && inner.contains(x);
        if (inside) members.push_back(static_cast<int>(o));
    }
    return Subhypergroup{std::move(members)};
}

void demo_field_checks(Report& rep, const Hyperfield& field, const Config& cfg) {
    ValidationReport v = validate_hyperfield(field, cfg);
    rep.add_flag("hyperfield_valid", v.ok);
    if (!v.ok) {
        rep.set_failed("hyperfield_valid");
        return;
    }
    SheetedHypergroup K = build_K(field, cfg);
    rep.add("elements", static_cast<long long>(K.hypergroup.size()));
    rep.merge_section(verify_duality(field, cfg));
    rep.merge_section(exact_sequence_check(K, cfg));
}

void demo_induction_checks(Report& rep, const Hypergroup& H, const Subhypergroup& H0, const Rat& q,
                           const Config& cfg) {
    InductionContext ctx = build_context(H, H0, cfg);
    rep.add("elements.H_dual", static_cast<long long>(ctx.table_H.rows()));
    rep.add("elements.H0_dual", static_cast<long long>(ctx.table_H0.rows()));
    rep.merge_section(verify_sheet_isomorphism(ctx, q));
    rep.merge_section(verify_sheet_dual(ctx, q));
    rep.merge_section(res_ind_identities(ctx));
}

Report run_demo(const std::string& id, int N, int n, int m, const Rat& q, const Config& cfg) {
    Report rep("demo " + id);
    rep.add("params.N", static_cast<long long>(N));
    rep.add("params.n", static_cast<long long>(n));
    rep.add("params.m", static_cast<long long>(m));
    rep.add("params.q", format_rational(q));
    rep.add("seed", std::to_string(cfg.seed));

    if (id == "4.1") {
        Hypergroup H = cyclic_group(N, cfg);
        Hyperfield field{H, zq_family(2, q, cfg), {}};
        field.assignment = {Subhypergroup{{0}}, cyclic_subgroup(H, n)};
        demo_field_checks(rep, field, cfg);
    } else if (id == "4.2") {
        Hypergroup zn = cyclic_group(N, cfg);
        Hypergroup H = direct_product(zn, zn, cfg);
        Hyperfield field{H, zq_family(2, q, cfg), {}};
        field.assignment = {Subhypergroup{{0}},
                            product_subgroup(N, cyclic_subgroup(zn, n).members,
                                             cyclic_subgroup(zn, m).members)};
        demo_field_checks(rep, field, cfg);
    } else if (id == "4.3") {
        Hypergroup H = cyclic_group(N, cfg);
        Hyperfield field{H, zq_family(3, q, cfg), {}};
        field.assignment = {Subhypergroup{{0}}, cyclic_subgroup(H, n), cyclic_subgroup(H, n)};
        demo_field_checks(rep, field, cfg);
    } else if (id == "4.4") {
        Hypergroup zn = cyclic_group(N, cfg);
        Hypergroup H = direct_product(zn, zn, cfg);
        std::vector<int> all(N);
        for (int i = 0; i < N; ++i) all[i] = i;
        Hyperfield field{H, zq_family(2, q, cfg), {}};
        field.assignment = {Subhypergroup{{0}},
                            product_subgroup(N, cyclic_subgroup(zn, n).members, all)};
        demo_field_checks(rep, field, cfg);
    } else if (id == "4.5") {
        Hypergroup zn = cyclic_group(N, cfg);
        auto orbits = orbit_partition(zn, {negation_of_cyclic(N)});
        Hypergroup H = orbit_hypergroup(zn, {negation_of_cyclic(N)}, cfg);
        Hyperfield field{H, zq_family(2, q, cfg), {}};
        field.assignment = {Subhypergroup{{0}},
                            orbit_members_within(orbits, cyclic_subgroup(zn, n))};
        demo_field_checks(rep, field, cfg);
    } else if (id == "4.6") {
        Hypergroup A = cyclic_group(m, cfg);
        Hypergroup C = cyclic_group(n, cfg);
        Hypergroup H = direct_product(A, C, cfg);
        std::vector<int> allc(C.size());
        for (int i = 0; i < C.size(); ++i) allc[i] = i;
        Hyperfield field{H, zq_family(2, q, cfg), {}};
        field.assignment = {Subhypergroup{{0}}, product_subgroup(A.size(), {0}, allc)};
        demo_field_checks(rep, field, cfg);
        if (rep.ok()) {
            // product-with-join identity: K is A x (C v Z_q(2))
            Hypergroup expected = direct_product(A, join(C, zq_family(2, q, cfg), cfg), cfg);
            auto iso = find_isomorphism(build_K(field, cfg).hypergroup, expected, 0.0, cfg);
            rep.add_flag("product_join_identity", iso.has_value());
            if (!iso) rep.set_failed("product_join_identity");
        }
    } else if (id == "4.7") {
        Hypergroup A = cyclic_group(m, cfg);
        Hypergroup C = cyclic_group(N, cfg);
        Hypergroup H = direct_product(A, C, cfg);
        Subhypergroup C0 = cyclic_subgroup(C, n);
        Subhypergroup inner = product_subgroup(A.size(), {0}, C0.members);
        Hyperfield field{H, zq_family(3, q, cfg), {}};
        field.assignment = {Subhypergroup{{0}}, inner, inner};
        demo_field_checks(rep, field, cfg);
        if (rep.ok()) {
            Hypergroup expected =
                direct_product(A, substitution(C, C0, zq_family(3, q, cfg), cfg), cfg);
            auto iso = find_isomorphism(build_K(field, cfg).hypergroup, expected, 0.0, cfg);
            rep.add_flag("product_substitution_identity", iso.has_value());
            if (!iso) rep.set_failed("product_substitution_identity");
        }
    } else if (id == "6.1") {
        Hypergroup H = cyclic_group(N, cfg);
        demo_induction_checks(rep, H, multiples_subgroup(H, n), q, cfg);
    } else if (id == "6.2") {
        Hypergroup zn = cyclic_group(N, cfg);
        Hypergroup H = direct_product(zn, zn, cfg);
        Subhypergroup H0 = product_subgroup(N, multiples_subgroup(zn, n).members,
                                            multiples_subgroup(zn, m).members);
        demo_induction_checks(rep, H, H0, q, cfg);
    } else if (id == "6.3") {
        Hypergroup zn = cyclic_group(N, cfg);
        Hypergroup H = direct_product(zn, zn, cfg);
        Subhypergroup H0 = product_subgroup(N, multiples_subgroup(zn, n).members, {0});
        demo_induction_checks(rep, H, H0, q, cfg);
    } else if (id == "6.4") {
        Hypergroup zn = cyclic_group(N, cfg);
        auto orbits = orbit_partition(zn, {negation_of_cyclic(N)});
        Hypergroup H = orbit_hypergroup(zn, {negation_of_cyclic(N)}, cfg);
        Subhypergroup H0 = orbit_members_within(orbits, multiples_subgroup(zn, n));
        demo_induction_checks(rep, H, H0, q, cfg);
    } else if (id == "6.5") {
        Hypergroup B = cyclic_group(m, cfg);
        Hypergroup D = cyclic_group(N, cfg);
        Hypergroup H = direct_product(B, D, cfg);
        Subhypergroup H0 = product_subgroup(B.size(), [&] {
            std::vector<int> all(B.size());
            for (int i = 0; i < B.size(); ++i) all[i] = i;
            return all;
        }(), {0});
        demo_induction_checks(rep, H, H0, q, cfg);
        if (rep.ok()) {
            // two-sheet object is B^ x (D^ v Z_q(2))
            InductionContext ctx = build_context(H, H0, cfg);
            TwoSheet ts = build_two_sheet(ctx, q);
            CharacterTable tb = character_table(B, cfg);
            CharacterTable td = character_table(D, cfg);
            RealHypergroup expected = direct_product(
                dual_hypergroup(tb, cfg).hypergroup,
                join(dual_hypergroup(td, cfg).hypergroup, to_real(zq_family(2, q, cfg), cfg), cfg),
                cfg);
            auto iso = find_isomorphism(ts.hypergroup, expected, cfg.tau_char, cfg);
            rep.add_flag("product_join_dual_identity", iso.has_value());
            if (!iso) rep.set_failed("product_join_dual_identity");
        }
    } else {
        fail(errc::malformed_input, "unknown demo id '" + id + "' (expected 4.1-4.7 or 6.1-6.5)");
    }
    return rep;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite commutative hypergroup toolkit"};
    app.require_subcommand(1);

    Options opt;
    try {
        load_config_env(opt.cfg);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    }
    double tolerance = -1.0, tau_axiom = -1.0;
    std::uint64_t seed = opt.cfg.seed;
    app.add_option("--tolerance", tolerance, "character-stage tolerance (tau_char)");
    app.add_option("--tau-axiom", tau_axiom, "axiom tolerance for real tensors");
    app.add_option("--seed", seed, "PRNG seed for spectral splitting");
    app.add_option("--out", opt.out_dir, "directory for emitted files");
    app.add_option("--format", opt.format, "output format for generators")
        ->check(CLI::IsMember({"report", "definition"}));

    std::string file_a, file_b, subset_csv, q_text = "1/2", demo_id;
    std::vector<std::string> perms;
    int int_n = 0, tau_index = 0;
    int demo_N = 6, demo_n = 3, demo_m = 2;

    auto* c_validate = app.add_subcommand("validate", "check every hypergroup axiom on a definition file");
    c_validate->add_option("file", file_a)->required();
    auto* c_haar = app.add_subcommand("haar", "invariant measure of a hypergroup");
    c_haar->add_option("file", file_a)->required();
    auto* c_characters = app.add_subcommand("characters", "character table");
    c_characters->add_option("file", file_a)->required();
    auto* c_dual = app.add_subcommand("dual", "dual hypergroup of a strong hypergroup");
    c_dual->add_option("file", file_a)->required();
    auto* c_subs = app.add_subcommand("subs", "enumerate subhypergroups");
    c_subs->add_option("file", file_a)->required();
    auto* c_quotient = app.add_subcommand("quotient", "quotient by a subhypergroup");
    c_quotient->add_option("file", file_a)->required();
    c_quotient->add_option("--subset", subset_csv, "comma-separated element names")->required();
    auto* c_product = app.add_subcommand("product", "direct product of two hypergroups");
    c_product->add_option("file_a", file_a)->required();
    c_product->add_option("file_b", file_b)->required();
    auto* c_join = app.add_subcommand("join", "hypergroup join");
    c_join->add_option("file_a", file_a)->required();
    c_join->add_option("file_b", file_b)->required();
    auto* c_substitute = app.add_subcommand("substitute", "substitution extension");
    c_substitute->add_option("file_a", file_a)->required();
    c_substitute->add_option("file_b", file_b)->required();
    c_substitute->add_option("--subset", subset_csv)->required();
    auto* c_zq = app.add_subcommand("zq", "q-deformed cyclic family Z_q(n)");
    c_zq->add_option("n", int_n)->required();
    c_zq->add_option("q", q_text)->required();
    auto* c_cyclic = app.add_subcommand("cyclic", "cyclic group hypergroup");
    c_cyclic->add_option("n", int_n)->required();
    auto* c_orbit = app.add_subcommand("orbit", "orbit hypergroup under automorphisms");
    c_orbit->add_option("file", file_a)->required();
    c_orbit->add_option("--perm", perms, "image names in element order, comma-separated")->required();
    auto* c_hf_validate = app.add_subcommand("hyperfield-validate", "check hyperfield conditions");
    c_hf_validate->add_option("file", file_a)->required();
    auto* c_hf_build = app.add_subcommand("hyperfield-build", "build the sheeted extension");
    c_hf_build->add_option("file", file_a)->required();
    auto* c_duality = app.add_subcommand("verify-duality", "dual of the extension vs dual hyperfield");
    c_duality->add_option("file", file_a)->required();
    auto* c_exact = app.add_subcommand("exact-seq", "exactness of 1 -> H -> K -> L -> 1");
    c_exact->add_option("file", file_a)->required();
    auto* c_induce = app.add_subcommand("induce", "induced character measure");
    c_induce->add_option("file", file_a)->required();
    c_induce->add_option("--subset", subset_csv)->required();
    c_induce->add_option("--tau", tau_index, "row index in the subhypergroup table");
    auto* c_two_sheet = app.add_subcommand("two-sheet", "two-sheet hypergroup on H^ union H0^");
    c_two_sheet->add_option("file", file_a)->required();
    c_two_sheet->add_option("--subset", subset_csv)->required();
    c_two_sheet->add_option("--q", q_text);
    auto* c_v52 = app.add_subcommand("verify-52", "two-sheet vs sheeted extension of H^");
    c_v52->add_option("file", file_a)->required();
    c_v52->add_option("--subset", subset_csv)->required();
    c_v52->add_option("--q", q_text);
    auto* c_v53 = app.add_subcommand("verify-53", "dual of the two-sheet object");
    c_v53->add_option("file", file_a)->required();
    c_v53->add_option("--subset", subset_csv)->required();
    c_v53->add_option("--q", q_text);
    auto* c_lemma = app.add_subcommand("lemma51", "restriction/induction identity suite");
    c_lemma->add_option("file", file_a)->required();
    c_lemma->add_option("--subset", subset_csv)->required();
    auto* c_demo = app.add_subcommand("demo", "worked example pipelines (4.1-4.7, 6.1-6.5)");
    c_demo->add_option("id", demo_id)->required();
    c_demo->add_option("--N", demo_N);
    c_demo->add_option("--n", demo_n);
    c_demo->add_option("--m", demo_m);
    c_demo->add_option("--q", q_text);

    std::vector<std::string> argv = args;
    argv.insert(argv.begin(), "hgk");
    std::vector<const char*> cargv;
    for (const auto& s : argv) cargv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (tolerance > 0) opt.cfg.tau_char = tolerance;
    if (tau_axiom > 0) opt.cfg.tau_axiom = tau_axiom;
    opt.cfg.seed = seed;
    const Config& cfg = opt.cfg;

    try {
        if (c_validate->parsed()) {
            ParsedDefinition def = load_definition(file_a);
            ValidationReport vr =
                def.exact() ? Hypergroup::validate(def.rational(), cfg)
                            : RealHypergroup::validate(def.real(), cfg, cfg.tau_axiom);
            const auto& names = def.exact() ? def.rational().names : def.real().names;
            std::string text = "file: " + file_a + "\n" + vr.to_text(names);
            emit(opt, out, "validate.txt", text);
            if (!vr.ok) {
                err << "failed: " << vr.violations.front().axiom << "\n";
                return 1;
            }
            return 0;
        }
        if (c_haar->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            Measure w = haar_measure(H, cfg);
            Report rep("haar");
            for (int i = 0; i < H.size(); ++i) rep.add("w[" + H.name(i) + "]", format_rational(w[i]));
            return finish_report(rep, out, err, opt, "haar.txt");
        }
        if (c_characters->parsed()) {
            ParsedDefinition def = load_definition(file_a);
            std::string text = def.exact()
                                   ? character_table(Hypergroup::create(def.rational(), cfg), cfg).to_text()
                                   : character_table(RealHypergroup::create(def.real(), cfg, cfg.tau_axiom), cfg)
                                         .to_text();
            emit(opt, out, "characters.txt", text);
            return 0;
        }
        if (c_dual->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            DualHypergroup dual = dual_hypergroup(character_table(H, cfg), cfg);
            return emit_real_hypergroup(dual.hypergroup, opt, out, "dual");
        }
        if (c_subs->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            auto subs = enumerate_subhypergroups(H, cfg);
            Report rep("subhypergroups");
            rep.add("count", static_cast<long long>(subs.size()));
            for (std::size_t s = 0; s < subs.size(); ++s) {
                std::string members;
                for (std::size_t t = 0; t < subs[s].members.size(); ++t) {
                    if (t) members += ",";
                    members += H.name(subs[s].members[t]);
                }
                rep.add("sub[" + std::to_string(s) + "]", "{" + members + "}");
            }
            return finish_report(rep, out, err, opt, "subs.txt");
        }
        if (c_quotient->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            Quotient Q = quotient(H, parse_subset(H, subset_csv), cfg);
            return emit_hypergroup(Q.target, opt, out, "quotient");
        }
        if (c_product->parsed()) {
            Hypergroup A = load_hypergroup(file_a, cfg);
            Hypergroup B = load_hypergroup(file_b, cfg);
            return emit_hypergroup(direct_product(A, B, cfg), opt, out, "product");
        }
        if (c_join->parsed()) {
            Hypergroup A = load_hypergroup(file_a, cfg);
            Hypergroup B = load_hypergroup(file_b, cfg);
            return emit_hypergroup(join(A, B, cfg), opt, out, "join");
        }
        if (c_substitute->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            Hypergroup L = load_hypergroup(file_b, cfg);
            return emit_hypergroup(substitution(H, parse_subset(H, subset_csv), L, cfg), opt, out,
                                   "substitute");
        }
        if (c_zq->parsed()) return emit_hypergroup(zq_family(int_n, parse_q(q_text), cfg), opt, out, "zq");
        if (c_cyclic->parsed()) return emit_hypergroup(cyclic_group(int_n, cfg), opt, out, "cyclic");
        if (c_orbit->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            std::vector<std::vector<int>> maps;
            for (const auto& p : perms) maps.push_back(parse_perm(H, p));
            return emit_hypergroup(orbit_hypergroup(H, maps, cfg), opt, out, "orbit");
        }
        if (c_hf_validate->parsed()) {
            Hyperfield field = load_hyperfield(file_a, cfg);
            ValidationReport vr = validate_hyperfield(field, cfg);
            std::string text = "file: " + file_a + "\n" + vr.to_text(field.base.names());
            emit(opt, out, "hyperfield-validate.txt", text);
            if (!vr.ok) {
                err << "failed: " << vr.violations.front().axiom << "\n";
                return 1;
            }
            return 0;
        }
        if (c_hf_build->parsed()) {
            Hyperfield field = load_hyperfield(file_a, cfg);
            SheetedHypergroup K = build_K(field, cfg);
            int rc = emit_hypergroup(K.hypergroup, opt, out, "extension");
            emit(opt, out, "extension.sheets.txt", sheet_map_text(K));
            return rc;
        }
        if (c_duality->parsed()) {
            Hyperfield field = load_hyperfield(file_a, cfg);
            return finish_report(verify_duality(field, cfg), out, err, opt, "verify-duality.txt");
        }
        if (c_exact->parsed()) {
            Hyperfield field = load_hyperfield(file_a, cfg);
            return finish_report(exact_sequence_check(build_K(field, cfg), cfg), out, err, opt,
                                 "exact-seq.txt");
        }
        if (c_induce->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            InductionContext ctx = build_context(H, parse_subset(H, subset_csv), cfg);
            if (tau_index < 0 || tau_index >= ctx.table_H0.rows())
                fail(errc::malformed_input, "tau index out of range");
            auto m = induce(ctx, tau_index);
            Report rep("induce");
            rep.add("tau", static_cast<long long>(tau_index));
            for (int r = 0; r < ctx.table_H.rows(); ++r)
                if (m[r] > cfg.support_eps) rep.add("mass[chi" + std::to_string(r) + "]", m[r]);
            return finish_report(rep, out, err, opt, "induce.txt");
        }
        if (c_two_sheet->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            InductionContext ctx = build_context(H, parse_subset(H, subset_csv), cfg);
            TwoSheet ts = build_two_sheet(ctx, parse_q(q_text));
            if (opt.format == "definition")
                return emit_real_hypergroup(ts.hypergroup, opt, out, "two-sheet");
            if (!opt.out_dir.empty()) {
                std::filesystem::create_directories(opt.out_dir);
                write_file((std::filesystem::path(opt.out_dir) / "two-sheet.json").string(),
                           serialize_definition(ts.hypergroup, DefinitionMeta{"two-sheet", "generated"}));
            }
            Report rep("two-sheet");
            rep.add("elements", static_cast<long long>(ts.hypergroup.size()));
            rep.add("sheet_o_elements", static_cast<long long>(ts.n_circ));
            rep.add("sheet_star_elements", static_cast<long long>(ts.n_bullet));
            rep.add("q", format_rational(parse_q(q_text)));
            rep.add_flag("valid", true);
            return finish_report(rep, out, err, opt, "two-sheet.txt");
        }
        if (c_v52->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            InductionContext ctx = build_context(H, parse_subset(H, subset_csv), cfg);
            return finish_report(verify_sheet_isomorphism(ctx, parse_q(q_text)), out, err, opt,
                                 "verify-52.txt");
        }
        if (c_v53->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            InductionContext ctx = build_context(H, parse_subset(H, subset_csv), cfg);
            return finish_report(verify_sheet_dual(ctx, parse_q(q_text)), out, err, opt,
                                 "verify-53.txt");
        }
        if (c_lemma->parsed()) {
            Hypergroup H = load_hypergroup(file_a, cfg);
            InductionContext ctx = build_context(H, parse_subset(H, subset_csv), cfg);
            return finish_report(res_ind_identities(ctx), out, err, opt, "lemma51.txt");
        }
        if (c_demo->parsed()) {
            Report rep = run_demo(demo_id, demo_N, demo_n, demo_m, parse_q(q_text), cfg);
            return finish_report(rep, out, err, opt, "demo-" + demo_id + ".txt");
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        switch (e.code()) {
            case errc::parse_error:
            case errc::schema_error:
            case errc::malformed_input:
                return 2;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no command dispatched\n";
    return 2;
}

} // namespace hgk::cli
