/* beckdiff: Kaehler differentials, Beck modules and torsors, and formal
 * unramifiedness checks over finitely presented algebras and finite groups. */

#include <CLI11.hpp>

#include <iostream>

#include "beckdiff/corpus.hpp"

using namespace beckdiff;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitInput = 2;
constexpr int kExitFail = 3;

struct GlobalOpts {
    std::string format = "text";
    bool timings = false;
    Limits limits;
};

void emit(const GlobalOpts& g, const json& payload, const std::string& text) {
    if (g.format == "json")
        std::cout << payload.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_kahler(const GlobalOpts& g, const std::string& algebra_file) {
    AlgebraPtr B = algebra_from_json(load_json_file(algebra_file), g.limits);
    KahlerModule omega = kahler(B, g.limits);
    json payload{{"algebra", algebra_to_json(*B)},
                 {"presentation", module_presentation_to_json(omega.presentation())},
                 {"is_zero", omega.is_zero()}};
    std::string text = "Kaehler differentials of " + B->str() + "\n";
    text += "  generators:";
    for (const auto& gname : omega.presentation().generators) text += " " + gname;
    text += "\n  relations:\n";
    for (const auto& r : omega.presentation().relations) text += "    " + r.str() + "\n";
    if (omega.presentation().relations.empty()) text += "    (none)\n";
    text += omega.is_zero() ? "  zero\n" : "  nonzero\n";
    emit(g, payload, text);
    return kExitPass;
}

int cmd_unramified(const GlobalOpts& g, const std::string& algebra_file, bool show_witness) {
    AlgebraPtr B = algebra_from_json(load_json_file(algebra_file), g.limits);
    KahlerModule omega = kahler(B, g.limits);
    UnramifiedReport R = unramified_check(omega, g.limits);
    json payload{{"algebra", algebra_to_json(*B)},
                 {"formally_unramified", R.unramified},
                 {"witness_unavailable", R.witness_unavailable}};
    std::string text = B->str() + "\n";
    text += std::string("formally unramified: ") + (R.unramified ? "true" : "false") + "\n";
    if (R.witness.has_value()) {
        json w = json::array();
        std::string wtext;
        for (std::size_t i = 0; i < R.witness->unit_images.size(); ++i) {
            const std::string& gen = B->generators()[i];
            w.push_back({{"generator", gen},
                         {"unit", {{"ring", R.witness->unit_images[i].ring_part.str()},
                                   {"module", R.witness->unit_images[i].module_part.str()}}},
                         {"graph", {{"ring", R.witness->graph_images[i].ring_part.str()},
                                    {"module", R.witness->graph_images[i].module_part.str()}}}});
            wtext += "  s0(" + gen + ") = (" + R.witness->unit_images[i].ring_part.str() + ", " +
                     R.witness->unit_images[i].module_part.str() + ")\n";
            wtext += "  s1(" + gen + ") = (" + R.witness->graph_images[i].ring_part.str() + ", " +
                     R.witness->graph_images[i].module_part.str() + ")\n";
        }
        payload["witness"] = {{"images", w},
                              {"distinct_at", B->generators()[R.witness->distinct_at]}};
        if (show_witness) {
            text += "witness: two distinct lifts of id along B+Omega -> B\n" + wtext;
            text += "  distinct at generator " + B->generators()[R.witness->distinct_at] + "\n";
        }
    } else if (R.witness_unavailable) {
        text += "witness unavailable: the quotient is not finite-dimensional\n";
    }
    emit(g, payload, text);
    return kExitPass;
}

int cmd_torsor_verify(const GlobalOpts& g, const std::string& surjection_file) {
    TableHom q = surjection_from_json(load_json_file(surjection_file), g.limits);
    try {
        TorsorReport R = verify_torsor(q);
        json payload{{"verdict", "torsor"},
                     {"split", R.candidate.split},
                     {"fiber_product_size", R.fiber_product_size},
                     {"coequalizer_ok", R.coequalizer_ok},
                     {"kernel_size", R.candidate.beck.module.size()}};
        std::string text = "valid Beck torsor\n";
        text += std::string("  split: ") + (R.candidate.split ? "true" : "false") + "\n";
        text += "  |M x_Y Z| = |Z x_Y Z| = " + std::to_string(R.fiber_product_size) + "\n";
        emit(g, payload, text);
        return kExitPass;
    } catch (const Error& e) {
        json payload{{"verdict", "rejected"},
                     {"reason", error_code_name(e.code())},
                     {"message", e.what()}};
        emit(g, payload, std::string(error_code_name(e.code())) + "\n");
        return kExitFail;
    }
}

int cmd_lift_check(const GlobalOpts& g, const std::string& domain_file,
                   const std::string& torsor_file) {
    AlgebraPtr B = algebra_from_json(load_json_file(domain_file), g.limits);
    TableHom q = surjection_from_json(load_json_file(torsor_file), g.limits);
    TorsorReport T;
    try {
        T = verify_torsor(q);
    } catch (const Error& e) {
        json payload{{"verdict", "rejected"}, {"reason", error_code_name(e.code())}};
        emit(g, payload, std::string("torsor rejected: ") + error_code_name(e.code()) + "\n");
        return kExitFail;
    }
    LiftReport R = lift_check(B, T.candidate, g.limits);
    json payload{{"domain", algebra_to_json(*B)},
                 {"homs_into_total", R.homs_total},
                 {"homs_into_base", R.homs_base},
                 {"injective", R.injective}};
    std::string text = "Hom(B, Z) -> Hom(B, Y): " + std::to_string(R.homs_total) + " -> " +
                       std::to_string(R.homs_base) + "\n";
    text += std::string("injective: ") + (R.injective ? "true" : "false") + "\n";
    if (R.collision.has_value()) {
        payload["collision"] = {{"first", R.collision->first}, {"second", R.collision->second}};
        text += "colliding generator images: " + json(R.collision->first).dump() + " and " +
                json(R.collision->second).dump() + "\n";
    }
    if (R.surjective.has_value()) {
        payload["surjective"] = *R.surjective;
        payload["bijective"] = *R.bijective;
        text += std::string("surjective: ") + (*R.surjective ? "true" : "false") + "\n";
    }
    emit(g, payload, text);
    return kExitPass;
}

int cmd_pullback(const GlobalOpts& g, const std::string& hom_file, const std::string& module_file) {
    TableHom psi = hom_from_json(load_json_file(hom_file), g.limits);
    BeckModule M = beck_module_from_json(load_json_file(module_file), g.limits);
    if (!(psi.codomain->size() == M.base->size() &&
          psi.codomain->add_table() == M.base->add_table() &&
          psi.codomain->mul_table() == M.base->mul_table()))
        fail(ErrorCode::MixedContext, "hom codomain and module base differ");
    TableHom psi_aligned = verify_table_hom(psi.domain, M.base, psi.map);
    BeckModule P = pullback_module(psi_aligned, M);
    std::vector<AlgebraPtr> tests;
    if (psi.domain->base().kind != BaseKind::Rat) {
        AlgebraPresentation base_only;
        base_only.base = psi.domain->base();
        tests.push_back(validate_presentation(std::move(base_only), g.limits));
        AlgebraPresentation free1;
        free1.base = psi.domain->base();
        free1.generators = {"t"};
        free1.relations.push_back(parse_poly("t^4", make_vars(free1.generators), free1.base));
        tests.push_back(validate_presentation(std::move(free1), g.limits));
    }
    PullbackUniversalityReport U = verify_pullback_universal(P, psi_aligned, M, tests, g.limits);
    json payload{{"total_size", P.total->size()},
                 {"module_size", P.module.size()},
                 {"universal_pairs_checked", U.pairs_checked},
                 {"universal_property", U.holds}};
    std::string text = "pullback Beck module: total size " + std::to_string(P.total->size()) +
                       ", module size " + std::to_string(P.module.size()) + "\n";
    text += "universal property spot check: " + std::string(U.holds ? "holds" : "FAILS") + " (" +
            std::to_string(U.pairs_checked) + " pairs)\n";
    emit(g, payload, text);
    return U.holds ? kExitPass : kExitFail;
}

int cmd_groups_unramified(const GlobalOpts& g, const std::string& fixtures,
                          std::size_t max_order) {
    CorpusOptions opt;
    opt.fixtures_dir = fixtures;
    opt.max_size = max_order;
    opt.limits = g.limits;
    opt.timings = g.timings;
    CorpusResult R = run_group_suite(opt);
    json payload = R.summary.to_json(g.timings);
    payload["notes"] = R.notes;
    std::string text = R.summary.to_text(g.timings);
    for (const auto& n : R.notes) text += n + "\n";
    emit(g, payload, text);
    return R.summary.all_passed() ? kExitPass : kExitFail;
}

int cmd_corpus_run(const GlobalOpts& g, const std::string& fixtures, const std::string& suite,
                   std::size_t max_size, std::uint64_t seed) {
    CorpusOptions opt;
    opt.fixtures_dir = fixtures;
    opt.max_size = max_size;
    opt.seed = seed;
    opt.limits = g.limits;
    opt.timings = g.timings;
    CorpusResult R = corpus_run(suite, opt);
    json payload = R.summary.to_json(g.timings);
    payload["notes"] = R.notes;
    payload["suite"] = suite;
    payload["max_size"] = max_size;
    payload["seed"] = seed;
    std::string text = R.summary.to_text(g.timings);
    for (const auto& n : R.notes) text += n + "\n";
    emit(g, payload, text);
    return R.summary.all_passed() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification engine for Kaehler differentials, Beck modules and torsors"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--timings", g.timings, "include elapsed_ms in reports");
    app.add_option("--max-degree", g.limits.max_total_degree,
                   "degree guard for basis computations");
    app.add_option("--max-terms", g.limits.max_terms, "term-count guard");
    app.add_option("--max-homs", g.limits.max_homs, "assignment-space bound for hom enumeration");

    std::string algebra_file, surjection_file, domain_file, torsor_file, hom_file, module_file;
    std::string fixtures = "fixtures", suite = "rings";
    std::size_t max_size = 9, max_order = 8;
    std::uint64_t seed = 0;
    bool show_witness = false;

    auto* kahler_cmd = app.add_subcommand("kahler", "Kaehler differentials of an algebra");
    kahler_cmd->add_option("--algebra", algebra_file, "algebra presentation JSON")->required();

    auto* unram_cmd = app.add_subcommand("unramified", "formal unramifiedness of an algebra");
    unram_cmd->add_option("--algebra", algebra_file, "algebra presentation JSON")->required();
    unram_cmd->add_flag("--witness", show_witness, "print the two-lift witness when ramified");

    auto* torsor_cmd = app.add_subcommand("torsor", "Beck torsor operations");
    auto* torsor_verify = torsor_cmd->add_subcommand("verify", "verify a surjection as a torsor");
    torsor_verify->add_option("--surjection", surjection_file, "surjection JSON")->required();

    auto* lift_cmd = app.add_subcommand("lift", "lifting checks");
    auto* lift_chk = lift_cmd->add_subcommand("check", "injectivity of Hom(B,Z) -> Hom(B,Y)");
    lift_chk->add_option("--domain", domain_file, "domain algebra JSON")->required();
    lift_chk->add_option("--torsor", torsor_file, "torsor surjection JSON")->required();

    auto* pullback_cmd = app.add_subcommand("pullback", "pull a Beck module back along a hom");
    pullback_cmd->add_option("--hom", hom_file, "hom JSON")->required();
    pullback_cmd->add_option("--module", module_file, "Beck module JSON")->required();

    auto* groups_cmd = app.add_subcommand("groups", "group-category checks");
    auto* groups_unram = groups_cmd->add_subcommand("unramified", "sweep fixture groups");
    groups_unram->add_option("--max-order", max_order, "largest group order to include");
    groups_unram->add_option("--fixtures", fixtures, "fixtures directory");

    auto* corpus_cmd = app.add_subcommand("corpus", "acceptance corpus");
    auto* corpus_run_cmd = corpus_cmd->add_subcommand("run", "run a theorem suite over the corpus");
    corpus_run_cmd->add_option("--suite", suite, "rings or groups")->required();
    corpus_run_cmd->add_option("--max-size", max_size, "size cap (quotient dim / group order)");
    corpus_run_cmd->add_option("--seed", seed, "seed for randomized polynomial sampling");
    corpus_run_cmd->add_option("--fixtures", fixtures, "fixtures directory");

    // allow the global flags to appear after a subcommand
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (kahler_cmd->parsed()) return cmd_kahler(g, algebra_file);
        if (unram_cmd->parsed()) return cmd_unramified(g, algebra_file, show_witness);
        if (torsor_cmd->parsed() && torsor_verify->parsed())
            return cmd_torsor_verify(g, surjection_file);
        if (lift_cmd->parsed() && lift_chk->parsed())
            return cmd_lift_check(g, domain_file, torsor_file);
        if (pullback_cmd->parsed()) return cmd_pullback(g, hom_file, module_file);
        if (groups_cmd->parsed() && groups_unram->parsed())
            return cmd_groups_unramified(g, fixtures, max_order);
        if (corpus_cmd->parsed() && corpus_run_cmd->parsed())
            return cmd_corpus_run(g, fixtures, suite, max_size, seed);
        std::cerr << "no subcommand given\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
