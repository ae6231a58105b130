// Command-line front end: generators, verifiers, converters, and oracles
// wired through JSON files. Exit codes: 0 pass, 1 verification failed,
// 2 usage/IO error, 3 budget exceeded.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <coarse/cover.hpp>
#include <coarse/json_io.hpp>
#include <coarse/metric.hpp>
#include <coarse/oracle.hpp>
#include <coarse/witness.hpp>

namespace {

using coarse::Errc;
using coarse::io::json;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::budget_exceeded:
            return 3;
        case Errc::not_a_cover:
        case Errc::lebesgue_too_small:
        case Errc::premise_failed:
        case Errc::no_cover_exists:
            return 1;
        default:
            return 2;
    }
}

int resolve_point_budget() {
    const char* env = std::getenv("COARSE_BUDGET_POINTS");
    if (!env || !*env) return coarse::kDefaultPointBudget;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
        throw coarse::Error(Errc::invalid_argument,
                            "COARSE_BUDGET_POINTS must be a positive integer");
    return static_cast<int>(v);
}

struct Options {
    std::string space_path, cover_path, witness_path, edges_path, in_path;
    std::string out_path, report_path, selected_path, emit_cover_path, manifest_path;
    std::string norm = "linf";
    int dim = 0, side = 0, q = 0;
    std::optional<int> n;
    std::optional<double> R, eps, L, S;
    bool keep_generator = false;
    bool certify = false;
    coarse::OracleBudget budget;

    std::function<int()> action;
};

coarse::FiniteMetricSpace load_space(const std::string& path) {
    return coarse::io::space_from_json(coarse::io::read_json_file(path),
                                       resolve_point_budget());
}

void print_report(const json& j) { std::cout << j.dump(2) << "\n"; }

void maybe_write_report(const Options& opt, const json& j) {
    if (!opt.report_path.empty()) coarse::io::write_json_file(opt.report_path, j);
}

json manifest_params(const Options& opt, std::optional<double> derived_L = std::nullopt,
                     std::optional<double> derived_S = std::nullopt) {
    auto num = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return json{{"R", num(opt.R)},
                {"epsilon", num(opt.eps)},
                {"n", opt.n ? json(*opt.n) : json(nullptr)},
                {"L", num(derived_L ? derived_L : opt.L)},
                {"S", num(derived_S ? derived_S : opt.S)}};
}

// ---- command bodies --------------------------------------------------------

int run_gen_grid(Options& opt) {
    const auto norm = opt.norm == "l1" ? coarse::GridNorm::l1 : coarse::GridNorm::linf;
    if (opt.norm != "l1" && opt.norm != "linf")
        throw coarse::Error(Errc::invalid_argument, "--norm must be linf or l1");
    const auto space = coarse::gen_grid(opt.dim, opt.side, norm, resolve_point_budget());
    coarse::io::write_space_file(opt.out_path, space, opt.keep_generator);
    return 0;
}

int run_gen_graph(Options& opt) {
    const auto parsed = coarse::io::graph_from_json(coarse::io::read_json_file(opt.edges_path));
    const auto space = coarse::from_graph(parsed.first, parsed.second);
    coarse::io::write_space_file(opt.out_path, space);
    return 0;
}

int run_gen_validate(Options& opt) {
    const auto space = load_space(opt.in_path);
    if (!opt.out_path.empty())
        coarse::io::write_space_file(opt.out_path, space, opt.keep_generator);
    print_report(json{{"size", space.size()}, {"valid", true}});
    return 0;
}

int run_cover_brick(Options& opt) {
    const auto space = load_space(opt.space_path);
    const auto cover = coarse::brick_cover(space, opt.q);
    coarse::io::write_json_file(opt.out_path, coarse::io::cover_to_json(cover));
    return 0;
}

int run_cover_verify(Options& opt) {
    const auto space = load_space(opt.space_path);
    const auto cover = coarse::io::cover_from_json(coarse::io::read_json_file(opt.cover_path));
    const auto report = coarse::verify_cover(space, cover, opt.n, opt.S, opt.L);
    const json j = coarse::io::cover_report_to_json(report);
    print_report(j);
    maybe_write_report(opt, j);
    return report.pass ? 0 : 1;
}

int run_witness_verify(Options& opt, bool via_oracle) {
    const auto space = load_space(opt.space_path);
    const auto family =
        coarse::io::witness_from_json(coarse::io::read_json_file(opt.witness_path));
    const auto report =
        via_oracle
            ? coarse::independent_pair_scan(space, family, *opt.R, *opt.eps, opt.n, opt.budget)
            : coarse::verify_witness(space, family, *opt.R, *opt.eps, opt.n);
    const json j = coarse::io::witness_report_to_json(report);
    print_report(j);
    maybe_write_report(opt, j);
    return report.pass ? 0 : 1;
}

int run_convert_cover_to_witness(Options& opt) {
    const auto space = load_space(opt.space_path);
    const auto cover = coarse::io::cover_from_json(coarse::io::read_json_file(opt.cover_path));

    double L;
    if (opt.L) {
        L = *opt.L;
    } else if (opt.eps && opt.n) {
        L = coarse::choose_scale(*opt.R, *opt.eps, *opt.n);
    } else {
        throw coarse::Error(Errc::invalid_argument, "need --L, or --eps together with --n");
    }

    const auto family = coarse::cover_to_witness(space, cover, *opt.R, L);
    coarse::io::write_json_file(opt.out_path, coarse::io::witness_to_json(family));

    // The emitted family must pass its own verifier. Without explicit
    // bounds, fall back to what the construction provably achieves for this
    // cover: ratio < (2n+1)/floor(L/R) with n+1 the measured multiplicity.
    const int mult = coarse::multiplicity(space, cover);
    const double floor_steps = std::floor(L / *opt.R);
    const double eps_bound = opt.eps ? *opt.eps : (2.0 * mult - 1.0) / floor_steps;
    const int n_bound = opt.n ? *opt.n : mult - 1;
    const auto report = coarse::verify_witness(space, family, *opt.R, eps_bound, n_bound);

    const coarse::ScaleParams params{*opt.R, eps_bound, n_bound, L, family.radius_S};
    const json j{{"params", coarse::io::scale_params_to_json(params)},
                 {"report", coarse::io::witness_report_to_json(report)}};
    print_report(j);
    maybe_write_report(opt, j);
    return report.pass ? 0 : 1;
}

int run_convert_witness_to_cover(Options& opt) {
    const auto space = load_space(opt.space_path);
    const auto family =
        coarse::io::witness_from_json(coarse::io::read_json_file(opt.witness_path));

    if (opt.certify) {
        // Build and emit only after the premise holds; certify throws on
        // PremiseFailed before anything is written.
        const auto cert = coarse::certify_c_implies_a(space, family, *opt.R, *opt.n);
        const auto derived = coarse::witness_to_cover(space, family);
        coarse::io::write_json_file(opt.out_path, coarse::io::cover_to_json(derived.cover));
        if (!opt.selected_path.empty()) {
            json sel{{"selected", derived.selected}, {"defining_point", derived.defining_point}};
            coarse::io::write_json_file(opt.selected_path, sel);
        }
        const json j = coarse::io::certificate_to_json(cert);
        print_report(j);
        maybe_write_report(opt, j);
        return cert.pass ? 0 : 1;
    }

    const auto derived = coarse::witness_to_cover(space, family);
    coarse::io::write_json_file(opt.out_path, coarse::io::cover_to_json(derived.cover));
    if (!opt.selected_path.empty()) {
        json sel{{"selected", derived.selected}, {"defining_point", derived.defining_point}};
        coarse::io::write_json_file(opt.selected_path, sel);
    }
    const auto report = coarse::verify_cover(space, derived.cover, opt.n,
                                             2.0 * family.radius_S, opt.R);
    const json j = coarse::io::cover_report_to_json(report);
    print_report(j);
    maybe_write_report(opt, j);
    return report.pass ? 0 : 1;
}

int run_oracle_min_mult(Options& opt) {
    const auto space = load_space(opt.space_path);
    const auto result = coarse::min_multiplicity_exhaustive(space, *opt.S, *opt.L, opt.budget);
    const json j{{"optimum", result.multiplicity}};
    print_report(j);
    maybe_write_report(opt, j);
    if (!opt.emit_cover_path.empty())
        coarse::io::write_json_file(opt.emit_cover_path, coarse::io::cover_to_json(result.cover));
    return 0;
}

int run_oracle_ball_scan(Options& opt) {
    const auto space = load_space(opt.space_path);
    const auto cover = coarse::io::cover_from_json(coarse::io::read_json_file(opt.cover_path));
    const bool included = coarse::ball_inclusion_scan(space, cover, *opt.L);
    const json j{{"included", included}};
    print_report(j);
    maybe_write_report(opt, j);
    return included ? 0 : 1;
}

// ---- wiring ----------------------------------------------------------------

void add_cover_verify_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--space", opt.space_path, "space JSON file")->required();
    cmd->add_option("--cover", opt.cover_path, "cover JSON file")->required();
    cmd->add_option("--n", opt.n, "dimension bound: multiplicity <= n+1");
    cmd->add_option("--S", opt.S, "mesh bound");
    cmd->add_option("--L", opt.L, "Lebesgue bound (min margin must exceed it)");
    cmd->add_option("--report", opt.report_path, "write the report JSON here");
    cmd->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    cmd->callback([cmd, &opt] {
        opt.action = [&opt] { return run_cover_verify(opt); };
        (void)cmd;
    });
}

void add_witness_verify_options(CLI::App* cmd, Options& opt, bool via_oracle) {
    cmd->add_option("--space", opt.space_path, "space JSON file")->required();
    cmd->add_option("--witness", opt.witness_path, "witness JSON file")->required();
    cmd->add_option("--R", opt.R, "close-pair distance bound")->required();
    cmd->add_option("--eps", opt.eps, "strict variation-ratio bound")->required();
    cmd->add_option("--n", opt.n, "projection bound: size <= n+1");
    cmd->add_option("--report", opt.report_path, "write the report JSON here");
    cmd->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    if (via_oracle) {
        cmd->add_option("--max-points", opt.budget.max_points, "oracle size limit");
        cmd->add_option("--time-limit", opt.budget.time_limit_seconds, "seconds");
    }
    cmd->callback([&opt, via_oracle] {
        opt.action = [&opt, via_oracle] { return run_witness_verify(opt, via_oracle); };
    });
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"certificates for bounded covers and witness families on finite metric spaces"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate or validate spaces");
    gen->require_subcommand(1);
    auto* grid = gen->add_subcommand("grid", "integer lattice under linf or l1");
    grid->add_option("--dim", opt.dim, "lattice dimension")->required();
    grid->add_option("--side", opt.side, "points per axis")->required();
    grid->add_option("--norm", opt.norm, "linf (default) or l1");
    grid->add_option("-o,--out", opt.out_path, "space JSON output")->required();
    grid->add_flag("--keep-generator", opt.keep_generator,
                   "emit the generator form instead of the matrix");
    grid->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    grid->callback([&opt] { opt.action = [&opt] { return run_gen_grid(opt); }; });

    auto* graph = gen->add_subcommand("graph", "shortest-path metric of a weighted graph");
    graph->add_option("--edges", opt.edges_path, "edge list JSON: {\"n\":, \"edges\": [[i,j,w]]}")
        ->required();
    graph->add_option("-o,--out", opt.out_path, "space JSON output")->required();
    graph->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    graph->callback([&opt] { opt.action = [&opt] { return run_gen_graph(opt); }; });

    auto* validate = gen->add_subcommand("validate", "check the metric axioms of a space file");
    validate->add_option("--in", opt.in_path, "space JSON input")->required();
    validate->add_option("-o,--out", opt.out_path, "rewrite canonically (optional)");
    validate->add_flag("--keep-generator", opt.keep_generator,
                       "keep the generator form when rewriting");
    validate->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    validate->callback([&opt] { opt.action = [&opt] { return run_gen_validate(opt); }; });

    // cover
    auto* cover = app.add_subcommand("cover", "build and verify covers");
    cover->require_subcommand(1);
    auto* brick = cover->add_subcommand("brick", "shifted-cube cover of a linf grid");
    brick->add_option("--space", opt.space_path, "grid space JSON (generator form)")->required();
    brick->add_option("--q", opt.q, "brick pitch")->required();
    brick->add_option("-o,--out", opt.out_path, "cover JSON output")->required();
    brick->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    brick->callback([&opt] { opt.action = [&opt] { return run_cover_brick(opt); }; });
    add_cover_verify_options(cover->add_subcommand("verify", "measure and check bounds"), opt);

    // witness
    auto* witness = app.add_subcommand("witness", "verify witness families");
    witness->require_subcommand(1);
    add_witness_verify_options(
        witness->add_subcommand("verify", "ratio, support, and projection checks"), opt, false);

    // verify (aliases)
    auto* verify = app.add_subcommand("verify", "aliases for cover/witness verify");
    verify->require_subcommand(1);
    add_cover_verify_options(verify->add_subcommand("cover", "same as `cover verify`"), opt);
    add_witness_verify_options(verify->add_subcommand("witness", "same as `witness verify`"),
                               opt, false);

    // convert
    auto* convert = app.add_subcommand("convert", "both constructive theorem directions");
    convert->require_subcommand(1);
    auto* c2w = convert->add_subcommand("cover-to-witness",
                                        "chain-length witness family of a bounded cover");
    c2w->add_option("--space", opt.space_path, "space JSON file")->required();
    c2w->add_option("--cover", opt.cover_path, "cover JSON file")->required();
    c2w->add_option("--R", opt.R, "chain step bound")->required();
    c2w->add_option("--L", opt.L, "Lebesgue scale (default: chosen from --eps and --n)");
    c2w->add_option("--eps", opt.eps, "target variation-ratio bound");
    c2w->add_option("--n", opt.n, "dimension bound");
    c2w->add_option("-o,--out", opt.out_path, "witness JSON output")->required();
    c2w->add_option("--report", opt.report_path, "write the verification report here");
    c2w->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    c2w->callback([&opt] { opt.action = [&opt] { return run_convert_cover_to_witness(opt); }; });

    auto* w2c = convert->add_subcommand("witness-to-cover",
                                        "support cover derived from a witness family");
    w2c->add_option("--space", opt.space_path, "space JSON file")->required();
    w2c->add_option("--witness", opt.witness_path, "witness JSON file")->required();
    w2c->add_option("--R", opt.R, "close-pair distance bound")->required();
    w2c->add_option("--n", opt.n, "dimension bound")->required();
    w2c->add_option("-o,--out", opt.out_path, "cover JSON output")->required();
    w2c->add_option("--selected", opt.selected_path, "write selected points and element owners");
    w2c->add_option("--report", opt.report_path, "write the report/certificate here");
    w2c->add_flag("--certify", opt.certify, "require the 1/(n+1) premise and emit a certificate");
    w2c->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    w2c->callback([&opt] { opt.action = [&opt] { return run_convert_witness_to_cover(opt); }; });

    // oracle
    auto* oracle = app.add_subcommand("oracle", "independent brute-force checkers");
    oracle->require_subcommand(1);
    auto* minmult = oracle->add_subcommand("min-mult", "exact minimum multiplicity at (S, L)");
    minmult->add_option("--space", opt.space_path, "space JSON file")->required();
    minmult->add_option("--S", opt.S, "mesh bound")->required();
    minmult->add_option("--L", opt.L, "Lebesgue bound")->required();
    minmult->add_option("--max-points", opt.budget.max_points, "point limit (default 12)");
    minmult->add_option("--max-sets", opt.budget.max_candidate_sets,
                        "candidate pool limit (default 8192)");
    minmult->add_option("--time-limit", opt.budget.time_limit_seconds, "seconds (default 60)");
    minmult->add_option("--emit-cover", opt.emit_cover_path, "write an optimal cover here");
    minmult->add_option("--report", opt.report_path, "write {\"optimum\": k} here");
    minmult->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    minmult->callback([&opt] { opt.action = [&opt] { return run_oracle_min_mult(opt); }; });

    add_witness_verify_options(
        oracle->add_subcommand("pair-scan", "naive twin of witness verify"), opt, true);

    auto* ballscan = oracle->add_subcommand("ball-scan", "literal closed-ball inclusion check");
    ballscan->add_option("--space", opt.space_path, "space JSON file")->required();
    ballscan->add_option("--cover", opt.cover_path, "cover JSON file")->required();
    ballscan->add_option("--L", opt.L, "ball radius")->required();
    ballscan->add_option("--report", opt.report_path, "write {\"included\": bool} here");
    ballscan->add_option("--manifest", opt.manifest_path, "write a run manifest here");
    ballscan->callback([&opt] { opt.action = [&opt] { return run_oracle_ball_scan(opt); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    int code = 0;
    try {
        code = opt.action ? opt.action() : 2;
    } catch (const coarse::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = 2;
    }

    if (!opt.manifest_path.empty()) {
        try {
            std::vector<std::string> inputs;
            for (const auto& p : {opt.space_path, opt.cover_path, opt.witness_path,
                                  opt.edges_path, opt.in_path})
                if (!p.empty()) inputs.push_back(p);
            std::vector<std::string> args(argv + 1, argv + argc);
            std::string command;
            for (const auto& a : args) {
                if (a.rfind("--", 0) == 0) break;
                if (!command.empty()) command += ' ';
                command += a;
            }
            const json manifest{{"command", command},
                                {"inputs", inputs},
                                {"params", manifest_params(opt)},
                                {"output", opt.out_path.empty() ? json(nullptr)
                                                                : json(opt.out_path)},
                                {"exit_code", code}};
            coarse::io::write_json_file(opt.manifest_path, manifest);
        } catch (const std::exception& e) {
            std::cerr << "error: manifest: " << e.what() << "\n";
            if (code == 0) code = 2;
        }
    }
    return code;
}
