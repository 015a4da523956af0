#include <iostream>

#include <CLI11.hpp>

#include "forge/cli.hpp"

using forge::cli::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"Build, reduce and inspect simplicial complexes with prescribed torsion."};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_flag("-v,--verbose", cfg.verbosity, "Report elapsed time on stderr");
    std::uint64_t seed = 0;
    auto add_seed = [&](CLI::App* sub) { return sub->add_option("--seed", seed, "RNG seed (default: FORGE_SEED or 0)"); };

    auto* build = app.add_subcommand("build", "Construct a complex whose H_{d-1} torsion is the given group");
    build->add_option("-d", cfg.d, "Dimension (at least 2)")->required();
    build->add_option("-m", cfg.m, "Cyclic order, decimal or b^e");
    build->add_option("--orders", cfg.orders, "Comma separated cyclic orders")->delimiter(',');
    build->add_option("-o,--out", cfg.output, "Complex file to write")->required();
    build->add_option("--marks", cfg.marks_output, "Marks sidecar (default: <out>.marks.json)");

    auto* hom = app.add_subcommand("homology", "Print integral homology of a complex file");
    hom->add_option("input", cfg.input, "Complex file")->required();
    auto* degree = hom->add_option("-i", "Single degree to print");
    hom->add_flag("--reduced", cfg.reduced, "Reduced H_0");

    auto* red = app.add_subcommand("reduce", "Color a complex and output its pattern complex");
    red->add_option("input", cfg.input, "Complex file")->required();
    red->add_option("--method", cfg.method, "greedy or lll")->check(CLI::IsMember({"greedy", "lll"}));
    auto* red_seed = add_seed(red);
    red->add_option("-o,--out", cfg.output, "Reduced complex file");
    red->add_option("--coloring", cfg.coloring_output, "Coloring JSON file");
    red->add_option("--report", cfg.report_output, "Report JSON file (default: stdout)");
    red->add_option("--verify-limit", cfg.verify_face_limit, "Skip homology checks above this many faces");
    red->add_option("--max-rounds", cfg.max_rounds, "Resampling cap for lll");

    auto* rep = app.add_subcommand("report", "Vertex counts before and after reduction over a grid of (d, m)");
    rep->add_option("-d", cfg.d_list, "Dimensions")->delimiter(',')->required();
    rep->add_option("-m", cfg.m_list, "Cyclic orders, decimal or b^e")->delimiter(',');
    rep->add_option("--method", cfg.method, "greedy or lll")->check(CLI::IsMember({"greedy", "lll"}));
    auto* rep_seed = add_seed(rep);
    rep->add_option("--csv", cfg.csv_output, "CSV file to write");
    rep->add_option("--verify-limit", cfg.verify_face_limit, "Skip homology checks above this many faces");
    rep->add_option("--max-rounds", cfg.max_rounds, "Resampling cap for lll");
    bool no_timing = false;
    rep->add_flag("--no-timing", no_timing, "Write 0 in the seconds column so the CSV is byte-stable");

    auto* sum = app.add_subcommand("sum-complex", "Sum complex X_A on Z/n");
    sum->add_option("--n", cfg.n, "Number of vertices")->required();
    sum->add_option("--set", cfg.set, "Comma separated residues A")->delimiter(',')->required();
    sum->add_option("-o,--out", cfg.output, "Complex file (default: stdout)");

    auto* rnd = app.add_subcommand("random", "Random d-complex with complete (d-1)-skeleton");
    rnd->add_option("--n", cfg.n, "Number of vertices")->required();
    rnd->add_option("-d", cfg.d, "Dimension")->required();
    auto* faces = rnd->add_option("--faces", "Exact number of d-faces");
    auto* prob = rnd->add_option("--p", "Independent face probability");
    auto* rnd_seed = add_seed(rnd);
    rnd->add_option("-o,--out", cfg.output, "Complex file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return forge::cli::kInputError;
    }

    auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    for (auto* opt : {red_seed, rep_seed, rnd_seed})
        if (opt->count() > 0) cfg.seed = seed;
    if (degree->count() > 0) cfg.degree = degree->as<int>();
    if (faces->count() > 0) cfg.faces = faces->as<std::size_t>();
    if (prob->count() > 0) cfg.p = prob->as<double>();
    cfg.timing = !no_timing;
    return forge::cli::run(cfg, std::cout, std::cerr);
}
