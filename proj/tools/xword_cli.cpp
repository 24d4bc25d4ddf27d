// xword: crossword-filling solvers and hardness-instance generators.
//
// Subcommands: solve, eval, graph, approx, gen, bench. File formats are
// documented in the README; summary lines are stable key=value pairs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "xword/approx.hpp"
#include "xword/core.hpp"
#include "xword/exact.hpp"
#include "xword/generators.hpp"
#include "xword/io.hpp"
#include "xword/treewidth.hpp"

namespace fs = std::filesystem;
using namespace xword;

namespace {

int exit_code_for(Errc kind) {
    switch (kind) {
        case Errc::BudgetExceeded:
            return 3;
        case Errc::PreconditionViolated:
        case Errc::ReuseRequired:
        case Errc::NotAVertexCover:
        case Errc::TooLargeForExact:
        case Errc::InvalidEpsilon:
        case Errc::InvalidAssignment:
        case Errc::WitnessRejected:
        case Errc::Overflow:
            return 4;
        default:
            return 2;  // parse / validation / bad input
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::SyntaxError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::SyntaxError, "cannot write '" + path + "'");
    out << text;
}

const char* fmt_bool(bool b) { return b ? "true" : "false"; }

long long env_budget(long long fallback) {
    const char* v = std::getenv("XWORD_BUDGET");
    if (!v) return fallback;
    try {
        return std::stoll(v);
    } catch (const std::exception&) {
        return fallback;
    }
}

exact::Algo parse_algo(const std::string& name) {
    if (name == "auto") return exact::Algo::Auto;
    if (name == "oracle") return exact::Algo::Oracle;
    if (name == "enum") return exact::Algo::Enum;
    if (name == "vc") return exact::Algo::VertexCover;
    if (name == "treewidth") return exact::Algo::Treewidth;
    if (name == "prefilled") return exact::Algo::Prefilled;
    fail(Errc::SyntaxError, "unknown algorithm '" + name + "'");
}

struct SolveArgs {
    std::string input, output, algo = "auto", mode = "opt";
    long long budget = 0;
    int jobs = 1;
};

int run_solve(const SolveArgs& args) {
    Instance inst = parse_instance(read_file(args.input));
    exact::SolveOptions opts{args.budget, args.jobs};
    exact::Algo algo = parse_algo(args.algo);

    Assignment result;
    long long weight = 0;
    bool complete = false;
    long long candidates = 0;
    exact::Algo used = algo;

    if (args.mode == "dec") {
        exact::DecideResult dec = exact::decide_stats(inst, algo, opts);
        used = dec.used;
        candidates = dec.stats.candidates;
        if (dec.fill) {
            result = *dec.fill;
            complete = true;
            weight = evaluate(inst, result).weight;
        } else {
            result = Assignment::all_empty(inst.grid.size());
        }
    } else if (args.mode == "opt") {
        if (algo == exact::Algo::Auto) used = exact::choose_algo(inst, opts);
        exact::SolveResult res;
        switch (used) {
            case exact::Algo::Oracle: res = exact::oracle(inst, opts); break;
            case exact::Algo::Enum:
                res = inst.reuse ? exact::solve_enum_reuse(inst, opts)
                                 : exact::solve_enum_noreuse(inst, opts);
                break;
            case exact::Algo::VertexCover: {
                GraphClassification cls = classify_graph(inst.grid, grid_graph(inst.grid));
                res = exact::solve_vertex_cover(inst, cls.vertex_cover_hint, opts);
                break;
            }
            case exact::Algo::Treewidth: res = tw::solve_treewidth(inst, opts); break;
            case exact::Algo::Prefilled:
                res = inst.reuse ? exact::solve_prefilled_reuse(inst, opts)
                                 : exact::solve_prefilled_noreuse(inst, opts);
                break;
            case exact::Algo::Auto: break;
        }
        result = res.best;
        weight = res.weight;
        complete = result.complete();
        candidates = res.stats.candidates;
    } else {
        fail(Errc::SyntaxError, "mode must be dec or opt");
    }

    std::cout << "weight=" << weight << " valid=true complete=" << fmt_bool(complete)
              << " algo=" << exact::algo_name(used) << " candidates=" << candidates << "\n";
    std::string sol = write_solution(inst, result);
    if (args.output.empty()) std::cout << sol;
    else write_file(args.output, sol);
    return 0;
}

int run_eval(const std::string& input, const std::string& solution) {
    Instance inst = parse_instance(read_file(input));
    Assignment a = parse_solution(read_file(solution), inst);
    EvalResult ev = evaluate(inst, a);
    bool complete = ev.valid && a.complete();
    std::cout << "weight=" << ev.weight << " valid=" << fmt_bool(ev.valid)
              << " complete=" << fmt_bool(complete) << "\n";
    if (!ev.valid) std::cout << "reason=" << ev.reason << "\n";
    std::cout << render_grid(inst, ev.valid ? &a : nullptr);
    return 0;
}

int run_graph(const std::string& input) {
    Instance inst = parse_instance(read_file(input));
    GridGraph g = grid_graph(inst.grid);
    GraphClassification cls = classify_graph(inst.grid, g);
    tw::TreeDecomposition td = tw::tree_decomposition(g, tw::Method::MinFill);
    std::cout << "slots=" << g.n << " edges=" << g.edges.size()
              << " components=" << cls.components << " max_degree=" << cls.max_degree
              << " is_matching=" << fmt_bool(cls.is_matching)
              << " is_union_of_stars=" << fmt_bool(cls.is_union_of_stars)
              << " vertex_cover_hint=" << cls.vertex_cover_hint.size()
              << " width_estimate=" << std::max(0, td.width()) << "\n";
    return 0;
}

int run_approx(const std::string& input, const std::string& eps_text, const std::string& output,
               long long budget, int jobs) {
    Instance inst = parse_instance(read_file(input));
    approx::Ratio eps = approx::parse_epsilon(eps_text);
    approx::Result res = approx::approx_solve(inst, eps, {budget, jobs});
    char bound[32];
    std::snprintf(bound, sizeof(bound), "%.4f", res.certificate.bound());
    std::cout << "weight=" << res.solve.weight << " bound=" << bound << " epsilon=" << eps.num
              << "/" << eps.den << " n=" << res.certificate.n
              << " candidates=" << res.solve.stats.candidates << "\n";
    std::string sol = write_solution(inst, res.solve.best);
    if (output.empty()) std::cout << sol;
    else write_file(output, sol);
    return 0;
}

struct GenArgs {
    std::string kind, input, output;
    int k = 2;
    unsigned long long seed = 0;
    std::string epsilon = "0.5";
    bool noreuse_variant = false;
    bool restrict = false;
};

int run_gen(const GenArgs& args) {
    gen::GeneratedInstance out;
    std::string text = read_file(args.input);
    if (args.kind == "indset") {
        out = gen::gen_from_independent_set(gen::parse_graph(text), args.k, args.noreuse_variant);
    } else if (args.kind == "3part") {
        out = gen::gen_from_three_partition({gen::parse_integer_list(text)});
    } else if (args.kind == "x1sat") {
        gen::CnfFormula f = gen::parse_dimacs(text);
        if (args.restrict) f = gen::restrict_sat(f);
        out = gen::gen_from_x1sat(f);
    } else if (args.kind == "sparsesat") {
        gen::SparseReport report;
        gen::SparseCnf s = gen::sparse_partition(gen::parse_dimacs(text),
                                                 std::stod(args.epsilon), args.seed, &report);
        out = gen::gen_from_sparse_sat(s);
        out.comments.push_back("sparse_partition: colors=" + std::to_string(report.colors) +
                               " removed_clauses=" + std::to_string(report.removed_clauses.size()) +
                               " attempts=" + std::to_string(report.attempts) +
                               " seed=" + std::to_string(args.seed));
    } else if (args.kind == "ulc") {
        out = gen::gen_from_ulc(gen::parse_ulc(text));
    } else {
        fail(Errc::SyntaxError, "unknown generator kind '" + args.kind +
                                    "' (expected indset|3part|x1sat|sparsesat|ulc)");
    }
    std::string file = write_instance(out.instance, out.comments);
    if (args.output.empty()) std::cout << file;
    else write_file(args.output, file);
    return 0;
}

int run_bench(const std::string& corpus, int repeat, const std::string& algo, long long budget,
              int jobs) {
    if (!fs::is_directory(corpus)) fail(Errc::SyntaxError, "corpus directory '" + corpus + "' missing");
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(corpus))
        if (e.is_regular_file() && e.path().extension() == ".xw") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::cout << "file\talgo\tweight";
    for (int r = 0; r < repeat; r++) std::cout << "\tcandidates" << r + 1 << "\tms" << r + 1;
    std::cout << "\n";
    for (const fs::path& p : files) {
        Instance inst = parse_instance(read_file(p.string()));
        exact::SolveOptions opts{budget, jobs};
        exact::Algo used = parse_algo(algo);
        if (used == exact::Algo::Auto) used = exact::choose_algo(inst, opts);
        long long weight = 0;
        std::vector<long long> counts;
        std::vector<double> times;
        for (int r = 0; r < repeat; r++) {
            auto t0 = std::chrono::steady_clock::now();
            exact::SolveResult res;
            switch (used) {
                case exact::Algo::Oracle: res = exact::oracle(inst, opts); break;
                case exact::Algo::Enum:
                    res = inst.reuse ? exact::solve_enum_reuse(inst, opts)
                                     : exact::solve_enum_noreuse(inst, opts);
                    break;
                case exact::Algo::VertexCover: {
                    GraphClassification cls = classify_graph(inst.grid, grid_graph(inst.grid));
                    res = exact::solve_vertex_cover(inst, cls.vertex_cover_hint, opts);
                    break;
                }
                case exact::Algo::Treewidth: res = tw::solve_treewidth(inst, opts); break;
                case exact::Algo::Prefilled:
                    res = inst.reuse ? exact::solve_prefilled_reuse(inst, opts)
                                     : exact::solve_prefilled_noreuse(inst, opts);
                    break;
                case exact::Algo::Auto: break;
            }
            auto t1 = std::chrono::steady_clock::now();
            weight = res.weight;
            counts.push_back(res.stats.candidates);
            times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
        std::cout << p.filename().string() << "\t" << exact::algo_name(used) << "\t" << weight;
        for (int r = 0; r < repeat; r++) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", times[r]);
            std::cout << "\t" << counts[r] << "\t" << buf;
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crossword filling solvers and hardness-instance generators"};
    app.require_subcommand(1);

    long long default_budget = env_budget(10'000'000);

    SolveArgs solve_args;
    solve_args.budget = default_budget;
    auto* solve = app.add_subcommand("solve", "solve an instance exactly");
    solve->add_option("-i,--input", solve_args.input)->required();
    solve->add_option("-o,--output", solve_args.output);
    solve->add_option("--algo", solve_args.algo)
        ->check(CLI::IsMember({"auto", "oracle", "enum", "vc", "treewidth", "prefilled"}));
    solve->add_option("--mode", solve_args.mode)->check(CLI::IsMember({"dec", "opt"}));
    solve->add_option("--budget", solve_args.budget);
    solve->add_option("--jobs", solve_args.jobs);

    std::string eval_input, eval_solution;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a solution file");
    eval_cmd->add_option("-i,--input", eval_input)->required();
    eval_cmd->add_option("-s,--solution", eval_solution)->required();

    std::string graph_input;
    auto* graph_cmd = app.add_subcommand("graph", "inspect the grid graph");
    graph_cmd->add_option("-i,--input", graph_input)->required();

    std::string approx_input, approx_eps = "1", approx_output;
    long long approx_budget = default_budget;
    int approx_jobs = 1;
    auto* approx_cmd = app.add_subcommand("approx", "approximation with a ratio certificate");
    approx_cmd->add_option("-i,--input", approx_input)->required();
    approx_cmd->add_option("--epsilon", approx_eps);
    approx_cmd->add_option("-o,--output", approx_output);
    approx_cmd->add_option("--budget", approx_budget);
    approx_cmd->add_option("--jobs", approx_jobs);

    GenArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen", "generate a reduction instance");
    gen_cmd->add_option("kind", gen_args.kind)->required();
    gen_cmd->add_option("input", gen_args.input)->required();
    gen_cmd->add_option("-o,--output", gen_args.output);
    gen_cmd->add_option("--k", gen_args.k);
    gen_cmd->add_option("--seed", gen_args.seed);
    gen_cmd->add_option("--epsilon", gen_args.epsilon);
    gen_cmd->add_flag("--noreuse-variant", gen_args.noreuse_variant);
    gen_cmd->add_flag("--restrict", gen_args.restrict);

    std::string bench_corpus, bench_algo = "auto";
    int bench_repeat = 1, bench_jobs = 1;
    long long bench_budget = default_budget;
    auto* bench_cmd = app.add_subcommand("bench", "run a corpus and print timings");
    bench_cmd->add_option("--corpus", bench_corpus)->required();
    bench_cmd->add_option("--repeat", bench_repeat);
    bench_cmd->add_option("--algo", bench_algo);
    bench_cmd->add_option("--budget", bench_budget);
    bench_cmd->add_option("--jobs", bench_jobs);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (eval_cmd->parsed()) return run_eval(eval_input, eval_solution);
        if (graph_cmd->parsed()) return run_graph(graph_input);
        if (approx_cmd->parsed())
            return run_approx(approx_input, approx_eps, approx_output, approx_budget, approx_jobs);
        if (gen_cmd->parsed()) return run_gen(gen_args);
        if (bench_cmd->parsed())
            return run_bench(bench_corpus, bench_repeat, bench_algo, bench_budget, bench_jobs);
    } catch (const Error& e) {
        int code = exit_code_for(e.kind());
        std::cerr << "error kind=" << errc_name(e.kind()) << " exit=" << code;
        if (e.line() > 0) std::cerr << " line=" << e.line();
        std::cerr << " msg=\"" << e.what() << "\"\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error kind=Internal exit=1 msg=\"" << e.what() << "\"\n";
        return 1;
    }
    return 0;
}
