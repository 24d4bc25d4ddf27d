// End-to-end checks of the CLI surface: exit codes, summary lines, bench
// table shape, rendering, and the XWORD_BUDGET override. argv[1] is the
// binary path.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int failures = 0;
std::string cli;
std::string dir;

std::string path(const std::string& name) { return dir + "/" + name; }

void write_file(const std::string& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int exit_code;
    std::string out;
};

Run run(const std::string& args) {
    std::string out_file = path("cmd_out.txt");
    int rc = std::system((cli + " " + args + " > " + out_file + " 2> " + path("cmd_err.txt")).c_str());
    int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return {code, slurp(out_file)};
}

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "ok: " << what << "\n";
    } else {
        std::cout << "FAIL: " << what << "\n";
        failures++;
    }
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_checks <xword binary>\n";
        return 2;
    }
    cli = argv[1];
    char tmpl[] = "/tmp/xword_cli_XXXXXX";
    dir = mkdtemp(tmpl);

    const std::string fix_cross =
        "XW 1\nalphabet ab\nweight a 1\nweight b 2\nreuse true\n"
        "slot h1 H 1 1 2\nslot v1 V 1 1 2\nword ab\nword bb\n";
    write_file(path("fc.xw"), fix_cross);
    std::string no_reuse = fix_cross;
    no_reuse.replace(no_reuse.find("reuse true"), 10, "reuse false");
    write_file(path("fc_nr.xw"), no_reuse);

    // solve: summary line and solution output
    Run r = run("solve -i " + path("fc.xw") + " --algo oracle --mode opt");
    expect(r.exit_code == 0 && contains(r.out, "weight=6 valid=true complete=true algo=oracle"),
           "opt summary on the fixture");
    r = run("solve -i " + path("fc_nr.xw") + " --mode dec --algo oracle");
    expect(r.exit_code == 0 && contains(r.out, "complete=false"), "dec summary without reuse");
    r = run("solve -i " + path("fc_nr.xw") + " --algo treewidth");
    expect(r.exit_code == 4, "treewidth on a no-reuse instance exits 4");
    r = run("solve -i " + path("fc.xw") + " --algo prefilled");
    expect(r.exit_code == 4, "prefilled without prefills exits 4");
    r = run("solve -i " + path("fc.xw") + " --algo oracle --budget 2");
    expect(r.exit_code == 3, "tiny budget exits 3");
    write_file(path("broken.xw"), "XW 1\nalphabet ab\nslot a H 1 1\n");
    r = run("solve -i " + path("broken.xw"));
    expect(r.exit_code == 2, "parse errors exit 2");

    // eval renders the grid
    write_file(path("sol.txt"), "assign h1 bb\nassign v1 bb\n");
    r = run("eval -i " + path("fc.xw") + " -s " + path("sol.txt"));
    expect(r.exit_code == 0 && contains(r.out, "weight=6 valid=true complete=true") &&
               contains(r.out, "bb\nb#"),
           "eval prints the summary and the rendered grid");

    // graph inspection
    r = run("graph -i " + path("fc.xw"));
    expect(r.exit_code == 0 && contains(r.out, "is_matching=true") &&
               contains(r.out, "is_union_of_stars=true") && contains(r.out, "width_estimate=1"),
           "graph summary fields");

    // approx certificate
    r = run("approx -i " + path("fc.xw") + " --epsilon 1");
    expect(r.exit_code == 0 && contains(r.out, "weight=6") && contains(r.out, "bound=0.6667"),
           "approx reports the ratio certificate");
    r = run("approx -i " + path("fc.xw") + " --epsilon 2");
    expect(r.exit_code == 4, "epsilon outside (0,1] exits 4");

    // gen + graph on the product: the x1sat grid graph is a matching
    write_file(path("f.cnf"), "p cnf 2 1\n1 2 0\n");
    r = run("gen x1sat " + path("f.cnf") + " -o " + path("x1.xw"));
    expect(r.exit_code == 0, "x1sat generation succeeds");
    r = run("graph -i " + path("x1.xw"));
    expect(r.exit_code == 0 && contains(r.out, "is_matching=true"),
           "x1sat instances classify as matchings");
    r = run("gen indset " + path("f.cnf") + " --k 2");
    expect(r.exit_code == 2, "bad generator input exits 2");

    // bench: missing corpus, empty corpus, repeat columns
    r = run("bench --corpus " + path("nowhere"));
    expect(r.exit_code == 2, "missing corpus exits 2");
    std::string corpus = path("corpus");
    expect(std::system(("mkdir -p " + corpus).c_str()) == 0, "corpus dir created");
    r = run("bench --corpus " + corpus);
    expect(r.exit_code == 0 && contains(r.out, "file\talgo\tweight"), "empty corpus gives a bare table");
    expect(std::system(("cp " + path("fc.xw") + " " + corpus + "/fc.xw").c_str()) == 0,
           "corpus file copied");
    r = run("bench --corpus " + corpus + " --repeat 3 --algo oracle");
    expect(r.exit_code == 0 && contains(r.out, "candidates3"), "repeat adds per-run columns");
    {
        std::istringstream lines(r.out);
        std::string header, row;
        std::getline(lines, header);
        std::getline(lines, row);
        std::istringstream cols(row);
        std::string file, algo, weight, c1, t1, c2, t2, c3, t3;
        cols >> file >> algo >> weight >> c1 >> t1 >> c2 >> t2 >> c3 >> t3;
        expect(c1 == c2 && c2 == c3 && !c1.empty(), "candidate counts identical across repeats");
    }

    // XWORD_BUDGET overrides the default budget
    {
        std::string out_file = path("env_out.txt");
        int rc = std::system(("XWORD_BUDGET=2 " + cli + " solve -i " + path("fc.xw") +
                              " --algo oracle > " + out_file + " 2>&1")
                                 .c_str());
        int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        expect(code == 3, "XWORD_BUDGET applies when --budget is absent");
    }

    std::cout << (failures == 0 ? "all cli checks passed\n" : "cli checks FAILED\n");
    return failures == 0 ? 0 : 1;
}
