#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

const fs::path& scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "listalloc_test_cli";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Result run(const std::string& args)
{
    const auto out = scratch() / "stdout.txt";
    const std::string cmd = std::string(LISTALLOC_CLI) + " " + args + " > " + out.string() + " 2>" +
                            (scratch() / "stderr.txt").string();
    Result r;
    const int status = std::system(cmd.c_str());
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

std::string write(const std::string& name, const std::string& text)
{
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

const char* triangle_yes = R"({"n":3,"edges":[[0,1],[1,2],[0,2]],"r":2,"alpha":[[1,2,2]]})";
const char* triangle_no = R"({"n":3,"edges":[[0,1],[1,2],[0,2]],"r":2,"alpha":[[1,2,3]]})";

} // namespace

TEST_CASE("la solve, oracle and verify")
{
    const auto yes = write("yes.json", triangle_yes);
    auto r = run("la solve -i " + yes);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("VERDICT yes\n", 0) == 0);
    CHECK(r.out.find("\"allocation\"") != std::string::npos);

    auto no = run("la solve --oracle -i " + write("no.json", triangle_no));
    CHECK(no.code == 1);
    CHECK(no.out == "VERDICT no\n");

    auto o = run("la oracle -i " + yes);
    CHECK(o.code == 0);

    const auto good = write("good.json", R"({"kind":"allocation","assignment":[1,2,2]})");
    const auto bad = write("bad.json", R"({"kind":"allocation","assignment":[1,1,1]})");
    CHECK(run("la verify -i " + yes + " -w " + good).code == 0);
    CHECK(run("la verify -i " + yes + " -w " + bad).code == 1);
}

TEST_CASE("witness files and caps")
{
    const auto yes = write("yes.json", triangle_yes);
    const auto witness = scratch() / "w.json";
    fs::remove(witness);
    auto r = run("--emit-witness " + witness.string() + " la solve -i " + yes);
    CHECK(r.code == 0);
    CHECK(slurp(witness) == r.out.substr(std::string("VERDICT yes\n").size()));

    auto capped = run("--oracle-cap 2 la oracle -i " + yes);
    CHECK(capped.code == 3);
    CHECK(capped.out == "VERDICT cap-exceeded\n");
}

TEST_CASE("threshold override warns")
{
    auto r = run("--f2-override 1 --trace la solve -i " + write("yes.json", triangle_yes));
    CHECK(r.code == 0);
    CHECK(slurp(scratch() / "stderr.txt").find("WARNING") != std::string::npos);
}

TEST_CASE("usage and format errors")
{
    CHECK(run("").code == 2);
    CHECK(run("la").code == 2);
    CHECK(run("la solve").code == 2);
    CHECK(run("la solve -i /nonexistent.json").code == 2);
    CHECK(run("la solve -i " + write("broken.json", "{\"n\":")).code == 2);
    CHECK(run("--jobs 0 la solve -i " + write("yes.json", triangle_yes)).code == 2);
}

TEST_CASE("minmax, homomorphisms and graph tools")
{
    const auto mm = write("mm.json", R"({"n":3,"edges":[[0,1],[1,2]],"terminals":[0,2],"ell":1})");
    auto r = run("minmax solve --oracle -i " + mm);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"partition\"") != std::string::npos);
    CHECK(run("minmax oracle -i " + mm).code == 0);

    const auto cycle = write(
        "cycle.json",
        R"({"n":3,"guest_arcs":[[0,1],[1,2],[2,0]],"host":{"vertices":3,"arcs":[[0,1],[0,2],[1,0],[1,2],[2,0],[2,1]],"loops":[]},"ell":2})");
    CHECK(run("bldh solve --oracle -i " + cycle).code == 1);
    CHECK(run("mbldh solve -i " + cycle).code == 0);
    CHECK(run("bldh oracle -i " + cycle).code == 1);

    const auto as = write(
        "as.json",
        R"({"n":2,"guest_arcs":[[0,1]],"host":{"vertices":2,"arcs":[[0,1]],"loops":[]},"alpha_arcs":[[0,1,1]]})");
    auto h = run("asldh solve --oracle -i " + as);
    CHECK(h.code == 0);
    CHECK(h.out.find("\"mapping\":[0,1]") != std::string::npos);
    CHECK(run("asldh sparsify -i " + as).code == 0);

    const auto g = write("g.dimacs", "p edge 6 7\ne 1 2\ne 2 3\ne 1 3\ne 4 5\ne 5 6\ne 4 6\ne 3 4\n");
    auto core = run("core -d 2 -i " + g);
    CHECK(core.code == 0);
    CHECK(core.out.find("p edge 6 6") != std::string::npos);
    auto sep = run("sep -q 2 -y 1 -i " + g);
    CHECK(sep.code == 0);
    CHECK(run("sep -q 3 -y 1 -i " + g).code == 1);
}

TEST_CASE("generators are reproducible and solvable")
{
    for (const char* kind : {"la", "minmax", "bldh", "asldh"}) {
        const std::string args = std::string("--seed 9 gen ") + kind + " -n 6";
        auto a = run(args);
        auto b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(run(std::string("--seed 10 gen ") + kind + " -n 6").out != a.out);
    }
    const auto inst = write("gen.json", run("--seed 4 gen la -n 6 -r 3 --planted --connected").out);
    CHECK(run("la solve --oracle -i " + inst).code == 0);
}
