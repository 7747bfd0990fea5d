// Command-line front end. Exit codes: 0 yes, 1 no, 2 usage/format error or
// oracle disagreement, 3 cap exceeded or timeout.

#include "listalloc/errors.hpp"
#include "listalloc/generate.hpp"
#include "listalloc/io.hpp"
#include "listalloc/oracle.hpp"
#include "listalloc/reductions.hpp"
#include "listalloc/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace listalloc;

namespace {

enum Exit { yes = 0, no = 1, usage = 2, capped = 3 };

struct Globals {
    std::uint64_t oracle_cap = default_oracle_cap;
    long f2_override = 0;
    std::uint64_t seed = 0;
    int jobs = 1;
    double timeout = 0;
    std::string emit_witness;
    bool trace = false;
    std::string splitter = "exhaustive";
};

struct Io {
    std::string input;
    std::string witness;
    bool oracle = false;
};

PipelineConfig make_config(const Globals& g)
{
    PipelineConfig cfg;
    cfg.oracle_cap = g.oracle_cap;
    if (g.f2_override > 0) {
        cfg.f2_override = g.f2_override;
        std::cerr << "WARNING: --f2-override " << g.f2_override
                  << " is a test mode. The recursion threshold is replaced and the size\n"
                     "WARNING: guarantees of the shrink step no longer hold; verdicts stay exact.\n";
    }
    cfg.splitter.seed = g.seed;
    cfg.splitter.mode =
        g.splitter == "randomized" ? SplitterMode::randomized : SplitterMode::exhaustive_verified;
    cfg.jobs = std::max(1, g.jobs);
    if (g.timeout > 0)
        cfg.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                          std::chrono::duration<double>(g.timeout));
    if (g.trace)
        cfg.trace = [](const std::string& msg) { std::cerr << "trace: " << msg << "\n"; };
    return cfg;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw FormatError("cannot write " + path);
    out << text;
}

// Prints the verdict line and the witness; returns the exit code.
template <class W>
int report(const Globals& g, const std::optional<W>& result)
{
    if (!result) {
        std::cout << "VERDICT no\n";
        return no;
    }
    const std::string text = serialize(*result);
    std::cout << "VERDICT yes\n" << text;
    if (!g.emit_witness.empty())
        write_text(g.emit_witness, text);
    return yes;
}

template <class W>
int solve_and_report(const Globals& g, bool cross_check, const std::function<std::optional<W>()>& solve,
                     const std::function<std::optional<W>()>& oracle)
{
    auto result = solve();
    if (cross_check) {
        auto reference = oracle();
        if (reference.has_value() != result.has_value()) {
            std::cerr << "error: pipeline says " << (result ? "yes" : "no") << ", oracle says "
                      << (reference ? "yes" : "no") << "\n";
            return usage;
        }
    }
    return report(g, result);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact solver for List Allocation, Min-Max Multiway Cut and bounded list "
                 "digraph homomorphism"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--oracle-cap", g.oracle_cap, "largest state space the oracles may enumerate");
    app.add_option("--f2-override", g.f2_override, "test mode: replace the recursion threshold f2(w)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for generators and randomized splitters");
    app.add_option("--jobs", g.jobs, "threads for family sweeps")->check(CLI::PositiveNumber);
    app.add_option("--timeout", g.timeout, "wall-clock limit in seconds");
    app.add_option("--emit-witness", g.emit_witness, "also write the witness to this file");
    app.add_flag("--trace", g.trace, "print shrink recursion and contraction events to stderr");
    app.add_option("--splitter", g.splitter, "separating family mode")
        ->check(CLI::IsMember({"exhaustive", "randomized"}));

    Io io;
    std::function<int()> action;

    auto input_option = [&](CLI::App* cmd) { cmd->add_option("-i,--input", io.input, "instance file")->required(); };
    auto oracle_flag = [&](CLI::App* cmd) {
        cmd->add_flag("--oracle", io.oracle, "cross-check against the exhaustive oracle");
    };

    // la
    auto* la = app.add_subcommand("la", "List Allocation")->require_subcommand(1);
    auto* la_solve = la->add_subcommand("solve", "solve with the full pipeline");
    input_option(la_solve);
    oracle_flag(la_solve);
    la_solve->callback([&] {
        action = [&] {
            auto inst = parse_la(read_file(io.input));
            auto cfg = make_config(g);
            return solve_and_report<Allocation>(
                g, io.oracle, [&] { return solve_la(inst, cfg); },
                [&] { return oracle_la(inst, g.oracle_cap); });
        };
    });
    auto* la_oracle = la->add_subcommand("oracle", "solve by exhaustive enumeration");
    input_option(la_oracle);
    la_oracle->callback([&] {
        action = [&] { return report(g, oracle_la(parse_la(read_file(io.input)), g.oracle_cap)); };
    });
    auto* la_verify = la->add_subcommand("verify", "check an allocation");
    input_option(la_verify);
    la_verify->add_option("-w,--witness", io.witness, "allocation file")->required();
    la_verify->callback([&] {
        action = [&] {
            auto inst = parse_la(read_file(io.input));
            auto alloc = parse_allocation(read_file(io.witness));
            if (static_cast<int>(alloc.assignment.size()) != inst.graph.num_vertices())
                throw FormatError("allocation length differs from the vertex count");
            for (Box b : alloc.assignment)
                if (b >= inst.r)
                    throw FormatError("allocation names a box beyond r");
            auto verdict = verify_allocation(inst, alloc);
            std::cout << "VERDICT " << (verdict.ok() ? "yes" : "no") << "\n"
                      << verdict.describe() << "\n";
            return verdict.ok() ? yes : no;
        };
    });

    // minmax
    auto* mm = app.add_subcommand("minmax", "Min-Max Multiway Cut")->require_subcommand(1);
    auto* mm_solve = mm->add_subcommand("solve", "solve through List Allocation");
    input_option(mm_solve);
    oracle_flag(mm_solve);
    mm_solve->callback([&] {
        action = [&] {
            auto inst = parse_minmax(read_file(io.input));
            auto cfg = make_config(g);
            return solve_and_report<Partition>(
                g, io.oracle, [&] { return solve_minmax(inst, cfg); },
                [&] { return oracle_minmax(inst, g.oracle_cap); });
        };
    });
    auto* mm_oracle = mm->add_subcommand("oracle", "solve by exhaustive enumeration");
    input_option(mm_oracle);
    mm_oracle->callback([&] {
        action = [&] {
            return report(g, oracle_minmax(parse_minmax(read_file(io.input)), g.oracle_cap));
        };
    });

    // bldh / mbldh
    auto hom_commands = [&](const char* name, const char* about, bool max_rule) {
        auto* cmd = app.add_subcommand(name, about)->require_subcommand(1);
        auto* solve = cmd->add_subcommand("solve", "solve through List Allocation");
        input_option(solve);
        oracle_flag(solve);
        solve->callback([&, max_rule] {
            action = [&, max_rule] {
                auto inst = parse_bldh(read_file(io.input));
                auto cfg = make_config(g);
                return solve_and_report<HomMapping>(
                    g, io.oracle,
                    [&] { return max_rule ? solve_mbldh(inst, cfg) : solve_bldh(inst, cfg); },
                    [&] {
                        return max_rule ? oracle_mbldh(inst, g.oracle_cap)
                                        : oracle_bldh(inst, g.oracle_cap);
                    });
            };
        });
        auto* oracle = cmd->add_subcommand("oracle", "solve by exhaustive enumeration");
        input_option(oracle);
        oracle->callback([&, max_rule] {
            action = [&, max_rule] {
                auto inst = parse_bldh(read_file(io.input));
                return report(g, max_rule ? oracle_mbldh(inst, g.oracle_cap)
                                          : oracle_bldh(inst, g.oracle_cap));
            };
        });
    };
    hom_commands("bldh", "Bounded List Digraph Homomorphism", false);
    hom_commands("mbldh", "per-vertex bounded variant", true);

    // asldh
    auto* as = app.add_subcommand("asldh", "Arc-Specified List Digraph Homomorphism")
                   ->require_subcommand(1);
    auto* as_solve = as->add_subcommand("solve", "solve through List Allocation");
    input_option(as_solve);
    oracle_flag(as_solve);
    as_solve->callback([&] {
        action = [&] {
            auto inst = parse_asldh(read_file(io.input));
            auto cfg = make_config(g);
            return solve_and_report<HomMapping>(
                g, io.oracle, [&] { return solve_asldh(inst, cfg); },
                [&] { return oracle_asldh(inst, g.oracle_cap); });
        };
    });
    auto* as_oracle = as->add_subcommand("oracle", "solve by exhaustive enumeration");
    input_option(as_oracle);
    as_oracle->callback([&] {
        action = [&] {
            return report(g, oracle_asldh(parse_asldh(read_file(io.input)), g.oracle_cap));
        };
    });
    auto* as_sparsify = as->add_subcommand("sparsify", "contract the (d+1)-edge-connected core");
    input_option(as_sparsify);
    as_sparsify->callback([&] {
        action = [&] {
            auto result = sparsify_asldh(parse_asldh(read_file(io.input)));
            if (result.resolved_no) {
                std::cout << "VERDICT no\n";
                return static_cast<int>(no);
            }
            std::cout << serialize(result.instance);
            return static_cast<int>(yes);
        };
    });

    // core
    int core_d = 1;
    auto* core = app.add_subcommand("core", "d-edge-connected core of a DIMACS graph");
    input_option(core);
    core->add_option("-d", core_d, "connectivity")->required()->check(CLI::PositiveNumber);
    core->callback([&] {
        action = [&] {
            std::istringstream in(read_file(io.input));
            std::cout << serialize_dimacs(d_edge_core(parse_dimacs(in), core_d));
            return static_cast<int>(yes);
        };
    });

    // sep
    int sep_q = 0;
    long sep_y = 0;
    auto* sep = app.add_subcommand("sep", "find a (q, y)-good separation of a DIMACS graph");
    input_option(sep);
    sep->add_option("-q", sep_q, "both sides must exceed q vertices")->required();
    sep->add_option("-y", sep_y, "at most y crossing edges")->required();
    sep->callback([&] {
        action = [&] {
            std::istringstream in(read_file(io.input));
            auto graph = parse_dimacs(in);
            if (!is_connected(graph))
                throw FormatError("sep requires a connected graph");
            auto s = find_good_separation(graph, sep_q, sep_y);
            if (!s) {
                std::cout << "VERDICT no\n";
                return static_cast<int>(no);
            }
            std::cout << "VERDICT yes\ncut " << s->cut_size << "\nside1";
            for (Vertex v : s->side1)
                std::cout << " " << v + 1;
            std::cout << "\nside2";
            for (Vertex v : s->side2)
                std::cout << " " << v + 1;
            std::cout << "\n";
            return static_cast<int>(yes);
        };
    });

    // gen
    GenParams params;
    std::string kind;
    std::string output;
    auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
    gen->add_option("kind", kind, "la, minmax, bldh or asldh")
        ->required()
        ->check(CLI::IsMember({"la", "minmax", "bldh", "asldh"}));
    gen->add_option("-n", params.n, "vertices (guest vertices for homomorphisms)");
    gen->add_option("-r", params.r, "boxes or terminals");
    gen->add_option("--host", params.h, "host vertices");
    gen->add_option("-w", params.w, "total weight");
    gen->add_option("--ell", params.ell, "budget");
    gen->add_option("--edge-density", params.edge_density);
    gen->add_option("--list-density", params.list_density);
    gen->add_option("--host-density", params.host_density);
    gen->add_option("--max-mult", params.max_mult);
    gen->add_flag("--connected", params.connected);
    gen->add_flag("--planted", params.planted, "weights read off a hidden solution");
    gen->add_option("-o,--output", output, "write here instead of standard output");
    gen->callback([&] {
        action = [&] {
            std::string text;
            if (kind == "la")
                text = serialize(generate_la(params, g.seed));
            else if (kind == "minmax")
                text = serialize(generate_minmax(params, g.seed));
            else if (kind == "bldh")
                text = serialize(generate_bldh(params, g.seed));
            else
                text = serialize(generate_asldh(params, g.seed));
            if (output.empty())
                std::cout << text;
            else
                write_text(output, text);
            return static_cast<int>(yes);
        };
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        return action();
    }
    catch (const CapExceeded& e) {
        std::cout << "VERDICT cap-exceeded\n";
        std::cerr << "error: " << e.what() << "\n";
        return capped;
    }
    catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
}
