#include "rainbowpack/benchgen.hpp"
#include "rainbowpack/errors.hpp"
#include "rainbowpack/instance.hpp"
#include "rainbowpack/oracles.hpp"
#include "rainbowpack/solver_bp.hpp"
#include "rainbowpack/solver_vc.hpp"
#include "rainbowpack/solver_vmkp.hpp"
#include "rainbowpack/solver_vp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;
using namespace rainbowpack;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int env_threads() {
    const char* raw = std::getenv("RAINBOWPACK_THREADS");
    if (!raw) return 1;
    int value = std::atoi(raw);
    return std::clamp(value, 1, 64);
}

struct CommonArgs {
    std::string input;
    std::uint64_t seed = 0;
    int error_exponent = 2;
    bool oracle = false;
    bool certificate = false;
    bool pretty = false;
    bool deterministic = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool binpack) {
    cmd->add_option("input", args.input, "instance file (JSON)")->required();
    cmd->add_option("--seed", args.seed, "64-bit seed for the randomized pipeline");
    cmd->add_option("--error-exponent", args.error_exponent,
                    "false-negative target is (n+budget)^-c");
    cmd->add_flag("--oracle", args.oracle, "solve with the exhaustive reference oracle");
    cmd->add_flag("--emit-certificate", args.certificate,
                  "include the validation report and accepting branch");
    cmd->add_flag("--json", args.pretty, "pretty-print the JSON output");
    if (binpack)
        cmd->add_flag("--deterministic", args.deterministic,
                      "use the deterministic 1-D algorithm");
}

json placement_json(const Assignment& asg) {
    json arr = json::array();
    for (const auto& p : asg.placement) {
        if (p)
            arr.push_back(*p);
        else
            arr.push_back(nullptr);
    }
    return arr;
}

json report_json(const ValidationReport& report) {
    json out;
    out["valid"] = report.valid;
    json violations = json::array();
    for (const auto& v : report.violations) {
        json item;
        item["container"] = v.container;
        item["dimension"] = v.dimension;
        item["amount"] = v.amount.str();
        item["what"] = v.what;
        violations.push_back(item);
    }
    out["violations"] = violations;
    return out;
}

void emit(const json& doc, bool pretty) {
    if (pretty)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << doc.dump() << "\n";
}

json groups_json(const std::vector<std::vector<int>>& groups) {
    json arr = json::array();
    for (const auto& g : groups) arr.push_back(g);
    return arr;
}

int run_solver(const std::string& mode, const CommonArgs& args) {
    Instance inst = parse_instance(read_file(args.input));
    SolveOptions opts;
    opts.seed = args.seed;
    opts.error_exponent = args.error_exponent;
    opts.threads = env_threads();

    Assignment asg;
    Mode check_mode;
    json trace;
    if (mode == "pack" || mode == "binpack") {
        check_mode = Mode::pack;
        if (mode == "binpack" && inst.dimension != 1)
            throw ParseError("binpack expects a 1-dimensional instance");
        if (args.oracle) {
            asg = oracles::brute_force_pack(inst);
            trace["solver"] = "oracle";
        } else if (mode == "binpack" && args.deterministic) {
            auto r = bp::solve(inst);
            asg = std::move(r.assignment);
            trace["solver"] = "deterministic";
            trace["k"] = r.k;
            trace["explored_branches"] = r.explored_branches;
        } else {
            auto r = vp::solve(inst, opts);
            asg = std::move(r.assignment);
            trace["solver"] = "randomized";
            trace["k"] = r.k;
            trace["containers"] = r.containers;
            trace["guess"]["groups"] = groups_json(r.accepted_guess.groups);
            trace["guess"]["finalized"] = r.accepted_guess.finalized;
        }
    } else if (mode == "cover") {
        check_mode = Mode::cover;
        if (args.oracle) {
            asg = oracles::brute_force_cover(inst);
            trace["solver"] = "oracle";
        } else {
            auto r = vc::solve(inst, opts);
            asg = std::move(r.assignment);
            trace["solver"] = "randomized";
            trace["k"] = r.k;
            trace["covered"] = r.covered;
            trace["guess"]["groups"] = groups_json(r.accepted_guess.groups);
            trace["guess"]["dropped"] = r.accepted_guess.dropped;
            trace["guess"]["singles"] = r.accepted_guess.singles;
            trace["guess"]["empty_doubles"] = r.accepted_guess.empty_doubles;
        }
    } else {
        check_mode = Mode::knapsack;
        if (args.oracle) {
            asg = oracles::brute_force_knapsack(inst);
            trace["solver"] = "oracle";
        } else {
            auto r = vmkp::solve(inst, opts);
            asg = std::move(r.assignment);
            trace["solver"] = "randomized";
            trace["k"] = r.k;
            trace["profit"] = r.profit;
            trace["guess"]["chosen"] = r.accepted_guess.chosen;
            trace["guess"]["groups"] = groups_json(r.accepted_guess.groups);
            trace["guess"]["finalized"] = r.accepted_guess.finalized;
            trace["guess"]["empty_used"] = r.accepted_guess.empty_used;
            trace["duality"]["lhs"] = r.duality_lhs;
            trace["duality"]["rhs"] = r.duality_rhs;
        }
    }

    json doc;
    doc["objective"] = asg.objective;
    doc["placement"] = placement_json(asg);
    if (args.certificate) {
        doc["certificate"] = report_json(validate(inst, asg, check_mode));
        doc["trace"] = trace;
        doc["seed"] = args.seed;
    }
    emit(doc, args.pretty);
    return 0;
}

int run_bench(const std::string& spec_path) {
    json spec;
    try {
        spec = json::parse(read_file(spec_path));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed benchmark spec: ") + e.what());
    }
    std::cout << "problem,n,d,k,seed,wall_time_s,objective\n";
    if (!spec.is_object() || spec.empty()) return 0;

    std::string problem = spec.value("problem", "pack");
    std::vector<int> sizes = spec.value("sizes", std::vector<int>{});
    std::vector<int> ks = spec.value("k", std::vector<int>{});
    std::vector<std::uint64_t> seeds = spec.value("seeds", std::vector<std::uint64_t>{0});
    int repetitions = spec.value("repetitions", 1);
    if (ks.empty()) ks.push_back(0);

    for (int n : sizes) {
        for (int k : ks) {
            for (std::uint64_t seed : seeds) {
                for (int rep = 0; rep < repetitions; ++rep) {
                    Instance inst = benchgen::make_instance(problem, n, k, seed);
                    SolveOptions opts;
                    opts.seed = seed;
                    opts.threads = env_threads();
                    auto start = std::chrono::steady_clock::now();
                    long long objective = 0;
                    if (problem == "pack") {
                        objective = vp::solve(inst, opts).assignment.objective;
                    } else if (problem == "binpack") {
                        objective = bp::solve(inst).assignment.objective;
                    } else if (problem == "cover") {
                        objective = vc::solve(inst, opts).assignment.objective;
                    } else if (problem == "knapsack") {
                        objective = vmkp::solve(inst, opts).assignment.objective;
                    } else {
                        throw ParseError("unknown benchmark problem: " + problem);
                    }
                    std::chrono::duration<double> elapsed =
                        std::chrono::steady_clock::now() - start;
                    std::cout << problem << "," << inst.n() << "," << inst.dimension << "," << k
                              << "," << seed << "," << elapsed.count() << "," << objective
                              << "\n";
                }
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solvers for vector packing, covering, and knapsack"};
    app.require_subcommand(1);

    CommonArgs pack_args, cover_args, knap_args, bin_args;
    auto* pack_cmd = app.add_subcommand("pack", "minimize containers for d-dimensional vectors");
    add_common(pack_cmd, pack_args, false);
    auto* cover_cmd = app.add_subcommand("cover", "maximize covered containers");
    add_common(cover_cmd, cover_args, false);
    auto* knap_cmd = app.add_subcommand("knapsack", "maximize packed profit");
    add_common(knap_cmd, knap_args, false);
    auto* bin_cmd = app.add_subcommand("binpack", "1-D bin packing");
    add_common(bin_cmd, bin_args, true);

    std::string bench_spec;
    auto* bench_cmd = app.add_subcommand("bench", "timed runs over generated instances (CSV)");
    bench_cmd->add_option("spec", bench_spec, "benchmark spec file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (pack_cmd->parsed()) return run_solver("pack", pack_args);
        if (cover_cmd->parsed()) return run_solver("cover", cover_args);
        if (knap_cmd->parsed()) return run_solver("knapsack", knap_args);
        if (bin_cmd->parsed()) return run_solver("binpack", bin_args);
        if (bench_cmd->parsed()) return run_bench(bench_spec);
    } catch (const RandomizedFailure& e) {
        std::cerr << "randomized failure: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible input: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity limit: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
