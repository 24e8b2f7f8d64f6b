// qtkit command line: one subcommand per library operation, plus `run` for
// problem files. Reports are JSON (or plain text with --format text).

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qtkit/errors.hpp"
#include "qtkit/io.hpp"
#include "qtkit/presets.hpp"
#include "qtkit/problem.hpp"

namespace {

using qtkit::Poly;
using qtkit::PolyMap;
using qtkit::Task;
using qtkit::TaskEnv;
using qtkit::VarContext;

struct CommonArgs {
    std::string preset;
    std::string map_literal;
    std::string poly_literal;
    std::size_t dim = 0;
    long dmax = 0;
    bool verify_all = false;
    std::string out_path;
    std::string format = "json";
};

struct SubSpec {
    std::string name;
    std::string help;
    // Positional roles after the primary argument: names of extra expression
    // options, in task-argument order. 'm' = map option, 'p' = poly option.
    std::vector<std::pair<std::string, char>> extras;
    bool primary_is_map = true;
    bool takes_d = false;
    bool takes_dist = false;
};

const std::vector<SubSpec> kSubs = {
    {"qt-check", "test JH . H = 0 (is x + H a quasi-translation)", {}, true, false, false},
    {"qt-equivalences", "evaluate all three quasi-translation criteria independently",
     {}, true, false, false},
    {"invariants", "test whether --f is an invariant of x + H", {{"f", 'p'}}, true,
     false, false},
    {"linear-invariants", "basis of linear forms l with l(H) = 0", {}, true, false, false},
    {"gcd-split", "write H = g * Ht with coprime split components", {}, true, false, false},
    {"conjugate", "compute and verify T^{-1} H(Tx)", {{"T", 'm'}}, true, false, false},
    {"conjugation-criterion",
     "check deg_t G(x + tH) <= 1 for mutually inverse F, G and conjugate if so",
     {{"F", 'm'}, {"G", 'm'}}, true, false, false},
    {"homogenize", "lift to a homogeneous quasi-translation in dimension n + 1",
     {}, true, true, false},
    {"dehomogenize", "substitute x_n = 1 and drop the last component", {}, true, false,
     false},
    {"homogeneous-checks", "verify H(H) = 0, the rank bound, and nilpotency", {}, true,
     false, false},
    {"relations", "degree-bounded relation basis R(H) = 0", {}, true, false, false},
    {"hessian-pipeline",
     "from det Hh = 0 to the quasi-translation (grad R)(grad h), fully verified",
     {}, false, false, false},
    {"gradient-dependence", "linear dependence of grad h in dimension <= 4", {}, false,
     false, false},
    {"gn-plane", "does H vanish on the plane spanned by --u and --v", {{"u", 'm'}, {"v", 'm'}},
     true, false, false},
    {"apex", "bound-relative projective image apex certificate at --point",
     {{"point", 'm'}}, true, false, false},
    {"gn-form-verify", "verify h(Tx) = f(x1, x2, a1 x3 + a2 x4 + a3 x5)",
     {{"T", 'm'}, {"f", 'p'}, {"a1", 'p'}, {"a2", 'p'}, {"a3", 'p'}}, false, false, false},
    {"fallb-verify", "verify the H = (g h(p,q), H_dist) component form",
     {{"g", 'p'}, {"p", 'p'}, {"q", 'p'}, {"h1", 'p'}, {"h2", 'p'}, {"h3", 'p'},
      {"h4", 'p'}},
     true, false, true},
    {"degree-report", "degrees, rank, and linear invariant count", {}, true, false, false},
};

int emit(const qtkit::RunResult& result, const CommonArgs& args) {
    std::string text;
    if (args.format == "text") {
        text = qtkit::render_text_report(result.report);
    } else {
        text = result.report.dump(2) + "\n";
    }
    if (args.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(args.out_path);
        if (!out) {
            std::cerr << "cannot open output path: " << args.out_path << "\n";
            return 3;
        }
        out << text;
    }
    return result.exit_code;
}

VarContext joint_context(std::size_t dim) {
    VarContext ctx = VarContext::xs(dim);
    for (std::size_t k = 1; k <= dim; ++k) ctx = ctx.adjoined("y" + std::to_string(k));
    return ctx;
}

int run_subcommand(const SubSpec& spec, const CommonArgs& args,
                   const std::map<std::string, std::string>& extra_values,
                   long d_value, long dist_value) {
    std::size_t dim = args.dim;
    std::map<std::string, Poly> defs;
    std::map<std::string, PolyMap> maps;
    Task task;
    task.subcommand = spec.name;

    // Primary argument: a preset, or an inline --map/--poly with --dim.
    if (!args.preset.empty()) {
        if (auto m = qtkit::preset_map(args.preset)) {
            dim = m->dimension();
            if (!spec.primary_is_map) {
                std::cerr << "preset '" << args.preset << "' is a map but this subcommand needs a polynomial\n";
                return 3;
            }
            maps.emplace("arg0", std::move(*m));
        } else if (auto p = qtkit::preset_poly(args.preset)) {
            dim = p->context().size();
            if (spec.primary_is_map) {
                std::cerr << "preset '" << args.preset << "' is a polynomial but this subcommand needs a map\n";
                return 3;
            }
            defs.emplace("arg0", std::move(*p));
        } else {
            std::cerr << "unknown preset '" << args.preset << "'\n";
            return 3;
        }
    } else if (spec.primary_is_map && !args.map_literal.empty()) {
        if (dim == 0) {
            std::cerr << "--map needs --dim\n";
            return 3;
        }
        auto comps = qtkit::parse_poly_list(args.map_literal, VarContext::xs(dim));
        maps.emplace("arg0", PolyMap(VarContext::xs(dim), std::move(comps)));
    } else if (!spec.primary_is_map && !args.poly_literal.empty()) {
        if (dim == 0) {
            std::cerr << "--poly needs --dim\n";
            return 3;
        }
        defs.emplace("arg0", qtkit::parse_poly(args.poly_literal, joint_context(dim)));
    } else {
        std::cerr << "missing input: use --preset, or --dim with "
                  << (spec.primary_is_map ? "--map" : "--poly") << "\n";
        return 3;
    }
    task.args.push_back("arg0");

    const VarContext joint = joint_context(dim);
    const VarContext xctx = VarContext::xs(dim);
    std::size_t argn = 1;
    for (const auto& [opt_name, kind] : spec.extras) {
        auto it = extra_values.find(opt_name);
        if (it == extra_values.end() || it->second.empty()) {
            std::cerr << "missing required option --" << opt_name << "\n";
            return 3;
        }
        const std::string key = "arg" + std::to_string(argn++);
        if (kind == 'm') {
            auto comps = qtkit::parse_poly_list(it->second, xctx);
            maps.emplace(key, PolyMap(xctx, std::move(comps)));
        } else {
            defs.emplace(key, qtkit::parse_poly(it->second, joint));
        }
        task.args.push_back(key);
    }
    if (spec.takes_d) task.kv["d"] = std::to_string(d_value);
    if (spec.takes_dist) task.kv["dist"] = std::to_string(dist_value);

    TaskEnv env;
    env.dim = dim;
    env.joint_ctx = joint;
    env.x_ctx = xctx;
    env.defs = &defs;
    env.maps = &maps;

    std::ostringstream echo;
    echo << spec.name;
    if (!args.preset.empty()) echo << " --preset " << args.preset;
    task.echo = echo.str();

    qtkit::RunOptions options;
    options.dmax = args.dmax;
    options.verify_all = args.verify_all;

    auto result = qtkit::execute_task(env, task, options);
    nlohmann::ordered_json report;
    report["dim"] = dim;
    report["tasks"] = nlohmann::ordered_json::array({result.json});
    report["verdict"] = result.status == qtkit::TaskStatus::pass ? "pass" : "fail";
    return emit(qtkit::RunResult{std::move(report), static_cast<int>(result.status)}, args);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certificates for quasi-translations and singular Hessians"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string run_file;
    std::map<std::string, std::map<std::string, std::string>> extra_values;
    std::map<std::string, long> d_values, dist_values;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--preset", args.preset,
                        "built-in input: a1, a2, b (maps) or perazzo (polynomial)");
        sub->add_option("--dim", args.dim, "dimension for inline --map/--poly input");
        sub->add_option("--dmax", args.dmax, "degree bound for relation searches");
        sub->add_flag("--verify-all", args.verify_all, "run the expensive cross-checks");
        sub->add_option("--out", args.out_path, "write the report to a file");
        sub->add_option("--format", args.format, "json (default) or text")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* run = app.add_subcommand("run", "execute a problem file");
    run->add_option("file", run_file, "problem file")->required();
    add_common(run);

    for (const auto& spec : kSubs) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        add_common(sub);
        sub->add_option("--map", args.map_literal, "inline map literal [expr, ...]");
        sub->add_option("--poly", args.poly_literal, "inline polynomial");
        for (const auto& [opt_name, kind] : spec.extras) {
            auto& slot = extra_values[spec.name][opt_name];
            sub->add_option("--" + opt_name, slot,
                            kind == 'm' ? "map/matrix/vector literal [expr, ...]"
                                        : "polynomial expression");
        }
        if (spec.takes_d) sub->add_option("--d", d_values[spec.name], "target degree")->required();
        if (spec.takes_dist)
            sub->add_option("--dist", dist_values[spec.name],
                            "distinguished component (1-based)")
                ->required();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::ifstream in(run_file);
            if (!in) {
                std::cerr << "cannot open problem file: " << run_file << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            qtkit::ProblemFile file = qtkit::parse_problem(buf.str());
            qtkit::RunOptions options;
            options.dmax = args.dmax;
            options.verify_all = args.verify_all;
            return emit(qtkit::run_problem(file, options), args);
        }
        for (const auto& spec : kSubs) {
            CLI::App* sub = app.get_subcommand(spec.name);
            if (sub->parsed()) {
                return run_subcommand(spec, args, extra_values[spec.name],
                                      d_values.count(spec.name) ? d_values[spec.name] : 0,
                                      dist_values.count(spec.name) ? dist_values[spec.name] : 0);
            }
        }
    } catch (const qtkit::parse_error& e) {
        std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": "
                  << e.what() << "\n";
        return 2;
    } catch (const qtkit::theorem_violation& e) {
        std::cerr << "theorem-violation alarm: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
