#include "qtkit/problem.hpp"

#include <cctype>
#include <chrono>
#include <sstream>

#include "qtkit/errors.hpp"
#include "qtkit/gn5.hpp"
#include "qtkit/io.hpp"
#include "qtkit/matrix.hpp"
#include "qtkit/qt.hpp"
#include "qtkit/relations.hpp"

namespace qtkit {

namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Drop every y exponent (which must be zero) and land in the x prefix.
Poly restrict_to_prefix(const Poly& p, const VarContext& small) {
    if (!small.prefix_of(p.context()))
        throw precondition_error("context restriction mismatch");
    Poly out(small);
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = small.size(); i < m.exps.size(); ++i)
            if (m.exps[i] != 0)
                throw precondition_error("expression must involve x variables only");
        Monomial e = m;
        e.exps.resize(small.size());
        out += Poly::monomial(small, std::move(e), c);
    }
    return out;
}

// Remap a polynomial supported on the given variable indices onto target.
Poly select_vars(const Poly& p, const std::vector<std::size_t>& indices,
                 const VarContext& target) {
    std::vector<bool> keep(p.context().size(), false);
    for (auto i : indices) keep[i] = true;
    Poly out(target);
    for (const auto& [m, c] : p.terms()) {
        Monomial e = Monomial::one(target.size());
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            if (!keep[i])
                throw precondition_error("expression uses variable " + p.context().name(i) +
                                         " outside its allowed set");
        }
        for (std::size_t k = 0; k < indices.size(); ++k) {
            e.exps[k] = m.exps[indices[k]];
            e.degree += e.exps[k];
        }
        out += Poly::monomial(target, std::move(e), c);
    }
    return out;
}

ScalarMatrix to_scalar_matrix(const PolyMap& m) {
    const std::size_t n = m.dimension();
    ScalarMatrix T(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Poly& c = m.component(i);
        if (c.total_degree() > Degree(1))
            throw precondition_error("matrix argument must be a linear map");
        for (const auto& [mono, coeff] : c.terms()) {
            if (mono.degree == 0)
                throw precondition_error("matrix argument must have no constant part");
            for (std::size_t j = 0; j < n; ++j)
                if (mono.exps[j] == 1) T.at(i, j) = coeff;
        }
    }
    return T;
}

std::vector<Scalar> to_scalar_vector(const PolyMap& m) {
    std::vector<Scalar> v;
    v.reserve(m.dimension());
    for (const auto& c : m.components()) {
        if (!c.is_constant())
            throw precondition_error("vector argument must have constant components");
        v.push_back(c.constant_value());
    }
    return v;
}

json jmap(const PolyMap& m) {
    json a = json::array();
    for (const auto& c : m.components()) a.push_back(format_poly(c));
    return a;
}

json jpolys(const std::vector<Poly>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(format_poly(p));
    return a;
}

json jscalars(const std::vector<Scalar>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(format_scalar(s));
    return a;
}

json jdegree(Degree d) {
    if (!d.finite()) return nullptr;
    return d.value();
}

json jrelation(const Relation& r) {
    return json{{"poly", format_poly(r.R)}, {"degree", r.degree}, {"certified", r.certified}};
}

json jrelations(const std::vector<Relation>& rs) {
    json a = json::array();
    for (const auto& r : rs) a.push_back(jrelation(r));
    return a;
}

struct TaskContext {
    const TaskEnv& env;
    const Task& task;
    const RunOptions& options;

    const std::string& arg(std::size_t i) const {
        if (i >= task.args.size())
            throw precondition_error("task '" + task.subcommand + "' is missing argument " +
                                     std::to_string(i + 1));
        return task.args[i];
    }

    const PolyMap& map_arg(std::size_t i) const {
        const auto it = env.maps->find(arg(i));
        if (it == env.maps->end())
            throw precondition_error("unknown map '" + arg(i) + "'");
        return it->second;
    }

    Poly xpoly_arg(std::size_t i) const {
        const auto it = env.defs->find(arg(i));
        if (it == env.defs->end())
            throw precondition_error("unknown definition '" + arg(i) + "'");
        return restrict_to_prefix(it->second, env.x_ctx);
    }

    Poly ypoly_arg(std::size_t i, std::size_t nvars) const {
        const auto it = env.defs->find(arg(i));
        if (it == env.defs->end())
            throw precondition_error("unknown definition '" + arg(i) + "'");
        std::vector<std::size_t> indices;
        for (std::size_t k = 0; k < nvars; ++k) indices.push_back(env.dim + k);
        return select_vars(it->second, indices, VarContext::ys(nvars));
    }

    long kv_long(const std::string& key, long fallback, bool required = false) const {
        auto it = task.kv.find(key);
        if (it == task.kv.end()) {
            if (required)
                throw precondition_error("task '" + task.subcommand + "' needs " + key + "=<n>");
            return fallback;
        }
        try {
            return std::stol(it->second);
        } catch (const std::exception&) {
            throw precondition_error("bad integer for " + key);
        }
    }

    long dmax(Degree input_degree) const {
        const long given = kv_long("dmax", 0);
        if (given > 0) return given;
        if (options.dmax > 0) return options.dmax;
        return default_relation_bound(env.dim, input_degree);
    }
};

json jf_dot_h(const Poly& f, const PolyMap& H) {
    Poly dot = Poly::zero(H.context());
    for (std::size_t i = 0; i < H.dimension(); ++i)
        dot += f.derivative(i) * H.component(i);
    return format_poly(dot);
}

void run_qt_check(const TaskContext& c, json& w, json& notes, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const auto jhh = jacobian(H).apply(H.components());
    pass = true;
    for (const auto& e : jhh) pass = pass && e.is_zero();
    w["map"] = jmap(H);
    w["jacobian_times_map"] = jpolys(jhh);
    if (c.options.verify_all) {
        const QtReport r = check_qt_equivalences(H);
        if (!r.agree()) throw theorem_violation("quasi-translation criteria disagree");
        notes.push_back("equivalence cross-check: all three criteria agree");
    }
}

void run_qt_equivalences(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const QtReport r = check_qt_equivalences(H);
    if (!r.agree()) throw theorem_violation("quasi-translation criteria disagree");
    w["map"] = jmap(H);
    w["inverse_composition"] = r.cond_inverse;
    w["composition_with_t"] = r.cond_Ht;
    w["jacobian_product"] = r.cond_JHH;
    w["agree"] = r.agree();
    pass = r.all();
}

void run_invariants(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const Poly f = c.xpoly_arg(1);
    pass = is_invariant(f, H, c.options.verify_all);
    w["map"] = jmap(H);
    w["candidate"] = format_poly(f);
    w["jf_times_map"] = jf_dot_h(f, H);
}

void run_linear_invariants(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const auto invs = linear_invariants(H);
    w["map"] = jmap(H);
    w["invariants"] = jpolys(invs);
    w["count"] = invs.size();
    pass = true;
}

void run_gcd_split(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const auto [g, Ht] = qt_gcd_split(H);
    w["map"] = jmap(H);
    w["g"] = format_poly(g);
    w["split_map"] = jmap(Ht);
    pass = true;
}

void run_conjugate(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const PolyMap& Tm = c.map_arg(1);
    const ScalarMatrix T = to_scalar_matrix(Tm);
    const PolyMap out = qt_conjugate_linear(H, T);
    w["map"] = jmap(H);
    w["matrix_rows"] = jmap(Tm);
    w["conjugate"] = jmap(out);
    pass = true;
}

void run_conjugation_criterion(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const PolyMap& F = c.map_arg(1);
    const PolyMap& G = c.map_arg(2);
    pass = qt_conjugation_criterion(H, F, G);
    w["map"] = jmap(H);
    w["F"] = jmap(F);
    w["G"] = jmap(G);
    if (pass) w["conjugate"] = jmap(qt_conjugate(H, F, G));
}

void run_homogenize(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const long d = c.kv_long("d", 0, true);
    const PolyMap out = qt_homogenize(H, d);
    w["map"] = jmap(H);
    w["d"] = d;
    w["homogenized"] = jmap(out);
    pass = true;
}

void run_dehomogenize(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const PolyMap out = dehomogenize(H);
    w["map"] = jmap(H);
    w["dehomogenized"] = jmap(out);
    pass = true;
}

void run_homogeneous_checks(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const HomogeneousChecks r = homogeneous_qt_checks(H);
    w["map"] = jmap(H);
    w["maps_to_zero"] = r.maps_to_zero;
    w["rank"] = r.rank;
    w["rank_bound"] = r.rank_bound;
    w["rank_ok"] = r.rank_ok;
    w["nilpotent"] = r.nilpotent;
    pass = r.all();
}

void run_relations(const TaskContext& c, json& w, json& b, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const long dmax = c.dmax(H.degree());
    const RelationBasis basis = find_relations(H, dmax);
    w["map"] = jmap(H);
    w["generators"] = jrelations(basis.generators);
    w["minimal_degree"] =
        basis.minimal_degree ? json(*basis.minimal_degree) : json(nullptr);
    json dims = json::array();
    for (long d = 1; d <= dmax; ++d)
        dims.push_back(basis.dims_per_degree[static_cast<std::size_t>(d)]);
    w["dims_per_degree"] = dims;
    b["dmax"] = dmax;
    pass = true;
}

void run_hessian_pipeline(const TaskContext& c, json& w, json& b, bool& pass) {
    const Poly h = c.xpoly_arg(0);
    // The search runs on grad h, so the heuristic uses its degree.
    Degree grad_degree = h.total_degree();
    if (grad_degree.finite() && grad_degree.value() > 0)
        grad_degree = Degree(grad_degree.value() - 1);
    const long dmax = c.dmax(grad_degree);
    const HessianPipelineResult r = hessian_to_qt(h, dmax);
    w["h"] = format_poly(r.h);
    w["relation"] = jrelation(r.R);
    w["map"] = jmap(r.H);
    w["det_hessian_zero"] = r.checks.det_hessian_zero;
    w["jacobian_times_map_zero"] = r.checks.jhh_zero;
    w["gradient_invariant"] = r.checks.gradient_invariant;
    w["map_nonzero"] = r.checks.h_nonzero;
    w["h_invariant"] =
        r.checks.h_invariant ? json(*r.checks.h_invariant) : json(nullptr);
    b["dmax"] = dmax;
    pass = r.checks.all();
}

void run_gradient_dependence(const TaskContext& c, json& w, json&, bool& pass) {
    const Poly h = c.xpoly_arg(0);
    const auto rels = gradient_linear_dependence(h);
    w["h"] = format_poly(h);
    w["relations"] = jrelations(rels);
    pass = !rels.empty();
}

void run_gn_plane(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const auto u = to_scalar_vector(c.map_arg(1));
    const auto v = to_scalar_vector(c.map_arg(2));
    pass = is_gn_plane(H, u, v);
    w["map"] = jmap(H);
    w["u"] = jscalars(u);
    w["v"] = jscalars(v);
}

void run_apex(const TaskContext& c, json& w, json& b, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const auto p = to_scalar_vector(c.map_arg(1));
    const long dmax = c.dmax(H.degree());
    const ApexCertificate cert = apex_certificate(H, p, dmax);
    w["map"] = jmap(H);
    w["p"] = jscalars(cert.p);
    w["holds"] = cert.holds;
    b["dmax"] = cert.degree_bound;
    pass = cert.holds;
}

void run_gn_form_verify(const TaskContext& c, json& w, json&, bool& pass) {
    const Poly h = c.xpoly_arg(0);
    const ScalarMatrix T = to_scalar_matrix(c.map_arg(1));
    const Poly f = c.ypoly_arg(2, 3);
    const Poly a1 = c.xpoly_arg(3);
    const Poly a2 = c.xpoly_arg(4);
    const Poly a3 = c.xpoly_arg(5);
    pass = gn_form_verify(h, T, f, a1, a2, a3);
    w["h"] = format_poly(h);
    w["T_rows"] = jmap(c.map_arg(1));
    w["f"] = format_poly(f);
    w["a"] = json::array({format_poly(a1), format_poly(a2), format_poly(a3)});
}

void run_fallb_verify(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const Poly g = c.xpoly_arg(1);
    const Poly p = c.xpoly_arg(2);
    const Poly q = c.xpoly_arg(3);
    const std::array<Poly, 4> hvec{c.ypoly_arg(4, 2), c.ypoly_arg(5, 2),
                                   c.ypoly_arg(6, 2), c.ypoly_arg(7, 2)};
    const long dist = c.kv_long("dist", 5);
    pass = fall_b_form_verify(H, static_cast<std::size_t>(dist), g, hvec, p, q);
    w["map"] = jmap(H);
    w["dist"] = dist;
    w["g"] = format_poly(g);
    w["p"] = format_poly(p);
    w["q"] = format_poly(q);
    w["h"] = json::array({format_poly(hvec[0]), format_poly(hvec[1]),
                          format_poly(hvec[2]), format_poly(hvec[3])});
}

void run_degree_report(const TaskContext& c, json& w, json&, bool& pass) {
    const PolyMap& H = c.map_arg(0);
    const DegreeReport r = degree_report(H);
    w["map"] = jmap(H);
    w["degree"] = jdegree(r.degree);
    json per_comp = json::array();
    for (auto d : r.per_component) per_comp.push_back(jdegree(d));
    w["per_component"] = per_comp;
    json per_var = json::array();
    for (auto d : r.per_variable) per_var.push_back(jdegree(d));
    w["per_variable"] = per_var;
    w["rank"] = r.rank;
    w["linear_invariant_count"] = r.linear_invariant_count;
    pass = true;
}

} // namespace

TaskResult execute_task(const TaskEnv& env, const Task& task, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    TaskContext c{env, task, options};
    json out;
    out["task"] = task.echo.empty() ? task.subcommand : task.echo;
    json witnesses = json::object();
    json bounds = json::object();
    json notes = json::array();
    TaskStatus status = TaskStatus::pass;
    bool pass = false;
    try {
        const std::string& sub = task.subcommand;
        if (sub == "qt-check") run_qt_check(c, witnesses, notes, pass);
        else if (sub == "qt-equivalences") run_qt_equivalences(c, witnesses, notes, pass);
        else if (sub == "invariants") run_invariants(c, witnesses, notes, pass);
        else if (sub == "linear-invariants") run_linear_invariants(c, witnesses, notes, pass);
        else if (sub == "gcd-split") run_gcd_split(c, witnesses, notes, pass);
        else if (sub == "conjugate") run_conjugate(c, witnesses, notes, pass);
        else if (sub == "conjugation-criterion")
            run_conjugation_criterion(c, witnesses, notes, pass);
        else if (sub == "homogenize") run_homogenize(c, witnesses, notes, pass);
        else if (sub == "dehomogenize") run_dehomogenize(c, witnesses, notes, pass);
        else if (sub == "homogeneous-checks") run_homogeneous_checks(c, witnesses, notes, pass);
        else if (sub == "relations") run_relations(c, witnesses, bounds, pass);
        else if (sub == "hessian-pipeline") run_hessian_pipeline(c, witnesses, bounds, pass);
        else if (sub == "gradient-dependence") run_gradient_dependence(c, witnesses, notes, pass);
        else if (sub == "gn-plane") run_gn_plane(c, witnesses, notes, pass);
        else if (sub == "apex") run_apex(c, witnesses, bounds, pass);
        else if (sub == "gn-form-verify") run_gn_form_verify(c, witnesses, notes, pass);
        else if (sub == "fallb-verify") run_fallb_verify(c, witnesses, notes, pass);
        else if (sub == "degree-report") run_degree_report(c, witnesses, notes, pass);
        else throw precondition_error("unknown task subcommand '" + sub + "'");
        status = pass ? TaskStatus::pass : TaskStatus::fail;
        out["verdict"] = pass ? "pass" : "fail";
    } catch (const theorem_violation& e) {
        status = TaskStatus::alarm;
        out["verdict"] = "error";
        notes.push_back(std::string("theorem-violation alarm: ") + e.what());
    } catch (const resource_limit_error& e) {
        status = TaskStatus::precondition;
        out["verdict"] = "error";
        notes.push_back(std::string("resource limit: ") + e.what());
    } catch (const parse_error& e) {
        status = TaskStatus::parse;
        out["verdict"] = "error";
        notes.push_back(std::string("parse error: ") + e.what());
    } catch (const precondition_error& e) {
        status = TaskStatus::precondition;
        out["verdict"] = "error";
        notes.push_back(std::string("precondition: ") + e.what());
    }
    out["witnesses"] = witnesses;
    out["bounds"] = bounds;
    out["notes"] = notes;
    if (options.include_timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        out["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    return TaskResult{std::move(out), status};
}

ProblemFile parse_problem(std::string_view text) {
    ProblemFile file;
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        lines.push_back(cur);
    }

    bool have_dim = false;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::string raw = lines[li];
        if (auto hash = raw.find('#'); hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;

        std::istringstream in(line);
        std::string keyword;
        in >> keyword;

        if (keyword == "dim") {
            long n = 0;
            if (!(in >> n) || n < 1)
                throw parse_error("dim needs a positive integer", li + 1, 1);
            if (have_dim) throw parse_error("duplicate dim line", li + 1, 1);
            have_dim = true;
            file.dim = static_cast<std::size_t>(n);
            file.x_ctx = VarContext::xs(file.dim);
            VarContext joint = file.x_ctx;
            for (std::size_t k = 1; k <= file.dim; ++k)
                joint = joint.adjoined("y" + std::to_string(k));
            file.joint_ctx = joint;
            continue;
        }
        if (!have_dim) throw parse_error("the first section must be 'dim <n>'", li + 1, 1);

        if (keyword == "def" || keyword == "map") {
            std::string name, eq;
            in >> name >> eq;
            if (name.empty() || eq != "=")
                throw parse_error("expected '" + keyword + " <name> = ...'", li + 1, 1);
            if (file.defs.count(name) || file.maps.count(name))
                throw parse_error("duplicate name '" + name + "'", li + 1, 1);
            std::string rest;
            std::getline(in, rest);
            const std::size_t start_line = li + 1;
            // Column where `rest` begins in the original line.
            const std::size_t lead = raw.find_first_not_of(" \t");
            const std::size_t rest_col = lead + (line.size() - rest.size()) + 1;
            auto reanchor = [&](const parse_error& e) {
                const std::size_t l = start_line + e.line() - 1;
                const std::size_t c = e.line() == 1 ? rest_col + e.column() - 1 : e.column();
                return parse_error(e.what(), l, c);
            };
            if (keyword == "map") {
                // The bracketed list may continue over following lines.
                while (rest.find(']') == std::string::npos) {
                    if (++li >= lines.size())
                        throw parse_error("unterminated map component list", li, 1);
                    std::string cont = lines[li];
                    if (auto hash = cont.find('#'); hash != std::string::npos)
                        cont = cont.substr(0, hash);
                    rest += "\n" + cont;
                }
                try {
                    auto comps = parse_poly_list(rest, file.joint_ctx);
                    std::vector<Poly> xcomps;
                    xcomps.reserve(comps.size());
                    for (const auto& cpt : comps)
                        xcomps.push_back(restrict_to_prefix(cpt, file.x_ctx));
                    if (xcomps.size() != file.dim)
                        throw parse_error(
                            "map '" + name + "' needs one component per dimension",
                            start_line, 1);
                    file.maps.emplace(name, PolyMap(file.x_ctx, std::move(xcomps)));
                } catch (const parse_error& e) {
                    throw reanchor(e);
                } catch (const precondition_error& e) {
                    throw parse_error(e.what(), start_line, 1);
                }
            } else {
                try {
                    file.defs.emplace(name, parse_poly(rest, file.joint_ctx));
                } catch (const parse_error& e) {
                    throw reanchor(e);
                }
            }
            continue;
        }

        if (keyword == "task") {
            Task t;
            if (!(in >> t.subcommand))
                throw parse_error("task needs a subcommand", li + 1, 1);
            std::string tok;
            while (in >> tok) {
                if (auto eq = tok.find('='); eq != std::string::npos)
                    t.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
                else
                    t.args.push_back(tok);
            }
            t.echo = line;
            file.tasks.push_back(std::move(t));
            continue;
        }

        throw parse_error("unknown section '" + keyword + "'", li + 1, 1);
    }
    if (!have_dim) throw parse_error("empty problem file: missing 'dim <n>'", 1, 1);
    return file;
}

RunResult run_problem(const ProblemFile& file, const RunOptions& options) {
    TaskEnv env;
    env.dim = file.dim;
    env.joint_ctx = file.joint_ctx;
    env.x_ctx = file.x_ctx;
    env.defs = &file.defs;
    env.maps = &file.maps;

    json report;
    report["dim"] = file.dim;
    json tasks = json::array();
    TaskStatus worst = TaskStatus::pass;
    for (const auto& t : file.tasks) {
        TaskResult r = execute_task(env, t, options);
        if (static_cast<int>(r.status) > static_cast<int>(worst)) worst = r.status;
        tasks.push_back(std::move(r.json));
    }
    report["tasks"] = tasks;
    report["verdict"] = worst == TaskStatus::pass ? "pass" : "fail";
    return RunResult{std::move(report), static_cast<int>(worst)};
}

std::string render_text_report(const nlohmann::ordered_json& report) {
    std::ostringstream out;
    if (report.contains("dim")) out << "dim " << report["dim"] << "\n";
    for (const auto& t : report["tasks"]) {
        out << t["verdict"].get<std::string>() << "  " << t["task"].get<std::string>();
        if (!t["notes"].empty()) {
            for (const auto& n : t["notes"]) out << "\n    note: " << n.get<std::string>();
        }
        out << "\n";
    }
    out << "verdict: " << report["verdict"].get<std::string>() << "\n";
    return out.str();
}

} // namespace qtkit
