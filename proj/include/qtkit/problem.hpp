#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qtkit/map.hpp"
#include "qtkit/poly.hpp"

namespace qtkit {

struct Task {
    std::string subcommand;
    std::vector<std::string> args;            // names of defs/maps, in order
    std::map<std::string, std::string> kv;    // key=value arguments
    std::string echo;                         // original task line
};

// Parsed problem file: "dim n", "def name = expr", "map name = [expr, ...]",
// "task subcommand args". Expressions parse in the joint context
// x1..xn, y1..yn; map components must be pure x.
struct ProblemFile {
    std::size_t dim = 0;
    VarContext joint_ctx;  // x1..xn, y1..yn
    VarContext x_ctx;      // x1..xn
    std::map<std::string, Poly> defs;   // in joint_ctx
    std::map<std::string, PolyMap> maps; // in x_ctx
    std::vector<Task> tasks;

    ProblemFile() : joint_ctx(VarContext::xs(0)), x_ctx(VarContext::xs(0)) {}
};

ProblemFile parse_problem(std::string_view text);

struct RunOptions {
    long dmax = 0;          // 0 = derive from the entry-cap heuristic
    bool verify_all = false;
    bool include_timing = true;
};

// Task outcome severity, in exit-code order.
enum class TaskStatus { pass = 0, fail = 1, parse = 2, precondition = 3, alarm = 4 };

struct RunResult {
    nlohmann::ordered_json report;
    int exit_code = 0;
};

RunResult run_problem(const ProblemFile& file, const RunOptions& options);

// Executes one task against an environment of named values; used by both the
// file runner and the direct CLI subcommands.
struct TaskEnv {
    std::size_t dim = 0;
    VarContext joint_ctx = VarContext::xs(0);
    VarContext x_ctx = VarContext::xs(0);
    const std::map<std::string, Poly>* defs = nullptr;
    const std::map<std::string, PolyMap>* maps = nullptr;
};

struct TaskResult {
    nlohmann::ordered_json json;
    TaskStatus status = TaskStatus::pass;
};

TaskResult execute_task(const TaskEnv& env, const Task& task, const RunOptions& options);

std::string render_text_report(const nlohmann::ordered_json& report);

} // namespace qtkit
