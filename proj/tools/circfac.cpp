// circfac: file-based front end for the factorization pipeline.
// Exit codes: 0 success (divides: g | f), 1 divides: g does not divide f,
// 2 any error.
#include "circfac/densepoly.hpp"
#include "circfac/minpoly.hpp"
#include "circfac/newton.hpp"
#include "circfac/pipeline.hpp"
#include "circfac/pseudo.hpp"
#include "circfac/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace circfac;
using json = nlohmann::ordered_json;

namespace {

constexpr int kError = 2;

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "field Q" or "field Q[u] mod A(u)" followed by "value <scalar>"
Scalar read_root(const std::string& path)
{
    std::istringstream in(slurp(path));
    std::string field_line, value_line;
    std::getline(in, field_line);
    std::getline(in, value_line);
    FieldPtr field;
    auto mpos = field_line.find("mod");
    if (field_line.rfind("field", 0) != 0) throw Error(path + ": expected a field line");
    if (mpos != std::string::npos) field = NumberField::parse(field_line.substr(mpos + 3));
    if (value_line.rfind("value", 0) != 0) throw Error(path + ": expected a value line");
    return parse_scalar(value_line.substr(5), field);
}

Circuit with_y(const Circuit& c, std::optional<int> yvar)
{
    if (yvar) return c.with_yvar(*yvar);
    if (c.yvar()) return c;
    return c.with_yvar(c.nvars() - 1);
}

KPolicy parse_policy(const std::string& s)
{
    if (s == "factor") return KPolicy::Factor;
    if (s == "square") return KPolicy::Square;
    throw Error("unknown k policy '" + s + "'");
}

Solver parse_solver(const std::string& s)
{
    if (s == "adjugate") return Solver::Adjugate;
    if (s == "cramer") return Solver::Cramer;
    throw Error("unknown solver '" + s + "'");
}

struct PipelineFlags {
    std::uint64_t size_bound = 0;
    std::optional<int> degree;
    std::string hitting = "grid";
    bool no_early_stop = false;
    bool full_degree = false;
    std::string k_policy = "factor";
    std::string solver = "adjugate";
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f)
{
    cmd->add_option("--size-bound", f.size_bound, "size parameter m (recorded; inert in grid mode)");
    cmd->add_option("--degree", f.degree, "total degree bound D (default: exact degree)");
    cmd->add_option("--hitting", f.hitting, "grid | seeded:SEED:COUNT");
    cmd->add_flag("--no-early-stop", f.no_early_stop, "process every hitting-set point");
    cmd->add_flag("--full-degree", f.full_degree, "also try d = D at derivative index 0");
    cmd->add_option("--k-policy", f.k_policy, "factor | square");
    cmd->add_option("--solver", f.solver, "adjugate | cramer");
}

PipelineConfig to_config(const PipelineFlags& f, int jobs)
{
    PipelineConfig cfg;
    cfg.size_bound = f.size_bound;
    cfg.degree = f.degree;
    cfg.hitting = f.hitting;
    cfg.early_stop = !f.no_early_stop;
    cfg.full_degree = f.full_degree;
    cfg.k_policy = parse_policy(f.k_policy);
    cfg.solver = parse_solver(f.solver);
    cfg.jobs = jobs;
    return cfg;
}

void summarize(const RunResult& r, const std::string& dir)
{
    std::cout << "D = " << r.D << ", " << r.candidates.size() << " candidate(s), " << r.skipped.size()
              << " skipped, written to " << dir << "\n";
}

int run_verify(const std::string& manifest_path, std::uint64_t seed, int trials, int jobs)
{
    namespace fs = std::filesystem;
    json m = json::parse(slurp(manifest_path));
    fs::path dir = fs::path(manifest_path).parent_path();
    Circuit f = read_circuit_file((dir / m.at("input").at("file").get<std::string>()).string());
    std::vector<Circuit> cands;
    std::vector<std::string> files;
    for (const auto& c : m.at("candidates")) {
        files.push_back(c.at("file").get<std::string>());
        cands.push_back(read_circuit_file((dir / files.back()).string()));
    }
    VerifyOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    auto results = verify_candidates(f, cands, opt, jobs);
    json report = {{"seed", seed}, {"trials", trials}, {"results", json::array()}};
    for (std::size_t t = 0; t < results.size(); ++t) {
        const auto& r = results[t];
        json e = {{"file", files[t]}, {"status", to_string(r.status)}, {"seed", r.seed},
                  {"points", r.points}, {"skipped", r.skipped}, {"note", r.note}};
        report["results"].push_back(e);
        std::cout << files[t] << ": " << to_string(r.status) << " (" << r.note << ")\n";
    }
    if (!m.contains("verify")) m["verify"] = json::array();
    m["verify"].push_back(report);
    std::ofstream out(manifest_path, std::ios::binary);
    out << m.dump(2) << "\n";
    if (!out) throw Error("cannot write " + manifest_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"circfac: candidate factors of polynomials given as circuits"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for the pipeline")->check(CLI::PositiveNumber);

    std::string command_line = "circfac";
    for (int i = 1; i < argc; ++i) command_line += " " + std::string(argv[i]);

    std::string input, out, fpath, gpath, root, phi_path, manifest;
    PipelineFlags pflags;
    int ydeg = 0, xdeg = 0, k = 0;
    std::optional<int> yvar, total_degree;
    std::string solver = "adjugate";
    std::uint64_t seed = 1;
    int trials = 8, max_degree = 12, max_vars = 4;

    auto* cand = app.add_subcommand("candidates", "list of candidate factors (all multiplicities)");
    cand->add_option("--input", input)->required();
    cand->add_option("--out", out, "run directory")->required();
    add_pipeline_flags(cand, pflags);

    auto* mult = app.add_subcommand("mult-one", "candidate factors of multiplicity one, input monic in y");
    mult->add_option("--input", input)->required();
    mult->add_option("--ydeg", ydeg, "degree guess d")->required();
    mult->add_option("--yvar", yvar, "y variable (default: the circuit's, else the last)");
    mult->add_option("--out", out, "run directory")->required();
    add_pipeline_flags(mult, pflags);

    auto* div = app.add_subcommand("divides", "exact divisibility test");
    div->add_option("--f", fpath)->required();
    div->add_option("--g", gpath)->required();

    auto* pres = app.add_subcommand("pseudores", "pseudo-resultant (num, den)");
    pres->add_option("--f", fpath)->required();
    pres->add_option("--g", gpath)->required();
    pres->add_option("--yvar", yvar);
    pres->add_option("--out", out)->required();

    auto* newton = app.add_subcommand("newton", "approximate root Phi_k");
    newton->add_option("--f", fpath)->required();
    newton->add_option("--root", root, "file with a field line and a value line")->required();
    newton->add_option("--k", k)->required();
    newton->add_option("--yvar", yvar);
    newton->add_option("--out", out)->required();

    auto* minpoly = app.add_subcommand("minpoly", "minimal polynomial of an approximate root");
    minpoly->add_option("--phi", phi_path)->required();
    minpoly->add_option("--ydeg", ydeg)->required();
    minpoly->add_option("--xdeg", xdeg)->required();
    minpoly->add_option("--k", k)->required();
    minpoly->add_option("--total-degree", total_degree, "restrict unknowns to i + j <= T");
    minpoly->add_option("--solver", solver, "adjugate | cramer");
    minpoly->add_option("--yvar", yvar);
    minpoly->add_option("--out", out)->required();

    auto* exp = app.add_subcommand("expand", "dense form on standard output");
    exp->add_option("--input", input)->required();
    exp->add_option("--max-degree", max_degree);
    exp->add_option("--max-vars", max_vars);

    auto* ver = app.add_subcommand("verify", "append a verification report to a run manifest");
    ver->add_option("--manifest", manifest)->required();
    ver->add_option("--seed", seed);
    ver->add_option("--trials", trials)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*cand) {
            Circuit f = read_circuit_file(input);
            PipelineConfig cfg = to_config(pflags, jobs);
            auto r = candidates_all(f.with_yvar(std::nullopt), cfg);
            write_run(out, f, r, cfg, command_line);
            summarize(r, out);
        } else if (*mult) {
            Circuit f = with_y(read_circuit_file(input), yvar);
            PipelineConfig cfg = to_config(pflags, jobs);
            auto r = candidates_mult_one(f, ydeg, cfg);
            write_run(out, f, r, cfg, command_line);
            summarize(r, out);
        } else if (*div) {
            bool yes = divides(read_circuit_file(fpath), read_circuit_file(gpath));
            std::cout << (yes ? "divides" : "does not divide") << "\n";
            return yes ? 0 : 1;
        } else if (*pres) {
            auto r = pseudo_resultant(with_y(read_circuit_file(fpath), yvar), with_y(read_circuit_file(gpath), yvar));
            write_pseudo_resultant(r, out);
            std::cout << "D = " << r.D << ", d = " << r.d << ", dq = " << r.dq << "\n";
        } else if (*newton) {
            Circuit F = with_y(read_circuit_file(fpath), yvar);
            auto st = lift(F, read_root(root), k);
            write_circuit_file(st.phi, out);
            std::cout << "size " << stats(st.phi).size << "\n";
        } else if (*minpoly) {
            Circuit phi = with_y(read_circuit_file(phi_path), yvar);
            RecoverOptions opt;
            opt.total_degree = total_degree;
            opt.solver = parse_solver(solver);
            auto r = recover(phi, ydeg, xdeg, k, opt);
            write_circuit_file(r.g, out);
            std::cout << "unknowns " << r.unknowns << ", size " << stats(r.g).size << "\n";
        } else if (*exp) {
            OracleCaps caps;
            caps.max_degree = max_degree;
            caps.max_vars = max_vars;
            Circuit c = read_circuit_file(input);
            std::cout << expand(c, caps).to_string(c.yvar()) << "\n";
        } else if (*ver) {
            return run_verify(manifest, seed, trials, jobs);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return 0;
}
