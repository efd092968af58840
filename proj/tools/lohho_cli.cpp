#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lohho/cases.hpp"
#include "lohho/study.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw lohho::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lowest-order hybrid discretisation of linear elasticity: convergence studies"};
    app.set_version_flag("--version", "lohho 1.0");

    std::string config_path, case_id, family, domain, solver, out, vtk, tractions, matrix;
    std::vector<int> levels;
    std::vector<std::string> files;
    double mu = 0, lambda = 0, tolerance = 0;
    long max_iterations = 0;
    int quad_degree = 0;
    bool check_tractions = false, verbose = false, list_cases = false;

    app.add_option("--config", config_path, "JSON run configuration; flags override its fields")->check(CLI::ExistingFile);
    app.add_option("--case", case_id, "brenner2d | singular2d | cube3d");
    app.add_option("--family", family, "cartesian | structured-triangular | distorted-quadrangular | cube-to-tet | file");
    app.add_option("--domain", domain, "unit-box | notched-square (default: the case's domain)");
    app.add_option("--levels", levels, "resolutions n, e.g. --levels 4,8,16")->delimiter(',');
    app.add_option("--files", files, "mesh files for --family file, coarsest first")->delimiter(',');
    app.add_option("--mu", mu, "override mu");
    app.add_option("--lambda", lambda, "override lambda");
    app.add_option("--quad-degree", quad_degree, "quadrature exactness degree (default 10)");
    app.add_option("--solver", solver, "direct | cg | auto (default: direct below 4M matrix entries, else cg)");
    app.add_option("--tolerance", tolerance, "relative residual tolerance (default 1e-10)");
    app.add_option("--max-iterations", max_iterations, "CG iteration cap (default 50 sqrt(N))");
    app.add_option("--out", out, "CSV output path ('-' for stdout)");
    app.add_flag("--check-tractions", check_tractions, "verify local balances and traction equilibrium");
    app.add_option("--export-vtk", vtk, "write <prefix>_<mesh>.vtk per level");
    app.add_option("--export-tractions", tractions, "write <prefix>_<mesh>.csv tractions per level");
    app.add_option("--dump-matrix", matrix, "write <prefix>_<mesh>.mtx (MatrixMarket) per level");
    app.add_flag("-v,--verbose", verbose, "progress on stderr");
    app.add_flag("--list-cases", list_cases, "print the case registry and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (list_cases) {
        for (const auto& id : lohho::case_ids())
            std::cout << id << '\n';
        return exit_ok;
    }

    lohho::RunConfig config;
    try {
        if (!config_path.empty())
            config = lohho::parse_run_config(read_text(config_path));
        if (app.count("--case"))
            config.case_id = case_id;
        if (app.count("--family"))
            config.family = lohho::parse_family(family);
        if (app.count("--domain"))
            config.domain = lohho::parse_domain(domain);
        if (app.count("--levels"))
            config.levels = levels;
        if (app.count("--files"))
            config.files = files;
        if (app.count("--mu"))
            config.mu = mu;
        if (app.count("--lambda"))
            config.lambda = lambda;
        if (app.count("--quad-degree"))
            config.quad_degree = quad_degree;
        if (app.count("--solver"))
            config.solver.method = lohho::parse_solver_method(solver);
        if (app.count("--tolerance"))
            config.solver.tolerance = tolerance;
        if (app.count("--max-iterations"))
            config.solver.max_iterations = max_iterations;
        if (app.count("--out"))
            config.out = out;
        if (check_tractions)
            config.check_tractions = true;
        if (app.count("--export-vtk"))
            config.vtk_prefix = vtk;
        if (app.count("--export-tractions"))
            config.tractions_prefix = tractions;
        if (app.count("--dump-matrix"))
            config.matrix_prefix = matrix;
        config.validate();
    } catch (const lohho::ConfigError& e) {
        std::cerr << "lohho: " << e.what() << '\n';
        return exit_usage;
    }

    lohho::StudyReport report;
    try {
        report = lohho::run_study(config, verbose ? &std::cerr : nullptr);
    } catch (const lohho::ConfigError& e) {
        std::cerr << "lohho: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "lohho: " << e.what() << '\n';
        return exit_check_failed;
    }

    if (config.out.empty() || config.out == "-") {
        lohho::write_study_csv(std::cout, report);
    } else {
        std::ofstream csv(config.out);
        if (!csv) {
            std::cerr << "lohho: cannot write '" << config.out << "'\n";
            return exit_usage;
        }
        lohho::write_study_csv(csv, report);
    }
    for (const auto& f : report.failures)
        std::cerr << "lohho: check failed: " << f << '\n';
    return report.ok() ? exit_ok : exit_check_failed;
}
