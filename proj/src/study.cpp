#include "lohho/study.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "lohho/analysis.hpp"
#include "lohho/cases.hpp"
#include "lohho/mesh_io.hpp"
#include "lohho/tractions.hpp"
#include "lohho/vtk.hpp"

namespace lohho {

void RunConfig::validate() const
{
    if (family == MeshFamily::file) {
        if (files.empty())
            throw ConfigError("family 'file' needs at least one mesh file");
    } else {
        if (levels.empty())
            throw ConfigError("refinement list is empty");
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (levels[i] < 1)
                throw ConfigError("refinement levels must be positive");
            if (i > 0 && levels[i] <= levels[i - 1])
                throw ConfigError("refinement levels must increase strictly");
        }
    }
    if (quad_degree < 2 || quad_degree > 30)
        throw ConfigError("quadrature degree must lie in [2, 30]");
    if (!(solver.tolerance > 0.0))
        throw ConfigError("solver tolerance must be positive");
    make_case(case_id, mu, lambda);
}

RunConfig parse_run_config(const std::string& json_text, RunConfig base)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("JSON config must be an object");
    static const std::vector<std::string> known = {
        "case", "family", "domain", "levels", "files", "mu", "lambda", "quad_degree", "solver", "tolerance",
        "max_iterations", "out", "check_tractions", "export_vtk", "export_tractions", "dump_matrix"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config key '" + key + "'");
    try {
        RunConfig c = std::move(base);
        if (j.contains("case"))
            c.case_id = j["case"].get<std::string>();
        if (j.contains("family"))
            c.family = parse_family(j["family"].get<std::string>());
        if (j.contains("domain"))
            c.domain = parse_domain(j["domain"].get<std::string>());
        if (j.contains("levels"))
            c.levels = j["levels"].get<std::vector<int>>();
        if (j.contains("files"))
            c.files = j["files"].get<std::vector<std::string>>();
        if (j.contains("mu"))
            c.mu = j["mu"].get<double>();
        if (j.contains("lambda"))
            c.lambda = j["lambda"].get<double>();
        if (j.contains("quad_degree"))
            c.quad_degree = j["quad_degree"].get<int>();
        if (j.contains("solver"))
            c.solver.method = parse_solver_method(j["solver"].get<std::string>());
        if (j.contains("tolerance"))
            c.solver.tolerance = j["tolerance"].get<double>();
        if (j.contains("max_iterations"))
            c.solver.max_iterations = j["max_iterations"].get<long>();
        if (j.contains("out"))
            c.out = j["out"].get<std::string>();
        if (j.contains("check_tractions"))
            c.check_tractions = j["check_tractions"].get<bool>();
        if (j.contains("export_vtk"))
            c.vtk_prefix = j["export_vtk"].get<std::string>();
        if (j.contains("export_tractions"))
            c.tractions_prefix = j["export_tractions"].get<std::string>();
        if (j.contains("dump_matrix"))
            c.matrix_prefix = j["dump_matrix"].get<std::string>();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad value in JSON config: ") + e.what());
    }
}

namespace {

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    body(out);
}

} // namespace

StudyReport run_study(const RunConfig& config, std::ostream* log)
{
    config.validate();
    const TestCase tc = make_case(config.case_id, config.mu, config.lambda);
    const std::size_t count = config.family == MeshFamily::file ? config.files.size() : config.levels.size();
    StudyReport report;
    for (std::size_t level = 0; level < count; ++level) {
        MeshFamilySpec spec;
        spec.family = config.family;
        spec.dim = tc.dim;
        spec.domain = config.domain.value_or(tc.domain);
        std::string id;
        if (config.family == MeshFamily::file) {
            spec.path = config.files[level];
            id = std::filesystem::path(spec.path).stem().string();
        } else {
            spec.n = config.levels[level];
            id = to_string(config.family) + "-n" + std::to_string(spec.n);
        }
        try {
            const Mesh mesh = build_mesh(spec);
            if (mesh.dim != tc.dim)
                throw ConfigError("mesh dimension " + std::to_string(mesh.dim) + " does not match case " + tc.id);
            const SparseSystem sys = assemble(mesh, tc.material, tc.load(), {config.quad_degree, Execution::parallel});
            auto [uh, solve_report] = solve(sys, config.solver);

            LevelResult row;
            row.mesh_id = id;
            row.h = mesh.h();
            row.ndofs = sys.size();
            row.nnz = sys.nnz();
            row.energy_err = energy_error(uh, tc.u, mesh, sys, config.quad_degree);
            row.l2_err = l2_error(uh, tc.u, mesh, config.quad_degree);
            row.solve = solve_report;

            if (config.check_tractions) {
                const VectorFunction* data = tc.g ? &*tc.g : nullptr;
                const auto phi = numerical_tractions(mesh, uh, tc.material, data, config.quad_degree);
                const auto balance = check_local_balance(mesh, phi, sys.cell_load, sys.rhs.norm());
                const auto equilibrium = check_equilibrium(mesh, phi);
                row.balance_residual = balance.relative;
                row.equilibrium_residual = equilibrium.relative;
                if (!balance.ok)
                    report.failures.push_back(id + ": local balance residual " + std::to_string(balance.relative)
                                              + " at cell " + std::to_string(balance.worst_cell));
                if (!equilibrium.ok)
                    report.failures.push_back(id + ": equilibrium residual " + std::to_string(equilibrium.relative)
                                              + " at face " + std::to_string(equilibrium.worst_face));
                if (!config.tractions_prefix.empty())
                    write_file(config.tractions_prefix + "_" + id + ".csv",
                               [&](std::ostream& out) { write_tractions_csv(out, mesh, phi); });
            }
            if (!config.vtk_prefix.empty())
                export_vtk(uh, mesh, config.vtk_prefix + "_" + id + ".vtk");
            if (!config.matrix_prefix.empty())
                write_file(config.matrix_prefix + "_" + id + ".mtx",
                           [&](std::ostream& out) { write_matrix_market(out, sys.matrix); });
            if (log)
                *log << id << ": ndofs " << row.ndofs << ", energy " << row.energy_err << ", l2 " << row.l2_err
                     << ", residual " << row.solve.relative_residual << '\n';
            report.levels.push_back(std::move(row));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error(id + ": " + e.what());
        }
    }

    if (report.levels.size() > 1) {
        std::vector<double> h, energy, l2;
        for (const auto& r : report.levels) {
            h.push_back(r.h);
            energy.push_back(r.energy_err);
            l2.push_back(r.l2_err);
        }
        const auto e_eoc = eoc(energy, h);
        const auto l_eoc = eoc(l2, h);
        for (std::size_t i = 1; i < report.levels.size(); ++i) {
            report.levels[i].energy_eoc = e_eoc[i - 1];
            report.levels[i].l2_eoc = l_eoc[i - 1];
        }
    }
    return report;
}

void write_study_csv(std::ostream& out, const StudyReport& report)
{
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.5e", v);
        return std::string(buf);
    };
    auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
    out << "mesh_id,h,ndofs,nnz,energy_err,energy_eoc,l2_err,l2_eoc,balance_residual,equilibrium_residual\n";
    for (const auto& r : report.levels)
        out << r.mesh_id << ',' << num(r.h) << ',' << r.ndofs << ',' << r.nnz << ',' << num(r.energy_err) << ','
            << opt(r.energy_eoc) << ',' << num(r.l2_err) << ',' << opt(r.l2_eoc) << ',' << opt(r.balance_residual)
            << ',' << opt(r.equilibrium_residual) << '\n';
}

} // namespace lohho
