#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lohho/mesh_families.hpp"
#include "lohho/solver.hpp"

namespace lohho {

struct RunConfig {
    std::string case_id = "brenner2d";
    MeshFamily family = MeshFamily::cartesian;
    /// Defaults to the case's own domain.
    std::optional<MeshDomain> domain;
    /// Resolutions n, strictly increasing; ignored for family = file.
    std::vector<int> levels;
    /// Mesh files, coarsest first, for family = file.
    std::vector<std::string> files;
    std::optional<double> mu;
    std::optional<double> lambda;
    int quad_degree = 10;
    SolveOptions solver{SolverMethod::automatic};
    /// CSV destination; "-" or empty writes to stdout.
    std::string out = "-";
    bool check_tractions = false;
    /// Per-level output prefixes; empty disables the export.
    std::string vtk_prefix;
    std::string tractions_prefix;
    std::string matrix_prefix;

    /// Throws ConfigError.
    void validate() const;
};

/// Reads a JSON object whose keys mirror the long CLI flags (case, family,
/// domain, levels, files, mu, lambda, quad_degree, solver, tolerance, out,
/// check_tractions, export_vtk, export_tractions, dump_matrix).
RunConfig parse_run_config(const std::string& json_text, RunConfig base = {});

struct LevelResult {
    std::string mesh_id;
    double h = 0.0;
    std::size_t ndofs = 0;
    std::size_t nnz = 0;
    double energy_err = 0.0;
    std::optional<double> energy_eoc;
    double l2_err = 0.0;
    std::optional<double> l2_eoc;
    std::optional<double> balance_residual;
    std::optional<double> equilibrium_residual;
    SolveReport solve;
};

struct StudyReport {
    std::vector<LevelResult> levels;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

/// Build, assemble, solve and measure every level in turn. Module errors are
/// rethrown with the level in the message.
StudyReport run_study(const RunConfig& config, std::ostream* log = nullptr);

/// mesh_id,h,ndofs,nnz,energy_err,energy_eoc,l2_err,l2_eoc,balance_residual,equilibrium_residual
void write_study_csv(std::ostream& out, const StudyReport& report);

} // namespace lohho
