#pragma once

#include <optional>
#include <vector>

#include "lohho/assembly.hpp"
#include "lohho/fespace.hpp"
#include "lohho/solver.hpp"

namespace lohho {

struct Seminorms {
    /// ||grad_{s,h} p_h||.
    double strain = 0.0;
    /// |p_h|_{j,h}, boundary faces included.
    double jump = 0.0;
    /// |v_h|_{s,h}.
    double stab = 0.0;
    /// Square root of strain^2 + jump^2 + stab^2.
    double triple = 0.0;
};

struct ErrorReport {
    double h = 0.0;
    std::size_t ndofs = 0;
    std::size_t nnz = 0;
    double energy = 0.0;
    double l2 = 0.0;
    std::optional<Seminorms> breakdown;
    std::optional<double> energy_eoc;
    std::optional<double> l2_eoc;
};

/// sqrt(e^T A e) with e = u_h - I_h u on the reduced unknowns.
double energy_error(const DiscreteDisplacement& uh, const VectorFunction& u, const Mesh& mesh,
                    const SparseSystem& system, int quad_degree = 10);

/// a_h(v, v) summed term by term from the reconstructions, without the
/// assembled matrix. Boundary faces carry zero values.
double energy_from_terms(const Mesh& mesh, const DiscreteDisplacement& v, const MaterialParams& mat);

/// sqrt(sum_T |T| |u_T - pi_T u|^2).
double l2_error(const DiscreteDisplacement& uh, const VectorFunction& u, const Mesh& mesh, int quad_degree = 10);

/// Broken seminorms of v_h. Boundary jumps use the trace of p_T minus
/// `data` when given.
Seminorms seminorms(const Mesh& mesh, const DiscreteDisplacement& v, const VectorFunction* data = nullptr,
                    int quad_degree = 2);

/// EOC_i between consecutive entries; absent when either error is not positive.
std::vector<std::optional<double>> eoc(const std::vector<double>& errors, const std::vector<double>& h);

/// sqrt(r^T A^-1 r) with r = b - A I_h u.
double consistency_residual(const VectorFunction& u, const Mesh& mesh, const SparseSystem& system,
                            const SolveOptions& options = {}, int quad_degree = 10);
double consistency_residual(const VectorFunction& u, const Mesh& mesh, const SparseSystem& system,
                            const SpdSolver& solver, int quad_degree = 10);

} // namespace lohho
