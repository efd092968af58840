#pragma once

#include <iosfwd>
#include <vector>

#include "lohho/assembly.hpp"
#include "lohho/fespace.hpp"

namespace lohho {

/// Phi_TF and its additive parts; `jump` and `stab` carry the 2 mu factor.
struct Traction {
    Vec consistency = Vec::Zero();
    Vec jump = Vec::Zero();
    Vec stab = Vec::Zero();
    Vec total = Vec::Zero();
};

/// One entry per (cell, local face), in the cell's face order.
struct TractionField {
    std::vector<std::vector<Traction>> cells;

    const Traction& at(std::size_t cell, std::size_t local_face) const { return cells[cell][local_face]; }
};

/// Numerical tractions of u_h such that
///   a_h(u_h, v_h) = sum_T sum_F |F| Phi_TF(u_h) . (v_T - v_F)   for all v_h in U_h,D.
/// Boundary jumps are p_T - g when `data` is given, the trace of p_T otherwise.
TractionField numerical_tractions(const Mesh& mesh, const DiscreteDisplacement& uh, const MaterialParams& mat,
                                  const VectorFunction* data = nullptr, int quad_degree = 10);

/// sum_T sum_F |F| Phi_TF . (v_T - v_F).
double traction_action(const Mesh& mesh, const TractionField& phi, const DiscreteDisplacement& v);

struct BalanceReport {
    double max_residual = 0.0;
    /// max_residual / reference norm.
    double relative = 0.0;
    std::size_t worst_cell = npos;
    bool ok = true;
};

/// max_T |sum_F |F| Phi_TF - b_T| against the assembled cell loads.
BalanceReport check_local_balance(const Mesh& mesh, const TractionField& phi, const std::vector<Vec>& cell_load,
                                  double reference_norm, double tolerance = 1e-8);

struct EquilibriumReport {
    double max_residual = 0.0;
    double max_traction = 0.0;
    /// max_residual / max_traction.
    double relative = 0.0;
    std::size_t worst_face = npos;
    bool ok = true;
};

/// max over interior faces of |Phi_T1F + Phi_T2F|.
EquilibriumReport check_equilibrium(const Mesh& mesh, const TractionField& phi, double tolerance = 1e-8);

/// Columns cell_id, face_id, phi_x, phi_y[, phi_z], then the same for the
/// consistency, jump and stab parts.
void write_tractions_csv(std::ostream& out, const Mesh& mesh, const TractionField& phi);

} // namespace lohho
