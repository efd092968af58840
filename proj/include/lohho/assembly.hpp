#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Sparse>

#include "lohho/common.hpp"
#include "lohho/fespace.hpp"
#include "lohho/mesh.hpp"

namespace lohho {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, std::int64_t>;

struct MaterialParams {
    double mu = 1.0;
    double lambda = 1.0;

    /// lambda^- = (|lambda| - lambda) / 2.
    double lambda_minus() const;
    /// Coercivity constant 2 mu - d lambda^-.
    double alpha(int dim) const;
    /// Throws ContractViolation unless mu > 0 and alpha > 0.
    void validate(int dim) const;
};

/// sigma(tau) = 2 mu tau + lambda tr(tau) Id on symmetric d x d tensors.
Tensor stress(const Tensor& tau, const MaterialParams& mat, int dim);

/// Right-hand side data of the discrete problem.
struct LoadData {
    VectorFunction force;
    /// Dirichlet data; absent means homogeneous.
    std::optional<VectorFunction> dirichlet;
};

enum class Execution { parallel, serial };

struct AssemblyOptions {
    int quad_degree = 10;
    Execution execution = Execution::parallel;
};

/// a_h over the full (boundary-inclusive) unknowns, before elimination.
struct FullOperator {
    DofMap dofs;
    SparseMatrix matrix;
};

struct SparseSystem {
    DofMap dofs;
    /// A over the reduced unknowns, both triangles stored.
    SparseMatrix matrix;
    /// b = (f, v_h) + lifting contributions.
    Eigen::VectorXd rhs;
    /// Integral of f over each cell, the (f, v_h) part of rhs.
    std::vector<Vec> cell_load;
    /// pi^0_F g on boundary faces, zero elsewhere; empty when homogeneous.
    std::vector<Vec> boundary_values;
    /// rhs - (f, v_h): Dirichlet contributions only.
    Eigen::VectorXd lifting;

    std::size_t size() const { return dofs.size(); }
    std::size_t nnz() const { return static_cast<std::size_t>(matrix.nonZeros()); }
    bool homogeneous() const { return boundary_values.empty(); }
};

/// Triplet list reduced to canonical form: sorted by (col,row), duplicates
/// summed in their input order.
struct TripletBuffer {
    std::vector<std::int64_t> rows, cols;
    std::vector<double> values;

    void add(std::int64_t r, std::int64_t c, double v)
    {
        rows.push_back(r);
        cols.push_back(c);
        values.push_back(v);
    }
    std::size_t size() const { return values.size(); }
};

SparseMatrix sort_and_sum(const std::vector<TripletBuffer>& buffers, std::int64_t n);

/// Assembles a_h = consistency + 2 mu j_h + 2 mu s_h on all unknowns.
FullOperator assemble_operator(const Mesh& mesh, const MaterialParams& mat, const AssemblyOptions& opts = {});

/// Cell integrals of f.
std::vector<Vec> assemble_load(const Mesh& mesh, const VectorFunction& force, int quad_degree,
                               Execution execution = Execution::parallel);

/// Eliminates boundary face unknowns: fixes them to pi^0_F g (g = 0 when
/// absent), moves their couplings to the right-hand side and adds the
/// boundary jump data term. Boundary jumps then penalise p_T - g.
SparseSystem apply_dirichlet(const Mesh& mesh, const FullOperator& op, std::vector<Vec> cell_load,
                             const std::optional<VectorFunction>& dirichlet, const MaterialParams& mat,
                             int quad_degree);

SparseSystem assemble(const Mesh& mesh, const MaterialParams& mat, const LoadData& data,
                      const AssemblyOptions& opts = {});

/// MatrixMarket coordinate format, 1-based, general storage.
void write_matrix_market(std::ostream& out, const SparseMatrix& m);

/// s_T(w, v) for one cell.
double local_stabilisation(const Mesh& mesh, std::size_t cell, const LocalDofs& w, const LocalDofs& v);

/// Dense local matrices, exposed for testing.
Eigen::MatrixXd local_consistency_matrix(const Mesh& mesh, std::size_t cell, const MaterialParams& mat);
Eigen::MatrixXd local_stabilisation_matrix(const Mesh& mesh, std::size_t cell);

} // namespace lohho
