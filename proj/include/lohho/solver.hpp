#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lohho/assembly.hpp"
#include "lohho/fespace.hpp"

namespace lohho {

/// `automatic` factorises unless the matrix has more than
/// automatic_cg_threshold stored entries, where it switches to CG.
enum class SolverMethod { direct, cg, automatic };

inline constexpr long automatic_cg_threshold = 4'000'000;

SolverMethod parse_solver_method(const std::string& name);
std::string to_string(SolverMethod method);

struct SolveOptions {
    SolverMethod method = SolverMethod::direct;
    double tolerance = 1e-10;
    /// 0 selects 50 sqrt(N).
    long max_iterations = 0;
    Execution execution = Execution::parallel;
};

struct SolveReport {
    SolverMethod method = SolverMethod::direct;
    /// ||Ax - b|| / ||b||, recomputed after the solve.
    double relative_residual = 0.0;
    /// ||Ax - b||_inf / (||A||_inf ||x||_inf + ||b||_inf), the normwise backward error.
    double backward_error = 0.0;
    long iterations = 0;
    std::string factorisation = "none";
    std::vector<double> residual_history;
};

/// y = A x. A stores both triangles, so columns of A are rows of A and
/// each output entry is an independent dot product.
void spmv(const SparseMatrix& a, const Eigen::VectorXd& x, Eigen::VectorXd& y,
          Execution execution = Execution::parallel);

/// Factorises once, solves many right-hand sides.
class SpdSolver {
public:
    explicit SpdSolver(const SparseMatrix& a, SolveOptions options = {});
    ~SpdSolver();
    SpdSolver(const SpdSolver&) = delete;
    SpdSolver& operator=(const SpdSolver&) = delete;

    /// Throws SolverError on breakdown or when the residual misses the
    /// tolerance: relative residual for CG, relative residual or backward
    /// error for direct solves.
    Eigen::VectorXd solve(const Eigen::VectorXd& b, SolveReport* report = nullptr) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::pair<DiscreteDisplacement, SolveReport> solve(const SparseSystem& system, const SolveOptions& options = {});

/// Jacobi-preconditioned conjugate gradients from x = 0.
Eigen::VectorXd pcg(const SparseMatrix& a, const Eigen::VectorXd& b, double tolerance, long max_iterations,
                    Execution execution, SolveReport& report);

} // namespace lohho
