#include "lohho/solver.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SparseCholesky>
#ifdef LOHHO_HAVE_CHOLMOD
#include <Eigen/CholmodSupport>
#endif

namespace lohho {

SolverMethod parse_solver_method(const std::string& name)
{
    if (name == "direct")
        return SolverMethod::direct;
    if (name == "cg")
        return SolverMethod::cg;
    if (name == "auto")
        return SolverMethod::automatic;
    throw ConfigError("unknown solver '" + name + "' (expected direct, cg or auto)");
}

std::string to_string(SolverMethod method)
{
    switch (method) {
    case SolverMethod::direct: return "direct";
    case SolverMethod::cg: return "cg";
    case SolverMethod::automatic: return "auto";
    }
    return "?";
}

void spmv(const SparseMatrix& a, const Eigen::VectorXd& x, Eigen::VectorXd& y, Execution execution)
{
    const auto n = a.outerSize();
    y.resize(n);
#pragma omp parallel for schedule(static) if (execution == Execution::parallel)
    for (Eigen::Index j = 0; j < n; ++j) {
        double s = 0.0;
        for (SparseMatrix::InnerIterator it(a, j); it; ++it)
            s += it.value() * x[it.row()];
        y[j] = s;
    }
}

namespace {

using IntMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

double inf_norm(const SparseMatrix& a)
{
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(a.outerSize());
    for (Eigen::Index j = 0; j < a.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(a, j); it; ++it)
            sums[j] += std::abs(it.value());
    return sums.size() ? sums.maxCoeff() : 0.0;
}

// b - A x with long double accumulation, rounded once.
Eigen::VectorXd extended_residual(const SparseMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b)
{
    const auto n = a.outerSize();
    Eigen::VectorXd r(n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j) {
        long double s = b[j];
        for (SparseMatrix::InnerIterator it(a, j); it; ++it)
            s -= static_cast<long double>(it.value()) * x[it.row()];
        r[j] = static_cast<double>(s);
    }
    return r;
}

} // namespace

struct SpdSolver::Impl {
    const SparseMatrix& a;
    SolveOptions options;
    double norm_a = 0.0;
#ifdef LOHHO_HAVE_CHOLMOD
    Eigen::CholmodSupernodalLLT<IntMatrix, Eigen::Lower> llt;
#else
    Eigen::SimplicialLLT<IntMatrix, Eigen::Lower> llt;
#endif
    std::string status = "none";

    Impl(const SparseMatrix& m, SolveOptions o) : a(m), options(o) {}
};

SpdSolver::SpdSolver(const SparseMatrix& a, SolveOptions options) : impl_(std::make_unique<Impl>(a, options))
{
    if (a.rows() != a.cols())
        throw ContractViolation("solver needs a square matrix");
    impl_->norm_a = inf_norm(a);
    if (options.method == SolverMethod::automatic)
        impl_->options.method = a.nonZeros() > automatic_cg_threshold ? SolverMethod::cg : SolverMethod::direct;
    options = impl_->options;
    if (options.method == SolverMethod::direct) {
        const IntMatrix lower = IntMatrix(a).triangularView<Eigen::Lower>();
        impl_->llt.compute(lower);
        if (impl_->llt.info() != Eigen::Success)
            throw SolverError("Cholesky factorisation failed: the matrix is not symmetric positive definite");
        impl_->status =
#ifdef LOHHO_HAVE_CHOLMOD
            "cholmod-supernodal-llt";
#else
            "simplicial-llt";
#endif
    }
}

SpdSolver::~SpdSolver() = default;

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b, SolveReport* out) const
{
    const Impl& s = *impl_;
    SolveReport report;
    report.method = s.options.method;
    report.factorisation = s.status;
    const double norm_b = b.norm();
    if (!b.allFinite())
        throw ContractViolation("right-hand side has non-finite entries");
    Eigen::VectorXd x;
    Eigen::VectorXd r;

    if (norm_b == 0.0) {
        x = Eigen::VectorXd::Zero(b.size());
    } else if (s.options.method == SolverMethod::direct) {
        x = s.llt.solve(b);
        // refinement with residuals accumulated in extended precision
        Eigen::VectorXd r_ext = extended_residual(s.a, x, b);
        double res = r_ext.norm();
        report.residual_history.push_back(res / norm_b);
        for (int step = 0; step < 4 && res > 0.0; ++step) {
            const Eigen::VectorXd candidate = x + s.llt.solve(r_ext);
            const Eigen::VectorXd next_r = extended_residual(s.a, candidate, b);
            const double next = next_r.norm();
            if (!(next < 0.5 * res))
                break;
            x = candidate;
            r_ext = next_r;
            res = next;
            report.residual_history.push_back(res / norm_b);
            ++report.iterations;
        }
    } else {
        const long max_it = s.options.max_iterations > 0
                                ? s.options.max_iterations
                                : static_cast<long>(std::ceil(50.0 * std::sqrt(static_cast<double>(b.size()))));
        x = pcg(s.a, b, s.options.tolerance, max_it, s.options.execution, report);
    }

    if (norm_b != 0.0)
        r = extended_residual(s.a, x, b);
    const double res = norm_b == 0.0 ? 0.0 : r.norm();
    report.relative_residual = norm_b == 0.0 ? 0.0 : res / norm_b;
    if (norm_b != 0.0)
        report.backward_error =
            r.lpNorm<Eigen::Infinity>() / (s.norm_a * x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>());
    if (out)
        *out = report;
    if (!x.allFinite())
        throw SolverError("solution has non-finite entries");
    // A double-precision x cannot have a residual much below eps ||A|| ||x||,
    // which exceeds tol ||b|| for large lambda; direct solves are therefore
    // also accepted on the normwise backward error.
    const bool converged = report.relative_residual <= s.options.tolerance
                           || (s.options.method == SolverMethod::direct && report.backward_error <= s.options.tolerance);
    if (!converged) {
        std::ostringstream msg;
        msg << to_string(s.options.method) << " solve: relative residual " << report.relative_residual
            << " exceeds tolerance " << s.options.tolerance << "; history:";
        const std::size_t from = report.residual_history.size() > 10 ? report.residual_history.size() - 10 : 0;
        for (std::size_t k = from; k < report.residual_history.size(); ++k)
            msg << ' ' << report.residual_history[k];
        throw SolverError(msg.str());
    }
    return x;
}

Eigen::VectorXd pcg(const SparseMatrix& a, const Eigen::VectorXd& b, double tolerance, long max_iterations,
                    Execution execution, SolveReport& report)
{
    const Eigen::Index n = b.size();
    Eigen::VectorXd inv_diag(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double d = a.coeff(j, j);
        if (!(d > 0.0))
            throw SolverError("non-positive diagonal entry " + std::to_string(j) + ": matrix is not SPD");
        inv_diag[j] = 1.0 / d;
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n), r = b, z = inv_diag.cwiseProduct(r), p = z, q(n);
    const double norm_b = b.norm();
    double rz = r.dot(z);
    report.residual_history.assign(1, 1.0);
    for (long it = 1; it <= max_iterations; ++it) {
        spmv(a, p, q, execution);
        const double pq = p.dot(q);
        if (!(pq > 0.0))
            throw SolverError("conjugate gradients broke down: matrix is not SPD");
        const double alpha = rz / pq;
        x += alpha * p;
        r -= alpha * q;
        const double rel = r.norm() / norm_b;
        report.residual_history.push_back(rel);
        report.iterations = it;
        if (rel <= tolerance)
            return x;
        z = inv_diag.cwiseProduct(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    return x;
}

std::pair<DiscreteDisplacement, SolveReport> solve(const SparseSystem& system, const SolveOptions& options)
{
    SolveReport report;
    const SpdSolver solver(system.matrix, options);
    Eigen::VectorXd x = solver.solve(system.rhs, &report);
    std::optional<std::vector<Vec>> boundary;
    if (!system.homogeneous())
        boundary = system.boundary_values;
    return {DiscreteDisplacement(system.dofs, std::move(x), std::move(boundary)), report};
}

} // namespace lohho
