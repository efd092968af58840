#include "lohho/analysis.hpp"

#include <cmath>

#include "lohho/quadrature.hpp"

namespace lohho {

namespace {

Eigen::VectorXd interpolation_error(const DiscreteDisplacement& uh, const VectorFunction& u, const Mesh& mesh,
                                    const DofMap& dofs, int quad_degree)
{
    if (uh.coefficients().size() != static_cast<Eigen::Index>(dofs.size()))
        throw ContractViolation("discrete field does not match the system");
    const auto iu = interpolate(mesh, dofs, u, quad_degree, false);
    return uh.coefficients() - iu.coefficients();
}

} // namespace

double energy_error(const DiscreteDisplacement& uh, const VectorFunction& u, const Mesh& mesh,
                    const SparseSystem& system, int quad_degree)
{
    const Eigen::VectorXd e = interpolation_error(uh, u, mesh, system.dofs, quad_degree);
    Eigen::VectorXd ae;
    spmv(system.matrix, e, ae);
    return std::sqrt(std::max(0.0, e.dot(ae)));
}

double energy_from_terms(const Mesh& mesh, const DiscreteDisplacement& v, const MaterialParams& mat)
{
    const DiscreteDisplacement zero_bc(v.dofs(), v.coefficients());
    const auto p = reconstruct_all(mesh, zero_bc);
    double consistency = 0.0;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Tensor gs = sym(p[c].gradient);
        consistency += mesh.cells[c].measure * (2.0 * mat.mu * gs.squaredNorm() + mat.lambda * gs.trace() * gs.trace());
    }
    const Seminorms s = seminorms(mesh, zero_bc);
    return consistency + 2.0 * mat.mu * (s.jump * s.jump + s.stab * s.stab);
}

double l2_error(const DiscreteDisplacement& uh, const VectorFunction& u, const Mesh& mesh, int quad_degree)
{
    double sum = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : sum)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(mesh.num_cells()); ++c)
        sum += mesh.cells[c].measure * (uh.cell(c) - cell_mean(mesh, c, u, quad_degree)).squaredNorm();
    return std::sqrt(sum);
}

Seminorms seminorms(const Mesh& mesh, const DiscreteDisplacement& v, const VectorFunction* data, int quad_degree)
{
    const auto p = reconstruct_all(mesh, v);
    Seminorms s;
    double strain = 0.0, stab = 0.0, jump = 0.0;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Cell& T = mesh.cells[c];
        strain += T.measure * sym(p[c].gradient).squaredNorm();
        for (std::size_t k = 0; k < T.faces.size(); ++k) {
            const Face& F = mesh.faces[T.faces[k]];
            stab += F.measure / F.diameter * (p[c](F.centroid) - v.face(T.faces[k])).squaredNorm();
        }
    }
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const Face& F = mesh.faces[f];
        const FaceJump j = F.is_boundary() ? face_jump(mesh, f, p[F.cells[0]], nullptr, data)
                                           : face_jump(mesh, f, p[F.cells[0]], &p[F.cells[1]]);
        const int degree = (F.is_boundary() && data) ? quad_degree : 2;
        double sq = 0.0;
        for (const auto& q : face_quadrature(mesh, f, degree))
            sq += q.w * j(q.x).squaredNorm();
        jump += sq / F.diameter;
    }
    s.strain = std::sqrt(strain);
    s.jump = std::sqrt(jump);
    s.stab = std::sqrt(stab);
    s.triple = std::sqrt(strain + jump + stab);
    return s;
}

std::vector<std::optional<double>> eoc(const std::vector<double>& errors, const std::vector<double>& h)
{
    if (errors.size() != h.size())
        throw ContractViolation("eoc: error and mesh-size sequences differ in length");
    std::vector<std::optional<double>> out;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        if (!(h[i] > h[i + 1]))
            throw ContractViolation("eoc: mesh sizes must decrease strictly");
        if (errors[i] > 0.0 && errors[i + 1] > 0.0)
            out.emplace_back((std::log(errors[i]) - std::log(errors[i + 1])) / (std::log(h[i]) - std::log(h[i + 1])));
        else
            out.emplace_back(std::nullopt);
    }
    return out;
}

double consistency_residual(const VectorFunction& u, const Mesh& mesh, const SparseSystem& system,
                            const SpdSolver& solver, int quad_degree)
{
    const auto iu = interpolate(mesh, system.dofs, u, quad_degree, false);
    Eigen::VectorXd r;
    spmv(system.matrix, iu.coefficients(), r);
    r = system.rhs - r;
    const Eigen::VectorXd z = solver.solve(r);
    return std::sqrt(std::max(0.0, r.dot(z)));
}

double consistency_residual(const VectorFunction& u, const Mesh& mesh, const SparseSystem& system,
                            const SolveOptions& options, int quad_degree)
{
    const SpdSolver solver(system.matrix, options);
    return consistency_residual(u, mesh, system, solver, quad_degree);
}

} // namespace lohho
