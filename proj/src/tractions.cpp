#include "lohho/tractions.hpp"

#include <cstdio>
#include <ostream>

#include "lohho/quadrature.hpp"

namespace lohho {

namespace {

struct FaceMoments {
    Vec integral = Vec::Zero();
    /// int_F J(x) (x_T - x)^T for each incident cell
    std::vector<Tensor> moments;
};

} // namespace

TractionField numerical_tractions(const Mesh& mesh, const DiscreteDisplacement& uh, const MaterialParams& mat,
                                  const VectorFunction* data, int quad_degree)
{
    const auto p = reconstruct_all(mesh, uh);
    const auto nf = static_cast<std::ptrdiff_t>(mesh.num_faces());
    const auto nc = static_cast<std::ptrdiff_t>(mesh.num_cells());
    const int d = mesh.dim;

    std::vector<FaceMoments> moments(mesh.num_faces());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t f = 0; f < nf; ++f) {
        const Face& F = mesh.faces[f];
        const FaceJump j = F.is_boundary() ? face_jump(mesh, f, p[F.cells[0]], nullptr, data)
                                           : face_jump(mesh, f, p[F.cells[0]], &p[F.cells[1]]);
        FaceMoments& m = moments[f];
        m.moments.assign(F.cells.size(), Tensor::Zero());
        const bool affine = !(F.is_boundary() && data);
        if (affine)
            m.integral = F.measure * j(F.centroid);
        for (const auto& q : face_quadrature(mesh, f, affine ? 2 : quad_degree)) {
            const Vec jq = j(q.x);
            if (!affine)
                m.integral += q.w * jq;
            for (std::size_t s = 0; s < F.cells.size(); ++s)
                m.moments[s] += q.w * jq * (mesh.cells[F.cells[s]].centroid - q.x).transpose();
        }
    }

    TractionField phi;
    phi.cells.resize(mesh.num_cells());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < nc; ++c) {
        const Cell& T = mesh.cells[c];
        const std::size_t nF = T.faces.size();
        const Tensor stress_t = stress(sym(p[c].gradient), mat, d);
        std::vector<Vec> delta(nF);
        Tensor moment_sum = Tensor::Zero();
        Tensor stab_sum = Tensor::Zero();
        for (std::size_t k = 0; k < nF; ++k) {
            const std::size_t g = T.faces[k];
            const Face& G = mesh.faces[g];
            delta[k] = p[c](G.centroid) - uh.face(g);
            const std::size_t slot = G.cells[0] == static_cast<std::size_t>(c) ? 0 : 1;
            moment_sum += T.orientation[k] / (G.diameter * T.measure) * moments[g].moments[slot];
            stab_sum += G.measure / (G.diameter * T.measure) * delta[k] * (T.centroid - G.centroid).transpose();
        }
        auto& out = phi.cells[c];
        out.resize(nF);
        for (std::size_t k = 0; k < nF; ++k) {
            const Face& F = mesh.faces[T.faces[k]];
            const Vec& n = T.normals[k];
            Traction& t = out[k];
            t.consistency = -stress_t * n;
            t.jump = 2.0 * mat.mu
                     * (T.orientation[k] / (F.diameter * F.measure) * moments[T.faces[k]].integral + moment_sum * n);
            t.stab = 2.0 * mat.mu * (delta[k] / F.diameter + stab_sum * n);
            t.total = t.consistency + t.jump + t.stab;
        }
    }
    return phi;
}

double traction_action(const Mesh& mesh, const TractionField& phi, const DiscreteDisplacement& v)
{
    double sum = 0.0;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Cell& T = mesh.cells[c];
        const Vec vt = v.cell(c);
        for (std::size_t k = 0; k < T.faces.size(); ++k)
            sum += mesh.faces[T.faces[k]].measure * phi.at(c, k).total.dot(vt - v.face(T.faces[k]));
    }
    return sum;
}

BalanceReport check_local_balance(const Mesh& mesh, const TractionField& phi, const std::vector<Vec>& cell_load,
                                  double reference_norm, double tolerance)
{
    if (cell_load.size() != mesh.num_cells())
        throw ContractViolation("one cell load per cell expected");
    BalanceReport r;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Cell& T = mesh.cells[c];
        Vec sum = Vec::Zero();
        for (std::size_t k = 0; k < T.faces.size(); ++k)
            sum += mesh.faces[T.faces[k]].measure * phi.at(c, k).total;
        const double res = (sum - cell_load[c]).norm();
        if (res > r.max_residual || r.worst_cell == npos) {
            r.max_residual = res;
            r.worst_cell = c;
        }
    }
    r.relative = reference_norm > 0.0 ? r.max_residual / reference_norm : r.max_residual;
    r.ok = r.relative <= tolerance;
    return r;
}

EquilibriumReport check_equilibrium(const Mesh& mesh, const TractionField& phi, double tolerance)
{
    EquilibriumReport r;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c)
        for (const auto& t : phi.cells[c])
            r.max_traction = std::max(r.max_traction, t.total.norm());
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const Face& F = mesh.faces[f];
        if (F.is_boundary())
            continue;
        const auto a = F.cells[0], b = F.cells[1];
        const double res = (phi.at(a, mesh.cells[a].local_index(f)).total + phi.at(b, mesh.cells[b].local_index(f)).total).norm();
        if (res > r.max_residual || r.worst_face == npos) {
            r.max_residual = res;
            r.worst_face = f;
        }
    }
    r.relative = r.max_traction > 0.0 ? r.max_residual / r.max_traction : r.max_residual;
    r.ok = r.relative <= tolerance;
    return r;
}

void write_tractions_csv(std::ostream& out, const Mesh& mesh, const TractionField& phi)
{
    const int d = mesh.dim;
    const char* axes = "xyz";
    out << "cell_id,face_id";
    for (const char* part : {"phi", "consistency", "jump", "stab"})
        for (int i = 0; i < d; ++i)
            out << ',' << part << '_' << axes[i];
    out << '\n';
    char buf[32];
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Cell& T = mesh.cells[c];
        for (std::size_t k = 0; k < T.faces.size(); ++k) {
            const Traction& t = phi.at(c, k);
            out << c << ',' << T.faces[k];
            for (const Vec* v : {&t.total, &t.consistency, &t.jump, &t.stab})
                for (int i = 0; i < d; ++i) {
                    std::snprintf(buf, sizeof buf, "%.16e", (*v)[i]);
                    out << ',' << buf;
                }
            out << '\n';
        }
    }
}

} // namespace lohho
