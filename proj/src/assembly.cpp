#include "lohho/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "lohho/quadrature.hpp"

namespace lohho {

double MaterialParams::lambda_minus() const { return 0.5 * (std::abs(lambda) - lambda); }

double MaterialParams::alpha(int dim) const { return 2.0 * mu - dim * lambda_minus(); }

void MaterialParams::validate(int dim) const
{
    if (!(mu > 0.0))
        throw ContractViolation("mu must be positive");
    if (!(alpha(dim) > 0.0))
        throw ContractViolation("coercivity constant 2mu - d lambda^- = " + std::to_string(alpha(dim))
                                + " is not positive");
}

Tensor stress(const Tensor& tau, const MaterialParams& mat, int dim)
{
    if ((tau - tau.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, tau.cwiseAbs().maxCoeff()))
        throw ContractViolation("stress() expects a symmetric tensor");
    return 2.0 * mat.mu * tau + mat.lambda * tau.trace() * identity(dim);
}

Eigen::MatrixXd local_consistency_matrix(const Mesh& mesh, std::size_t cell, const MaterialParams& mat)
{
    const LocalReconstruction rec(mesh, cell);
    const int d = mesh.dim;
    const auto& G = rec.gradient();
    Eigen::MatrixXd symg(d * d, G.cols());
    Eigen::RowVectorXd trace = Eigen::RowVectorXd::Zero(G.cols());
    for (int i = 0; i < d; ++i) {
        trace += G.row(i * d + i);
        for (int j = 0; j < d; ++j)
            symg.row(i * d + j) = 0.5 * (G.row(i * d + j) + G.row(j * d + i));
    }
    return mesh.cells[cell].measure
           * (2.0 * mat.mu * symg.transpose() * symg + mat.lambda * trace.transpose() * trace);
}

Eigen::MatrixXd local_stabilisation_matrix(const Mesh& mesh, std::size_t cell)
{
    const LocalReconstruction rec(mesh, cell);
    const Cell& T = mesh.cells[cell];
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(rec.size(), rec.size());
    for (std::size_t k = 0; k < T.faces.size(); ++k) {
        const Face& F = mesh.faces[T.faces[k]];
        const Eigen::MatrixXd delta = rec.boundary_difference(k);
        s.noalias() += (F.measure / F.diameter) * delta.transpose() * delta;
    }
    return s;
}

double local_stabilisation(const Mesh& mesh, std::size_t cell, const LocalDofs& w, const LocalDofs& v)
{
    const Cell& T = mesh.cells[cell];
    double s = 0.0;
    for (std::size_t k = 0; k < T.faces.size(); ++k) {
        const Face& F = mesh.faces[T.faces[k]];
        s += (F.measure / F.diameter) * boundary_difference(mesh, cell, w, k).dot(boundary_difference(mesh, cell, v, k));
    }
    return s;
}

SparseMatrix sort_and_sum(const std::vector<TripletBuffer>& buffers, std::int64_t n)
{
    struct Entry {
        std::int64_t row;
        double value;
    };
    // stable bucket pass by column, then a stable sort of each column by row
    std::vector<std::size_t> start(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& b : buffers)
        for (auto c : b.cols)
            ++start[static_cast<std::size_t>(c) + 1];
    for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c)
        start[c + 1] += start[c];
    std::vector<Entry> entries(start.back());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& b : buffers)
        for (std::size_t k = 0; k < b.size(); ++k)
            entries[fill[static_cast<std::size_t>(b.cols[k])]++] = {b.rows[k], b.values[k]};
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t c = 0; c < n; ++c)
        std::stable_sort(entries.begin() + static_cast<std::ptrdiff_t>(start[c]),
                         entries.begin() + static_cast<std::ptrdiff_t>(start[c + 1]),
                         [](const Entry& a, const Entry& b) { return a.row < b.row; });

    SparseMatrix m(n, n);
    std::size_t unique = 0;
    for (std::int64_t c = 0; c < n; ++c)
        for (std::size_t k = start[c]; k < start[c + 1]; ++k)
            if (k == start[c] || entries[k].row != entries[k - 1].row)
                ++unique;
    m.reserve(static_cast<Eigen::Index>(unique));
    for (std::int64_t c = 0; c < n; ++c) {
        m.startVec(c);
        for (std::size_t k = start[c]; k < start[c + 1];) {
            const std::int64_t row = entries[k].row;
            double sum = 0.0;
            for (; k < start[c + 1] && entries[k].row == row; ++k)
                sum += entries[k].value;
            m.insertBack(row, c) = sum;
        }
    }
    m.finalize();
    return m;
}

namespace {

void scatter(TripletBuffer& buf, const Eigen::MatrixXd& local, const std::vector<std::size_t>& index)
{
    for (Eigen::Index j = 0; j < local.cols(); ++j)
        for (Eigen::Index i = 0; i < local.rows(); ++i)
            buf.add(static_cast<std::int64_t>(index[i]), static_cast<std::int64_t>(index[j]), local(i, j));
}

struct JumpLocal {
    Eigen::MatrixXd matrix;
    std::vector<std::size_t> index;
};

// 2mu/h_F * int_F J^T J with J the jump of the reconstructions of the
// incident cells, over the union of their unknowns.
JumpLocal jump_local(const Mesh& mesh, const DofMap& dofs, const std::vector<LocalReconstruction>& recs,
                     std::size_t face, double two_mu)
{
    const Face& F = mesh.faces[face];
    const auto rule = face_quadrature(mesh, face, 2);
    JumpLocal out;
    std::size_t n = 0;
    for (auto c : F.cells)
        n += recs[c].size();
    Eigen::MatrixXd J(mesh.dim, static_cast<Eigen::Index>(n));
    out.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& q : rule) {
        Eigen::Index offset = 0;
        for (std::size_t s = 0; s < F.cells.size(); ++s) {
            const auto& rec = recs[F.cells[s]];
            J.middleCols(offset, static_cast<Eigen::Index>(rec.size())) = (s == 0 ? 1.0 : -1.0) * rec.value(q.x);
            offset += static_cast<Eigen::Index>(rec.size());
        }
        out.matrix.noalias() += q.w * J.transpose() * J;
    }
    out.matrix *= two_mu / F.diameter;
    for (auto c : F.cells)
        for (std::size_t l = 0; l < recs[c].size(); ++l)
            out.index.push_back(recs[c].full_index(dofs, l));
    return out;
}

} // namespace

FullOperator assemble_operator(const Mesh& mesh, const MaterialParams& mat, const AssemblyOptions& opts)
{
    mat.validate(mesh.dim);
    FullOperator op{DofMap(mesh), {}};
    const DofMap& dofs = op.dofs;
    const double two_mu = 2.0 * mat.mu;
    const auto nc = static_cast<std::ptrdiff_t>(mesh.num_cells());
    const auto nf = static_cast<std::ptrdiff_t>(mesh.num_faces());

    std::vector<LocalReconstruction> recs;
    recs.reserve(mesh.num_cells());
    for (std::size_t c = 0; c < mesh.num_cells(); ++c)
        recs.emplace_back(mesh, c);

    auto cell_kernel = [&](std::size_t c, TripletBuffer& buf) {
        const Eigen::MatrixXd local = local_consistency_matrix(mesh, c, mat) + two_mu * local_stabilisation_matrix(mesh, c);
        std::vector<std::size_t> index(recs[c].size());
        for (std::size_t l = 0; l < index.size(); ++l)
            index[l] = recs[c].full_index(dofs, l);
        scatter(buf, local, index);
    };
    auto face_kernel = [&](std::size_t f, TripletBuffer& buf) {
        const auto j = jump_local(mesh, dofs, recs, f, two_mu);
        scatter(buf, j.matrix, j.index);
    };

    const auto n = static_cast<std::int64_t>(dofs.full_size());
    if (opts.execution == Execution::parallel) {
        // one buffer per element/face; the canonical reduction is independent
        // of how iterations were distributed
        std::vector<TripletBuffer> buffers(static_cast<std::size_t>(nc + nf));
#pragma omp parallel
        {
#pragma omp for schedule(dynamic, 64) nowait
            for (std::ptrdiff_t c = 0; c < nc; ++c)
                cell_kernel(static_cast<std::size_t>(c), buffers[c]);
#pragma omp for schedule(dynamic, 64)
            for (std::ptrdiff_t f = 0; f < nf; ++f)
                face_kernel(static_cast<std::size_t>(f), buffers[nc + f]);
        }
        op.matrix = sort_and_sum(buffers, n);
    } else {
        TripletBuffer all;
        for (std::ptrdiff_t c = 0; c < nc; ++c)
            cell_kernel(static_cast<std::size_t>(c), all);
        for (std::ptrdiff_t f = 0; f < nf; ++f)
            face_kernel(static_cast<std::size_t>(f), all);
        std::vector<Eigen::Triplet<double, std::int64_t>> trips;
        trips.reserve(all.size());
        for (std::size_t k = 0; k < all.size(); ++k)
            trips.emplace_back(all.rows[k], all.cols[k], all.values[k]);
        op.matrix.resize(n, n);
        op.matrix.setFromTriplets(trips.begin(), trips.end());
    }
    return op;
}

std::vector<Vec> assemble_load(const Mesh& mesh, const VectorFunction& force, int quad_degree, Execution execution)
{
    std::vector<Vec> load(mesh.num_cells(), Vec::Zero());
    const auto nc = static_cast<std::ptrdiff_t>(mesh.num_cells());
#pragma omp parallel for schedule(static) if (execution == Execution::parallel)
    for (std::ptrdiff_t c = 0; c < nc; ++c)
        load[c] = integrate(cell_quadrature(mesh, c, quad_degree), force);
    return load;
}

SparseSystem apply_dirichlet(const Mesh& mesh, const FullOperator& op, std::vector<Vec> cell_load,
                             const std::optional<VectorFunction>& dirichlet, const MaterialParams& mat,
                             int quad_degree)
{
    const DofMap& dofs = op.dofs;
    const int d = mesh.dim;
    SparseSystem sys;
    sys.dofs = dofs;
    sys.cell_load = std::move(cell_load);
    const auto n = static_cast<Eigen::Index>(dofs.size());

    Eigen::VectorXd full_bc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.full_size()));
    if (dirichlet) {
        sys.boundary_values.assign(mesh.num_faces(), Vec::Zero());
        for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
            if (!dofs.is_boundary(f))
                continue;
            sys.boundary_values[f] = face_mean(mesh, f, *dirichlet, quad_degree);
            for (int i = 0; i < d; ++i)
                full_bc[static_cast<Eigen::Index>(dofs.full_face_dof(f, i))] = sys.boundary_values[f][i];
        }
    }

    sys.lifting = Eigen::VectorXd::Zero(n);
    sys.matrix.resize(n, n);
    sys.matrix.reserve(op.matrix.nonZeros());
    for (Eigen::Index col = 0; col < op.matrix.outerSize(); ++col) {
        const std::size_t rc = dofs.reduce(static_cast<std::size_t>(col));
        if (rc != npos)
            sys.matrix.startVec(static_cast<Eigen::Index>(rc));
        for (SparseMatrix::InnerIterator it(op.matrix, col); it; ++it) {
            const std::size_t rr = dofs.reduce(static_cast<std::size_t>(it.row()));
            if (rr == npos)
                continue;
            if (rc != npos)
                sys.matrix.insertBack(static_cast<Eigen::Index>(rr), static_cast<Eigen::Index>(rc)) = it.value();
            else if (dirichlet)
                sys.lifting[static_cast<Eigen::Index>(rr)] -= it.value() * full_bc[col];
        }
    }
    sys.matrix.finalize();

    if (dirichlet) {
        const double two_mu = 2.0 * mat.mu;
        for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
            if (!dofs.is_boundary(f))
                continue;
            const Face& F = mesh.faces[f];
            const std::size_t c = F.cells[0];
            const LocalReconstruction rec(mesh, c);
            Eigen::VectorXd local = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rec.size()));
            for (const auto& q : face_quadrature(mesh, f, quad_degree))
                local += q.w * rec.value(q.x).transpose() * (*dirichlet)(q.x).head(d);
            local *= two_mu / F.diameter;
            for (std::size_t l = 0; l < rec.size(); ++l) {
                const std::size_t r = dofs.reduce(rec.full_index(dofs, l));
                if (r != npos)
                    sys.lifting[static_cast<Eigen::Index>(r)] += local[static_cast<Eigen::Index>(l)];
            }
        }
    }

    sys.rhs = sys.lifting;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c)
        for (int i = 0; i < d; ++i)
            sys.rhs[static_cast<Eigen::Index>(dofs.cell_dof(c, i))] += sys.cell_load[c][i];
    return sys;
}

SparseSystem assemble(const Mesh& mesh, const MaterialParams& mat, const LoadData& data, const AssemblyOptions& opts)
{
    const FullOperator op = assemble_operator(mesh, mat, opts);
    auto load = assemble_load(mesh, data.force, opts.quad_degree, opts.execution);
    return apply_dirichlet(mesh, op, std::move(load), data.dirichlet, mat, opts.quad_degree);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m)
{
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    char buf[32];
    for (Eigen::Index j = 0; j < m.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
            std::snprintf(buf, sizeof buf, "%.17g", it.value());
            out << it.row() + 1 << ' ' << j + 1 << ' ' << buf << '\n';
        }
}

} // namespace lohho
