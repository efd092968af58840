#include "lohho/fespace.hpp"

#include "lohho/quadrature.hpp"

namespace lohho {

DofMap::DofMap(const Mesh& mesh)
    : dim_(mesh.dim), num_cells_(mesh.num_cells()), face_slot_(mesh.num_faces(), npos)
{
    std::size_t slot = 0;
    for (std::size_t f = 0; f < mesh.num_faces(); ++f)
        if (!mesh.faces[f].is_boundary())
            face_slot_[f] = slot++;
    size_ = dim_ * (num_cells_ + slot);

    full_to_reduced_.assign(full_size(), npos);
    for (std::size_t c = 0; c < num_cells_; ++c)
        for (int i = 0; i < dim_; ++i)
            full_to_reduced_[full_cell_dof(c, i)] = cell_dof(c, i);
    for (std::size_t f = 0; f < face_slot_.size(); ++f)
        for (int i = 0; i < dim_; ++i)
            full_to_reduced_[full_face_dof(f, i)] = face_dof(f, i);
}

DiscreteDisplacement::DiscreteDisplacement(const DofMap& dofs, Eigen::VectorXd coefficients,
                                           std::optional<std::vector<Vec>> boundary)
    : dofs_(&dofs), coeffs_(std::move(coefficients)), boundary_(std::move(boundary))
{
    if (static_cast<std::size_t>(coeffs_.size()) != dofs.size())
        throw ContractViolation("coefficient vector length does not match the dof map");
}

Vec DiscreteDisplacement::cell(std::size_t c) const
{
    Vec v = Vec::Zero();
    for (int i = 0; i < dofs_->dim(); ++i)
        v[i] = coeffs_[dofs_->cell_dof(c, i)];
    return v;
}

Vec DiscreteDisplacement::face(std::size_t f) const
{
    if (dofs_->is_boundary(f))
        return boundary_ ? (*boundary_)[f] : Vec::Zero();
    Vec v = Vec::Zero();
    for (int i = 0; i < dofs_->dim(); ++i)
        v[i] = coeffs_[dofs_->face_dof(f, i)];
    return v;
}

LocalDofs DiscreteDisplacement::local(const Mesh& mesh, std::size_t c) const
{
    LocalDofs l;
    l.cell = cell(c);
    for (auto f : mesh.cells[c].faces)
        l.faces.push_back(face(f));
    return l;
}

Vec face_mean(const Mesh& mesh, std::size_t face, const VectorFunction& v, int degree)
{
    return integrate(face_quadrature(mesh, face, degree), v) / mesh.faces[face].measure;
}

Vec cell_mean(const Mesh& mesh, std::size_t cell, const VectorFunction& v, int degree)
{
    return integrate(cell_quadrature(mesh, cell, degree), v) / mesh.cells[cell].measure;
}

DiscreteDisplacement interpolate(const Mesh& mesh, const DofMap& dofs, const VectorFunction& v, int degree,
                                 bool keep_boundary)
{
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.size()));
    const int d = mesh.dim;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(mesh.num_cells()); ++c) {
        const Vec m = cell_mean(mesh, c, v, degree);
        for (int i = 0; i < d; ++i)
            coeffs[dofs.cell_dof(c, i)] = m[i];
    }
    std::vector<Vec> boundary(mesh.num_faces(), Vec::Zero());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(mesh.num_faces()); ++f) {
        if (dofs.is_boundary(f)) {
            if (keep_boundary)
                boundary[f] = face_mean(mesh, f, v, degree);
            continue;
        }
        const Vec m = face_mean(mesh, f, v, degree);
        for (int i = 0; i < d; ++i)
            coeffs[dofs.face_dof(f, i)] = m[i];
    }
    if (!keep_boundary)
        return DiscreteDisplacement(dofs, std::move(coeffs));
    return DiscreteDisplacement(dofs, std::move(coeffs), std::move(boundary));
}

AffineField reconstruct(const Mesh& mesh, std::size_t cell, const LocalDofs& dofs)
{
    const Cell& T = mesh.cells[cell];
    if (dofs.faces.size() != T.faces.size())
        throw ContractViolation("reconstruction needs one face value per face of cell " + std::to_string(cell));
    AffineField p;
    p.value = dofs.cell;
    p.centroid = T.centroid;
    for (std::size_t k = 0; k < T.faces.size(); ++k)
        p.gradient += (mesh.faces[T.faces[k]].measure / T.measure) * (dofs.faces[k] - dofs.cell) * T.normals[k].transpose();
    return p;
}

std::vector<AffineField> reconstruct_all(const Mesh& mesh, const DiscreteDisplacement& u)
{
    std::vector<AffineField> out(mesh.num_cells());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(mesh.num_cells()); ++c)
        out[c] = reconstruct(mesh, c, u.local(mesh, c));
    return out;
}

AffineField elliptic_project(const Mesh& mesh, std::size_t cell, const VectorFunction& v,
                             const TensorFunction& grad_v, int degree)
{
    const auto rule = cell_quadrature(mesh, cell, degree);
    const Cell& T = mesh.cells[cell];
    AffineField p;
    p.centroid = T.centroid;
    p.value = integrate(rule, v) / T.measure;
    p.gradient = integrate(rule, grad_v) / T.measure;
    return p;
}

Vec boundary_difference(const Mesh& mesh, std::size_t cell, const LocalDofs& dofs, std::size_t local_face)
{
    const AffineField p = reconstruct(mesh, cell, dofs);
    return p(mesh.faces[mesh.cells[cell].faces.at(local_face)].centroid) - dofs.faces[local_face];
}

Vec FaceJump::operator()(const Point& x) const
{
    Vec j = first(x);
    if (second)
        j -= (*second)(x);
    else if (data)
        j -= (*data)(x);
    return j;
}

FaceJump face_jump(const Mesh& mesh, std::size_t face, const AffineField& first, const AffineField* second,
                   const VectorFunction* data)
{
    const bool boundary = mesh.faces[face].is_boundary();
    if (boundary == (second != nullptr))
        throw ContractViolation("face " + std::to_string(face) + ": jump needs "
                                + (boundary ? "one field on a boundary face" : "two fields on an interior face"));
    FaceJump j;
    j.first = first;
    if (second)
        j.second = *second;
    else
        j.data = data;
    return j;
}

LocalReconstruction::LocalReconstruction(const Mesh& mesh, std::size_t cell)
    : dim_(mesh.dim), num_faces_(mesh.cells[cell].faces.size()), cell_(cell), faces_(mesh.cells[cell].faces),
      centroid_(mesh.cells[cell].centroid)
{
    const Cell& T = mesh.cells[cell];
    const int d = dim_;
    gradient_ = Eigen::MatrixXd::Zero(d * d, static_cast<Eigen::Index>(size()));
    for (std::size_t k = 0; k < num_faces_; ++k) {
        const double ratio = mesh.faces[faces_[k]].measure / T.measure;
        face_centroids_.push_back(mesh.faces[faces_[k]].centroid);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const double c = ratio * T.normals[k][j];
                gradient_(i * d + j, static_cast<Eigen::Index>(d * (1 + k) + i)) += c;
                gradient_(i * d + j, i) -= c;
            }
    }
}

Eigen::MatrixXd LocalReconstruction::value(const Point& x) const
{
    const int d = dim_;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(size()));
    const Vec dx = x - centroid_;
    for (int i = 0; i < d; ++i) {
        m(i, i) = 1.0;
        for (int j = 0; j < d; ++j)
            m.row(i) += dx[j] * gradient_.row(i * d + j);
    }
    return m;
}

Eigen::MatrixXd LocalReconstruction::boundary_difference(std::size_t k) const
{
    Eigen::MatrixXd m = value(face_centroids_[k]);
    for (int i = 0; i < dim_; ++i)
        m(i, static_cast<Eigen::Index>(dim_ * (1 + k) + i)) -= 1.0;
    return m;
}

std::size_t LocalReconstruction::full_index(const DofMap& dofs, std::size_t l) const
{
    const std::size_t block = l / dim_;
    const int comp = static_cast<int>(l % dim_);
    return block == 0 ? dofs.full_cell_dof(cell_, comp) : dofs.full_face_dof(faces_[block - 1], comp);
}

} // namespace lohho
