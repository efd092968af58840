#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lohho/common.hpp"
#include "lohho/mesh.hpp"

namespace lohho {

/// Numbering of the reduced unknowns: one d-vector per cell (cell-major,
/// component-minor), then one per interior face in face order. Boundary
/// faces carry no unknown.
///
/// A second "full" numbering including boundary faces is used during
/// assembly before Dirichlet elimination.
class DofMap {
public:
    DofMap() = default;
    explicit DofMap(const Mesh& mesh);

    int dim() const { return dim_; }
    std::size_t num_cells() const { return num_cells_; }
    std::size_t size() const { return size_; }

    std::size_t cell_dof(std::size_t cell, int comp) const { return dim_ * cell + comp; }
    /// npos for boundary faces.
    std::size_t face_dof(std::size_t face, int comp) const
    {
        return face_slot_[face] == npos ? npos : dim_ * (num_cells_ + face_slot_[face]) + comp;
    }
    bool is_boundary(std::size_t face) const { return face_slot_[face] == npos; }

    std::size_t full_size() const { return dim_ * (num_cells_ + face_slot_.size()); }
    std::size_t full_cell_dof(std::size_t cell, int comp) const { return dim_ * cell + comp; }
    std::size_t full_face_dof(std::size_t face, int comp) const { return dim_ * (num_cells_ + face) + comp; }
    /// Maps a full index to the reduced one (npos on boundary faces).
    std::size_t reduce(std::size_t full) const { return full_to_reduced_[full]; }

private:
    int dim_ = 2;
    std::size_t num_cells_ = 0;
    std::size_t size_ = 0;
    std::vector<std::size_t> face_slot_;
    std::vector<std::size_t> full_to_reduced_;
};

/// Unknowns of one cell: v_T and (v_F) in the cell's local face order.
struct LocalDofs {
    Vec cell = Vec::Zero();
    std::vector<Vec> faces;
};

/// Element of U_h (or U_h,D): reduced coefficient vector plus, when the
/// problem carries Dirichlet data, the fixed boundary face values.
class DiscreteDisplacement {
public:
    DiscreteDisplacement(const DofMap& dofs, Eigen::VectorXd coefficients,
                         std::optional<std::vector<Vec>> boundary = std::nullopt);

    const DofMap& dofs() const { return *dofs_; }
    const Eigen::VectorXd& coefficients() const { return coeffs_; }
    Eigen::VectorXd& coefficients() { return coeffs_; }
    const std::optional<std::vector<Vec>>& boundary_values() const { return boundary_; }

    Vec cell(std::size_t c) const;
    /// Boundary faces return the stored value, or zero without lifting data.
    Vec face(std::size_t f) const;
    LocalDofs local(const Mesh& mesh, std::size_t c) const;

private:
    const DofMap* dofs_;
    Eigen::VectorXd coeffs_;
    std::optional<std::vector<Vec>> boundary_;
};

/// Per-cell affine field p(x) = value + gradient (x - centroid). With
/// `centroid` the cell centroid, `value` is the cell mean.
struct AffineField {
    Vec value = Vec::Zero();
    Tensor gradient = Tensor::Zero();
    Point centroid = Point::Zero();

    Vec operator()(const Point& x) const { return value + gradient * (x - centroid); }
};

/// Cell means and face means of v. Boundary face means are kept as lifting
/// data when `keep_boundary` is set; otherwise v is assumed to vanish there.
DiscreteDisplacement interpolate(const Mesh& mesh, const DofMap& dofs, const VectorFunction& v, int degree,
                                 bool keep_boundary = true);

/// Face mean pi^0_F v by quadrature.
Vec face_mean(const Mesh& mesh, std::size_t face, const VectorFunction& v, int degree);
/// Cell mean pi^0_T v by quadrature.
Vec cell_mean(const Mesh& mesh, std::size_t cell, const VectorFunction& v, int degree);

/// Closed-form displacement reconstruction p_T on one cell.
AffineField reconstruct(const Mesh& mesh, std::size_t cell, const LocalDofs& dofs);
std::vector<AffineField> reconstruct_all(const Mesh& mesh, const DiscreteDisplacement& u);

/// Elliptic projection: gradient = cell mean of grad v, mean = cell mean of v.
AffineField elliptic_project(const Mesh& mesh, std::size_t cell, const VectorFunction& v,
                             const TensorFunction& grad_v, int degree);

/// delta_TF = pi^0_F p_T - v_F, `local_face` indexing the cell's faces.
Vec boundary_difference(const Mesh& mesh, std::size_t cell, const LocalDofs& dofs, std::size_t local_face);

/// [[p]] on a face: p|T1 - p|T2 on interior faces; on boundary faces the
/// trace of p|T1, minus the Dirichlet data when given.
struct FaceJump {
    AffineField first;
    std::optional<AffineField> second;
    const VectorFunction* data = nullptr;

    Vec operator()(const Point& x) const;
};

FaceJump face_jump(const Mesh& mesh, std::size_t face, const AffineField& first,
                   const AffineField* second = nullptr, const VectorFunction* data = nullptr);

/// Linear maps from a cell's stacked local unknowns
/// [v_T, v_F0, v_F1, ...] (d components each) to the reconstruction.
class LocalReconstruction {
public:
    LocalReconstruction(const Mesh& mesh, std::size_t cell);

    std::size_t size() const { return static_cast<std::size_t>(dim_) * (1 + num_faces_); }
    /// Row i*d+j gives (grad p_T)_{ij}.
    const Eigen::MatrixXd& gradient() const { return gradient_; }
    /// d x size() matrix evaluating p_T at x.
    Eigen::MatrixXd value(const Point& x) const;
    /// d x size() matrix for delta_TF on local face k.
    Eigen::MatrixXd boundary_difference(std::size_t k) const;
    /// Full (boundary-inclusive) global index of local unknown `l`.
    std::size_t full_index(const DofMap& dofs, std::size_t l) const;

private:
    int dim_;
    std::size_t num_faces_;
    std::size_t cell_;
    std::vector<std::size_t> faces_;
    Point centroid_;
    std::vector<Point> face_centroids_;
    Eigen::MatrixXd gradient_;
};

} // namespace lohho
