#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lohho {

// Points, vectors and tensors are stored in three components; in 2D the
// third component is identically zero.
using Point = Eigen::Vector3d;
using Vec = Eigen::Vector3d;
using Tensor = Eigen::Matrix3d;

using VectorFunction = std::function<Vec(const Point&)>;
using TensorFunction = std::function<Tensor(const Point&)>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class GeometryError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ContractViolation : public std::logic_error {
    using std::logic_error::logic_error;
};

class SolverError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Identity restricted to the first `dim` components.
inline Tensor identity(int dim)
{
    Tensor id = Tensor::Zero();
    for (int i = 0; i < dim; ++i)
        id(i, i) = 1.0;
    return id;
}

inline Tensor sym(const Tensor& t) { return 0.5 * (t + t.transpose()); }

} // namespace lohho
