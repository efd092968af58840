#include "lohho/cases.hpp"

#include <cmath>
#include <numbers>

namespace lohho {

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

TestCase case_2d_quasi_incompressible(double lambda)
{
    TestCase tc;
    tc.id = "brenner2d";
    tc.dim = 2;
    tc.material = {1.0, lambda};
    const double mu = 1.0;
    const double c = 1.0 / (1.0 + lambda);
    tc.u = [c](const Point& x) {
        const double s = std::sin(pi * x[0]) * std::sin(pi * x[1]);
        return Vec((std::cos(2 * pi * x[0]) - 1.0) * std::sin(2 * pi * x[1]) + c * s,
                   (1.0 - std::cos(2 * pi * x[1])) * std::sin(2 * pi * x[0]) + c * s, 0.0);
    };
    tc.grad_u = [c](const Point& x) {
        const double sx = std::sin(pi * x[0]), cx = std::cos(pi * x[0]);
        const double sy = std::sin(pi * x[1]), cy = std::cos(pi * x[1]);
        Tensor g = Tensor::Zero();
        g(0, 0) = -2 * pi * std::sin(2 * pi * x[0]) * std::sin(2 * pi * x[1]) + c * pi * cx * sy;
        g(0, 1) = 2 * pi * (std::cos(2 * pi * x[0]) - 1.0) * std::cos(2 * pi * x[1]) + c * pi * sx * cy;
        g(1, 0) = 2 * pi * (1.0 - std::cos(2 * pi * x[1])) * std::cos(2 * pi * x[0]) + c * pi * cx * sy;
        g(1, 1) = 2 * pi * std::sin(2 * pi * x[1]) * std::sin(2 * pi * x[0]) + c * pi * sx * cy;
        return g;
    };
    tc.f = [c, mu, lambda](const Point& x) {
        const double s = std::sin(pi * x[0]) * std::sin(pi * x[1]);
        const double grad_div = (lambda + mu) * c * std::cos(pi * (x[0] + x[1]));
        const double f1 = -mu * (4 * std::sin(2 * pi * x[1]) * (1 - 2 * std::cos(2 * pi * x[0])) - 2 * c * s) - grad_div;
        const double f2 = -mu * (4 * std::sin(2 * pi * x[0]) * (2 * std::cos(2 * pi * x[1]) - 1) - 2 * c * s) - grad_div;
        return Vec(pi * pi * f1, pi * pi * f2, 0.0);
    };
    return tc;
}

TestCase case_2d_singular()
{
    TestCase tc;
    tc.id = "singular2d";
    tc.dim = 2;
    tc.domain = MeshDomain::notched_square;
    tc.material = {0.65, 0.975};
    tc.regularity = Regularity::singular;

    constexpr double G = 5.0 / 13.0, kappa = 9.0 / 5.0;
    constexpr double L = 0.5444837367825, Q = 0.5430755788367;
    // u = r^L a(theta); theta from atan2 has its cut on the negative x axis,
    // which lies in the removed wedge
    auto angular = [](double t) {
        return Vec(((kappa - Q * (L + 1)) * std::cos(L * t) - L * std::cos((L - 2) * t)) / (2 * G),
                   ((kappa + Q * (L + 1)) * std::sin(L * t) + L * std::sin((L - 2) * t)) / (2 * G), 0.0);
    };
    auto angular_dt = [](double t) {
        return Vec((-L * (kappa - Q * (L + 1)) * std::sin(L * t) + L * (L - 2) * std::sin((L - 2) * t)) / (2 * G),
                   (L * (kappa + Q * (L + 1)) * std::cos(L * t) + L * (L - 2) * std::cos((L - 2) * t)) / (2 * G),
                   0.0);
    };
    tc.u = [angular](const Point& x) {
        const double r = std::hypot(x[0], x[1]);
        if (r == 0.0)
            return Vec(Vec::Zero());
        return Vec(std::pow(r, L) * angular(std::atan2(x[1], x[0])));
    };
    tc.grad_u = [angular, angular_dt](const Point& x) {
        const double r = std::hypot(x[0], x[1]);
        Tensor g = Tensor::Zero();
        if (r == 0.0)
            return g;
        const double t = std::atan2(x[1], x[0]);
        const Vec du_dr = L * std::pow(r, L - 1) * angular(t);
        const Vec du_dt = std::pow(r, L) * angular_dt(t);
        g.col(0) = std::cos(t) * du_dr - std::sin(t) / r * du_dt;
        g.col(1) = std::sin(t) * du_dr + std::cos(t) / r * du_dt;
        g.row(2).setZero();
        return g;
    };
    tc.f = [](const Point&) { return Vec(Vec::Zero()); };
    tc.g = tc.u;
    return tc;
}

TestCase case_3d(double mu, double lambda)
{
    TestCase tc;
    tc.id = "cube3d";
    tc.dim = 3;
    tc.material = {mu, lambda};
    tc.u = [](const Point& x) {
        const double s = std::sin(pi * x[0]) * std::sin(pi * x[1]) * std::sin(pi * x[2]);
        return Vec(s, s, s);
    };
    tc.grad_u = [](const Point& x) {
        const Vec s(std::sin(pi * x[0]), std::sin(pi * x[1]), std::sin(pi * x[2]));
        const Vec c(std::cos(pi * x[0]), std::cos(pi * x[1]), std::cos(pi * x[2]));
        const Vec row(pi * c[0] * s[1] * s[2], pi * s[0] * c[1] * s[2], pi * s[0] * s[1] * c[2]);
        Tensor g;
        for (int i = 0; i < 3; ++i)
            g.row(i) = row.transpose();
        return g;
    };
    tc.f = [mu, lambda](const Point& x) {
        const double s1 = std::sin(pi * x[0]), s2 = std::sin(pi * x[1]), s3 = std::sin(pi * x[2]);
        const double c1 = std::cos(pi * x[0]), c2 = std::cos(pi * x[1]), c3 = std::cos(pi * x[2]);
        const double s = s1 * s2 * s3;
        const Vec cross(c1 * std::sin(pi * (x[1] + x[2])), c2 * std::sin(pi * (x[2] + x[0])),
                        c3 * std::sin(pi * (x[0] + x[1])));
        Vec f;
        for (int i = 0; i < 3; ++i)
            f[i] = pi * pi * (mu * (4 * s - cross[i]) + lambda * (s - cross[i]));
        return f;
    };
    return tc;
}

TestCase make_case(const std::string& id, std::optional<double> mu, std::optional<double> lambda)
{
    if (id == "brenner2d") {
        if (mu && *mu != 1.0)
            throw ConfigError("case brenner2d has mu = 1 built into its forcing term");
        return case_2d_quasi_incompressible(lambda.value_or(1.0));
    }
    if (id == "singular2d") {
        if (mu || lambda)
            throw ConfigError("case singular2d has fixed material parameters");
        return case_2d_singular();
    }
    if (id == "cube3d")
        return case_3d(mu.value_or(1.0), lambda.value_or(1.0));
    throw ConfigError("unknown case '" + id + "'");
}

std::vector<std::string> case_ids() { return {"brenner2d", "singular2d", "cube3d"}; }

} // namespace lohho
