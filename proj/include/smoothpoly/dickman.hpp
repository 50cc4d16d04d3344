// The Dickman function ρ(u) and the product prediction Π ρ(d_j u).
//
// On each unit interval [k, k+1] ρ is analytic, so it is stored by its values
// at Chebyshev-Lobatto nodes and evaluated by barycentric interpolation. The
// node values on [k, k+1] solve the collocation system
//
//     t_i ρ(t_i) - ∫_k^{t_i} ρ = ∫_{t_i - 1}^k ρ,
//
// i.e. the identity u ρ(u) = ∫_{u-1}^u ρ(t) dt, with both integrals taken by
// Gauss-Legendre quadrature of the interpolants (exact for the polynomial
// degree used). ρ = 1 on [0, 1] and ρ = 1 - log u on [1, 2].
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "smoothpoly/arith.hpp"

namespace smoothpoly {

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
template <class Scalar>
void gauss_legendre(int n, std::vector<Scalar>& x, std::vector<Scalar>& w)
{
    x.assign(n, 0);
    w.assign(n, 0);
    const Scalar pi = std::numbers::pi_v<Scalar>;
    for (int i = 0; i < n; ++i) {
        Scalar z = std::cos(pi * (i + Scalar(0.75)) / (n + Scalar(0.5)));
        Scalar dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            Scalar p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k) {
                Scalar p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            Scalar dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 4 * std::numeric_limits<Scalar>::epsilon()) break;
        }
        x[i] = z;
        w[i] = 2 / ((1 - z * z) * dp * dp);
    }
}

}  // namespace detail

/// Tabulated ρ on [0, u_max] with per-interval Chebyshev interpolants.
template <class Scalar>
class BasicRhoTable {
public:
    static constexpr int kDegree = 40;

    explicit BasicRhoTable(int u_max = 20) : u_max_(u_max)
    {
        if (u_max < 2) throw DomainError("rho table needs u_max >= 2");
        const int n = kDegree;
        const Scalar pi = std::numbers::pi_v<Scalar>;
        ref_nodes_.resize(n + 1);
        bary_.resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            // Increasing order on [0, 1].
            ref_nodes_[j] = (1 - std::cos(pi * j / n)) / 2;
            bary_[j] = (j % 2 ? -1 : 1) * ((j == 0 || j == n) ? Scalar(0.5) : Scalar(1));
        }
        detail::gauss_legendre<Scalar>(n / 2 + 2, gl_x_, gl_w_);

        pieces_.resize(u_max_);
        pieces_[0].assign(n + 1, Scalar(1));
        pieces_[1].resize(n + 1);
        for (int j = 0; j <= n; ++j) pieces_[1][j] = 1 - std::log(1 + ref_nodes_[j]);
        for (int k = 2; k < u_max_; ++k) pieces_[k] = solve_interval(k);
    }

    int u_max() const { return u_max_; }

    Scalar operator()(Scalar u) const
    {
        if (!(u >= 0)) throw DomainError("rho: u must be >= 0");
        if (u > u_max_) throw DomainError("rho: u exceeds the table range");
        if (u <= 1) return 1;
        if (u <= 2) return 1 - std::log(u);
        int k = static_cast<int>(std::floor(u));
        if (k >= u_max_) k = u_max_ - 1;
        return interpolate(pieces_[k], u - k);
    }

    /// (u, ρ(u)) on the mesh 0, step, 2 step, ... <= u_max.
    std::vector<std::pair<Scalar, Scalar>> mesh(Scalar step) const
    {
        if (!(step > 0)) throw DomainError("mesh step must be positive");
        std::vector<std::pair<Scalar, Scalar>> out;
        const auto count = static_cast<long>(std::floor(u_max_ / step + Scalar(1e-9)));
        for (long i = 0; i <= count; ++i) {
            Scalar u = std::min<Scalar>(i * step, u_max_);
            out.emplace_back(u, (*this)(u));
        }
        return out;
    }

private:
    Scalar interpolate(const std::vector<Scalar>& values, Scalar s) const
    {
        Scalar num = 0, den = 0;
        for (int j = 0; j <= kDegree; ++j) {
            const Scalar diff = s - ref_nodes_[j];
            if (diff == 0) return values[j];
            const Scalar c = bary_[j] / diff;
            num += c * values[j];
            den += c;
        }
        return num / den;
    }

    // Lagrange basis values ℓ_j(s) at a reference point s in [0, 1].
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> basis(Scalar s) const
    {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> l(kDegree + 1);
        Scalar den = 0;
        for (int j = 0; j <= kDegree; ++j) {
            const Scalar diff = s - ref_nodes_[j];
            if (diff == 0) {
                l.setZero();
                l[j] = 1;
                return l;
            }
            l[j] = bary_[j] / diff;
            den += l[j];
        }
        return l / den;
    }

    std::vector<Scalar> solve_interval(int k) const
    {
        const int n = kDegree;
        using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
        using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
        Mat a = Mat::Zero(n + 1, n + 1);
        Vec rhs(n + 1);
        const auto& prev = pieces_[k - 1];
        for (int i = 0; i <= n; ++i) {
            const Scalar s = ref_nodes_[i];
            a(i, i) += k + s;
            // ∫_k^{k+s} ρ, in terms of the unknown node values.
            Scalar prev_part = 0;
            for (std::size_t q = 0; q < gl_x_.size(); ++q) {
                const Scalar half = s / 2;
                const Scalar point = half * (gl_x_[q] + 1);
                a.row(i) -= (gl_w_[q] * half) * basis(point).transpose();
                // ∫_{k-1+s}^{k} ρ over the previous piece.
                const Scalar half_prev = (1 - s) / 2;
                const Scalar point_prev = s + half_prev * (gl_x_[q] + 1);
                prev_part += gl_w_[q] * half_prev * interpolate(prev, point_prev);
            }
            rhs[i] = prev_part;
        }
        Vec sol = a.partialPivLu().solve(rhs);
        return {sol.data(), sol.data() + sol.size()};
    }

    int u_max_;
    std::vector<Scalar> ref_nodes_, bary_, gl_x_, gl_w_;
    std::vector<std::vector<Scalar>> pieces_;
};

using RhoTable = BasicRhoTable<double>;

/// Process-wide table on [0, 20].
const RhoTable& default_rho_table();

/// ρ(u) for 0 <= u <= 20.
double rho(double u);

/// Π_j ρ(d_j u).
double martin_prediction(std::span<const unsigned> degrees, double u);

/// Independent fixed-step RK4 solution of u ρ'(u) = -ρ(u - 1) on
/// [0, u_max]; returns samples at every multiple of `step`.
class RhoRk4Reference {
public:
    explicit RhoRk4Reference(double u_max = 10, double step = 1e-5);
    /// ρ at a grid point u = i * step (nearest grid point is used).
    double at(double u) const;
    double step() const { return step_; }

private:
    double delayed(std::size_t index_times_two) const;
    double step_;
    long per_unit_;
    std::vector<double> values_;
};

/// |u ρ'(u) + ρ(u - 1)| with ρ' by central differences.
double delay_residual(const RhoTable& table, double u, double h = 1e-5);

}  // namespace smoothpoly
