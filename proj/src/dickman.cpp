#include "smoothpoly/dickman.hpp"

#include <algorithm>
#include <cmath>

namespace smoothpoly {

const RhoTable& default_rho_table()
{
    static const RhoTable table(20);
    return table;
}

double rho(double u) { return default_rho_table()(u); }

double martin_prediction(std::span<const unsigned> degrees, double u)
{
    if (!(u >= 0)) throw DomainError("martin_prediction: u must be >= 0");
    double product = 1;
    for (unsigned d : degrees) product *= rho(d * u);
    return product;
}

RhoRk4Reference::RhoRk4Reference(double u_max, double step) : step_(step)
{
    if (!(step > 0) || !(u_max >= 1)) throw DomainError("rk4 reference: need step > 0 and u_max >= 1");
    per_unit_ = std::lround(1.0 / step);
    if (std::abs(per_unit_ * step - 1.0) > 1e-12) throw DomainError("rk4 reference: 1/step must be an integer");
    const auto total = static_cast<std::size_t>(std::lround(u_max * per_unit_));
    values_.assign(total + 1, 1.0);
    const auto n1 = static_cast<std::size_t>(per_unit_);
    for (std::size_t n = n1; n < total; ++n) {
        // The right side does not involve ρ(u) itself, so each stage only
        // needs the delayed values at u_n - 1, u_n - 1 + h/2 and u_n + 1 - 1.
        const double u0 = n * step_;
        const double um = u0 + step_ / 2;
        const double u1 = (n + 1) * step_;
        const double g0 = -delayed(2 * (n - n1)) / u0;
        const double gm = -delayed(2 * (n - n1) + 1) / um;
        const double g1 = -delayed(2 * (n + 1 - n1)) / u1;
        const double k1 = g0, k2 = gm, k3 = gm, k4 = g1;
        values_[n + 1] = values_[n] + step_ / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
}

double RhoRk4Reference::delayed(std::size_t index_times_two) const
{
    const std::size_t i = index_times_two / 2;
    if (index_times_two % 2 == 0) return values_[i];
    // Midpoint between grid points i and i+1: cubic Lagrange on a stencil that
    // stays inside one unit interval, where ρ is smooth.
    const std::size_t unit = i / static_cast<std::size_t>(per_unit_);
    const std::size_t first = unit * per_unit_;
    const std::size_t last = std::min(first + per_unit_, values_.size() - 1);
    std::size_t s = i >= first + 1 ? i - 1 : first;
    if (s + 3 > last) s = last - 3;
    const double x = (static_cast<double>(i) + 0.5) - static_cast<double>(s);
    double acc = 0;
    for (int a = 0; a < 4; ++a) {
        double w = 1;
        for (int b = 0; b < 4; ++b)
            if (b != a) w *= (x - b) / (a - b);
        acc += w * values_[s + a];
    }
    return acc;
}

double RhoRk4Reference::at(double u) const
{
    const long i = std::lround(u / step_);
    if (i < 0 || static_cast<std::size_t>(i) >= values_.size()) throw DomainError("rk4 reference: u outside the solved range");
    return values_[static_cast<std::size_t>(i)];
}

double delay_residual(const RhoTable& table, double u, double h)
{
    if (!(u - h >= 1) || u + h > table.u_max()) throw DomainError("delay_residual: u out of range");
    const double derivative = (table(u + h) - table(u - h)) / (2 * h);
    return std::abs(u * derivative + table(u - 1));
}

}  // namespace smoothpoly
