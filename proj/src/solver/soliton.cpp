#include "soliton.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bo::solver {

namespace {
constexpr double pi = std::numbers::pi;
}

double Soliton::k() const { return 2.0 * pi / L; }
double Soliton::beta() const { return 2.0 * pi / (c * L); }
double Soliton::speed() const { return k() / std::tanh(beta()); }
double Soliton::integral() const { return -4.0 * pi; }
double Soliton::trough() const { return -2.0 * k() / std::tanh(beta() / 2.0); }

double Soliton::eval(double x, double t) const
{
    if (!(c > 0.0) || !(L > 0.0))
        throw std::invalid_argument("soliton needs c > 0, L > 0");
    const double b = beta();
    const double y = x + speed() * t - x0;
    return -(4.0 * pi / L) * std::sinh(b) / (std::cosh(b) - std::cos(k() * y));
}

Field Soliton::sample(const Grid& g, double t) const
{
    if (g.length != L)
        throw std::invalid_argument("grid length mismatch");
    return Field::sample(g, [&](double x) { return eval(x, t); });
}

} // namespace bo::solver
