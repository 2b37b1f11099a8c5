#pragma once

#include <bit>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace bo::spectral {

// Uniform periodic grid on [0, L). Modes are indexed m = 0..n-1 with signed
// wavenumber s(m) in (-n/2, n/2]; s = n/2 is the (ambiguous) Nyquist mode.
struct Grid {
    std::size_t n = 0;
    double length = 2.0 * std::numbers::pi;

    Grid() = default;
    Grid(std::size_t n_, double length_) : n(n_), length(length_)
    {
        if (n < 16 || !std::has_single_bit(n))
            throw std::invalid_argument("grid size must be a power of two >= 16");
        if (!(length > 0.0))
            throw std::invalid_argument("grid length must be positive");
    }

    double dx() const { return length / static_cast<double>(n); }
    double x(std::size_t i) const { return static_cast<double>(i) * dx(); }

    int signed_mode(std::size_t m) const
    {
        return m <= n / 2 ? static_cast<int>(m)
                          : static_cast<int>(m) - static_cast<int>(n);
    }

    double xi(std::size_t m) const
    {
        return 2.0 * std::numbers::pi * signed_mode(m) / length;
    }

    // Highest dyadic shell index: shells j = 0..jmax, the top one absorbing
    // everything from 2^jmax up to Nyquist.
    int jmax() const
    {
        return static_cast<int>(std::countr_zero(n)) - 3;
    }

    bool operator==(const Grid&) const = default;
};

} // namespace bo::spectral
