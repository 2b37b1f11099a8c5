#pragma once

#include "fft.hpp"
#include "grid.hpp"

#include <functional>
#include <vector>

namespace bo::spectral {

// Spectral convention used throughout:
//   u_hat(m) = dx * sum_i u(x_i) e^{-i xi_m x_i}
//   u(x_i)   = (1/L) * sum_m u_hat(m) e^{+i xi_m x_i}
// so Parseval reads  integral |u|^2 dx = (1/L) sum_m |u_hat|^2.
//
// Both field types cache physical values and spectrum lazily and keep them
// coherent: reading either representation synthesizes it on demand, taking a
// mutable reference invalidates the other one.

class CField {
public:
    CField() = default;
    explicit CField(const Grid& g);
    static CField of_values(const Grid& g, std::vector<cplx> v);
    static CField of_spectrum(const Grid& g, std::vector<cplx> h);
    static CField sample(const Grid& g, const std::function<cplx(double)>& f);

    const Grid& grid() const { return g_; }
    std::size_t n() const { return g_.n; }

    const std::vector<cplx>& values() const;
    const std::vector<cplx>& spectrum() const;
    std::vector<cplx>& values_mut();
    std::vector<cplx>& spectrum_mut();

    double l2() const;    // sqrt(integral |u|^2 dx)
    double linf() const;  // max_i |u(x_i)|
    cplx mean() const;    // (1/L) integral u dx

    CField& operator+=(const CField& o);
    CField& operator-=(const CField& o);
    CField& operator*=(double a);

private:
    Grid g_;
    mutable std::vector<cplx> val_, hat_;
    mutable bool val_ok_ = false, hat_ok_ = false;
    void ensure_val() const;
    void ensure_hat() const;
};

class Field {
public:
    Field() = default;
    explicit Field(const Grid& g);
    static Field of_values(const Grid& g, std::vector<double> v);
    static Field of_spectrum(const Grid& g, std::vector<cplx> h);
    static Field sample(const Grid& g, const std::function<double(double)>& f);

    const Grid& grid() const { return g_; }
    std::size_t n() const { return g_.n; }

    const std::vector<double>& values() const;
    const std::vector<cplx>& spectrum() const;
    std::vector<double>& values_mut();
    std::vector<cplx>& spectrum_mut();

    double l2() const;
    double linf() const;
    double mean() const;
    double integral() const;  // integral u dx

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double a);

private:
    Grid g_;
    mutable std::vector<double> val_;
    mutable std::vector<cplx> hat_;
    mutable bool val_ok_ = false, hat_ok_ = false;
    void ensure_val() const;
    void ensure_hat() const;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);
CField operator+(CField a, const CField& b);
CField operator-(CField a, const CField& b);
CField operator*(cplx a, CField f);

CField complexify(const Field& f);
Field real_part(const CField& f);
Field imag_part(const CField& f);
CField conj(const CField& f);

} // namespace bo::spectral
