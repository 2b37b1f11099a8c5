#include "field.hpp"

#include "kernels/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace bo::spectral {

namespace {
const auto& K = bo::kernels::ops();

void scale_inplace(std::vector<cplx>& v, double a)
{
    for (auto& z : v)
        z *= a;
}
} // namespace

// ---------------------------------------------------------------- CField

CField::CField(const Grid& g) : g_(g), val_(g.n, cplx(0)), hat_(g.n, cplx(0))
{
    val_ok_ = hat_ok_ = true;
}

CField CField::of_values(const Grid& g, std::vector<cplx> v)
{
    if (v.size() != g.n)
        throw std::invalid_argument("value array size mismatch");
    CField f(g);
    f.val_ = std::move(v);
    f.val_ok_ = true;
    f.hat_ok_ = false;
    return f;
}

CField CField::of_spectrum(const Grid& g, std::vector<cplx> h)
{
    if (h.size() != g.n)
        throw std::invalid_argument("spectrum array size mismatch");
    CField f(g);
    f.hat_ = std::move(h);
    f.hat_ok_ = true;
    f.val_ok_ = false;
    return f;
}

CField CField::sample(const Grid& g, const std::function<cplx(double)>& f)
{
    std::vector<cplx> v(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        v[i] = f(g.x(i));
    return of_values(g, std::move(v));
}

void CField::ensure_hat() const
{
    if (hat_ok_)
        return;
    hat_.resize(g_.n);
    Fft::get(g_.n).forward(val_.data(), hat_.data());
    scale_inplace(hat_, g_.dx());
    hat_ok_ = true;
}

void CField::ensure_val() const
{
    if (val_ok_)
        return;
    val_.resize(g_.n);
    Fft::get(g_.n).backward(hat_.data(), val_.data());
    scale_inplace(val_, 1.0 / g_.length);
    val_ok_ = true;
}

const std::vector<cplx>& CField::values() const { ensure_val(); return val_; }
const std::vector<cplx>& CField::spectrum() const { ensure_hat(); return hat_; }

std::vector<cplx>& CField::values_mut()
{
    ensure_val();
    hat_ok_ = false;
    return val_;
}

std::vector<cplx>& CField::spectrum_mut()
{
    ensure_hat();
    val_ok_ = false;
    return hat_;
}

double CField::l2() const
{
    if (hat_ok_)
        return std::sqrt(K.sumsq_cplx(hat_.data(), g_.n) / g_.length);
    return std::sqrt(K.sumsq_cplx(values().data(), g_.n) * g_.dx());
}

double CField::linf() const { return K.max_abs_cplx(values().data(), g_.n); }

cplx CField::mean() const { return spectrum()[0] / g_.length; }

CField& CField::operator+=(const CField& o)
{
    if (!(g_ == o.g_))
        throw std::invalid_argument("grid mismatch");
    if (hat_ok_ && o.hat_ok_ && !val_ok_) {
        auto& h = spectrum_mut();
        for (std::size_t i = 0; i < g_.n; ++i)
            h[i] += o.hat_[i];
    } else {
        auto& v = values_mut();
        const auto& w = o.values();
        for (std::size_t i = 0; i < g_.n; ++i)
            v[i] += w[i];
    }
    return *this;
}

CField& CField::operator-=(const CField& o)
{
    if (!(g_ == o.g_))
        throw std::invalid_argument("grid mismatch");
    if (hat_ok_ && o.hat_ok_ && !val_ok_) {
        auto& h = spectrum_mut();
        for (std::size_t i = 0; i < g_.n; ++i)
            h[i] -= o.hat_[i];
    } else {
        auto& v = values_mut();
        const auto& w = o.values();
        for (std::size_t i = 0; i < g_.n; ++i)
            v[i] -= w[i];
    }
    return *this;
}

CField& CField::operator*=(double a)
{
    if (hat_ok_) {
        scale_inplace(hat_, a);
        if (val_ok_)
            scale_inplace(val_, a);
    } else {
        scale_inplace(val_, a);
    }
    return *this;
}

// ----------------------------------------------------------------- Field

Field::Field(const Grid& g) : g_(g), val_(g.n, 0.0), hat_(g.n, cplx(0))
{
    val_ok_ = hat_ok_ = true;
}

Field Field::of_values(const Grid& g, std::vector<double> v)
{
    if (v.size() != g.n)
        throw std::invalid_argument("value array size mismatch");
    Field f(g);
    f.val_ = std::move(v);
    f.val_ok_ = true;
    f.hat_ok_ = false;
    return f;
}

Field Field::of_spectrum(const Grid& g, std::vector<cplx> h)
{
    if (h.size() != g.n)
        throw std::invalid_argument("spectrum array size mismatch");
    Field f(g);
    f.hat_ = std::move(h);
    f.hat_ok_ = true;
    f.val_ok_ = false;
    return f;
}

Field Field::sample(const Grid& g, const std::function<double(double)>& f)
{
    std::vector<double> v(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        v[i] = f(g.x(i));
    return of_values(g, std::move(v));
}

void Field::ensure_hat() const
{
    if (hat_ok_)
        return;
    std::vector<cplx> tmp(val_.begin(), val_.end());
    hat_.resize(g_.n);
    Fft::get(g_.n).forward(tmp.data(), hat_.data());
    scale_inplace(hat_, g_.dx());
    hat_ok_ = true;
}

void Field::ensure_val() const
{
    if (val_ok_)
        return;
    std::vector<cplx> tmp(g_.n);
    Fft::get(g_.n).backward(hat_.data(), tmp.data());
    val_.resize(g_.n);
    const double s = 1.0 / g_.length;
    for (std::size_t i = 0; i < g_.n; ++i)
        val_[i] = tmp[i].real() * s;
    val_ok_ = true;
}

const std::vector<double>& Field::values() const { ensure_val(); return val_; }
const std::vector<cplx>& Field::spectrum() const { ensure_hat(); return hat_; }

std::vector<double>& Field::values_mut()
{
    ensure_val();
    hat_ok_ = false;
    return val_;
}

std::vector<cplx>& Field::spectrum_mut()
{
    ensure_hat();
    val_ok_ = false;
    return hat_;
}

double Field::l2() const
{
    if (hat_ok_)
        return std::sqrt(K.sumsq_cplx(hat_.data(), g_.n) / g_.length);
    return std::sqrt(K.sumsq_real(values().data(), g_.n) * g_.dx());
}

double Field::linf() const { return K.max_abs_real(values().data(), g_.n); }

double Field::mean() const { return spectrum()[0].real() / g_.length; }

double Field::integral() const { return spectrum()[0].real(); }

Field& Field::operator+=(const Field& o)
{
    if (!(g_ == o.g_))
        throw std::invalid_argument("grid mismatch");
    auto& v = values_mut();
    K.axpy(1.0, o.values().data(), v.data(), g_.n);
    return *this;
}

Field& Field::operator-=(const Field& o)
{
    if (!(g_ == o.g_))
        throw std::invalid_argument("grid mismatch");
    auto& v = values_mut();
    K.axpy(-1.0, o.values().data(), v.data(), g_.n);
    return *this;
}

Field& Field::operator*=(double a)
{
    if (hat_ok_) {
        scale_inplace(hat_, a);
        if (val_ok_)
            for (auto& x : val_)
                x *= a;
    } else {
        for (auto& x : val_)
            x *= a;
    }
    return *this;
}

// ------------------------------------------------------------- free funcs

Field operator+(Field a, const Field& b) { a += b; return a; }
Field operator-(Field a, const Field& b) { a -= b; return a; }
Field operator*(double a, Field f) { f *= a; return f; }
CField operator+(CField a, const CField& b) { a += b; return a; }
CField operator-(CField a, const CField& b) { a -= b; return a; }

CField operator*(cplx a, CField f)
{
    auto& h = f.spectrum_mut();
    for (auto& z : h)
        z *= a;
    return f;
}

CField complexify(const Field& f)
{
    const auto& v = f.values();
    return CField::of_values(f.grid(), std::vector<cplx>(v.begin(), v.end()));
}

Field real_part(const CField& f)
{
    const auto& v = f.values();
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = v[i].real();
    return Field::of_values(f.grid(), std::move(r));
}

Field imag_part(const CField& f)
{
    const auto& v = f.values();
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = v[i].imag();
    return Field::of_values(f.grid(), std::move(r));
}

CField conj(const CField& f)
{
    const auto& v = f.values();
    std::vector<cplx> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = std::conj(v[i]);
    return CField::of_values(f.grid(), std::move(r));
}

} // namespace bo::spectral
