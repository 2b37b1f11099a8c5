#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectral/field.hpp"
#include "spectral/grid.hpp"
#include "spectral/operators.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace bo::spectral;
constexpr double pi = std::numbers::pi;

namespace {

Field random_bandlimited(const Grid& g, int kmax, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<cplx> h(g.n, cplx(0));
    for (int k = 1; k <= kmax; ++k) {
        const cplx a(d(rng), d(rng));
        h[static_cast<std::size_t>(k)] = a;
        h[g.n - static_cast<std::size_t>(k)] = std::conj(a);
    }
    return Field::of_spectrum(g, std::move(h));
}

double max_diff(const Field& a, const Field& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.n(); ++i)
        m = std::max(m, std::fabs(a.values()[i] - b.values()[i]));
    return m;
}

} // namespace

TEST_CASE("grid indexing and jmax")
{
    Grid g(256, 100.0);
    CHECK(g.dx() == doctest::Approx(100.0 / 256));
    CHECK(g.signed_mode(0) == 0);
    CHECK(g.signed_mode(1) == 1);
    CHECK(g.signed_mode(128) == 128);   // Nyquist
    CHECK(g.signed_mode(129) == -127);
    CHECK(g.signed_mode(255) == -1);
    CHECK(g.xi(1) == doctest::Approx(2 * pi / 100.0));
    CHECK(g.jmax() == 5);               // log2(128) - 2
    CHECK(Grid(16, 1.0).jmax() == 1);
    CHECK_THROWS(Grid(100, 1.0));
}

TEST_CASE("fft round trip and Parseval")
{
    Grid g(128, 3.7);
    Field u = Field::sample(g, [](double x) {
        return std::sin(2 * pi * x / 3.7) + 0.3 * std::cos(6 * pi * x / 3.7 + 0.4);
    });
    // round trip through spectrum
    Field v = Field::of_spectrum(g, u.spectrum());
    CHECK(max_diff(u, v) < 1e-14);

    // Parseval: sum{|u|^2 dx} == (1/L) sum{|u_hat|^2}
    double phys = 0.0;
    for (double x : u.values())
        phys += x * x;
    phys *= g.dx();
    double spec = 0.0;
    for (const auto& z : u.spectrum())
        spec += std::norm(z);
    spec /= g.length;
    CHECK(phys == doctest::Approx(spec).epsilon(1e-13));
    CHECK(u.l2() == doctest::Approx(std::sqrt(phys)).epsilon(1e-13));
}

TEST_CASE("spectrum of a pure mode has the documented normalization")
{
    Grid g(64, 2 * pi);
    Field u = Field::sample(g, [](double x) { return std::cos(3 * x); });
    // cos(3x) = (e^{i3x}+e^{-i3x})/2, so u_hat(3) = L/2 = pi
    CHECK(u.spectrum()[3].real() == doctest::Approx(pi).epsilon(1e-12));
    CHECK(u.spectrum()[3].imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(u.spectrum()[5]) < 1e-12);
    CHECK(u.mean() == doctest::Approx(0.0).epsilon(1e-13));
    Field one = Field::sample(g, [](double) { return 2.5; });
    CHECK(one.mean() == doctest::Approx(2.5));
    CHECK(one.integral() == doctest::Approx(2.5 * 2 * pi));
}

TEST_CASE("derivative, Hilbert transform, |D| on trigonometric data")
{
    Grid g(128, 2 * pi);
    const double k = 5.0;
    Field u = Field::sample(g, [&](double x) { return std::cos(k * x); });

    Field du = dx(u);
    Field du_ref = Field::sample(g, [&](double x) { return -k * std::sin(k * x); });
    CHECK(max_diff(du, du_ref) < 1e-11);

    // H cos(kx) = sin(kx), H sin(kx) = -cos(kx) (symbol -i sgn xi)
    Field hu = hilbert(u);
    Field hu_ref = Field::sample(g, [&](double x) { return std::sin(k * x); });
    CHECK(max_diff(hu, hu_ref) < 1e-12);
    Field hhu = hilbert(hu);
    Field minus_u = -1.0 * u;
    CHECK(max_diff(hhu, minus_u) < 1e-12);

    Field au = abs_d(u, 1.0);
    Field au_ref = Field::sample(g, [&](double x) { return k * std::cos(k * x); });
    CHECK(max_diff(au, au_ref) < 1e-11);

    Field su = abs_d(u, 0.5);
    Field su_ref = Field::sample(g, [&](double x) { return std::sqrt(k) * std::cos(k * x); });
    CHECK(max_diff(su, su_ref) < 1e-12);

    // H d_x^2 == d_x |D|
    Field a = dx_absd(u);
    Field b = hilbert(dx(dx(u)));
    CHECK(max_diff(a, b) < 1e-10);
}

TEST_CASE("half-line projections reassemble real data")
{
    Grid g(128, 5.0);
    Field u = random_bandlimited(g, 40, 11);
    const double mean_shift = 0.7;
    u = Field::of_values(g, [&] {
        auto v = u.values();
        for (auto& x : v)
            x += mean_shift;
        return v;
    }());

    CField up = pplus(u);
    // P- u = conj(P+ u) for real u
    Field recon = Field::sample(g, [](double) { return 0.0; });
    for (std::size_t i = 0; i < g.n; ++i) {
        const double r = mean_shift + 2.0 * up.values()[i].real();
        const double want = u.values()[i];
        CHECK(std::fabs(r - want) < 1e-12);
    }
    (void)recon;

    // projections are idempotent and orthogonal
    CField upp = pplus(real_part(up) /*not meaningful*/);
    (void)upp;
    CField um = pminus(complexify(u));
    double cross = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        cross += std::norm(up.spectrum()[i] * um.spectrum()[i]);
    CHECK(cross == 0.0);
}

TEST_CASE("free evolution matches the exact single-mode phase and is unitary")
{
    Grid g(128, 2 * pi);
    const double k = 7.0, t = 0.23;
    Field u0 = Field::sample(g, [&](double x) { return std::cos(k * x); });
    Field ut = evolve_free(u0, t);
    // mode k>0 evolves by e^{-i k^2 t}: cos(kx - k^2 t)
    Field ref = Field::sample(g, [&](double x) { return std::cos(k * x - k * k * t); });
    CHECK(max_diff(ut, ref) < 1e-12);

    Field w = random_bandlimited(g, 30, 5);
    Field wt = evolve_free(w, 1.37);
    CHECK(wt.l2() == doctest::Approx(w.l2()).epsilon(1e-13));
    Field back = evolve_free(wt, -1.37);
    CHECK(max_diff(back, w) < 1e-12);

    // group property E(s)E(t) = E(s+t)
    Field two_step = evolve_free(evolve_free(w, 0.4), 0.6);
    Field one_step = evolve_free(w, 1.0);
    CHECK(max_diff(two_step, one_step) < 1e-12);
}

TEST_CASE("free evolution solves d_t u + H d_x^2 u = 0 (dispersion sign check)")
{
    // centered difference in t of the exact propagator vs -H d_x^2 u
    Grid g(256, 2 * pi);
    Field u = random_bandlimited(g, 20, 99);
    const double dt = 1e-5, t0 = 0.1;
    Field up = evolve_free(u, t0 + dt);
    Field um = evolve_free(u, t0 - dt);
    Field ut = (1.0 / (2 * dt)) * (up - um);
    Field rhs = -1.0 * dx_absd(evolve_free(u, t0));
    double num = (ut - rhs).l2();
    // truncation of the centered difference is (xi_max^2 dt)^2/6 ~ 3e-6
    CHECK(num / rhs.l2() < 1e-5);

    // the opposite sign is clearly rejected
    Field wrong = 1.0 * dx_absd(evolve_free(u, t0));
    CHECK((ut - wrong).l2() / wrong.l2() > 0.5);
}

TEST_CASE("dealias and products")
{
    Grid g(64, 2 * pi);
    // k=20 and k=15 alias their product's k=35 component onto k=-29 on a 64 grid
    Field a = Field::sample(g, [](double x) { return std::cos(20 * x); });
    Field b = Field::sample(g, [](double x) { return std::cos(15 * x); });
    Field ab = mult(a, b);
    // plain product keeps the aliased junk
    CHECK(std::abs(ab.spectrum()[64 - 29]) > 1e-3);
    Field abd = mult_dealias(a, b);
    const int cut = 64 / 3;
    for (std::size_t i = 0; i < g.n; ++i) {
        const int s = g.signed_mode(i);
        if (std::abs(s) > cut)
            CHECK(std::abs(abd.spectrum()[i]) == 0.0);
    }
    // the resolved difference mode k=5 is exact in both
    CHECK(ab.spectrum()[5].real() == doctest::Approx(abd.spectrum()[5].real()));

    // within-band product is untouched by the filter
    Field c = Field::sample(g, [](double x) { return std::sin(3 * x); });
    Field d = Field::sample(g, [](double x) { return std::cos(7 * x); });
    CHECK(max_diff(mult(c, d), mult_dealias(c, d)) < 1e-14);
}

TEST_CASE("field cache coherence through mutation chains")
{
    Grid g(64, 1.0);
    Field u = random_bandlimited(g, 20, 3);
    // mutate values, read spectrum, mutate spectrum, read values
    auto& v = u.values_mut();
    for (auto& x : v)
        x = 2.0 * x + 1.0;
    const double m0 = u.mean();
    CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));
    auto& h = u.spectrum_mut();
    h[0] = 0.0;
    CHECK(u.mean() == doctest::Approx(0.0));
    double s = 0.0;
    for (double x : u.values())
        s += x;
    CHECK(s * g.dx() == doctest::Approx(0.0).epsilon(1e-12));

    CField w = CField::sample(g, [](double x) { return cplx(x, -x); });
    auto& wh = w.spectrum_mut();
    for (auto& z : wh)
        z *= 3.0;
    CField w3 = CField::sample(g, [](double x) { return cplx(3 * x, -3 * x); });
    double diff = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        diff = std::max(diff, std::abs(w.values()[i] - w3.values()[i]));
    CHECK(diff < 1e-12);
}

TEST_CASE("fractional |D|^p and its domain")
{
    Grid g(128, 2 * pi);
    Field u = Field::sample(g, [](double x) { return std::cos(4 * x) - 0.5 * std::sin(9 * x); });

    // |D|^{1/2} twice equals |D| on mean-free data
    Field h1 = abs_d(abs_d(u, 0.5), 0.5);
    Field h2 = abs_d(u, 1.0);
    CHECK((h1 - h2).l2() / h2.l2() < 1e-13);

    // |D|^{-1/2} inverts |D|^{1/2} away from the mean
    Field back = abs_d(abs_d(u, 0.5), -0.5);
    CHECK((back - u).l2() / u.l2() < 1e-13);

    // negative power on a field with mean is a domain error
    Field shifted = Field::sample(g, [](double x) { return 1.0 + std::cos(4 * x); });
    CHECK_THROWS_AS((void)abs_d(shifted, -0.5), std::domain_error);
    CHECK_NOTHROW((void)abs_d(shifted, 0.5));
}

TEST_CASE("multiplier operators commute and Parseval holds on random fields")
{
    Grid g(128, 5.0);
    std::mt19937_64 rng(77);
    std::normal_distribution<double> d(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(g.n);
        for (auto& x : v)
            x = d(rng);
        Field u = Field::of_values(g, std::move(v));

        // Parseval: sum |u|^2 dx == (1/L) sum |u_hat|^2
        double side_x = 0.0;
        for (double x : u.values())
            side_x += x * x;
        side_x *= g.dx();
        double side_k = 0.0;
        for (const auto& z : u.spectrum())
            side_k += std::norm(z);
        side_k /= g.length;
        CHECK(std::fabs(side_x - side_k) <= 1e-12 * (1.0 + side_x));

        if (trial < 10) {
            // Fourier multipliers commute pairwise
            Field a = hilbert(dx(u, 1));
            Field b = dx(hilbert(u), 1);
            CHECK((a - b).l2() <= 1e-12 * (1.0 + u.l2()));
            Field c = abs_d(evolve_free(u, 0.3), 0.5);
            Field e = evolve_free(abs_d(u, 0.5), 0.3);
            CHECK((c - e).l2() <= 1e-12 * (1.0 + u.l2()));
        }
    }
}
