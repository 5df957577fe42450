#include "ckdisc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ckdisc/arc_disc.hpp"
#include "ckdisc/parallel.hpp"

namespace ckdisc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One-dimensional window: integral over [0,1] of e^{-2 pi i u s}
// = e^{-i pi s} sin(pi s)/(pi s).
std::complex<double> window1d(double s) {
    const double z = kPi * s;
    double sinc;
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        sinc = 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
    } else {
        sinc = std::sin(z) / z;
    }
    return std::polar(sinc, -z);
}

} // namespace

std::complex<double> cell_window(Vec2 xi) { return window1d(xi.x) * window1d(xi.y); }

std::complex<double> fhat(const Coloring& c, Vec2 xi) {
    const int n = c.size();
    const std::complex<double> step_x = std::polar(1.0, -kTwoPi * xi.x);
    const std::complex<double> step_y = std::polar(1.0, -kTwoPi * xi.y);
    std::complex<double> sum = 0.0;
    std::complex<double> ey = 1.0;
    for (int row = 0; row < n; ++row) {
        std::complex<double> row_sum = 0.0;
        std::complex<double> ex = 1.0;
        for (int col = 0; col < n; ++col) {
            row_sum += static_cast<double>(c.get(col, row)) * ex;
            ex *= step_x;
        }
        sum += ey * row_sum;
        ey *= step_y;
    }
    return cell_window(xi) * sum;
}

double bessel_j0(double x) {
    const double ax = std::abs(x);
    if (ax <= 8.0) {
        // Power series sum_k (-1)^k (x^2/4)^k / (k!)^2; worst-case
        // cancellation near x = 8 still leaves ~1e-13 absolute error.
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= -q / (static_cast<double>(k) * k);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
        }
        return sum;
    }
    // Hankel asymptotic expansion with the classic rational coefficients
    // (Hart 1968), abs error below 1e-8 for ax > 8.
    const double z = 8.0 / ax;
    const double y = z * z;
    const double p0 = 1.0 + y * (-0.1098628627e-2 +
                                 y * (0.2734510407e-4 +
                                      y * (-0.2073370639e-5 + y * 0.2093887211e-6)));
    const double q0 = -0.1562499995e-1 +
                      y * (0.1430488765e-3 +
                           y * (-0.6911147651e-5 + y * (0.7621095161e-6 - y * 0.934935152e-7)));
    const double xx = ax - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * ax)) * (std::cos(xx) * p0 - z * std::sin(xx) * q0);
}

double sigma_hat(double t, double xi_norm) {
    if (!(t > 0.0)) throw std::invalid_argument("sigma_hat: t must be > 0");
    return kTwoPi * t * bessel_j0(kTwoPi * t * xi_norm);
}

double sigma_hat(double t, Vec2 xi) { return sigma_hat(t, xi.norm()); }

namespace {

double gl8_func(double a, double b, const auto& f) {
    static constexpr double kX[4] = {0.1834346424956498, 0.5255324099163290,
                                     0.7966664774136267, 0.9602898564975363};
    static constexpr double kW[4] = {0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        sum += kW[i] * (f(mid + half * kX[i]) + f(mid - half * kX[i]));
    }
    return sum * half;
}

} // namespace

double ring_energy(double x, double c1) {
    if (!(x > 0.0)) throw std::invalid_argument("ring_energy: x must be > 0");
    if (!(c1 > 1.0)) throw std::invalid_argument("ring_energy: c1 must be > 1");
    auto f = [](double u) {
        const double s = kTwoPi * bessel_j0(kTwoPi * u);
        return s * s;
    };
    // J0(2 pi u)^2 oscillates with period ~1/2 in u; start with ~4 panels per
    // oscillation and double until stable.
    int panels = std::max(8, static_cast<int>(std::ceil((c1 - 1.0) * x / 0.125)));
    double prev = 0.0;
    for (int round = 0;; ++round) {
        double sum = 0.0;
        const double h = (c1 * x - x) / panels;
        for (int k = 0; k < panels; ++k) {
            sum += gl8_func(x + k * h, x + (k + 1) * h, f);
        }
        if (round > 0 && std::abs(sum - prev) <= 1e-6 * std::abs(sum)) return sum;
        if (panels > (1 << 22)) return sum;
        prev = sum;
        panels *= 2;
    }
}

namespace {

// Polar quadrature of |fhat|^2 * g(r) over a/N < |xi| < A at a fixed
// resolution. Also returns the plain |fhat|^2 mass for tail bookkeeping.
struct PolarMass {
    double weighted = 0.0; // integral of |fhat|^2 g(r)
    double plain = 0.0;    // integral of |fhat|^2
};

template <typename G>
PolarMass polar_mass(const Coloring& c, double r_lo, double r_hi, double radial_step,
                     double nodes_per_unit_angle, const G& g, unsigned jobs) {
    const std::size_t shells =
        static_cast<std::size_t>(std::ceil((r_hi - r_lo) / radial_step));
    std::vector<PolarMass> partial(shells);
    parallel_for(shells, [&](std::size_t k) {
        const double r = r_lo + (static_cast<double>(k) + 0.5) * radial_step;
        if (r <= 0.0) return;
        const int n_phi = std::max(64, static_cast<int>(std::ceil(nodes_per_unit_angle * r)));
        const double dphi = kTwoPi / n_phi;
        double ring = 0.0;
        for (int i = 0; i < n_phi; ++i) {
            const double phi = (i + 0.5) * dphi;
            const std::complex<double> v = fhat(c, {r * std::cos(phi), r * std::sin(phi)});
            ring += std::norm(v);
        }
        const double area = ring * dphi * r * radial_step;
        partial[k] = {area * g(r), area};
    }, jobs);
    PolarMass out;
    for (const PolarMass& p : partial) {
        out.weighted += p.weighted;
        out.plain += p.plain;
    }
    return out;
}

} // namespace

double decay_mass(const Coloring& c, double a, double A, unsigned jobs) {
    if (!(a > 0.0) || !(A > 0.0)) throw std::invalid_argument("decay_mass: a, A must be > 0");
    const double n = c.size();
    const double r_lo = a / n;
    if (!(r_lo < A)) throw std::invalid_argument("decay_mass: requires a/N < A");

    auto one = [](double) { return 1.0; };
    // fhat oscillates on scale 1/N in radius and ~1/(N r) in angle.
    double radial_step = 1.0 / (12.0 * (n + 4.0));
    double angle_nodes = 48.0 * n;
    double prev = polar_mass(c, r_lo, A, radial_step, angle_nodes, one, jobs).plain;
    for (int round = 0; round < 3; ++round) {
        radial_step *= 0.5;
        angle_nodes *= 2.0;
        const double cur = polar_mass(c, r_lo, A, radial_step, angle_nodes, one, jobs).plain;
        const double rel = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
        prev = cur;
        if (rel < 1e-3) break;
    }
    return prev;
}

double ParsevalResult::rel_gap() const {
    const double scale = std::max(std::abs(spatial), std::abs(spectral));
    return scale == 0.0 ? 0.0 : std::abs(spatial - spectral) / scale;
}

ParsevalResult parseval_check(const Coloring& c, double t, double spatial_step, unsigned jobs) {
    if (!(t > 0.0)) throw std::invalid_argument("parseval_check: t must be > 0");
    if (c.size() > 16)
        throw std::invalid_argument("parseval_check: boards above size 16 are refused");
    if (!(spatial_step > 0.0) || spatial_step > 0.125)
        throw std::invalid_argument("parseval_check: spatial_step must be in (0, 0.125]");

    const double n = c.size();
    ParsevalResult result;

    // Spatial side: midpoint grid over the padded box where D_t can live.
    {
        const double lo = -t - 2.0;
        const double hi = n + t + 2.0;
        const std::size_t nx = static_cast<std::size_t>(std::ceil((hi - lo) / spatial_step));
        std::vector<double> rows(nx, 0.0);
        parallel_for(nx, [&](std::size_t ix) {
            const double x = lo + (static_cast<double>(ix) + 0.5) * spatial_step;
            double sum = 0.0;
            for (std::size_t iy = 0; iy < nx; ++iy) {
                const double y = lo + (static_cast<double>(iy) + 0.5) * spatial_step;
                const double d = circle_discrepancy(c, {{x, y}, t});
                sum += d * d;
            }
            rows[ix] = sum;
        }, jobs);
        double total = 0.0;
        for (double r : rows) total += r;
        result.spatial = total * spatial_step * spatial_step;
    }

    // Spectral side: integrate outward in radial blocks until the envelope
    // tail bound certifies < 0.5% truncation. Within radius R the remaining
    // mass of |fhat|^2 is at most N^2 - F(R) (Plancherel), and
    // |sigma_hat_t(r)|^2 <= 4t/r from |J0(z)| <= sqrt(2/(pi z)).
    {
        auto g = [&](double r) {
            const double s = sigma_hat(t, r);
            return s * s;
        };
        const double radial_step = 1.0 / (16.0 * (n + 2.0 * t + 4.0));
        const double angle_nodes = 64.0 * n;
        const double total_plain = n * n;
        double energy = 0.0;
        double plain = 0.0;
        double r_from = 0.0;
        const double block = 1.0;
        for (int b = 0; b < 256; ++b) {
            const double r_to = r_from + block;
            const PolarMass pm =
                polar_mass(c, r_from, r_to, radial_step, angle_nodes, g, jobs);
            energy += pm.weighted;
            plain += pm.plain;
            r_from = r_to;
            const double tail = 4.0 * t / r_to * std::max(0.0, total_plain - plain);
            if (r_to >= 2.0 && tail <= 0.005 * energy) break;
        }
        result.spectral = energy;
    }

    return result;
}

} // namespace ckdisc
