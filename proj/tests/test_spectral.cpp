#include "dtorus/spectral.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace dtorus;
using namespace dtorus::spectral;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> sorted_eigs(std::vector<int> sides)
{
    auto e = eigenvalues(TorusSpec(std::move(sides))).eigenvalues;
    std::sort(e.begin(), e.end());
    return e;
}

} // namespace

TEST_CASE("Laplacian eigenvalues")
{
    const auto e3 = sorted_eigs({3});
    REQUIRE(e3.size() == 3);
    CHECK_THAT(e3[0], WithinAbs(0, 1e-14));
    CHECK_THAT(e3[1], WithinAbs(3, 1e-14));
    CHECK_THAT(e3[2], WithinAbs(3, 1e-14));

    const auto e4 = sorted_eigs({4});
    CHECK_THAT(e4[0], WithinAbs(0, 1e-14));
    CHECK_THAT(e4[1], WithinAbs(2, 1e-14));
    CHECK_THAT(e4[2], WithinAbs(2, 1e-14));
    CHECK_THAT(e4[3], WithinAbs(4, 1e-14));

    const std::vector<double> e33{0, 3, 3, 3, 3, 6, 6, 6, 6};
    const auto got = sorted_eigs({3, 3});
    for (std::size_t i = 0; i < 9; ++i)
        CHECK_THAT(got[i], WithinAbs(e33[i], 1e-13));

    for (const auto& sides : {std::vector<int>{5, 5, 5, 5}, std::vector<int>{25, 25}, std::vector<int>{3, 4, 7}}) {
        const TorusSpec t(sides);
        const auto e = eigenvalues(t).eigenvalues;
        double sum = 0;
        int zeros = 0;
        for (double l : e) {
            sum += l;
            zeros += std::abs(l) < 1e-12;
            CHECK(l >= -1e-12);
            CHECK(l <= 4.0 * t.dimension() + 1e-12);
        }
        CHECK(zeros == 1);
        CHECK_THAT(sum, WithinRel(2.0 * t.dimension() * t.volume(), 1e-9));
    }
}

TEST_CASE("u_s substitution")
{
    for (int d = 1; d <= 4; ++d) {
        const UsTransform us(d);
        for (double s : {1e-9, 0.01, 0.5, 1.0, 5.0, 100.0}) {
            const double u = us(s);
            CHECK(u > 0);
            CHECK(u < 1.0 / us.q());
            CHECK_THAT(us.s_of(u), WithinAbs(s, 1e-9 * std::max(1.0, s)));
        }
        CHECK_THAT(us(1e-12), WithinAbs(1.0 / us.q(), 1e-5));
    }
    CHECK_THROWS(UsTransform(0));
}

TEST_CASE("Bessel I")
{
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_i(3, 0.0) == 0.0);
    CHECK_THAT(bessel_i(1, 2.0), WithinRel(1.5906368546373291, 1e-14));
    for (double t : {0.5, 1.0, 3.0})
        CHECK(bessel_i(-2, t) == bessel_i(2, t));
    for (int order : {0, 1, 3, 9, 20})
        for (double t : {0.2, 2.0, 10.0, 30.0})
            CHECK_THAT(bessel_i(order, t), WithinRel(std::cyl_bessel_i(static_cast<double>(order), t), 1e-12));
    CHECK_THROWS(bessel_i(0, -1.0));
}

TEST_CASE("theta function two routes")
{
    const TorusSpec t3({3});
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        CHECK_THAT(theta_eigen(t3, t), WithinAbs(1 + 2 * std::exp(-3 * t), 1e-14));
        CHECK_THAT(theta_bessel(t3, t), WithinAbs(theta_eigen(t3, t), 1e-10));
    }
    const TorusSpec t33({3, 3});
    CHECK_THAT(theta_bessel(t33, 1.0), WithinAbs(theta_eigen(t33, 1.0), 1e-10));
    CHECK_THAT(theta_eigen(t33, 1e-9), WithinRel(9.0, 1e-6));
    CHECK_THAT(theta_eigen(t33, 40.0), WithinAbs(1.0, 1e-12));
    // the z = 0 translate dominates for small t; for large t every translate
    // tends to the same size and theta -> 1 while the z = 0 term -> 0
    const double lead = 9 * std::exp(-4 * 0.05) * std::pow(bessel_i(0, 0.1), 2);
    CHECK_THAT(theta_bessel(t33, 0.05) / lead, WithinAbs(1.0, 1e-4));
    const double lead_late = 9 * std::exp(-4 * 20.0) * std::pow(bessel_i(0, 40.0), 2);
    CHECK(lead_late < 0.1 * theta_bessel(t33, 20.0));
    CHECK_THROWS(theta_eigen(t3, 0.0));
    CHECK_THROWS(theta_bessel(t3, -1.0));
}

TEST_CASE("spectral zeta by eigenvalues")
{
    CHECK_THAT(spectral_zeta_eigen(TorusSpec({3}), 1.0), WithinAbs(1.5, 1e-15));
    CHECK_THAT(spectral_zeta_eigen(TorusSpec({3, 3}), 1.0), WithinAbs(1.0 + 4.0 / 4 + 4.0 / 7, 1e-14));
    CHECK_THAT(1e8 * spectral_zeta_eigen(TorusSpec({3, 4}), 1e8), WithinRel(12.0, 1e-6));
    CHECK_THROWS(spectral_zeta_eigen(TorusSpec({3}), 0.0));
}

TEST_CASE("spectral zeta by the heat-kernel series")
{
    const TorusSpec t3({3});
    // d = 1: level h = 3p contributes 2 r^h / sqrt(x^2-4), so the truncation
    // error of h <= 12 is the closed-form geometric tail from h = 15 on.
    {
        const double s = 1.0, x = s + 2.0;
        const double root = std::sqrt(x * x - 4.0), r = (x - root) / 2;
        const double tail = 3.0 * 2.0 * std::pow(r, 15) / root / (1.0 - std::pow(r, 3));
        const auto series = spectral_zeta_heatkernel(t3, s, 12);
        CHECK_THAT(spectral_zeta_eigen(t3, s) - series.value, WithinRel(tail, 1e-9));
        CHECK_THAT(series.residual_estimate, WithinRel(tail, 1e-9));
    }
    CHECK_THAT(spectral_zeta_heatkernel(t3, 5.0, 12).value, WithinAbs(spectral_zeta_eigen(t3, 5.0), 1e-8));
    // (3,3) at s = 2: h_max = 10 leaves about 3e-5 behind, and the estimate sees it
    {
        const TorusSpec t33({3, 3});
        const auto series = spectral_zeta_heatkernel(t33, 2.0, 10);
        const double missing = spectral_zeta_eigen(t33, 2.0) - series.value;
        CHECK(missing > 1e-8);
        CHECK(series.residual_estimate > 0.3 * missing);
        CHECK(series.residual_estimate < 3.0 * missing);
    }
    CHECK(spectral_zeta_heatkernel(t3, 1.0, 0).value < spectral_zeta_eigen(t3, 1.0));

    // with enough levels the series converges across the whole s range
    for (const auto& sides : {std::vector<int>{3}, std::vector<int>{4}, std::vector<int>{3, 3}, std::vector<int>{3, 4}}) {
        const TorusSpec t(sides);
        for (double s : {0.5, 1.0, 2.0, 5.0})
            CHECK_THAT(spectral_zeta_heatkernel(t, s, 60).value, WithinAbs(spectral_zeta_eigen(t, s), 1e-8));
    }
    CHECK_THROWS(spectral_zeta_heatkernel(t3, 1.0, -1));
}

TEST_CASE("Ihara identity")
{
    CHECK(ihara_identity_check(TorusSpec({3}), 1.0) < 1e-10);
    for (double s : {0.5, 1.0, 3.0})
        CHECK(ihara_identity_check(TorusSpec({3, 3}), s) < 1e-10);
    CHECK_THROWS(ihara_identity_check(TorusSpec({3}), 0.0));
}

TEST_CASE("Ihara series coefficients")
{
    CHECK(ihara_series_check(TorusSpec({3, 3}), 8) < 1e-8);

    const auto c = ihara_series_coefficients(TorusSpec({3}), 12);
    for (int n = 1; n <= 12; ++n)
        CHECK_THAT(c[static_cast<std::size_t>(n)], WithinAbs(n % 3 ? 0.0 : 6.0, 1e-9));

    const auto exact44 = ihara_series_exact(TorusSpec({4, 4}), 9);
    for (int n = 1; n <= 9; n += 2)
        CHECK(exact44[static_cast<std::size_t>(n)] == 0);

    for (const auto& sides : {std::vector<int>{3, 3}, std::vector<int>{3, 4}, std::vector<int>{3, 3, 3}}) {
        const TorusSpec t(sides);
        const auto exact = ihara_series_exact(t, 8);
        for (int n = 1; n <= 8; ++n)
            CHECK(exact[static_cast<std::size_t>(n)] == count_reduced_cycles(t, n).total);
    }
}
