// Random-number checks: published Philox4x32-10 test vectors, stream
// addressing (seed / trajectory / substream independence), and distribution
// sanity for the uniform and normal transforms.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "bohm/rng.hpp"
#include "test_util.hpp"

using namespace bohm;

namespace {

void check_known_answer_vectors() {
    // Reference vectors for Philox4x32 with 10 rounds.
    {
        const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
        const std::array<std::uint32_t, 4> want{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u};
        REQUIRE(out == want, "philox4x32 zero counter / zero key");
    }
    {
        const auto out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                    {0xffffffffu, 0xffffffffu});
        const std::array<std::uint32_t, 4> want{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu};
        REQUIRE(out == want, "philox4x32 all-ones counter / key");
    }
    {
        const auto out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                    {0xa4093822u, 0x299f31d0u});
        const std::array<std::uint32_t, 4> want{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u};
        REQUIRE(out == want, "philox4x32 pi-digits counter / key");
    }
}

void check_stream_determinism() {
    RandomStream a(123456789u, 42u, kSubstreamNoisePath);
    RandomStream b(123456789u, 42u, kSubstreamNoisePath);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(a.uniform() == b.uniform(), "identical stream ids give identical draws");
    }
    REQUIRE(a.draws_consumed() == 1000u, "uniform consumes one block per draw");

    // Changing any coordinate of the stream id changes the sequence.
    RandomStream base(1u, 0u, kSubstreamMaxwellBoltzmann);
    RandomStream other_seed(2u, 0u, kSubstreamMaxwellBoltzmann);
    RandomStream other_traj(1u, 1u, kSubstreamMaxwellBoltzmann);
    RandomStream other_sub(1u, 0u, kSubstreamNoisePath);
    const double d0 = base.uniform();
    REQUIRE(d0 != other_seed.uniform(), "seed enters the stream id");
    REQUIRE(d0 != other_traj.uniform(), "trajectory index enters the stream id");
    REQUIRE(d0 != other_sub.uniform(), "substream enters the stream id");

    // High trajectory bits matter too (64-bit index, not 32).
    RandomStream lo(1u, 7u, 0);
    RandomStream hi(1u, 7u + (std::uint64_t(1) << 32), 0);
    REQUIRE(lo.uniform() != hi.uniform(), "high trajectory word enters the stream id");
}

void check_uniform_distribution() {
    RandomStream draw(0xabcdef01u, 3u, kSubstreamBornPosition);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = draw.uniform();
        REQUIRE(u > 0.0 && u < 1.0, "uniform draw strictly inside (0, 1)");
        sum += u;
        sum2 += u * u;
        lo = std::fmin(lo, u);
        hi = std::fmax(hi, u);
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    // mean has sd = 1/sqrt(12 n) ~ 2.9e-4; allow 4 sigma.
    REQUIRE(std::fabs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n),
            "uniform mean near 1/2; got " + std::to_string(mean));
    REQUIRE(std::fabs(var - 1.0 / 12.0) < 5e-4, "uniform variance near 1/12");
    REQUIRE(lo < 1e-4 && hi > 1.0 - 1e-4, "uniform draws cover the interval");
}

void check_normal_distribution() {
    RandomStream draw(98765u, 11u, kSubstreamMaxwellBoltzmann);
    const int n = 400000;
    double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = draw.normal();
        sum += z;
        sum2 += z * z;
        sum4 += z * z * z * z;
    }
    const double mean = sum / n;
    const double var = sum2 / n;
    const double kurt = sum4 / n;
    REQUIRE(std::fabs(mean) < 4.0 / std::sqrt(double(n)),
            "normal mean near 0; got " + std::to_string(mean));
    // var of sample variance ~ 2/n.
    REQUIRE(std::fabs(var - 1.0) < 4.0 * std::sqrt(2.0 / n),
            "normal variance near 1; got " + std::to_string(var));
    // fourth moment of N(0,1) is 3; var of the estimate is ~96/n.
    REQUIRE(std::fabs(kurt - 3.0) < 4.0 * std::sqrt(96.0 / n),
            "normal fourth moment near 3; got " + std::to_string(kurt));

    // Kolmogorov-Smirnov against the standard normal CDF on a fresh stream.
    RandomStream ks_draw(55555u, 0u, kSubstreamNoisePath);
    std::vector<double> sample(20000);
    for (double& z : sample) z = ks_draw.normal();
    const double p = testutil::ks_p_value(sample, [](double z) { return testutil::normal_cdf(z); });
    REQUIRE(p > 0.01, "KS test vs standard normal; p = " + std::to_string(p));
    std::printf("normal draws: mean %.2e, var %.6f, m4 %.4f, KS p %.3f\n", mean, var, kurt, p);
}

}  // namespace

int main() {
    check_known_answer_vectors();
    check_stream_determinism();
    check_uniform_distribution();
    check_normal_distribution();
    std::printf("test_rng: all checks passed\n");
    return 0;
}
