#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdint>

#include "horoxt/rng.hpp"

using namespace horoxt;

TEST_CASE("philox4x32-10 known answers") {
    // reference vectors from the original counter-based RNG test suite
    const std::array<std::uint32_t, 4> z = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(z[0] == 0x6627e8d5u);
    CHECK(z[1] == 0xe169c58du);
    CHECK(z[2] == 0xbc57ac4cu);
    CHECK(z[3] == 0x9b00dbd8u);

    const std::uint32_t ff = 0xffffffffu;
    const std::array<std::uint32_t, 4> o = philox4x32({ff, ff, ff, ff}, {ff, ff});
    CHECK(o[0] == 0x408f276du);
    CHECK(o[1] == 0x41c83b0eu);
    CHECK(o[2] == 0xa20bc7c6u);
    CHECK(o[3] == 0x6d5451fdu);

    const std::array<std::uint32_t, 4> p =
        philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                   {0xa4093822u, 0x299f31d0u});
    CHECK(p[0] == 0xd16cfe09u);
    CHECK(p[1] == 0x94fdccebu);
    CHECK(p[2] == 0x5001e420u);
    CHECK(p[3] == 0x24126ea1u);
}

TEST_CASE("stream layout: counter is (block, stream), key is the seed") {
    RandomStream rs(0, 0);
    CHECK(rs.next_u32() == 0x6627e8d5u);
    CHECK(rs.next_u32() == 0xe169c58du);
    CHECK(rs.next_u32() == 0xbc57ac4cu);
    CHECK(rs.next_u32() == 0x9b00dbd8u);
    // second block: counter (1,0,0,0)
    const std::array<std::uint32_t, 4> b1 = philox4x32({1, 0, 0, 0}, {0, 0});
    CHECK(rs.next_u32() == b1[0]);

    RandomStream rs2(0, 0);
    CHECK(rs2.next_u64() == ((std::uint64_t(0x6627e8d5u) << 32) | 0xe169c58du));

    RandomStream seeded(0x0123456789abcdefull, 0xfedcba9876543210ull);
    const std::array<std::uint32_t, 4> expect =
        philox4x32({0, 0, 0x76543210u, 0xfedcba98u}, {0x89abcdefu, 0x01234567u});
    CHECK(seeded.next_u32() == expect[0]);
}

TEST_CASE("determinism and stream independence") {
    RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool same_c = true, same_d = true;
    for (int i = 0; i < 64; ++i) {
        const std::uint32_t x = a.next_u32();
        CHECK(x == b.next_u32());
        same_c = same_c && (x == c.next_u32());
        same_d = same_d && (x == d.next_u32());
    }
    CHECK_FALSE(same_c);
    CHECK_FALSE(same_d);
}

TEST_CASE("double generation") {
    RandomStream rs(0, 0);
    const std::uint64_t hi = (std::uint64_t(0x6627e8d5u) << 32) | 0xe169c58du;
    CHECK(rs.next_double() == double(hi >> 11) * 0x1.0p-53);

    RandomStream rs2(99, 0);
    for (int i = 0; i < 10000; ++i) {
        const double x = rs2.next_double();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    RandomStream rs3(99, 1);
    for (int i = 0; i < 1000; ++i) {
        const double x = rs3.uniform(2.0, 3.0);
        CHECK(x >= 2.0);
        CHECK(x < 3.0);
    }
}

TEST_CASE("uniform draws look uniform") {
    RandomStream rs(7, 0);
    const int n = 100000;
    int buckets[10] = {0};
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rs.next_double();
        sum += x;
        ++buckets[int(x * 10.0)];
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    for (int k = 0; k < 10; ++k)
        CHECK(double(buckets[k]) / n == doctest::Approx(0.1).epsilon(0.05));
}
