#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "horoxt/errors.hpp"
#include "horoxt/lattice.hpp"
#include "horoxt/montecarlo.hpp"
#include "horoxt/rng.hpp"
#include "horoxt/section.hpp"

using namespace horoxt;

namespace {

GroupElement haar_start(std::uint64_t seed, std::uint64_t index) {
    SamplerSpec haar;
    haar.seed = seed;
    return sample_initial(haar, index);
}

}

TEST_CASE("sejour width") {
    CHECK(sejour(0.0) == 0.0);
    CHECK(std::fabs(sejour(std::log(2.0)) - 1.0) <= 1e-15);
    CHECK(std::fabs(sejour(std::log(5.0)) - 2.0) <= 1e-14);
    CHECK_THROWS_AS(sejour(-0.1), std::domain_error);
    // small heights: sqrt(t) asymptotics, no cancellation
    CHECK(sejour(1e-12) == doctest::Approx(1e-6).epsilon(1e-9));
}

TEST_CASE("orbit validation") {
    CHECK_THROWS_AS(hit_process(OrbitSpec{GroupElement{}, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(hit_process(OrbitSpec{GroupElement{}, 0.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(hit_process(OrbitSpec{GroupElement{}, 700.0, 1.0}), std::range_error);
    CHECK_THROWS_AS(hit_process(OrbitSpec{GroupElement{}, 0.0, 1e10}), capacity_error);
}

TEST_CASE("identity orbit unit horizon") {
    const auto events = hit_process(OrbitSpec{GroupElement{}, 0.0, 1.0});
    REQUIRE(events.size() == 1);
    CHECK(events[0].j == 1);
    CHECK(events[0].xi == 1.0);
    CHECK(events[0].s == 0.0);
    CHECK(events[0].t == 0.0);
    CHECK(events[0].delta == 0.0);
    CHECK(events[0].xi_entry == 1.0);
    CHECK(events[0].vector == PrimitiveVector(1, 1));
}

TEST_CASE("dyadic start fixture") {
    // g0 = [[1, 1/4],[2, 3/2]]; exact arithmetic gives four crossings up to T = 12:
    //   (c,d)=(1,0):   xi = 4,    u2 = 1/4,  s = 0
    //   (c,d)=(10,-1): xi = 8,    u2 = 1,    s = 3/4
    //   (c,d)=(9,-1):  xi = 28/3, u2 = 3/4,  s = 2/3
    //   (c,d)=(8,-1):  xi = 12,   u2 = 1/2,  s = 1/2
    const GroupElement g0{1.0, 0.25, 2.0, 1.5};
    const auto events = hit_process(OrbitSpec{g0, 0.0, 12.0});
    REQUIRE(events.size() == 4);

    const std::int64_t cs[4] = {1, 10, 9, 8};
    const std::int64_t ds[4] = {0, -1, -1, -1};
    const double xis[4] = {4.0, 8.0, 28.0 / 3.0, 12.0};
    const double u2s[4] = {0.25, 1.0, 0.75, 0.5};
    const double ss[4] = {0.0, 0.75, 2.0 / 3.0, 0.5};
    for (int k = 0; k < 4; ++k) {
        CHECK(events[k].j == std::size_t(k) + 1);
        CHECK(events[k].vector == PrimitiveVector(cs[k], ds[k]));
        CHECK(std::fabs(events[k].xi - xis[k]) <= 1e-12 * xis[k]);
        const double t = -2.0 * std::log(u2s[k]);
        CHECK(std::fabs(events[k].t - t) <= 1e-12);
        CHECK(std::fabs(events[k].s - ss[k]) <= 1e-12);
        CHECK(std::fabs(events[k].delta - sejour(events[k].t)) <= 1e-12);
        CHECK(std::fabs(events[k].xi_entry - (events[k].xi - events[k].delta)) <= 1e-12);
    }

    CHECK(hit_process(OrbitSpec{g0, 0.0, 9.0}).size() == 2);
    CHECK(hit_process(OrbitSpec{g0, 0.0, 9.34}).size() == 3);
}

TEST_CASE("hit heights bound the orbit height") {
    const GroupElement g0 = haar_start(31, 2);
    const auto events = hit_process(OrbitSpec{g0, 0.0, 40.0});
    REQUIRE(events.size() >= 5);
    for (const HitEvent& ev : events) {
        // the recorded peak is attained by its own branch, so the orbit height dominates it
        CHECK(height_at_time(g0, ev.xi) >= ev.t - 1e-10);
        // on the branch of ev.vector, the excursion entered the cusp region at xi_entry
        const GroupElement branch = complete_coset(ev.vector) * horocycle_plus(g0, ev.xi_entry);
        const double depth = 1.0 / mobius_apply(branch, {0.0, 1.0}).y;
        CHECK(std::fabs(depth - 1.0) <= 1e-9);
        // and peaks exactly at xi
        const GroupElement top = complete_coset(ev.vector) * horocycle_plus(g0, ev.xi);
        const double peak = std::log(mobius_apply(top, {0.0, 1.0}).y);
        CHECK(std::fabs(peak - ev.t) <= 1e-9);
    }
    // strictly increasing hit times
    for (std::size_t k = 0; k + 1 < events.size(); ++k) CHECK(events[k].xi < events[k + 1].xi);
}

TEST_CASE("agreement with the direct scanning oracle") {
    for (std::uint64_t idx = 0; idx < 6; ++idx) {
        const GroupElement g0 = haar_start(101, idx);
        const OrbitSpec orbit{g0, 0.0, 20.0};
        const auto fast = hit_process(orbit);
        const auto slow = direct_crossing_oracle(orbit);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t k = 0; k < fast.size(); ++k) {
            CHECK(fast[k].vector == slow[k].vector);
            CHECK(std::fabs(fast[k].xi - slow[k].xi) <= 1e-7);
            CHECK(std::fabs(fast[k].t - slow[k].t) <= 1e-7);
            CHECK(std::fabs(fast[k].s - slow[k].s) <= 1e-7);
        }
    }
    CHECK_THROWS_AS(direct_crossing_oracle(OrbitSpec{GroupElement{}, 0.0, 2000.0}),
                    capacity_error);
}

TEST_CASE("deformed section scales to a flowed orbit") {
    for (std::uint64_t idx = 0; idx < 5; ++idx) {
        const GroupElement g0 = haar_start(202, idx);
        for (const double R : {1.0, 2.0}) {
            const double T = 40.0 * std::exp(R);
            const auto deep = hit_process(OrbitSpec{g0, R, T});
            const auto flowed =
                hit_process(OrbitSpec{geodesic_flow(g0, -R), 0.0, T * std::exp(-R)});
            REQUIRE(deep.size() == flowed.size());
            for (std::size_t k = 0; k < deep.size(); ++k) {
                CHECK(deep[k].vector == flowed[k].vector);
                CHECK(std::fabs(deep[k].xi * std::exp(-R) - flowed[k].xi) <= 1e-9);
                CHECK(std::fabs(deep[k].t - flowed[k].t) <= 1e-9);
                CHECK(std::fabs(deep[k].s - flowed[k].s) <= 1e-9);
            }
        }
    }
}

TEST_CASE("pointwise height against exhaustive minimisation") {
    RandomStream rs(41, 0);
    for (int i = 0; i < 20; ++i) {
        const GroupElement g =
            iwasawa_encode({rs.uniform(-2.0, 2.0), std::exp(rs.uniform(-1.5, 1.5)),
                            rs.uniform(0.0, 6.28)});
        const double s = rs.uniform(-3.0, 3.0);
        const UpperHalfPoint z = mobius_apply(horocycle_plus(g, s), {0.0, 1.0});
        double qmin = std::numeric_limits<double>::infinity();
        for (int c = -200; c <= 200; ++c)
            for (int d = -200; d <= 200; ++d) {
                if (c == 0 && d == 0) continue;
                const double re = c * z.x + d, im = c * z.y;
                qmin = std::min(qmin, re * re + im * im);
            }
        const double expect = std::log(z.y) - std::log(qmin);
        CHECK(std::fabs(height_at_time(g, s) - expect) <= 1e-10);
    }
    // every point of the surface has height >= log(sqrt(3)/2)
    const double floor_height = std::log(std::sqrt(3.0) / 2.0);
    for (int i = 0; i < 50; ++i) {
        const GroupElement g = haar_start(42, std::uint64_t(i));
        CHECK(height_at_time(g, 0.0) >= floor_height - 1e-12);
    }
}

TEST_CASE("supremum over the orbit window") {
    const SupResult idsup = sup_excursion_height_detail(GroupElement{}, 30.0);
    double grid_max = -1e300;
    double grid_arg = 0.0;
    for (int k = 0; k <= 30000; ++k) {
        const double s = double(k) * 1e-3;
        const double h = height_at_time(GroupElement{}, s);
        if (h > grid_max) { grid_max = h; grid_arg = s; }
    }
    CHECK(idsup.value >= grid_max - 1e-12);
    CHECK(idsup.value <= grid_max + 1e-6);
    CHECK(std::fabs(idsup.argmax - grid_arg) <= 2e-3);
    if (idsup.interior)
        CHECK(std::fabs(height_at_time(GroupElement{}, idsup.argmax) - idsup.value) <= 1e-10);

    const GroupElement g0 = haar_start(7, 0);
    const SupResult rsup = sup_excursion_height_detail(g0, 50.0);
    double rmax = -1e300;
    for (int k = 0; k <= 50000; ++k)
        rmax = std::max(rmax, height_at_time(g0, double(k) * 1e-3));
    CHECK(rsup.value >= rmax - 1e-12);
    CHECK(rsup.value <= rmax + 1e-6);

    // endpoint-dominated window: start deep in the cusp
    const GroupElement deep = geodesic_flow(GroupElement{}, 3.0);
    const SupResult dsup = sup_excursion_height_detail(deep, 10.0);
    CHECK(dsup.value >= 3.0 - 1e-12);

    CHECK_THROWS_AS(sup_excursion_height(OrbitSpec{GroupElement{}, 1.0, 30.0}),
                    std::invalid_argument);
    CHECK(sup_excursion_height(OrbitSpec{GroupElement{}, 0.0, 30.0}) ==
          doctest::Approx(idsup.value).epsilon(1e-15));
}

TEST_CASE("return times to the section") {
    // from the identity configuration the next crossing is at time 1
    CHECK(return_time_forward(0.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    const auto first = hit_process(OrbitSpec{GroupElement{}, 0.0, 2.0});
    REQUIRE(!first.empty());
    CHECK(first[0].xi == 1.0);

    RandomStream rs(55, 0);
    for (int i = 0; i < 25; ++i) {
        const double s = rs.next_double();
        const double t = -std::log1p(-rs.next_double());
        const double fwd = return_time_forward(s, t, 0.0);
        const double bwd = return_time_backward(s, t, 0.0);
        CHECK(fwd > 0.0);
        CHECK(bwd > 0.0);
    }

    // a deep start cannot return within a tiny horizon
    CHECK_THROWS_AS(return_time_forward(0.5, 8.0, 0.0, 2.0), horizon_error);
    CHECK_THROWS_AS(return_time_forward(0.5, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("first hit from a generic start") {
    for (std::uint64_t idx = 0; idx < 10; ++idx) {
        const GroupElement g0 = haar_start(66, idx);
        const HitEvent ev = first_hit_event(g0, 6.0);
        CHECK(ev.xi > 0.0);
        CHECK(ev.t >= 0.0);
        CHECK(ev.j == 1);
        // consistent with a long-enough fixed horizon
        const auto events = hit_process(OrbitSpec{g0, 6.0, ev.xi * 1.5});
        REQUIRE(!events.empty());
        CHECK(events[0].vector == ev.vector);
        CHECK(events[0].xi == ev.xi);
    }
}
