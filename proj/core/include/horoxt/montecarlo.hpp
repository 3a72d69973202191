#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "horoxt/lattice.hpp"
#include "horoxt/rng.hpp"
#include "horoxt/section.hpp"
#include "horoxt/sl2.hpp"

namespace horoxt {

enum class SamplerKind { haar_fundamental, horocycle_segment };

// Initial laws for the limit-theorem experiments: exact Haar on the fundamental
// domain, or the uniform measure on a fixed stable horocycle segment.
struct SamplerSpec {
    SamplerKind kind = SamplerKind::haar_fundamental;
    GroupElement base{};
    double alpha = 0.0;
    double beta = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

namespace detail {
// u uniform on (-1/2,1/2), v by inverse CDF of the v^{-2} profile on (sqrt3/2, inf),
// rejected until u^2+v^2 >= 1; theta uniform on [0,pi).
IwasawaCoords haar_fundamental_draw(RandomStream& stream);
}

// Deterministic function of (spec.seed, index), independent of call order.
GroupElement sample_initial(const SamplerSpec& spec, std::uint64_t index);

struct EmpiricalDistribution {
    std::vector<double> samples;   // ascending

    static EmpiricalDistribution from_samples(std::vector<double> xs);
    std::size_t n() const { return samples.size(); }
    double ecdf(double x) const;   // fraction of samples <= x
};

// One-sample: sup over sample points of both one-sided ECDF gaps against cdf.
double ks_distance(const EmpiricalDistribution& e, const std::function<double(double)>& cdf);
// Two-sample: sup of |ECDF_a - ECDF_b| over the pooled sample points.
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

// HOROXT_THREADS caps the pool; defaults to hardware parallelism.
unsigned worker_count();

// Runs fn(i) for i in [0,n) on the pool; fn must write only to its own slot.
// Per-index randomness keeps results identical for any worker count.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

enum class ExtremeMode { full_sup, peaks_only };

// Samples of sup-excursion height minus ln T over orbit segments [0,T].  The
// peaks-only mode keeps the largest section hit at level 0 instead of the full
// supremum; segments with no hit yield -infinity.
EmpiricalDistribution experiment_extreme(const SamplerSpec& spec, double T, std::size_t n,
                                         ExtremeMode mode = ExtremeMode::full_sup);

enum class FirstHitMode { hit, entry };

// Samples of the scaled first hitting time e^{-R} xi_1 of the level-R section
// (entry mode: scaled xi_1 - delta_1).
EmpiricalDistribution experiment_first_hit(const SamplerSpec& spec, double R, std::size_t n,
                                           FirstHitMode mode = FirstHitMode::hit);

// All Farey gaps of order Q on [0,1), scaled by Q^2.
EmpiricalDistribution farey_gap_oracle(long Q);

// Primitive-point counts of n Haar-sampled lattices inside f; the check returns
// the mean count minus (6/pi^2) area(f).
std::vector<long long> siegel_counts(const Region& f, std::size_t n, std::uint64_t seed);
double siegel_check(const Region& f, std::size_t n, std::uint64_t seed);

struct SectionSample { double s, t; };

// The invariant law on the section: s uniform on [0,1), t exponential(1).
SectionSample sample_section_point(std::uint64_t seed, std::uint64_t index);

// Scaled return times e^{-R} eta from section-sampled starts.
EmpiricalDistribution sample_return_times(double R, std::size_t n, std::uint64_t seed,
                                          bool backward = false);
double mean_return_time(double R, std::size_t n, std::uint64_t seed);

// Mean hit count per unit aperture over Haar starts; tends to 3/pi^2.
double hit_intensity(double X, std::size_t n, std::uint64_t seed);

}
