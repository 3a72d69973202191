#include "horoxt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <utility>

#include "horoxt/errors.hpp"

namespace horoxt {

void SamplerSpec::validate() const {
    if (kind == SamplerKind::horocycle_segment && !(alpha < beta))
        throw std::invalid_argument("SamplerSpec: segment needs alpha < beta");
}

namespace detail {

IwasawaCoords haar_fundamental_draw(RandomStream& stream) {
    for (;;) {
        const double u = stream.uniform(-0.5, 0.5);
        const double v = std::sqrt(3.0) / (2.0 * (1.0 - stream.next_double()));
        if (u * u + v * v >= 1.0) {
            const double theta = stream.uniform(0.0, std::numbers::pi);
            return {u, v, theta};
        }
    }
}

}

GroupElement sample_initial(const SamplerSpec& spec, std::uint64_t index) {
    spec.validate();
    RandomStream stream(spec.seed, index);
    if (spec.kind == SamplerKind::haar_fundamental)
        return iwasawa_encode(detail::haar_fundamental_draw(stream));
    return horocycle_minus(spec.base, stream.uniform(spec.alpha, spec.beta));
}

EmpiricalDistribution EmpiricalDistribution::from_samples(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    EmpiricalDistribution e;
    e.samples = std::move(xs);
    return e;
}

double EmpiricalDistribution::ecdf(double x) const {
    const auto it = std::upper_bound(samples.begin(), samples.end(), x);
    return double(it - samples.begin()) / double(samples.size());
}

double ks_distance(const EmpiricalDistribution& e, const std::function<double(double)>& cdf) {
    const std::size_t n = e.n();
    if (n == 0) throw std::invalid_argument("ks_distance: empty sample");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double F = cdf(e.samples[i]);
        worst = std::max(worst, std::fabs(F - double(i) / double(n)));
        worst = std::max(worst, std::fabs(double(i + 1) / double(n) - F));
    }
    return worst;
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    if (a.n() == 0 || b.n() == 0) throw std::invalid_argument("ks_distance: empty sample");
    double worst = 0.0;
    for (double x : a.samples) worst = std::max(worst, std::fabs(a.ecdf(x) - b.ecdf(x)));
    for (double x : b.samples) worst = std::max(worst, std::fabs(a.ecdf(x) - b.ecdf(x)));
    return worst;
}

unsigned worker_count() {
    if (const char* env = std::getenv("HOROXT_THREADS")) {
        const long k = std::atol(env);
        if (k >= 1) return unsigned(std::min(k, 256L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_lock;
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> hold(error_lock);
                if (!first_error) first_error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

EmpiricalDistribution experiment_extreme(const SamplerSpec& spec, double T, std::size_t n,
                                         ExtremeMode mode) {
    spec.validate();
    if (!(T >= 10.0)) throw std::invalid_argument("experiment_extreme: T must be >= 10");
    if (n < 1) throw std::invalid_argument("experiment_extreme: n must be >= 1");
    const double lnT = std::log(T);
    std::vector<double> values(n);
    parallel_for_index(n, [&](std::size_t i) {
        const GroupElement g0 = sample_initial(spec, i);
        if (mode == ExtremeMode::full_sup) {
            values[i] = sup_excursion_height_detail(g0, T).value - lnT;
        } else {
            OrbitSpec orbit;
            orbit.g0 = g0;
            orbit.T = T;
            double best = -std::numeric_limits<double>::infinity();
            for (const HitEvent& ev : hit_process(orbit)) best = std::max(best, ev.t);
            values[i] = best - lnT;
        }
    });
    return EmpiricalDistribution::from_samples(std::move(values));
}

EmpiricalDistribution experiment_first_hit(const SamplerSpec& spec, double R, std::size_t n,
                                           FirstHitMode mode) {
    spec.validate();
    if (!(R >= 3.0)) throw std::invalid_argument("experiment_first_hit: R must be >= 3");
    if (n < 1) throw std::invalid_argument("experiment_first_hit: n must be >= 1");
    const double emR = std::exp(-R);
    std::vector<double> values(n);
    parallel_for_index(n, [&](std::size_t i) {
        const GroupElement g0 = sample_initial(spec, i);
        const HitEvent ev = first_hit_event(g0, R);
        values[i] = emR * (mode == FirstHitMode::hit ? ev.xi : ev.xi_entry);
    });
    return EmpiricalDistribution::from_samples(std::move(values));
}

EmpiricalDistribution farey_gap_oracle(long Q) {
    if (Q < 100) throw std::invalid_argument("farey_gap_oracle: Q must be >= 100");
    if (Q > 100000) throw capacity_error("farey_gap_oracle: Q exceeds the memory cap 1e5");
    const double Q2 = double(Q) * double(Q);
    std::vector<double> gaps;
    gaps.reserve(std::size_t(3.1 * Q2 / (std::numbers::pi * std::numbers::pi)) + 16);
    // Neighbour recurrence through the order-Q Farey sequence; each consecutive
    // pair a/b < c/d contributes the gap 1/(bd).
    long a = 0, b = 1, c = 1, d = Q;
    for (;;) {
        gaps.push_back(Q2 / (double(b) * double(d)));
        if (c == 1 && d == 1) break;
        const long k = (Q + b) / d;
        const long e = k * c - a;
        const long f = k * d - b;
        a = c;
        b = d;
        c = e;
        d = f;
    }
    return EmpiricalDistribution::from_samples(std::move(gaps));
}

std::vector<long long> siegel_counts(const Region& f, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("siegel_counts: n must be >= 1");
    std::vector<long long> counts(n);
    parallel_for_index(n, [&](std::size_t i) {
        RandomStream stream(seed, i);
        const GroupElement g = iwasawa_encode(detail::haar_fundamental_draw(stream));
        counts[i] = count_in_dilate(LatticeBasis::from_group(g), f, 1.0);
    });
    return counts;
}

double siegel_check(const Region& f, std::size_t n, std::uint64_t seed) {
    if (!(f.area == f.area))
        throw std::invalid_argument("siegel_check: region area unknown");
    const std::vector<long long> counts = siegel_counts(f, n, seed);
    double total = 0.0;
    for (long long k : counts) total += double(k);
    const double density = 6.0 / (std::numbers::pi * std::numbers::pi);
    return total / double(n) - density * f.area;
}

SectionSample sample_section_point(std::uint64_t seed, std::uint64_t index) {
    RandomStream stream(seed, index);
    const double s = stream.next_double();
    const double t = -std::log1p(-stream.next_double());
    return {s, t};
}

EmpiricalDistribution sample_return_times(double R, std::size_t n, std::uint64_t seed,
                                          bool backward) {
    if (n < 1) throw std::invalid_argument("sample_return_times: n must be >= 1");
    const double emR = std::exp(-R);
    std::vector<double> values(n);
    parallel_for_index(n, [&](std::size_t i) {
        const SectionSample p = sample_section_point(seed, i);
        const double eta = backward ? return_time_backward(p.s, p.t, R)
                                    : return_time_forward(p.s, p.t, R);
        values[i] = emR * eta;
    });
    return EmpiricalDistribution::from_samples(std::move(values));
}

double mean_return_time(double R, std::size_t n, std::uint64_t seed) {
    const EmpiricalDistribution e = sample_return_times(R, n, seed);
    double total = 0.0;
    for (double x : e.samples) total += x;
    return total / double(e.n());
}

double hit_intensity(double X, std::size_t n, std::uint64_t seed) {
    if (!(X > 0.0)) throw std::invalid_argument("hit_intensity: X must be positive");
    if (n < 1) throw std::invalid_argument("hit_intensity: n must be >= 1");
    SamplerSpec haar;
    haar.seed = seed;
    std::vector<double> counts(n);
    parallel_for_index(n, [&](std::size_t i) {
        const GroupElement g0 = sample_initial(haar, i);
        OrbitSpec orbit;
        orbit.g0 = g0;
        orbit.T = X;
        counts[i] = double(hit_process(orbit).size());
    });
    double total = 0.0;
    for (double k : counts) total += k;
    return total / (double(n) * X);
}

}
