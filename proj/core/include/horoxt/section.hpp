#pragma once

#include <cstddef>
#include <vector>

#include "horoxt/lattice.hpp"
#include "horoxt/sl2.hpp"

// The cusp section at level R is crossed once per excursion, at the excursion's peak.
// Crossings of the orbit s -> g0 * [[1,0],[-s,1]] in (0,T] are read off the primitive
// vectors of Z^2 * g0 * diag(e^{-R/2}, e^{R/2}) inside the aperture triangle T e^{-R}.

namespace horoxt {

struct HitEvent {
    std::size_t j;          // 1-based, in hitting-time order
    double xi;              // hitting time (the excursion peak)
    double s;               // horizontal impact parameter, in [0,1)
    double t;               // peak height above level R
    double xi_entry;        // xi - delta, entry into the projected neighbourhood
    double delta;           // half sejour time, sqrt(e^t - 1)
    PrimitiveVector vector; // coset label
};

struct OrbitSpec {
    GroupElement g0{};
    double R = 0.0;
    double T = 0.0;
    void validate() const;   // T > 0, T e^{-R} <= 1e9
};

// Half sejour above the peak's own entry level.
double sejour(double t);

std::vector<HitEvent> hit_process(const OrbitSpec& spec,
                                  std::size_t cap = default_enumeration_cap);

// First return times to the section from the section point (s, t) at level R.
double return_time_forward(double s, double t, double R, double cap_X = 1e8);
double return_time_backward(double s, double t, double R, double cap_X = 1e8);

// First crossing of the level-R section along the forward orbit of g0, found by
// doubling the enumeration aperture.
HitEvent first_hit_event(const GroupElement& g0, double R, double cap_X = 1e8);

// Cusp height max_gamma log Im(gamma z(s)) of the time-s orbit point.
double height_at_time(const GroupElement& g0, double s);

struct SupResult {
    double value;
    double argmax;      // hit time of the winning peak, or the winning endpoint
    bool interior;      // true when an interior excursion peak wins
};

SupResult sup_excursion_height_detail(const GroupElement& g0, double T);

// Supremum of the cusp height over the orbit segment [0, T]; spec.R must be 0.
double sup_excursion_height(const OrbitSpec& spec);

// Independent verification path: per-candidate scanning of the branch heights
// s -> log Im(gamma z(s)) with golden-section refinement of each peak.  Requires
// T e^{-R} <= 1e3.
std::vector<HitEvent> direct_crossing_oracle(const OrbitSpec& spec);

}
