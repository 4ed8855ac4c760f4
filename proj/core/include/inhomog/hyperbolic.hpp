#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "inhomog/orbital.hpp" // Budget

namespace inhomog {

using Complex = std::complex<double>;

// Orientation-preserving automorphism of the unit disk in SU(1,1) normal
// form: z |-> (a z + b) / (conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1.
struct MoebiusMap {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};

    Complex operator()(Complex z) const {
        return (a * z + b) / (std::conj(b) * z + std::conj(a));
    }
};

// Normalizes the pair to |a|^2 - |b|^2 = 1; throws domain_error when the
// coefficients do not define a disk automorphism of this form.
MoebiusMap moebius(Complex a, Complex b);

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);
MoebiusMap inverse(const MoebiusMap& m);
bool is_identity(const MoebiusMap& m, double tol = 1e-12);

// Hyperbolic distance from the origin under |ds| = 2|dz|/(1-|z|^2):
// d(0,z) = log((1+|z|)/(1-|z|)). Requires |z| < 1.
double dist_to_origin(Complex z);

// Hyperbolic translation fixing -1 (repelling) and +1 (attracting) with
// multiplier alpha > 1; sends 0 to (alpha-1)/(alpha+1).
MoebiusMap hyperbolic_translation(double alpha);

// z |-> e^{i theta} z.
MoebiusMap disk_rotation(double theta);

enum class GroupKind { cyclic, free_words };

// cyclic: powers of a single generator. free_words: reduced words over the
// generators and their inverses; discreteness of the input is not verified.
struct GroupPresentation {
    GroupKind kind = GroupKind::cyclic;
    std::vector<MoebiusMap> generators;
};

GroupPresentation cyclic_group(const MoebiusMap& g);
GroupPresentation free_group(std::vector<MoebiusMap> gens);

struct OrbitPointSet {
    std::vector<Complex> points;
    std::vector<std::string> labels; // aligned: power "m" or word, plus ":n" for set orbits
};

// Orbit of 0 under group elements up to the given depth (power for cyclic,
// reduced word length for free), deduplicated at 1e-12.
OrbitPointSet orbit_points(const GroupPresentation& g, int depth, Budget budget = {});

// Truncated Poincare series sum ((1-|g0|)/(1+|g0|))^s over the same
// elements, identity included.
double poincare_series(const GroupPresentation& g, double s, int depth,
                       Budget budget = {});

// Exponent estimate as the slope of log N(R) against R, where N(R) counts
// orbit points within hyperbolic distance R of the origin. Requires the
// radius range to span at least three doublings.
struct ExponentFit {
    double exponent = 0.0;
    std::vector<double> per_step;
    std::vector<double> radii;
    std::vector<std::uint64_t> counts;
};

ExponentFit poincare_exponent(const GroupPresentation& g, int depth,
                              Budget budget = {});

// Union of g(C) over the truncated group, for a finite C in the open disk.
OrbitPointSet orbit_of_set(const GroupPresentation& g, std::span<const Complex> c,
                           int depth, Budget budget = {});

// CSV rows: re,im,label.
void write_orbit_csv(std::ostream& os, const OrbitPointSet& orbit);

} // namespace inhomog
