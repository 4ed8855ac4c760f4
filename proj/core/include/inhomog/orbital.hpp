#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "inhomog/ifs.hpp"

namespace inhomog {

struct Budget {
    std::uint64_t max_pieces = 10'000'000;
};

struct OrbitalPiece {
    Word word;
    Primitive shape;
    double lip = 1.0; // contraction ratio of the generating word
};

// Finite truncation of the orbital set: C together with its images under
// all words up to the chosen truncation rule.
struct OrbitalApprox {
    std::vector<OrbitalPiece> pieces;
    std::string truncation; // human-readable rule, e.g. "depth=4"
    bool includes_root = true;
};

// C union S_w(C) over all words with |w| <= depth. Piece count is
// sum_{k<=depth} N^k * |C|.
OrbitalApprox orbital_to_depth(const IfsSystem& ifs, const CondensationSet& c,
                               int depth, Budget budget = {});

// Complete prefix-free stopping: words with Lip(S_w) < delta <= Lip(S_w-).
struct StoppingSet {
    double delta = 1.0;
    std::vector<Word> words;
    std::vector<double> lips; // aligned with words
};

StoppingSet stopping_set(const IfsSystem& ifs, double delta, Budget budget = {});

// {S_w(X) : w in the delta-stopping}, each as the bounding rect of the
// mapped square: an exact cylinder for axis-preserving systems, a valid
// upper-bound cover otherwise.
std::vector<Primitive> homogeneous_cover(const IfsSystem& ifs, double delta,
                                         Budget budget = {});

// One-sided gap between the depth-(K+1) orbital approximation and
// (depth-K orbital) union (homogeneous cover at (max lip)^K), both sampled
// as point clouds at pitch tied to that scale. Checks that deepening the
// truncation only adds points near the homogeneous attractor.
struct StructureGap {
    double gap = 0.0;
    double scale = 1.0;           // (max lip)^K
    double bound_constant = 0.0;  // gap / scale
};

StructureGap structure_gap(const IfsSystem& ifs, const CondensationSet& c,
                           int depth, Budget budget = {});

// CSV rows: word,kind,ax,ay,bx,by,lip (points repeat their coordinate).
void write_orbital_csv(std::ostream& os, const OrbitalApprox& approx);

} // namespace inhomog
