#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cpic/cluster.hpp"

namespace cpic {

enum class TieBreak { Canonical, Randomized };

struct BasisStep {
    int index = 0;
    NodeId cluster = -1;
    Rational exponent;  // e_i
    Centre centre;
};

struct Differential {
    Rational exponent;            // power of the uniformiser
    std::vector<Centre> factors;  // (x - z_{s_0}) ... (x - z_{s_{i-1}})

    std::string render() const;   // e.g. "p^8 * (x-0) * dx/2y"
};

struct BasisTraceStep {
    std::vector<std::pair<NodeId, Rational>> values;  // per proper cluster
    NodeId chosen = -1;
};

struct BasisResult {
    std::vector<BasisStep> steps;
    std::vector<Differential> differentials;
    std::vector<BasisTraceStep> trace;
    std::vector<std::string> warnings;

    Rational sum_e() const;
};

// Greedy construction of s_0..s_{g-1}: step i picks the proper cluster
// maximising nu_S/2 - sum_{j<i} d_{s_j ^ S} - d_S. A tie between nested
// clusters goes to the outer one; a tie between incomparable clusters goes
// to the larger cluster, then to the smaller minimal root index (or, with
// TieBreak::Randomized, to a uniformly random inclusion-maximal maximiser).
// Requires genus >= 2, all depths >= 0 and vcf >= 0.
BasisResult basis_sequence(const ClusterPicture& pic);
BasisResult basis_sequence(const ClusterPicture& pic, TieBreak tie, uint64_t seed);

// gamma(s) = #{ i : s_i inside-or-equal s } for every proper cluster s.
std::map<NodeId, int> gamma_counts(const ClusterPicture& pic, const BasisResult& basis);

// nu_S/2 - sum_{j<step} d_{s_j ^ S} - d_S for a principal cluster S;
// minus this value bounds the vanishing order of the step's differential
// along the component attached to S, and e_step >= it by maximality.
Rational vanishing_bound(const ClusterPicture& pic, NodeId principal, int step,
                         const BasisResult& basis);

} // namespace cpic
