#pragma once

#include <map>
#include <vector>

#include "pathcon/graph.hpp"

namespace pathcon {

struct SeparationWitness {
    int a;
    int b;
    std::vector<int> z;
};

// One m-separation witness per missing edge of a reference MAG, plus the
// reference's full separation signature for exact equivalence checks.
class SeparationTable {
public:
    SeparationTable() = default;

    const MixedGraph& reference() const { return ref_; }
    const std::map<std::pair<int, int>, SeparationWitness>& witnesses() const {
        return witnesses_;
    }
    const std::vector<bool>& signature() const { return signature_; }

    friend SeparationTable build_separation_table(const MixedGraph& m_ref);

private:
    MixedGraph ref_;
    std::map<std::pair<int, int>, SeparationWitness> witnesses_;
    std::vector<bool> signature_;
};

// Def 2.1 style m-separation on a MAG via blocked/active reachability with
// ancestor-of-Z precomputation. Throws on circle marks or overlapping
// arguments.
bool is_m_separated(const MixedGraph& m, int a, int b, const std::vector<int>& z);

// Every unordered pair / conditioning set combination, bit per (pair, z),
// pairs in index order, subsets of the remaining vertices in increasing-size
// then lexicographic order.
std::vector<bool> separation_signature(const MixedGraph& m);

// True iff m1 and m2 agree on m-separation for every pair and every
// conditioning set. Requires identical vertex sets.
bool markov_equivalent(const MixedGraph& m1, const MixedGraph& m2);

// Early-exit comparison of m's separations against a precomputed signature.
bool matches_signature(const MixedGraph& m, const std::vector<bool>& sig);

// Every non-adjacent pair has some separating set.
bool is_maximal_mag(const MixedGraph& m);

// First witness (subsets by increasing size, then lexicographic) for every
// non-adjacent pair; throws InvariantError if some pair has none (the input
// is not maximal).
SeparationTable build_separation_table(const MixedGraph& m_ref);

// Fast witness pass, then the authoritative full-equivalence check against
// the table's reference.
bool separations_preserved(const SeparationTable& table, const MixedGraph& m);

}  // namespace pathcon
