#include "pathcon/separation.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "pathcon/errors.hpp"

namespace pathcon {

namespace {

void require_no_circles(const MixedGraph& m) {
    for (auto [u, v] : m.edges())
        if (m.mark(u, v) == Mark::Circle || m.mark(v, u) == Mark::Circle)
            throw InvariantError("m-separation requires a fully oriented graph (circle mark on " +
                                 m.name(u) + " -- " + m.name(v) + ")");
}

// Calls fn for every subset of `cands`, by increasing size then
// lexicographically; stops early when fn returns true. Returns whether fn
// ever returned true.
template <typename Fn>
bool for_each_subset(const std::vector<int>& cands, Fn&& fn) {
    int m = static_cast<int>(cands.size());
    std::vector<int> pick;
    for (int k = 0; k <= m; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            pick.clear();
            for (int i : idx) pick.push_back(cands[i]);
            if (fn(pick)) return true;
            if (k == 0) break;
            int i = k - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

}  // namespace

bool is_m_separated(const MixedGraph& m, int a, int b, const std::vector<int>& z) {
    int n = m.vertex_count();
    if (a < 0 || a >= n || b < 0 || b >= n)
        throw std::invalid_argument("vertex index out of range");
    if (a == b) throw std::invalid_argument("m-separation requires distinct endpoints");
    require_no_circles(m);
    std::vector<char> in_z(n, 0);
    for (int v : z) {
        if (v == a || v == b)
            throw std::invalid_argument("conditioning set overlaps the endpoints");
        in_z[v] = 1;
    }
    if (m.adjacent(a, b)) return false;

    // Vertices with a directed path into some member of Z (or in Z).
    std::vector<char> anc_z(n, 0);
    for (int v = 0; v < n; ++v) {
        if (!in_z[v]) continue;
        for (int u = 0; u < n; ++u)
            if (is_ancestor(m, u, v)) anc_z[u] = 1;
    }

    // Reachability over states (vertex, mark of the incoming edge at it).
    std::vector<char> seen(static_cast<size_t>(n) * 2, 0);
    std::deque<std::pair<int, Mark>> queue;
    for (int w : m.neighbors(a)) {
        if (w == b) return false;  // unreachable: adjacency handled above
        Mark in = m.mark(a, w);
        if (!seen[w * 2 + (in == Mark::Arrow)]) {
            seen[w * 2 + (in == Mark::Arrow)] = 1;
            queue.emplace_back(w, in);
        }
    }
    while (!queue.empty()) {
        auto [v, in] = queue.front();
        queue.pop_front();
        for (int w : m.neighbors(v)) {
            Mark out = m.mark(w, v);  // mark at v on edge v--w
            bool collider = in == Mark::Arrow && out == Mark::Arrow;
            bool passes = collider ? anc_z[v] != 0 : in_z[v] == 0;
            if (!passes) continue;
            if (w == b) return false;
            Mark next_in = m.mark(v, w);
            if (!seen[w * 2 + (next_in == Mark::Arrow)]) {
                seen[w * 2 + (next_in == Mark::Arrow)] = 1;
                queue.emplace_back(w, next_in);
            }
        }
    }
    return true;
}

std::vector<bool> separation_signature(const MixedGraph& m) {
    std::vector<bool> sig;
    int n = m.vertex_count();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            std::vector<int> cands;
            for (int v = 0; v < n; ++v)
                if (v != a && v != b) cands.push_back(v);
            for_each_subset(cands, [&](const std::vector<int>& z) {
                sig.push_back(is_m_separated(m, a, b, z));
                return false;
            });
        }
    }
    return sig;
}

bool markov_equivalent(const MixedGraph& m1, const MixedGraph& m2) {
    if (m1.names() != m2.names())
        throw std::invalid_argument("Markov equivalence requires identical vertex sets");
    int n = m1.vertex_count();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            std::vector<int> cands;
            for (int v = 0; v < n; ++v)
                if (v != a && v != b) cands.push_back(v);
            bool differ = for_each_subset(cands, [&](const std::vector<int>& z) {
                return is_m_separated(m1, a, b, z) != is_m_separated(m2, a, b, z);
            });
            if (differ) return false;
        }
    }
    return true;
}

bool is_maximal_mag(const MixedGraph& m) {
    int n = m.vertex_count();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (m.adjacent(a, b)) continue;
            std::vector<int> cands;
            for (int v = 0; v < n; ++v)
                if (v != a && v != b) cands.push_back(v);
            bool separable = for_each_subset(cands, [&](const std::vector<int>& z) {
                return is_m_separated(m, a, b, z);
            });
            if (!separable) return false;
        }
    }
    return true;
}

bool matches_signature(const MixedGraph& m, const std::vector<bool>& sig) {
    size_t bit = 0;
    int n = m.vertex_count();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            std::vector<int> cands;
            for (int v = 0; v < n; ++v)
                if (v != a && v != b) cands.push_back(v);
            bool differ = for_each_subset(cands, [&](const std::vector<int>& z) {
                return is_m_separated(m, a, b, z) != sig[bit++];
            });
            if (differ) return false;
        }
    }
    return true;
}

SeparationTable build_separation_table(const MixedGraph& m_ref) {
    validate_class(m_ref);
    SeparationTable table;
    table.ref_ = m_ref;
    int n = m_ref.vertex_count();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (m_ref.adjacent(a, b)) continue;
            std::vector<int> cands;
            for (int v = 0; v < n; ++v)
                if (v != a && v != b) cands.push_back(v);
            bool found = for_each_subset(cands, [&](const std::vector<int>& z) {
                if (!is_m_separated(m_ref, a, b, z)) return false;
                table.witnesses_[{a, b}] = SeparationWitness{a, b, z};
                return true;
            });
            if (!found)
                throw InvariantError("no separating set for missing edge " + m_ref.name(a) +
                                     " -- " + m_ref.name(b) + ": input is not a valid MAG");
        }
    }
    table.signature_ = separation_signature(m_ref);
    return table;
}

bool separations_preserved(const SeparationTable& table, const MixedGraph& m) {
    const MixedGraph& ref = table.reference();
    if (m.names() != ref.names())
        throw std::invalid_argument("vertex set mismatch against reference");
    for (auto [u, v] : ref.edges())
        if (!m.adjacent(u, v)) throw std::invalid_argument("skeleton mismatch against reference");
    for (auto [u, v] : m.edges())
        if (!ref.adjacent(u, v)) throw std::invalid_argument("skeleton mismatch against reference");

    for (const auto& [pair, w] : table.witnesses())
        if (!is_m_separated(m, w.a, w.b, w.z)) return false;

    // Witnesses intact; the full signature is the authoritative test.
    return matches_signature(m, table.signature());
}

}  // namespace pathcon
