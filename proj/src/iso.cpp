#include "hgk/iso.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hgk {

namespace {

template <class SA, class SB>
struct pair_compare {
    static bool eq(const SA& a, const SB& b, double tol, double& dev) {
        double d = std::abs(to_double(a) - to_double(b));
        dev = std::max(dev, d);
        return d <= tol;
    }
};

template <>
struct pair_compare<Rat, Rat> {
    static bool eq(const Rat& a, const Rat& b, double, double&) { return a == b; }
};

long long quant(double x) { return llround(x * 1e6); }

template <class S>
std::vector<std::vector<long long>> invariant_keys(const HypergroupT<S>& H, const Config& cfg) {
    const int n = H.size();
    MeasureT<S> haar = haar_measure(H, cfg);
    std::vector<double> w;
    for (const auto& v : haar.weights()) w.push_back(to_double(v));
    std::vector<std::vector<long long>> keys(n);
    for (int i = 0; i < n; ++i) {
        auto& key = keys[i];
        key.push_back(i == H.identity());
        key.push_back(H.inv(i) == i);
        key.push_back(quant(w[i]));
        key.push_back(quant(to_double(H.c(i, H.inv(i), H.identity()))));
        std::vector<long long> diag, pair;
        for (int k = 0; k < n; ++k) {
            diag.push_back(quant(to_double(H.c(i, i, k))));
            pair.push_back(quant(to_double(H.c(i, H.inv(i), k))));
        }
        std::sort(diag.begin(), diag.end());
        std::sort(pair.begin(), pair.end());
        key.insert(key.end(), diag.begin(), diag.end());
        key.insert(key.end(), pair.begin(), pair.end());
    }
    return keys;
}

} // namespace

template <class SA, class SB>
std::optional<Isomorphism> find_isomorphism(const HypergroupT<SA>& A, const HypergroupT<SB>& B,
                                            double tol, const Config& cfg) {
    const int n = A.size();
    if (B.size() != n) return std::nullopt;

    auto keys_a = invariant_keys(A, cfg);
    auto keys_b = invariant_keys(B, cfg);
    std::map<std::vector<long long>, std::vector<int>> classes_b;
    for (int i = 0; i < n; ++i) classes_b[keys_b[i]].push_back(i);

    std::vector<std::vector<int>> candidates(n);
    for (int i = 0; i < n; ++i) {
        auto it = classes_b.find(keys_a[i]);
        if (it == classes_b.end()) return std::nullopt;
        candidates[i] = it->second;
    }

    // Most-constrained-first assignment order.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (candidates[a].size() != candidates[b].size())
            return candidates[a].size() < candidates[b].size();
        return a < b;
    });

    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    std::vector<int> assigned;
    double dev = 0.0;
    long long nodes = 0;
    const long long node_cap = 2'000'000;

    auto consistent = [&](int u, int v) {
        int iu = A.inv(u);
        if (map[iu] >= 0 && map[iu] != B.inv(v)) return false;
        double local = dev;
        for (int x : assigned)
            for (int y : assigned) {
                if (x == u || y == u) {
                    for (int z : assigned)
                        if (!pair_compare<SA, SB>::eq(A.c(x, y, z),
                                                      B.c(x == u ? v : map[x], y == u ? v : map[y], map[z]),
                                                      tol, local))
                            return false;
                } else {
                    if (!pair_compare<SA, SB>::eq(A.c(x, y, u), B.c(map[x], map[y], v), tol, local))
                        return false;
                }
            }
        dev = local;
        return true;
    };

    auto dfs = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == order.size()) return true;
        if (++nodes > node_cap) return false;
        int u = order[depth];
        if (map[u] >= 0) return self(self, depth + 1); // forced earlier via involution
        for (int v : candidates[u]) {
            if (used[v]) continue;
            double saved_dev = dev;
            if (!consistent(u, v)) {
                dev = saved_dev;
                continue;
            }
            map[u] = v;
            used[v] = 1;
            assigned.push_back(u);
            bool forced = false;
            int iu = A.inv(u);
            // Propagate the involution image when it is still free.
            if (iu != u && map[iu] < 0 && !used[B.inv(v)]) {
                double saved2 = dev;
                if (consistent(iu, B.inv(v))) {
                    map[iu] = B.inv(v);
                    used[B.inv(v)] = 1;
                    assigned.push_back(iu);
                    forced = true;
                } else {
                    dev = saved2;
                    map[u] = -1;
                    used[v] = 0;
                    assigned.pop_back();
                    continue;
                }
            }
            if (self(self, depth + 1)) return true;
            if (forced) {
                used[map[iu]] = 0;
                map[iu] = -1;
                assigned.pop_back();
            }
            assigned.pop_back();
            used[v] = 0;
            map[u] = -1;
            dev = saved_dev;
        }
        return false;
    };

    // Identity must map to identity; invariant keys already force it, but seed
    // it explicitly so the search space stays small.
    if (!consistent(A.identity(), B.identity())) return std::nullopt;
    map[A.identity()] = B.identity();
    used[B.identity()] = 1;
    assigned.push_back(A.identity());
    if (!dfs(dfs, 0)) return std::nullopt;
    return Isomorphism{map, dev};
}

template std::optional<Isomorphism> find_isomorphism(const Hypergroup&, const Hypergroup&, double,
                                                     const Config&);
template std::optional<Isomorphism> find_isomorphism(const RealHypergroup&, const RealHypergroup&,
                                                     double, const Config&);
template std::optional<Isomorphism> find_isomorphism(const RealHypergroup&, const Hypergroup&, double,
                                                     const Config&);
template std::optional<Isomorphism> find_isomorphism(const Hypergroup&, const RealHypergroup&, double,
                                                     const Config&);

} // namespace hgk
