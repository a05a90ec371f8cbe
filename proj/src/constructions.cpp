#include "hgk/constructions.hpp"

#include <algorithm>

#include "hgk/hyperfield.hpp"

namespace hgk {

Hypergroup cyclic_group(int n, const Config& cfg) {
    if (n < 1) fail(errc::malformed_input, "cyclic group order must be >= 1");
    RawHypergroup raw;
    raw.names.reserve(n);
    for (int i = 0; i < n; ++i) raw.names.push_back(std::to_string(i));
    raw.identity = 0;
    raw.involution.resize(n);
    for (int i = 0; i < n; ++i) raw.involution[i] = (n - i) % n;
    raw.tensor.assign(static_cast<std::size_t>(n) * n * n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) raw.at(i, j, (i + j) % n) = 1;
    return Hypergroup::create(std::move(raw), cfg);
}

RawHypergroup zq_family_raw(int n, const Rat& q) {
    if (n < 2) fail(errc::malformed_input, "zq family needs n >= 2");
    RawHypergroup raw;
    raw.names.reserve(n);
    for (int i = 0; i < n; ++i) raw.names.push_back("l" + std::to_string(i));
    raw.identity = 0;
    raw.involution.resize(n);
    for (int i = 0; i < n; ++i) raw.involution[i] = (n - i) % n;
    raw.tensor.assign(static_cast<std::size_t>(n) * n * n, Rat(0));
    for (int j = 0; j < n; ++j) {
        raw.at(0, j, j) = 1;
        if (j != 0) raw.at(j, 0, j) = 1;
    }
    const Rat b = (1 - q) / 2;
    auto set_sym = [&](int i, int j, int k, const Rat& v) {
        raw.at(i, j, k) = v;
        raw.at(j, i, k) = v;
    };
    if (n == 2) {
        raw.at(1, 1, 0) = q;
        raw.at(1, 1, 1) = 1 - q;
    } else if (n == 3) {
        set_sym(1, 1, 1, b);
        set_sym(1, 1, 2, 1 - b);
        set_sym(1, 2, 0, q);
        set_sym(1, 2, 1, b);
        set_sym(1, 2, 2, b);
        set_sym(2, 2, 1, 1 - b);
        set_sym(2, 2, 2, b);
    } else if (n == 4) {
        set_sym(1, 1, 1, b);
        set_sym(1, 1, 2, q);
        set_sym(1, 1, 3, b);
        set_sym(1, 2, 1, b);
        set_sym(1, 2, 3, 1 - b);
        set_sym(1, 3, 0, 2 * q * q / (1 + q));
        set_sym(1, 3, 1, b);
        set_sym(1, 3, 2, q * (1 - q) / (1 + q));
        set_sym(1, 3, 3, b);
        set_sym(2, 2, 0, q);
        set_sym(2, 2, 2, 1 - q);
        set_sym(2, 3, 1, 1 - b);
        set_sym(2, 3, 3, b);
        set_sym(3, 3, 1, b);
        set_sym(3, 3, 2, q);
        set_sym(3, 3, 3, b);
    } else {
        // No associative closed form is known here for q < 1; the wrap-spread
        // tensor below is gated by the axiom checker in zq_family.
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j) {
                if ((i + j) % n != 0) {
                    raw.at(i, j, (i + j) % n) = 1;
                } else {
                    raw.at(i, j, 0) = q;
                    for (int k = 1; k < n; ++k) raw.at(i, j, k) = (1 - q) / (n - 1);
                }
            }
    }
    return raw;
}

Hypergroup zq_family(int n, const Rat& q, const Config& cfg) {
    return Hypergroup::create(zq_family_raw(n, q), cfg);
}

template <class S>
HypergroupT<S> direct_product(const HypergroupT<S>& A, const HypergroupT<S>& B, const Config& cfg) {
    const int na = A.size(), nb = B.size();
    const int n = na * nb;
    auto index = [&](int a, int b) { return b * na + a; };
    RawHypergroupT<S> raw;
    raw.names.reserve(n);
    for (int b = 0; b < nb; ++b)
        for (int a = 0; a < na; ++a) raw.names.push_back("(" + A.name(a) + "," + B.name(b) + ")");
    raw.identity = index(A.identity(), B.identity());
    raw.involution.resize(n);
    for (int b = 0; b < nb; ++b)
        for (int a = 0; a < na; ++a) raw.involution[index(a, b)] = index(A.inv(a), B.inv(b));
    raw.tensor.assign(static_cast<std::size_t>(n) * n * n, S{});
    for (int a1 = 0; a1 < na; ++a1)
        for (int b1 = 0; b1 < nb; ++b1)
            for (int a2 = 0; a2 < na; ++a2)
                for (int b2 = 0; b2 < nb; ++b2)
                    for (int ka : A.support(a1, a2))
                        for (int kb : B.support(b1, b2))
                            raw.at(index(a1, b1), index(a2, b2), index(ka, kb)) =
                                A.c(a1, a2, ka) * B.c(b1, b2, kb);
    return HypergroupT<S>::create(std::move(raw), cfg);
}

template <class S>
HypergroupT<S> join(const HypergroupT<S>& H, const HypergroupT<S>& L, const Config& cfg) {
    const int nh = H.size(), nl = L.size();
    const int n = nh + nl - 1;
    MeasureT<S> omega = haar_measure(H, cfg);
    // L elements != identity are appended after the H block.
    std::vector<int> lpos(nl, -1);
    {
        int next = nh;
        for (int l = 0; l < nl; ++l)
            if (l != L.identity()) lpos[l] = next++;
    }
    RawHypergroupT<S> raw;
    raw.names.reserve(n);
    for (int h = 0; h < nh; ++h) raw.names.push_back(H.name(h));
    for (int l = 0; l < nl; ++l) {
        if (l == L.identity()) continue;
        std::string nm = L.name(l);
        while (std::find(raw.names.begin(), raw.names.end(), nm) != raw.names.end()) nm += "'";
        raw.names.push_back(std::move(nm));
    }
    raw.identity = H.identity();
    raw.involution.resize(n);
    for (int h = 0; h < nh; ++h) raw.involution[h] = H.inv(h);
    for (int l = 0; l < nl; ++l)
        if (l != L.identity()) raw.involution[lpos[l]] = lpos[L.inv(l)];
    raw.tensor.assign(static_cast<std::size_t>(n) * n * n, S{});

    for (int a = 0; a < nh; ++a)
        for (int b = 0; b < nh; ++b)
            for (int k : H.support(a, b)) raw.at(a, b, k) = H.c(a, b, k);
    for (int h = 0; h < nh; ++h)
        for (int l = 0; l < nl; ++l) {
            if (l == L.identity()) continue;
            raw.at(h, lpos[l], lpos[l]) = S(1);
            raw.at(lpos[l], h, lpos[l]) = S(1);
        }
    for (int l1 = 0; l1 < nl; ++l1) {
        if (l1 == L.identity()) continue;
        for (int l2 = 0; l2 < nl; ++l2) {
            if (l2 == L.identity()) continue;
            for (int k : L.support(l1, l2)) {
                const S& w = L.c(l1, l2, k);
                if (k == L.identity()) {
                    for (int h = 0; h < nh; ++h) raw.at(lpos[l1], lpos[l2], h) += w * omega[h];
                } else {
                    raw.at(lpos[l1], lpos[l2], lpos[k]) += w;
                }
            }
        }
    }
    return HypergroupT<S>::create(std::move(raw), cfg);
}

Hypergroup substitution(const Hypergroup& H, const Subhypergroup& H0, const Hypergroup& L,
                        const Config& cfg) {
    Hyperfield field{H, L, {}};
    field.assignment.resize(L.size());
    for (int l = 0; l < L.size(); ++l)
        field.assignment[l] = (l == L.identity()) ? Subhypergroup{{H.identity()}} : H0;
    return build_K(field, cfg).hypergroup;
}

std::vector<int> negation_of_cyclic(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = (n - i) % n;
    return img;
}

Subhypergroup cyclic_subgroup(const Hypergroup& zn, int d) {
    const int n = zn.size();
    if (d < 1 || n % d != 0) fail(errc::malformed_input, "subgroup order must divide the group order");
    Subhypergroup s;
    for (int i = 0; i < d; ++i) s.members.push_back(i * (n / d));
    std::sort(s.members.begin(), s.members.end());
    return s;
}

std::vector<std::vector<int>> orbit_partition(const Hypergroup& H,
                                              const std::vector<std::vector<int>>& automorphisms) {
    const int n = H.size();
    std::vector<int> orbit_of(n, -1);
    std::vector<std::vector<int>> orbits;
    for (int start = 0; start < n; ++start) {
        if (orbit_of[start] >= 0) continue;
        int id = static_cast<int>(orbits.size());
        std::vector<int> stack = {start}, members;
        orbit_of[start] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (const auto& sigma : automorphisms)
                if (orbit_of[sigma[x]] < 0) {
                    orbit_of[sigma[x]] = id;
                    stack.push_back(sigma[x]);
                }
        }
        std::sort(members.begin(), members.end());
        orbits.push_back(std::move(members));
    }
    return orbits;
}

Hypergroup orbit_hypergroup(const Hypergroup& H, const std::vector<std::vector<int>>& automorphisms,
                            const Config& cfg) {
    const int n = H.size();
    for (const auto& sigma : automorphisms) {
        if (sigma.size() != static_cast<std::size_t>(n))
            fail(errc::not_automorphism, "map has wrong length");
        std::vector<char> seen(n, 0);
        for (int v : sigma) {
            if (v < 0 || v >= n || seen[v]) fail(errc::not_automorphism, "map is not a permutation");
            seen[v] = 1;
        }
        if (sigma[H.identity()] != H.identity())
            fail(errc::not_automorphism, "map moves the identity");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (H.c(sigma[i], sigma[j], sigma[k]) != H.c(i, j, k))
                        fail(errc::not_automorphism,
                             "structure constants not preserved at (" + H.name(i) + "," + H.name(j) +
                                 "," + H.name(k) + ")");
    }

    auto orbits = orbit_partition(H, automorphisms);
    std::vector<int> orbit_of(n, -1);
    for (std::size_t o = 0; o < orbits.size(); ++o)
        for (int x : orbits[o]) orbit_of[x] = static_cast<int>(o);
    const int m = static_cast<int>(orbits.size());

    RawHypergroup raw;
    raw.names.reserve(m);
    for (const auto& orb : orbits) {
        std::string nm = "{";
        for (std::size_t t = 0; t < orb.size(); ++t) {
            if (t) nm += ",";
            nm += H.name(orb[t]);
        }
        nm += "}";
        raw.names.push_back(std::move(nm));
    }
    raw.identity = orbit_of[H.identity()];
    raw.involution.resize(m);
    for (int o = 0; o < m; ++o) raw.involution[o] = orbit_of[H.inv(orbits[o][0])];
    raw.tensor.assign(static_cast<std::size_t>(m) * m * m, Rat(0));
    for (int o1 = 0; o1 < m; ++o1)
        for (int o2 = 0; o2 < m; ++o2) {
            Rat norm = Rat(1) / Rat(static_cast<long>(orbits[o1].size() * orbits[o2].size()));
            for (int x : orbits[o1])
                for (int y : orbits[o2])
                    for (int k : H.support(x, y)) raw.at(o1, o2, orbit_of[k]) += norm * H.c(x, y, k);
        }
    return Hypergroup::create(std::move(raw), cfg);
}

template Hypergroup direct_product(const Hypergroup&, const Hypergroup&, const Config&);
template RealHypergroup direct_product(const RealHypergroup&, const RealHypergroup&, const Config&);
template Hypergroup join(const Hypergroup&, const Hypergroup&, const Config&);
template RealHypergroup join(const RealHypergroup&, const RealHypergroup&, const Config&);

} // namespace hgk
