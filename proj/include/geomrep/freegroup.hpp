#ifndef GEOMREP_FREEGROUP_HPP
#define GEOMREP_FREEGROUP_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geomrep/error.hpp"
#include "geomrep/perm_group.hpp"

namespace geomrep::free {

/// Letters are +i / -i for generator x_i (i >= 1).
using Letter = int;
using Word = std::vector<Letter>;

inline Word reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Letter a : w) {
        if (a == 0) throw Error("letter 0 is not a generator");
        if (!out.empty() && out.back() == -a) {
            out.pop_back();
        } else {
            out.push_back(a);
        }
    }
    return out;
}

inline bool is_reduced(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] == -w[i - 1]) return false;
    }
    return true;
}

inline Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& a : out) a = -a;
    return out;
}

inline Word multiply(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return reduce(w);
}

inline Word generator(int i) { return {i}; }

/// "x1 x2^-1"; the identity prints as "1".
inline std::string format(const Word& w) {
    if (w.empty()) return "1";
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out << ' ';
        out << 'x' << std::abs(w[i]);
        if (w[i] < 0) out << "^-1";
    }
    return out.str();
}

/// Inverse of `format`; also accepts "x2^3" and "x1^-2". Result is reduced.
inline Word parse_word(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    Word w;
    while (in >> token) {
        if (token == "1") continue;
        if (token.size() < 2 || token[0] != 'x') throw Error("bad word token '" + token + "'");
        auto caret = token.find('^');
        int index = 0;
        int power = 1;
        try {
            index = std::stoi(token.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
            if (caret != std::string::npos) power = std::stoi(token.substr(caret + 1));
        } catch (const std::exception&) {
            throw Error("bad word token '" + token + "'");
        }
        if (index < 1) throw Error("bad word token '" + token + "'");
        for (int k = 0; k < std::abs(power); ++k) w.push_back(power < 0 ? -index : index);
    }
    return reduce(w);
}

/// Endomorphism of F_n given by the images of x_1..x_n.
struct FreeAutomorphism {
    std::size_t rank = 0;
    std::vector<Word> images;
};

inline Word apply_automorphism(const FreeAutomorphism& phi, const Word& w) {
    Word out;
    for (Letter a : w) {
        const auto i = static_cast<std::size_t>(std::abs(a));
        if (i > phi.rank) throw Error("rank mismatch: letter x" + std::to_string(i) + " outside F_" + std::to_string(phi.rank));
        const Word& img = phi.images[i - 1];
        if (a > 0) {
            out.insert(out.end(), img.begin(), img.end());
        } else {
            auto inv = inverse(img);
            out.insert(out.end(), inv.begin(), inv.end());
        }
    }
    return reduce(out);
}

inline FreeAutomorphism compose(const FreeAutomorphism& first, const FreeAutomorphism& second) {
    if (first.rank != second.rank) throw Error("rank mismatch");
    FreeAutomorphism out{first.rank, {}};
    for (const auto& w : first.images) out.images.push_back(apply_automorphism(second, w));
    return out;
}

namespace detail {

inline std::size_t slot(Letter a) { return 2 * (static_cast<std::size_t>(std::abs(a)) - 1) + (a < 0 ? 1 : 0); }
inline Letter letter_of(std::size_t s) { return (s % 2 == 0 ? 1 : -1) * static_cast<Letter>(s / 2 + 1); }

struct RawEdge {
    std::uint32_t from;
    Letter label;  // positive
    std::uint32_t to;
};

/// Union-find folding of a labeled graph. `mapping[v]` is the folded vertex of v.
struct Folded {
    std::vector<std::vector<std::int64_t>> out;  // out[v][slot] -> vertex or -1
    std::vector<std::uint32_t> mapping;
};

inline Folded fold(std::size_t rank, std::size_t vertices, const std::vector<RawEdge>& edges) {
    std::vector<std::uint32_t> parent(vertices);
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&](std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    std::vector<std::map<Letter, std::uint32_t>> adj(vertices);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pending;
    auto insert = [&](std::uint32_t u, Letter a, std::uint32_t v) {
        u = find(u);
        auto [it, fresh] = adj[u].emplace(a, v);
        if (!fresh) pending.emplace_back(it->second, v);
    };
    for (const auto& e : edges) {
        if (e.label <= 0 || static_cast<std::size_t>(e.label) > rank) throw Error("edge label outside the alphabet");
        insert(e.from, e.label, e.to);
        insert(e.to, -e.label, e.from);
        while (!pending.empty()) {
            auto [x, y] = pending.back();
            pending.pop_back();
            x = find(x);
            y = find(y);
            if (x == y) continue;
            if (adj[x].size() > adj[y].size()) std::swap(x, y);
            parent[x] = y;
            auto moved = std::move(adj[x]);
            adj[x].clear();
            for (auto [a, w] : moved) insert(y, a, w);
        }
    }
    Folded f;
    std::vector<std::int64_t> index(vertices, -1);
    std::uint32_t count = 0;
    for (std::uint32_t v = 0; v < vertices; ++v) {
        if (find(v) == v) index[v] = count++;
    }
    f.out.assign(count, std::vector<std::int64_t>(2 * rank, -1));
    f.mapping.resize(vertices);
    for (std::uint32_t v = 0; v < vertices; ++v) {
        f.mapping[v] = static_cast<std::uint32_t>(index[find(v)]);
        if (find(v) != v) continue;
        for (auto [a, w] : adj[v]) f.out[static_cast<std::size_t>(index[v])][slot(a)] = index[find(w)];
    }
    return f;
}

} // namespace detail

/// Folded, basepointed, edge-labeled graph; the basepoint is vertex 0 and
/// vertices are numbered in breadth-first order from it (letters visited
/// as x1, x1^-1, x2, ...), so equal graphs have equal tables.
class StallingsGraph {
public:
    StallingsGraph() = default;

    /// Wedge of loops reading the generators, folded and trimmed to its core.
    static StallingsGraph from_generators(std::size_t rank, const std::vector<Word>& gens) {
        std::vector<detail::RawEdge> edges;
        std::uint32_t vertices = 1;
        for (const auto& raw : gens) {
            const Word w = reduce(raw);
            if (w.empty()) continue;
            std::uint32_t at = 0;
            for (std::size_t k = 0; k < w.size(); ++k) {
                const std::uint32_t next = k + 1 == w.size() ? 0 : vertices++;
                add_raw(edges, at, w[k], next);
                at = next;
            }
        }
        return from_raw(rank, vertices, edges, true);
    }

    /// Folds an arbitrary labeled graph (basepoint 0), optionally trimming hairs.
    static StallingsGraph from_raw(std::size_t rank, std::size_t vertices, const std::vector<detail::RawEdge>& edges,
                                   bool trim) {
        auto folded = detail::fold(rank, vertices, edges);
        StallingsGraph g;
        g.rank_ = rank;
        g.out_ = std::move(folded.out);
        const auto base = folded.mapping.empty() ? 0U : folded.mapping[0];
        if (g.out_.empty()) g.out_.assign(1, std::vector<std::int64_t>(2 * rank, -1));
        std::vector<bool> alive(g.out_.size(), true);
        if (trim) g.trim(base, alive);
        g.canonicalize(base, alive);
        return g;
    }

    [[nodiscard]] std::size_t alphabet() const noexcept { return rank_; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return out_.size(); }

    [[nodiscard]] std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& row : out_) {
            for (std::size_t s = 0; s < row.size(); s += 2) n += row[s] >= 0 ? 1 : 0;
        }
        return n;
    }

    /// Rank of the represented subgroup, E - V + 1.
    [[nodiscard]] std::size_t rank() const { return edge_count() + 1 - vertex_count(); }

    [[nodiscard]] std::optional<std::uint32_t> follow(std::uint32_t v, Letter a) const {
        if (a == 0 || static_cast<std::size_t>(std::abs(a)) > rank_) return std::nullopt;
        auto t = out_[v][detail::slot(a)];
        if (t < 0) return std::nullopt;
        return static_cast<std::uint32_t>(t);
    }

    [[nodiscard]] std::int64_t target(std::uint32_t v, std::size_t slot) const { return out_[v][slot]; }

    /// Whether the reduced word reads a closed path at the basepoint.
    [[nodiscard]] bool contains(const Word& w) const {
        std::uint32_t v = 0;
        for (Letter a : reduce(w)) {
            auto t = follow(v, a);
            if (!t) return false;
            v = *t;
        }
        return v == 0;
    }

    /// Free basis read off a breadth-first spanning tree.
    [[nodiscard]] std::vector<Word> generators() const {
        std::vector<Word> path(vertex_count());
        std::vector<bool> seen(vertex_count(), false);
        std::vector<std::pair<std::uint32_t, std::size_t>> tree_edges;
        std::vector<std::uint32_t> queue{0};
        seen[0] = true;
        std::map<std::tuple<std::uint32_t, std::size_t>, bool> in_tree;
        for (std::size_t k = 0; k < queue.size(); ++k) {
            const auto v = queue[k];
            for (std::size_t s = 0; s < 2 * rank_; ++s) {
                const auto t = out_[v][s];
                if (t < 0 || seen[static_cast<std::size_t>(t)]) continue;
                seen[static_cast<std::size_t>(t)] = true;
                path[static_cast<std::size_t>(t)] = path[v];
                path[static_cast<std::size_t>(t)].push_back(detail::letter_of(s));
                queue.push_back(static_cast<std::uint32_t>(t));
                // record the positive orientation of the tree edge
                if (s % 2 == 0) {
                    in_tree[{v, s}] = true;
                } else {
                    in_tree[{static_cast<std::uint32_t>(t), s - 1}] = true;
                }
            }
        }
        std::vector<Word> gens;
        for (std::uint32_t v = 0; v < vertex_count(); ++v) {
            for (std::size_t s = 0; s < 2 * rank_; s += 2) {
                const auto t = out_[v][s];
                if (t < 0 || in_tree.count({v, s})) continue;
                Word w = path[v];
                w.push_back(detail::letter_of(s));
                auto back = inverse(path[static_cast<std::size_t>(t)]);
                w.insert(w.end(), back.begin(), back.end());
                gens.push_back(reduce(w));
            }
        }
        return gens;
    }

    friend bool operator==(const StallingsGraph& a, const StallingsGraph& b) {
        return a.rank_ == b.rank_ && a.out_ == b.out_;
    }

private:
    static void add_raw(std::vector<detail::RawEdge>& edges, std::uint32_t from, Letter a, std::uint32_t to) {
        if (a > 0) {
            edges.push_back({from, a, to});
        } else {
            edges.push_back({to, -a, from});
        }
    }

    void trim(std::uint32_t base, std::vector<bool>& alive) {
        std::vector<std::size_t> degree(out_.size(), 0);
        for (std::size_t v = 0; v < out_.size(); ++v) {
            for (auto t : out_[v]) degree[v] += t >= 0 ? 1 : 0;
        }
        std::vector<std::uint32_t> stack;
        for (std::uint32_t v = 0; v < out_.size(); ++v) {
            if (v != base && degree[v] <= 1) stack.push_back(v);
        }
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            if (!alive[v]) continue;
            alive[v] = false;
            for (std::size_t s = 0; s < out_[v].size(); ++s) {
                const auto t = out_[v][s];
                if (t < 0) continue;
                const auto u = static_cast<std::uint32_t>(t);
                out_[u][s ^ 1U] = -1;
                out_[v][s] = -1;
                if (u != v && alive[u] && --degree[u] <= 1 && u != base) stack.push_back(u);
            }
        }
    }

    void canonicalize(std::uint32_t base, const std::vector<bool>& alive) {
        std::vector<std::int64_t> index(out_.size(), -1);
        std::vector<std::uint32_t> order{base};
        index[base] = 0;
        for (std::size_t k = 0; k < order.size(); ++k) {
            for (auto t : out_[order[k]]) {
                if (t >= 0 && alive[static_cast<std::size_t>(t)] && index[static_cast<std::size_t>(t)] < 0) {
                    index[static_cast<std::size_t>(t)] = static_cast<std::int64_t>(order.size());
                    order.push_back(static_cast<std::uint32_t>(t));
                }
            }
        }
        std::vector<std::vector<std::int64_t>> next(order.size(), std::vector<std::int64_t>(2 * rank_, -1));
        for (std::size_t k = 0; k < order.size(); ++k) {
            for (std::size_t s = 0; s < 2 * rank_; ++s) {
                const auto t = out_[order[k]][s];
                if (t >= 0) next[k][s] = index[static_cast<std::size_t>(t)];
            }
        }
        out_ = std::move(next);
    }

    std::size_t rank_ = 0;
    std::vector<std::vector<std::int64_t>> out_;
};

inline StallingsGraph stallings_graph(std::size_t rank, const std::vector<Word>& gens) {
    return StallingsGraph::from_generators(rank, gens);
}

inline bool membership(const Word& w, const StallingsGraph& h) { return h.contains(w); }

/// H <= K, by membership of a free basis of H.
inline bool is_subgroup(const StallingsGraph& h, const StallingsGraph& k) {
    for (const auto& g : h.generators()) {
        if (!k.contains(g)) return false;
    }
    return true;
}

inline bool same_subgroup(const StallingsGraph& h, const StallingsGraph& k) { return is_subgroup(h, k) && is_subgroup(k, h); }

/// Fiber product restricted to the basepoint component, trimmed: H ∩ K.
inline StallingsGraph intersection(const StallingsGraph& h, const StallingsGraph& k) {
    if (h.alphabet() != k.alphabet()) throw Error("rank mismatch");
    const std::size_t rank = h.alphabet();
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> id;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order{{0, 0}};
    id[{0, 0}] = 0;
    std::vector<detail::RawEdge> edges;
    for (std::size_t q = 0; q < order.size(); ++q) {
        auto [a, b] = order[q];
        for (std::size_t s = 0; s < 2 * rank; s += 2) {
            auto ta = h.target(a, s);
            auto tb = k.target(b, s);
            if (ta < 0 || tb < 0) continue;
            std::pair<std::uint32_t, std::uint32_t> t{static_cast<std::uint32_t>(ta), static_cast<std::uint32_t>(tb)};
            auto [it, fresh] = id.emplace(t, static_cast<std::uint32_t>(order.size()));
            if (fresh) order.push_back(t);
            edges.push_back({static_cast<std::uint32_t>(q), detail::letter_of(s), it->second});
        }
        for (std::size_t s = 1; s < 2 * rank; s += 2) {
            // incoming positive edges also reach new vertices
            auto ta = h.target(a, s);
            auto tb = k.target(b, s);
            if (ta < 0 || tb < 0) continue;
            std::pair<std::uint32_t, std::uint32_t> t{static_cast<std::uint32_t>(ta), static_cast<std::uint32_t>(tb)};
            auto [it, fresh] = id.emplace(t, static_cast<std::uint32_t>(order.size()));
            if (fresh) order.push_back(t);
        }
    }
    return StallingsGraph::from_raw(rank, order.size(), edges, true);
}

/// w ∈ H·K: fold H with a tail reading w from its basepoint; w = h k for
/// some h, k exactly when the tail end is reachable from the basepoint in
/// the fiber product with K, both coordinates ending at K's basepoint.
inline bool product_membership(const Word& raw, const StallingsGraph& h, const StallingsGraph& k) {
    if (h.alphabet() != k.alphabet()) throw Error("rank mismatch");
    const std::size_t rank = h.alphabet();
    const Word w = reduce(raw);
    std::vector<detail::RawEdge> edges;
    const auto hv = static_cast<std::uint32_t>(h.vertex_count());
    for (std::uint32_t v = 0; v < hv; ++v) {
        for (std::size_t s = 0; s < 2 * rank; s += 2) {
            auto t = h.target(v, s);
            if (t >= 0) edges.push_back({v, detail::letter_of(s), static_cast<std::uint32_t>(t)});
        }
    }
    std::uint32_t at = 0;
    std::uint32_t vertices = hv;
    for (Letter a : w) {
        const std::uint32_t next = vertices++;
        if (a > 0) {
            edges.push_back({at, a, next});
        } else {
            edges.push_back({next, -a, at});
        }
        at = next;
    }
    auto x = detail::fold(rank, vertices, edges);
    const auto start = x.mapping[0];
    const auto accept = x.mapping[at];
    std::map<std::pair<std::int64_t, std::int64_t>, bool> seen;
    std::vector<std::pair<std::int64_t, std::int64_t>> queue{{start, 0}};
    seen[queue[0]] = true;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        auto [a, b] = queue[q];
        if (a == accept && b == 0) return true;
        for (std::size_t s = 0; s < 2 * rank; ++s) {
            auto ta = x.out[static_cast<std::size_t>(a)][s];
            auto tb = k.target(static_cast<std::uint32_t>(b), s);
            if (ta < 0 || tb < 0) continue;
            std::pair<std::int64_t, std::int64_t> t{ta, tb};
            if (seen.emplace(t, true).second) queue.push_back(t);
        }
    }
    return false;
}

/// x_j x_i x_j^-1 and x_j^-1 x_i x_j for i = 1..n, j != i ascending.
inline std::vector<Word> rose_cover_generators(std::size_t n) {
    if (n < 2) throw Error("n must be >= 2");
    std::vector<Word> s;
    for (int i = 1; i <= static_cast<int>(n); ++i) {
        for (int j = 1; j <= static_cast<int>(n); ++j) {
            if (i == j) continue;
            s.push_back({j, i, -j});
            s.push_back({-j, i, j});
        }
    }
    return s;
}

/// Subgroups G_s = <S \ {s}>, one per generator.
struct SubgroupFamily {
    std::size_t rank = 0;
    std::vector<Word> generators;                // S
    std::vector<std::vector<Word>> member_gens;  // generating set of each G_s
    std::vector<StallingsGraph> graphs;
};

inline SubgroupFamily parabolic_family(std::size_t rank, const std::vector<Word>& s) {
    SubgroupFamily f{rank, s, {}, {}};
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::vector<Word> gens;
        for (std::size_t m = 0; m < s.size(); ++m) {
            if (m != k) gens.push_back(s[m]);
        }
        f.graphs.push_back(stallings_graph(rank, gens));
        f.member_gens.push_back(std::move(gens));
    }
    return f;
}

inline SubgroupFamily rose_cover_family(std::size_t n) { return parabolic_family(n, rose_cover_generators(n)); }

/// phi_1 (x1 -> x1^-1), phi_rho (x_i -> x_{i+1} cyclically), phi_tau (swap x1, x2).
inline std::vector<FreeAutomorphism> k_group(std::size_t n) {
    if (n < 2) throw Error("n must be >= 2");
    FreeAutomorphism phi1{n, {}}, rho{n, {}}, tau{n, {}};
    for (int i = 1; i <= static_cast<int>(n); ++i) {
        phi1.images.push_back({i == 1 ? -1 : i});
        rho.images.push_back({i == static_cast<int>(n) ? 1 : i + 1});
        tau.images.push_back({i == 1 ? 2 : i == 2 ? 1 : i});
    }
    return {phi1, rho, tau};
}

inline bool is_basis(const FreeAutomorphism& phi) {
    auto g = stallings_graph(phi.rank, phi.images);
    return g.vertex_count() == 1 && g.edge_count() == phi.rank;
}

/// Permutation of family indices induced by each automorphism, and the group they generate.
struct SubgroupAction {
    std::vector<Permutation> permutations;
    PermGroup group;
};

inline SubgroupAction subgroup_action(const std::vector<FreeAutomorphism>& autos, const SubgroupFamily& family) {
    const std::size_t m = family.graphs.size();
    std::vector<Permutation> perms;
    for (const auto& phi : autos) {
        if (phi.rank != family.rank) throw Error("rank mismatch");
        std::vector<Point> images(m);
        std::vector<bool> used(m, false);
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<Word> gens;
            for (const auto& w : family.member_gens[k]) gens.push_back(apply_automorphism(phi, w));
            auto image = stallings_graph(family.rank, gens);
            std::optional<std::size_t> match;
            for (std::size_t t = 0; t < m && !match; ++t) {
                if (same_subgroup(image, family.graphs[t])) match = t;
            }
            if (!match || used[*match]) {
                throw Error("image of subgroup " + std::to_string(k) + " matches no family member; witness " +
                            (gens.empty() ? std::string("1") : format(gens.front())));
            }
            used[*match] = true;
            images[k] = static_cast<Point>(*match);
        }
        perms.emplace_back(std::move(images));
    }
    return {perms, PermGroup(m, perms)};
}

/// Left fold of pairwise intersections over `j` (whole group <S> when empty).
inline StallingsGraph parabolic_intersection(const SubgroupFamily& family, const std::vector<std::size_t>& j) {
    if (j.empty()) return stallings_graph(family.rank, family.generators);
    StallingsGraph g = family.graphs.at(j.front());
    for (std::size_t k = 1; k < j.size(); ++k) g = intersection(g, family.graphs.at(j[k]));
    return g;
}

struct FreeCheckReport {
    bool pass = true;
    std::size_t checked = 0;
    std::vector<std::string> counterexamples;
};

/// Calls `visit` on every reduced word of length <= max_length over F_rank,
/// in order of length and then letter order x1, x1^-1, x2, ...
template <class Visitor>
void for_each_reduced_word(std::size_t rank, std::size_t max_length, Visitor&& visit) {
    for (std::size_t len = 0; len <= max_length; ++len) {
        Word cur;
        auto extend = [&](auto& self) -> void {
            if (cur.size() == len) {
                visit(static_cast<const Word&>(cur));
                return;
            }
            for (std::size_t s = 0; s < 2 * rank; ++s) {
                Letter a = detail::letter_of(s);
                if (!cur.empty() && cur.back() == -a) continue;
                cur.push_back(a);
                self(self);
                cur.pop_back();
            }
        };
        extend(extend);
    }
}

/// For words up to length L: w ∈ ∩_{j∈J} G_j G_i  ⟺  w ∈ G_J G_i.
inline FreeCheckReport bounded_ft_check(const SubgroupFamily& family, const std::vector<std::size_t>& j, std::size_t i,
                                        std::size_t max_length) {
    if (max_length > 10) throw Error("word length bound must be <= 10");
    if (i >= family.graphs.size()) throw Error("index out of range");
    for (auto k : j) {
        if (k == i) throw Error("i must not lie in J");
        if (k >= family.graphs.size()) throw Error("index out of range");
    }
    FreeCheckReport report;
    if (j.size() <= 1) return report;  // both sides coincide
    const auto gj = parabolic_intersection(family, j);
    const auto& gi = family.graphs[i];
    for_each_reduced_word(family.rank, max_length, [&](const Word& w) {
        ++report.checked;
        bool right = true;
        for (auto k : j) right = right && product_membership(w, family.graphs[k], gi);
        const bool left = product_membership(w, gj, gi);
        if (left != right && report.counterexamples.size() < 10) report.counterexamples.push_back(format(w));
        if (left != right) report.pass = false;
    });
    return report;
}

/// G_J = <G_{J+i} : i not in J> for every J with at least two indices outside it.
inline FreeCheckReport rc_check_exact(const SubgroupFamily& family) {
    const std::size_t m = family.graphs.size();
    FreeCheckReport report;
    if (m > 20) throw SizeError("family too large for exhaustive subset checks");
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<std::size_t> j;
        for (std::size_t k = 0; k < m; ++k) {
            if (mask >> k & 1U) j.push_back(k);
        }
        if (m - j.size() < 2) continue;
        ++report.checked;
        const auto left = parabolic_intersection(family, j);
        std::vector<Word> gens;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1U) continue;
            auto ji = j;
            ji.push_back(i);
            std::sort(ji.begin(), ji.end());
            for (auto& w : parabolic_intersection(family, ji).generators()) gens.push_back(std::move(w));
        }
        const auto right = stallings_graph(family.rank, gens);
        if (!same_subgroup(left, right)) {
            std::string label = "J={";
            for (std::size_t k = 0; k < j.size(); ++k) label += (k ? "," : "") + std::to_string(j[k]);
            report.counterexamples.push_back(label + "}");
            report.pass = false;
        }
    }
    return report;
}

} // namespace geomrep::free

#endif // GEOMREP_FREEGROUP_HPP
