#ifndef GEOMREP_AUTSOLVER_HPP
#define GEOMREP_AUTSOLVER_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geomrep/error.hpp"
#include "geomrep/incidence.hpp"
#include "geomrep/perm_group.hpp"
#include "geomrep/permutation.hpp"

namespace geomrep {

/// Undirected graph with a node coloring; automorphisms must preserve both.
struct ColoredGraph {
    std::vector<std::vector<std::uint32_t>> adjacency;  // sorted, symmetric
    std::vector<std::uint32_t> colors;

    [[nodiscard]] std::size_t size() const noexcept { return adjacency.size(); }
};

struct GraphAutomorphisms {
    std::vector<Permutation> generators;
    BigInt order;
    std::vector<Point> base;
};

namespace detail {

/// Equitable refinement by (own color, neighbor color counts). New colors
/// are ranks of signatures in the sorted signature list, so the result
/// depends only on the isomorphism class of (graph, coloring). The left
/// search path records a trace; candidate right paths must reproduce it.
class Refiner {
public:
    struct Round {
        std::vector<std::vector<std::uint32_t>> signatures;  // sorted, unique
        std::vector<std::size_t> counts;
    };
    using Trace = std::vector<Round>;

    explicit Refiner(const ColoredGraph& g) : g_(g) {}

    Trace refine(std::vector<std::uint32_t>& colors) const {
        Trace trace;
        std::size_t cells = count_cells(colors);
        while (true) {
            auto sigs = signatures(colors);
            std::vector<std::uint32_t> order(colors.size());
            for (std::uint32_t v = 0; v < order.size(); ++v) order[v] = v;
            std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sigs[a] < sigs[b]; });
            Round round;
            for (auto v : order) {
                if (round.signatures.empty() || round.signatures.back() != sigs[v]) {
                    round.signatures.push_back(sigs[v]);
                    round.counts.push_back(0);
                }
                ++round.counts.back();
                colors[v] = static_cast<std::uint32_t>(round.signatures.size() - 1);
            }
            const std::size_t next = round.signatures.size();
            trace.push_back(std::move(round));
            if (next == cells) break;
            cells = next;
        }
        return trace;
    }

    [[nodiscard]] bool follow(std::vector<std::uint32_t>& colors, const Trace& trace) const {
        for (const auto& round : trace) {
            auto sigs = signatures(colors);
            std::vector<std::size_t> counts(round.counts.size(), 0);
            for (std::uint32_t v = 0; v < colors.size(); ++v) {
                auto it = std::lower_bound(round.signatures.begin(), round.signatures.end(), sigs[v]);
                if (it == round.signatures.end() || *it != sigs[v]) return false;
                auto idx = static_cast<std::size_t>(it - round.signatures.begin());
                if (++counts[idx] > round.counts[idx]) return false;
                colors[v] = static_cast<std::uint32_t>(idx);
            }
        }
        return true;
    }

    /// Splits `v` off its cell: v keeps the cell color, the rest of the
    /// cell takes the next color and all higher colors shift up by one.
    static std::vector<std::uint32_t> individualize(const std::vector<std::uint32_t>& colors, std::uint32_t v) {
        std::vector<std::uint32_t> out(colors);
        const auto c = colors[v];
        for (std::uint32_t u = 0; u < out.size(); ++u) {
            if (u == v) continue;
            if (out[u] >= c) ++out[u];
        }
        return out;
    }

    static std::size_t count_cells(const std::vector<std::uint32_t>& colors) {
        std::vector<std::uint32_t> c(colors);
        std::sort(c.begin(), c.end());
        return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
    }

private:
    [[nodiscard]] std::vector<std::vector<std::uint32_t>> signatures(const std::vector<std::uint32_t>& colors) const {
        std::vector<std::vector<std::uint32_t>> sigs(colors.size());
        std::vector<std::uint32_t> neighbor_colors;
        for (std::uint32_t v = 0; v < colors.size(); ++v) {
            neighbor_colors.clear();
            for (auto w : g_.adjacency[v]) neighbor_colors.push_back(colors[w]);
            std::sort(neighbor_colors.begin(), neighbor_colors.end());
            auto& s = sigs[v];
            s.push_back(colors[v]);
            for (std::size_t i = 0; i < neighbor_colors.size();) {
                std::size_t j = i;
                while (j < neighbor_colors.size() && neighbor_colors[j] == neighbor_colors[i]) ++j;
                s.push_back(neighbor_colors[i]);
                s.push_back(static_cast<std::uint32_t>(j - i));
                i = j;
            }
        }
        return sigs;
    }

    const ColoredGraph& g_;
};

/// Individualization-refinement search. The left path individualizes, at
/// each step, the smallest node of the smallest non-singleton cell (ties
/// to the lowest color). Levels are processed deepest first; at level i
/// every cell member outside the current orbit of the base point is
/// tried, so the orbit lengths multiply to the exact group order.
class AutomorphismSearch {
public:
    explicit AutomorphismSearch(const ColoredGraph& g) : g_(g), refiner_(g) {
        if (g.colors.size() != g.adjacency.size()) throw Error("coloring size mismatch");
    }

    GraphAutomorphisms run() {
        build_left_path();
        GraphAutomorphisms result{{}, 1, base_};
        const std::size_t depth = base_.size();
        for (std::size_t level = depth; level-- > 0;) {
            std::vector<std::uint32_t> cell;
            for (std::uint32_t v = 0; v < g_.size(); ++v) {
                if (path_[level][v] == cell_color_[level]) cell.push_back(v);
            }
            auto orbit = orbit_of(base_[level], result.generators);
            for (auto c : cell) {
                if (std::binary_search(orbit.begin(), orbit.end(), c)) continue;
                auto right = Refiner::individualize(path_[level], c);
                if (!refiner_.follow(right, traces_[level + 1])) continue;
                if (auto gamma = extend(level + 1, right)) {
                    result.generators.push_back(std::move(*gamma));
                    orbit = orbit_of(base_[level], result.generators);
                }
            }
            result.order *= orbit.size();
        }
        return result;
    }

private:
    void build_left_path() {
        std::vector<std::uint32_t> colors(g_.colors);
        {
            // Order-preserving dense renumbering of the input coloring.
            std::vector<std::uint32_t> values(colors);
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            for (auto& c : colors) {
                c = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), c) - values.begin());
            }
        }
        traces_.push_back(refiner_.refine(colors));
        path_.push_back(colors);
        while (true) {
            std::vector<std::size_t> size(g_.size() + 1, 0);
            for (auto c : colors) ++size[c];
            std::optional<std::uint32_t> target;
            for (std::uint32_t c = 0; c < size.size(); ++c) {
                if (size[c] > 1 && (!target || size[c] < size[*target])) target = c;
            }
            if (!target) break;
            std::uint32_t v = 0;
            while (colors[v] != *target) ++v;
            cell_color_.push_back(*target);
            base_.push_back(v);
            colors = Refiner::individualize(colors, v);
            traces_.push_back(refiner_.refine(colors));
            path_.push_back(colors);
        }
    }

    std::optional<Permutation> extend(std::size_t level, const std::vector<std::uint32_t>& right) {
        if (level == base_.size()) return leaf_map(right);
        for (std::uint32_t w = 0; w < g_.size(); ++w) {
            if (right[w] != cell_color_[level]) continue;
            auto next = Refiner::individualize(right, w);
            if (!refiner_.follow(next, traces_[level + 1])) continue;
            if (auto gamma = extend(level + 1, next)) return gamma;
        }
        return std::nullopt;
    }

    std::optional<Permutation> leaf_map(const std::vector<std::uint32_t>& right) const {
        const auto& left = path_.back();
        std::vector<Point> node_of_color(g_.size());
        for (std::uint32_t v = 0; v < g_.size(); ++v) node_of_color[right[v]] = v;
        std::vector<Point> images(g_.size());
        for (std::uint32_t v = 0; v < g_.size(); ++v) images[v] = node_of_color[left[v]];
        for (std::uint32_t v = 0; v < g_.size(); ++v) {
            if (g_.colors[images[v]] != g_.colors[v]) return std::nullopt;
            const auto& target = g_.adjacency[images[v]];
            if (target.size() != g_.adjacency[v].size()) return std::nullopt;
            for (auto w : g_.adjacency[v]) {
                if (!std::binary_search(target.begin(), target.end(), images[w])) return std::nullopt;
            }
        }
        return Permutation(std::move(images));
    }

    std::vector<Point> orbit_of(Point p, const std::vector<Permutation>& gens) const {
        std::vector<bool> seen(g_.size(), false);
        std::vector<Point> orbit{p};
        seen[p] = true;
        for (std::size_t i = 0; i < orbit.size(); ++i) {
            for (const auto& s : gens) {
                auto q = s(orbit[i]);
                if (!seen[q]) {
                    seen[q] = true;
                    orbit.push_back(q);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        return orbit;
    }

    const ColoredGraph& g_;
    Refiner refiner_;
    std::vector<std::vector<std::uint32_t>> path_;
    std::vector<Refiner::Trace> traces_;
    std::vector<std::uint32_t> cell_color_;
    std::vector<Point> base_;
};

} // namespace detail

inline GraphAutomorphisms graph_automorphisms(const ColoredGraph& g) {
    return detail::AutomorphismSearch(g).run();
}

/// Correlation group, its type-preserving kernel and the action on types.
struct AutResult {
    std::vector<Permutation> correlation_generators;
    BigInt aut_order;
    std::vector<Permutation> type_preserving_generators;
    BigInt aut_i_order;
    PermGroup type_action;
    BigInt out_order;
};

/// One node per element, one per type and an apex; elements join their
/// type node, type nodes join the apex. Colors: elements 0, types 1, apex 2.
inline ColoredGraph augmented_graph(const IncidenceSystem& sys) {
    const std::size_t n = sys.size();
    const std::size_t r = sys.rank();
    ColoredGraph g;
    g.adjacency.resize(n + r + 1);
    g.colors.assign(n + r + 1, 0);
    const auto apex = static_cast<std::uint32_t>(n + r);
    for (ElementId e = 0; e < n; ++e) {
        g.adjacency[e] = sys.neighbors(e);
        auto t = static_cast<std::uint32_t>(n + sys.type_of(e));
        g.adjacency[e].push_back(t);
        g.adjacency[t].push_back(e);
    }
    for (std::size_t t = 0; t < r; ++t) {
        g.colors[n + t] = 1;
        g.adjacency[n + t].push_back(apex);
        g.adjacency[apex].push_back(static_cast<std::uint32_t>(n + t));
    }
    g.colors[apex] = 2;
    for (auto& a : g.adjacency) std::sort(a.begin(), a.end());
    return g;
}

/// Builds the result from correlation generators on the element set.
inline AutResult aut_result_from_generators(const IncidenceSystem& sys, std::vector<Permutation> gens) {
    PermGroup aut(sys.size(), gens);
    auto action = induced_action(aut, type_blocks(sys));
    AutResult result;
    result.correlation_generators = std::move(gens);
    result.aut_order = aut.order();
    result.type_preserving_generators = std::move(action.kernel_generators);
    result.aut_i_order = action.kernel_order;
    result.type_action = std::move(action.image);
    result.out_order = result.aut_order / result.aut_i_order;
    return result;
}

inline AutResult correlation_group(const IncidenceSystem& sys) {
    const std::size_t n = sys.size();
    auto found = graph_automorphisms(augmented_graph(sys));
    std::vector<Permutation> gens;
    for (const auto& g : found.generators) {
        std::vector<Point> restricted(g.images().begin(), g.images().begin() + static_cast<std::ptrdiff_t>(n));
        gens.emplace_back(std::move(restricted));
    }
    auto result = aut_result_from_generators(sys, std::move(gens));
    if (result.aut_order != found.order) throw Error("correlation search: order mismatch with stabilizer chain");
    return result;
}

/// Aut_I as a group on elements, searched with one fixed color per type.
inline PermGroup type_preserving_group(const IncidenceSystem& sys) {
    ColoredGraph g;
    g.adjacency.resize(sys.size());
    g.colors.resize(sys.size());
    for (ElementId e = 0; e < sys.size(); ++e) {
        g.adjacency[e] = sys.neighbors(e);
        g.colors[e] = sys.type_of(e);
    }
    auto found = graph_automorphisms(g);
    PermGroup group(sys.size(), std::move(found.generators));
    if (group.order() != found.order) throw Error("type-preserving search: order mismatch with stabilizer chain");
    return group;
}

/// Every correlation, by exhaustive backtracking that checks incidence and
/// type-partition consistency against all previously placed elements.
inline std::vector<Permutation> brute_force_automorphisms(const IncidenceSystem& sys, std::size_t element_bound = 24) {
    const std::size_t n = sys.size();
    if (n > element_bound) throw SizeError("too large");
    std::vector<std::size_t> fiber(sys.rank(), 0);
    for (ElementId e = 0; e < n; ++e) ++fiber[sys.type_of(e)];

    std::vector<Point> image(n);
    std::vector<bool> used(n, false);
    std::vector<Permutation> out;
    auto place = [&](auto&& self, ElementId x) -> void {
        if (x == n) {
            out.emplace_back(image);
            return;
        }
        for (ElementId y = 0; y < n; ++y) {
            if (used[y] || fiber[sys.type_of(y)] != fiber[sys.type_of(x)]) continue;
            bool ok = true;
            for (ElementId u = 0; u < x && ok; ++u) {
                bool same_type = sys.type_of(u) == sys.type_of(x);
                bool same_image_type = sys.type_of(image[u]) == sys.type_of(y);
                ok = same_type == same_image_type && sys.incident(u, x) == sys.incident(image[u], y);
            }
            if (!ok) continue;
            used[y] = true;
            image[x] = y;
            self(self, x + 1);
            used[y] = false;
        }
    };
    place(place, 0);
    std::sort(out.begin(), out.end());
    return out;
}

enum class Verdict { representation, weak_or_mismatch, fail };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::representation: return "representation";
        case Verdict::weak_or_mismatch: return "weak-or-mismatch";
        case Verdict::fail: return "fail";
    }
    return "fail";
}

struct RepresentationReport {
    std::string target;
    BigInt expected_inn;
    BigInt expected_aut;
    AutResult computed;
    Verdict verdict = Verdict::fail;
    std::string explanation;
    std::vector<std::vector<Point>> type_orbits;
    std::optional<GroupFingerprint> aut_fingerprint;  // when |Aut| <= 2000
};

inline constexpr std::size_t kFingerprintBound = 2000;

inline RepresentationReport verify_representation(const AutResult& computed, BigInt expected_inn, BigInt expected_aut,
                                                  std::string target = {}) {
    RepresentationReport report;
    report.target = std::move(target);
    report.expected_inn = std::move(expected_inn);
    report.expected_aut = std::move(expected_aut);
    report.computed = computed;
    report.type_orbits = computed.type_action.orbits();
    if (computed.aut_order <= kFingerprintBound) {
        PermGroup aut(computed.correlation_generators.empty() ? 0 : computed.correlation_generators.front().degree(),
                      computed.correlation_generators);
        report.aut_fingerprint = aut.fingerprint(kFingerprintBound);
    }
    std::ostringstream why;
    if (computed.aut_i_order == report.expected_inn && computed.aut_order == report.expected_aut) {
        report.verdict = Verdict::representation;
        why << "|Aut_I| = " << computed.aut_i_order << " and |Aut| = " << computed.aut_order
            << " match the expected orders";
    } else {
        report.verdict = Verdict::weak_or_mismatch;
        if (computed.aut_i_order != report.expected_inn) {
            why << "aut_i_order " << computed.aut_i_order << " != " << report.expected_inn;
        }
        if (computed.aut_order != report.expected_aut) {
            if (why.tellp() > 0) why << "; ";
            why << "aut_order " << computed.aut_order << " != " << report.expected_aut;
        }
    }
    report.explanation = why.str();
    return report;
}

inline RepresentationReport verify_representation(const IncidenceSystem& sys, BigInt expected_inn,
                                                  BigInt expected_aut, std::string target = {}) {
    auto check = validate(sys);
    if (!check.ok()) {
        RepresentationReport report;
        report.target = std::move(target);
        report.expected_inn = std::move(expected_inn);
        report.expected_aut = std::move(expected_aut);
        report.verdict = Verdict::fail;
        report.explanation = "system does not validate: " + check.violations.front().rule;
        return report;
    }
    return verify_representation(correlation_group(sys), std::move(expected_inn), std::move(expected_aut),
                                 std::move(target));
}

} // namespace geomrep

#endif // GEOMREP_AUTSOLVER_HPP
