#ifndef GEOMREP_INCIDENCE_HPP
#define GEOMREP_INCIDENCE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "geomrep/error.hpp"
#include "geomrep/permutation.hpp"

namespace geomrep {

using ElementId = std::uint32_t;
using TypeIndex = std::uint32_t;

/// A set of pairwise incident element ids, kept sorted.
using Flag = std::vector<ElementId>;

/// Finite incidence system: dense element ids `0..size()-1`, an ordered
/// typeset, and a symmetric incidence relation stored as sorted adjacency
/// lists. Construction does not enforce well-formedness; `validate`
/// reports what is wrong. Immutable once built.
class IncidenceSystem {
public:
    IncidenceSystem() = default;

    IncidenceSystem(std::vector<std::string> types, std::vector<TypeIndex> element_types,
                    const std::vector<std::pair<ElementId, ElementId>>& incidences)
        : types_(std::move(types)), type_of_(std::move(element_types)), adjacency_(type_of_.size()) {
        for (TypeIndex t : type_of_) {
            if (t >= types_.size()) throw Error("element type index out of range");
        }
        for (auto [a, b] : incidences) add_pair(a, b);
        finish();
    }

    [[nodiscard]] std::size_t rank() const noexcept { return types_.size(); }
    [[nodiscard]] std::size_t size() const noexcept { return type_of_.size(); }
    [[nodiscard]] const std::vector<std::string>& types() const noexcept { return types_; }
    [[nodiscard]] const std::string& type_label(TypeIndex t) const { return types_.at(t); }
    [[nodiscard]] TypeIndex type_of(ElementId e) const { return type_of_.at(e); }
    [[nodiscard]] const std::vector<TypeIndex>& element_types() const noexcept { return type_of_; }
    [[nodiscard]] const std::vector<ElementId>& neighbors(ElementId e) const { return adjacency_.at(e); }

    [[nodiscard]] std::optional<TypeIndex> type_index(const std::string& label) const {
        auto it = std::find(types_.begin(), types_.end(), label);
        if (it == types_.end()) return std::nullopt;
        return static_cast<TypeIndex>(it - types_.begin());
    }

    [[nodiscard]] bool incident(ElementId a, ElementId b) const {
        const auto& n = adjacency_.at(a);
        return std::binary_search(n.begin(), n.end(), b);
    }

    [[nodiscard]] std::size_t incidence_count() const noexcept { return pair_count_; }

    /// Incidence pairs, each sorted ascending, listed lexicographically.
    [[nodiscard]] std::vector<std::pair<ElementId, ElementId>> incidences() const {
        std::vector<std::pair<ElementId, ElementId>> out;
        out.reserve(pair_count_);
        for (ElementId a = 0; a < adjacency_.size(); ++a) {
            for (ElementId b : adjacency_[a]) {
                if (a < b) out.emplace_back(a, b);
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<ElementId> elements_of_type(TypeIndex t) const {
        std::vector<ElementId> out;
        for (ElementId e = 0; e < type_of_.size(); ++e) {
            if (type_of_[e] == t) out.push_back(e);
        }
        return out;
    }

    /// Pairs that could not be stored: self pairs and ids out of range.
    [[nodiscard]] const std::vector<std::pair<ElementId, ElementId>>& rejected_pairs() const noexcept {
        return rejected_;
    }

private:
    void add_pair(ElementId a, ElementId b) {
        if (a >= type_of_.size() || b >= type_of_.size() || a == b) {
            rejected_.emplace_back(a, b);
            return;
        }
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }

    void finish() {
        pair_count_ = 0;
        for (auto& n : adjacency_) {
            std::sort(n.begin(), n.end());
            n.erase(std::unique(n.begin(), n.end()), n.end());
            pair_count_ += n.size();
        }
        pair_count_ /= 2;
    }

    std::vector<std::string> types_;
    std::vector<TypeIndex> type_of_;
    std::vector<std::vector<ElementId>> adjacency_;
    std::vector<std::pair<ElementId, ElementId>> rejected_;
    std::size_t pair_count_ = 0;
};

/// Incremental construction helper for generators.
class IncidenceBuilder {
public:
    explicit IncidenceBuilder(std::vector<std::string> types) : types_(std::move(types)) {}

    ElementId add_element(TypeIndex type) {
        type_of_.push_back(type);
        return static_cast<ElementId>(type_of_.size() - 1);
    }

    void add_incidence(ElementId a, ElementId b) { pairs_.emplace_back(a, b); }

    void reserve_incidences(std::size_t n) { pairs_.reserve(n); }

    [[nodiscard]] std::size_t size() const noexcept { return type_of_.size(); }

    [[nodiscard]] IncidenceSystem build() const { return IncidenceSystem(types_, type_of_, pairs_); }

private:
    std::vector<std::string> types_;
    std::vector<TypeIndex> type_of_;
    std::vector<std::pair<ElementId, ElementId>> pairs_;
};

struct Violation {
    std::string rule;
    std::vector<std::int64_t> witnesses;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

inline ValidationReport validate(const IncidenceSystem& sys) {
    ValidationReport report;
    std::set<std::string> labels;
    for (TypeIndex t = 0; t < sys.rank(); ++t) {
        if (!labels.insert(sys.type_label(t)).second) {
            report.violations.push_back({"duplicate type label", {static_cast<std::int64_t>(t)}});
        }
    }
    for (auto [a, b] : sys.rejected_pairs()) {
        if (a == b && a < sys.size()) {
            report.violations.push_back({"self incidence", {a, b}});
        } else {
            report.violations.push_back({"dangling id", {a, b}});
        }
    }
    for (auto [a, b] : sys.incidences()) {
        if (sys.type_of(a) == sys.type_of(b)) report.violations.push_back({"same-type incidence", {a, b}});
    }
    std::vector<std::size_t> fiber(sys.rank(), 0);
    for (ElementId e = 0; e < sys.size(); ++e) ++fiber[sys.type_of(e)];
    for (TypeIndex t = 0; t < sys.rank(); ++t) {
        if (fiber[t] == 0) report.violations.push_back({"empty type fiber", {static_cast<std::int64_t>(t)}});
    }
    return report;
}

inline bool is_flag(const IncidenceSystem& sys, const Flag& flag) {
    for (std::size_t i = 0; i < flag.size(); ++i) {
        if (flag[i] >= sys.size()) return false;
        for (std::size_t j = i + 1; j < flag.size(); ++j) {
            if (flag[i] == flag[j] || !sys.incident(flag[i], flag[j])) return false;
        }
    }
    return true;
}

namespace detail {

inline std::vector<ElementId> intersect_sorted(const std::vector<ElementId>& a, const std::vector<ElementId>& b) {
    std::vector<ElementId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Elements incident with every member of a non-empty flag.
inline std::vector<ElementId> common_neighbors(const IncidenceSystem& sys, const Flag& flag) {
    std::vector<ElementId> common = sys.neighbors(flag.front());
    for (std::size_t i = 1; i < flag.size() && !common.empty(); ++i) {
        common = intersect_sorted(common, sys.neighbors(flag[i]));
    }
    return common;
}

inline std::vector<ElementId> all_elements(const IncidenceSystem& sys) {
    std::vector<ElementId> all(sys.size());
    for (ElementId e = 0; e < sys.size(); ++e) all[e] = e;
    return all;
}

template <class Visitor>
bool visit_flags(const IncidenceSystem& sys, Flag& flag, const std::vector<ElementId>& candidates,
                 std::size_t max_size, Visitor& visit) {
    if (!visit(static_cast<const Flag&>(flag))) return false;
    if (flag.size() == max_size) return true;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        ElementId e = candidates[i];
        std::vector<ElementId> next;
        const auto& n = sys.neighbors(e);
        std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(), n.begin(),
                              n.end(), std::back_inserter(next));
        flag.push_back(e);
        bool go_on = visit_flags(sys, flag, next, max_size, visit);
        flag.pop_back();
        if (!go_on) return false;
    }
    return true;
}

} // namespace detail

/// Visits every flag (including the empty flag) with at most `max_size`
/// elements, in lexicographic order of sorted id lists. The visitor
/// returns false to stop early.
template <class Visitor>
void for_each_flag(const IncidenceSystem& sys, Visitor&& visit,
                   std::size_t max_size = std::numeric_limits<std::size_t>::max()) {
    Flag flag;
    detail::visit_flags(sys, flag, detail::all_elements(sys), max_size, visit);
}

/// Chambers (flags containing one element of every type), sorted.
inline std::vector<Flag> chambers(const IncidenceSystem& sys) {
    std::vector<Flag> out;
    for_each_flag(
        sys,
        [&](const Flag& f) {
            if (f.size() == sys.rank()) out.push_back(f);
            return true;
        },
        sys.rank());
    return out;
}

/// Deterministic greedy backtracking: fill the lowest missing type first,
/// trying candidates in increasing id order.
inline std::optional<Flag> extend_flag_to_chamber(const IncidenceSystem& sys, const Flag& flag) {
    Flag sorted = flag;
    std::sort(sorted.begin(), sorted.end());
    if (!is_flag(sys, sorted)) throw Error("not a flag");

    std::vector<bool> used(sys.rank(), false);
    for (ElementId e : sorted) used[sys.type_of(e)] = true;

    std::function<bool(Flag&, std::vector<ElementId>)> extend = [&](Flag& current,
                                                                  std::vector<ElementId> candidates) {
        auto missing = std::find(used.begin(), used.end(), false);
        if (missing == used.end()) return true;
        const auto t = static_cast<TypeIndex>(missing - used.begin());
        used[t] = true;
        for (ElementId e : candidates) {
            if (sys.type_of(e) != t) continue;
            current.push_back(e);
            if (extend(current, detail::intersect_sorted(candidates, sys.neighbors(e)))) return true;
            current.pop_back();
        }
        used[t] = false;
        return false;
    };

    Flag current = sorted;
    auto candidates = sorted.empty() ? detail::all_elements(sys) : detail::common_neighbors(sys, sorted);
    if (!extend(current, std::move(candidates))) return std::nullopt;
    std::sort(current.begin(), current.end());
    return current;
}

/// Maximal flags by Bron-Kerbosch with pivoting, each sorted, in sorted order.
inline std::vector<Flag> maximal_flags(const IncidenceSystem& sys) {
    std::vector<Flag> out;
    Flag r;
    std::function<void(std::vector<ElementId>, std::vector<ElementId>)> bk = [&](std::vector<ElementId> p,
                                                                                std::vector<ElementId> x) {
        if (p.empty() && x.empty()) {
            Flag f = r;
            std::sort(f.begin(), f.end());
            out.push_back(std::move(f));
            return;
        }
        ElementId pivot = p.empty() ? x.front() : p.front();
        std::size_t best = 0;
        for (const auto* set : {&p, &x}) {
            for (ElementId u : *set) {
                auto c = detail::intersect_sorted(p, sys.neighbors(u)).size();
                if (c >= best) {
                    best = c;
                    pivot = u;
                }
            }
        }
        std::vector<ElementId> branch;
        std::set_difference(p.begin(), p.end(), sys.neighbors(pivot).begin(), sys.neighbors(pivot).end(),
                            std::back_inserter(branch));
        for (ElementId v : branch) {
            r.push_back(v);
            bk(detail::intersect_sorted(p, sys.neighbors(v)), detail::intersect_sorted(x, sys.neighbors(v)));
            r.pop_back();
            p.erase(std::lower_bound(p.begin(), p.end(), v));
            x.insert(std::lower_bound(x.begin(), x.end(), v), v);
        }
    };
    bk(detail::all_elements(sys), {});
    std::sort(out.begin(), out.end());
    return out;
}

/// Every flag lies in a chamber, i.e. every maximal flag is a chamber.
inline bool is_geometry(const IncidenceSystem& sys) {
    if (sys.size() == 0) return sys.rank() == 0;
    auto maximal = maximal_flags(sys);
    return std::all_of(maximal.begin(), maximal.end(), [&](const Flag& f) { return f.size() == sys.rank(); });
}

/// Every flag that is not a chamber lies in at least two chambers.
inline bool is_firm(const IncidenceSystem& sys) {
    if (!is_geometry(sys)) return false;
    std::map<Flag, std::size_t> count;
    for (const auto& c : chambers(sys)) {
        const std::size_t n = c.size();
        for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << n); ++mask) {
            Flag sub;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::uint64_t{1} << i)) sub.push_back(c[i]);
            }
            ++count[sub];
        }
    }
    return std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second >= 2; });
}

/// A derived system together with the original id of each element.
struct Subsystem {
    IncidenceSystem system;
    std::vector<ElementId> origin;
};

namespace detail {

inline Subsystem induced(const IncidenceSystem& sys, const std::vector<ElementId>& keep,
                         const std::vector<TypeIndex>& kept_types) {
    std::vector<std::int64_t> new_type(sys.rank(), -1);
    std::vector<std::string> labels;
    for (TypeIndex t : kept_types) {
        new_type[t] = static_cast<std::int64_t>(labels.size());
        labels.push_back(sys.type_label(t));
    }
    std::vector<std::int64_t> new_id(sys.size(), -1);
    std::vector<TypeIndex> types;
    for (ElementId e : keep) {
        new_id[e] = static_cast<std::int64_t>(types.size());
        types.push_back(static_cast<TypeIndex>(new_type[sys.type_of(e)]));
    }
    std::vector<std::pair<ElementId, ElementId>> pairs;
    for (ElementId e : keep) {
        for (ElementId f : sys.neighbors(e)) {
            if (e < f && new_id[f] >= 0) {
                pairs.emplace_back(static_cast<ElementId>(new_id[e]), static_cast<ElementId>(new_id[f]));
            }
        }
    }
    return {IncidenceSystem(std::move(labels), std::move(types), pairs), keep};
}

} // namespace detail

/// Elements outside the flag incident with all of it, over the types not in the flag.
inline Subsystem residue(const IncidenceSystem& sys, const Flag& flag) {
    Flag sorted = flag;
    std::sort(sorted.begin(), sorted.end());
    if (!is_flag(sys, sorted)) throw Error("not a flag");
    std::vector<bool> used(sys.rank(), false);
    for (ElementId e : sorted) used[sys.type_of(e)] = true;
    std::vector<TypeIndex> kept;
    for (TypeIndex t = 0; t < sys.rank(); ++t) {
        if (!used[t]) kept.push_back(t);
    }
    auto elements = sorted.empty() ? detail::all_elements(sys) : detail::common_neighbors(sys, sorted);
    return detail::induced(sys, elements, kept);
}

/// Restriction to the elements whose type lies in `types` (labels).
inline Subsystem truncation(const IncidenceSystem& sys, const std::vector<std::string>& types) {
    if (types.empty()) throw Error("truncation type set is empty");
    std::vector<bool> in_j(sys.rank(), false);
    for (const auto& label : types) {
        auto t = sys.type_index(label);
        if (!t) throw Error("truncation type '" + label + "' is not in the typeset");
        in_j[*t] = true;
    }
    std::vector<TypeIndex> kept;
    for (TypeIndex t = 0; t < sys.rank(); ++t) {
        if (in_j[t]) kept.push_back(t);
    }
    std::vector<ElementId> elements;
    for (ElementId e = 0; e < sys.size(); ++e) {
        if (in_j[sys.type_of(e)]) elements.push_back(e);
    }
    return detail::induced(sys, elements, kept);
}

/// Simple undirected graph on nodes `0..size()-1`.
struct Graph {
    std::vector<std::vector<std::uint32_t>> adjacency;

    [[nodiscard]] std::size_t size() const noexcept { return adjacency.size(); }

    [[nodiscard]] std::size_t edge_count() const noexcept {
        std::size_t n = 0;
        for (const auto& a : adjacency) n += a.size();
        return n / 2;
    }

    /// Connected and non-empty.
    [[nodiscard]] bool is_connected() const {
        if (adjacency.empty()) return false;
        std::vector<bool> seen(size(), false);
        std::vector<std::uint32_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : adjacency[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == size();
    }

    /// Length of a shortest cycle; nullopt for a forest.
    [[nodiscard]] std::optional<std::size_t> girth() const {
        std::optional<std::size_t> best;
        for (std::uint32_t s = 0; s < size(); ++s) {
            std::vector<std::int64_t> dist(size(), -1), parent(size(), -1);
            std::vector<std::uint32_t> queue{s};
            dist[s] = 0;
            for (std::size_t i = 0; i < queue.size(); ++i) {
                auto v = queue[i];
                for (auto w : adjacency[v]) {
                    if (dist[w] < 0) {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if (parent[v] != static_cast<std::int64_t>(w)) {
                        auto len = static_cast<std::size_t>(dist[v] + dist[w] + 1);
                        if (!best || len < *best) best = len;
                    }
                }
            }
        }
        return best;
    }
};

inline Graph incidence_graph(const IncidenceSystem& sys) {
    Graph g;
    g.adjacency.resize(sys.size());
    for (ElementId e = 0; e < sys.size(); ++e) g.adjacency[e] = sys.neighbors(e);
    return g;
}

/// Rank-0 and rank-1 systems count as residually connected.
inline bool is_residually_connected(const IncidenceSystem& sys) {
    if (sys.rank() < 2) return true;
    bool ok = true;
    for_each_flag(
        sys,
        [&](const Flag& f) {
            if (sys.rank() - f.size() < 2) return true;
            auto res = residue(sys, f);
            if (!incidence_graph(res.system).is_connected()) ok = false;
            return ok;
        },
        sys.rank() - 2);
    return ok;
}

/// Whether `alpha` preserves incidence and the type partition of `sys`.
inline bool is_correlation(const IncidenceSystem& sys, const Permutation& alpha) {
    if (alpha.degree() != sys.size()) return false;
    std::vector<std::int64_t> type_image(sys.rank(), -1);
    std::vector<bool> hit(sys.rank(), false);
    for (ElementId e = 0; e < sys.size(); ++e) {
        auto t = sys.type_of(e);
        auto u = sys.type_of(alpha(e));
        if (type_image[t] < 0) {
            if (hit[u]) return false;
            type_image[t] = u;
            hit[u] = true;
        } else if (type_image[t] != static_cast<std::int64_t>(u)) {
            return false;
        }
    }
    for (ElementId e = 0; e < sys.size(); ++e) {
        const auto& n = sys.neighbors(e);
        const auto& m = sys.neighbors(alpha(e));
        if (n.size() != m.size()) return false;
        for (ElementId f : n) {
            if (!std::binary_search(m.begin(), m.end(), alpha(f))) return false;
        }
    }
    return true;
}

/// Element ids grouped by type, one block per type index.
inline std::vector<std::vector<Point>> type_blocks(const IncidenceSystem& sys) {
    std::vector<std::vector<Point>> blocks(sys.rank());
    for (ElementId e = 0; e < sys.size(); ++e) blocks[sys.type_of(e)].push_back(e);
    return blocks;
}

} // namespace geomrep

#endif // GEOMREP_INCIDENCE_HPP
