#ifndef GEOMREP_COSET_HPP
#define GEOMREP_COSET_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "geomrep/incidence.hpp"
#include "geomrep/perm_group.hpp"

namespace geomrep {

/// A finite group with a family of subgroups, one per type.
struct CosetGeometrySpec {
    PermGroup group;
    std::vector<PermGroup> subgroups;
    std::vector<std::string> labels;  // defaults to "0", "1", ... when empty
};

inline constexpr std::size_t kMaxCosetGroupOrder = 100000;

/// The group's elements with a multiplication table, for set computations.
class GroupTable {
public:
    explicit GroupTable(const PermGroup& g) : elements_(g.enumerate_elements(kMaxCosetGroupOrder)) {
        for (std::uint32_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].images(), i);
    }

    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] const Permutation& element(std::uint32_t i) const { return elements_.at(i); }

    [[nodiscard]] std::uint32_t index(const Permutation& p) const {
        auto it = index_.find(p.images());
        if (it == index_.end()) throw Error("permutation is not in the group");
        return it->second;
    }

    [[nodiscard]] std::uint32_t product(std::uint32_t a, std::uint32_t b) const {
        return index(elements_[a] * elements_[b]);
    }

    /// Indicator vector of a subgroup given by generators.
    [[nodiscard]] std::vector<bool> subset(const PermGroup& h) const {
        std::vector<bool> in(size(), false);
        for (const auto& x : h.enumerate_elements(kMaxCosetGroupOrder)) in[index(x)] = true;
        return in;
    }

    /// {a*b : a in A, b in B}.
    [[nodiscard]] std::vector<bool> product_set(const std::vector<bool>& a, const std::vector<bool>& b) const {
        std::vector<bool> out(size(), false);
        std::vector<std::uint32_t> bs;
        for (std::uint32_t y = 0; y < size(); ++y) {
            if (b[y]) bs.push_back(y);
        }
        for (std::uint32_t x = 0; x < size(); ++x) {
            // B contains the identity, so x*B is already covered when x is
            if (!a[x] || out[x]) continue;
            for (auto y : bs) out[product(x, y)] = true;
        }
        return out;
    }

    /// Subgroup generated by the elements of `s`.
    [[nodiscard]] std::vector<bool> closure(const std::vector<bool>& s) const {
        std::vector<std::uint32_t> gens;
        for (std::uint32_t x = 0; x < size(); ++x) {
            if (s[x]) gens.push_back(x);
        }
        std::vector<bool> out(size(), false);
        const std::uint32_t id = index(Permutation(elements_.front().degree()));
        out[id] = true;
        std::vector<std::uint32_t> queue{id};
        for (std::size_t k = 0; k < queue.size(); ++k) {
            for (auto g : gens) {
                auto y = product(queue[k], g);
                if (!out[y]) {
                    out[y] = true;
                    queue.push_back(y);
                }
            }
        }
        return out;
    }

private:
    std::vector<Permutation> elements_;
    std::map<std::vector<Point>, std::uint32_t> index_;
};

struct CosetGeometry {
    IncidenceSystem system;
    PermGroup action;  // right multiplication on the elements
    /// coset_of[i][g] is the element id of the coset G_i g.
    std::vector<std::vector<ElementId>> coset_of;
};

namespace detail {

inline std::vector<std::string> coset_labels(const CosetGeometrySpec& spec) {
    if (!spec.labels.empty()) {
        if (spec.labels.size() != spec.subgroups.size()) throw Error("label count differs from subgroup count");
        return spec.labels;
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < spec.subgroups.size(); ++i) out.push_back(std::to_string(i));
    return out;
}

inline void check_spec(const CosetGeometrySpec& spec) {
    if (spec.group.order() > kMaxCosetGroupOrder) throw SizeError("group order exceeds 100000");
    for (std::size_t i = 0; i < spec.subgroups.size(); ++i) {
        if (spec.subgroups[i].degree() != spec.group.degree()) throw Error("subgroup degree differs from group degree");
        for (const auto& g : spec.subgroups[i].generators()) {
            if (!spec.group.contains(g)) {
                throw Error("subgroup " + std::to_string(i) + " is not contained in the group: " + g.cycles());
            }
        }
    }
}

} // namespace detail

/// Cosets G_i g as elements of type i, listed by type and then by their
/// smallest member; incidence is nonempty intersection.
inline CosetGeometry coset_geometry(const CosetGeometrySpec& spec, const GroupTable& table) {
    detail::check_spec(spec);
    const auto labels = detail::coset_labels(spec);
    IncidenceBuilder b(labels);
    const std::size_t n = table.size();
    std::vector<std::vector<ElementId>> coset_of(spec.subgroups.size(), std::vector<ElementId>(n, 0));
    for (std::size_t i = 0; i < spec.subgroups.size(); ++i) {
        auto members = table.subset(spec.subgroups[i]);
        std::vector<std::uint32_t> hs;
        for (std::uint32_t h = 0; h < n; ++h) {
            if (members[h]) hs.push_back(h);
        }
        std::vector<bool> assigned(n, false);
        for (std::uint32_t g = 0; g < n; ++g) {
            if (assigned[g]) continue;
            auto id = b.add_element(static_cast<TypeIndex>(i));
            for (auto h : hs) {
                auto x = table.product(h, g);
                assigned[x] = true;
                coset_of[i][x] = id;
            }
        }
    }
    for (std::uint32_t g = 0; g < n; ++g) {
        for (std::size_t i = 0; i < coset_of.size(); ++i) {
            for (std::size_t j = i + 1; j < coset_of.size(); ++j) b.add_incidence(coset_of[i][g], coset_of[j][g]);
        }
    }
    auto system = b.build();
    // the first coset of each type is G_i itself; its id's members give representatives
    std::vector<std::uint32_t> representative(system.size(), 0);
    std::vector<bool> seen(system.size(), false);
    for (std::uint32_t g = 0; g < n; ++g) {
        for (std::size_t i = 0; i < coset_of.size(); ++i) {
            auto id = coset_of[i][g];
            if (!seen[id]) {
                seen[id] = true;
                representative[id] = g;
            }
        }
    }
    std::vector<Permutation> gens;
    for (const auto& s : spec.group.generators()) {
        const auto si = table.index(s);
        std::vector<Point> images(system.size());
        for (ElementId e = 0; e < system.size(); ++e) {
            images[e] = coset_of[system.type_of(e)][table.product(representative[e], si)];
        }
        gens.emplace_back(std::move(images));
    }
    return {std::move(system), PermGroup(b.size(), std::move(gens)), std::move(coset_of)};
}

inline CosetGeometry coset_geometry(const CosetGeometrySpec& spec) {
    detail::check_spec(spec);
    return coset_geometry(spec, GroupTable(spec.group));
}

struct CosetCheckFailure {
    std::vector<std::size_t> j;  // type indices
    std::size_t i = 0;           // extra type (FT) or unused for RC
};

struct CosetCheckReport {
    bool pass = true;
    std::size_t checked = 0;
    std::vector<CosetCheckFailure> failures;
};

namespace detail {

inline std::vector<bool> intersection_of(const std::vector<std::vector<bool>>& subs, const std::vector<std::size_t>& j,
                                         std::size_t n) {
    std::vector<bool> out(n, true);
    for (auto k : j) {
        for (std::size_t x = 0; x < n; ++x) out[x] = out[x] && subs[k][x];
    }
    return out;
}

} // namespace detail

/// For every J and i outside J, compares G_J G_i with the intersection of the G_j G_i.
inline CosetCheckReport check_ft_condition(const CosetGeometrySpec& spec, const GroupTable& table) {
    detail::check_spec(spec);
    const std::size_t r = spec.subgroups.size();
    const std::size_t n = table.size();
    std::vector<std::vector<bool>> subs;
    for (const auto& h : spec.subgroups) subs.push_back(table.subset(h));
    std::vector<std::vector<bool>> pair_products(r * r);
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t i = 0; i < r; ++i) {
            if (i != j) pair_products[j * r + i] = table.product_set(subs[j], subs[i]);
        }
    }
    CosetCheckReport report;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        std::vector<std::size_t> j;
        for (std::size_t k = 0; k < r; ++k) {
            if (mask >> k & 1U) j.push_back(k);
        }
        if (j.size() < 2) continue;  // the two sides coincide for |J| <= 1
        const auto gj = detail::intersection_of(subs, j, n);
        for (std::size_t i = 0; i < r; ++i) {
            if (mask >> i & 1U) continue;
            ++report.checked;
            auto left = table.product_set(gj, subs[i]);
            std::vector<bool> right(n, true);
            for (auto k : j) {
                for (std::size_t x = 0; x < n; ++x) right[x] = right[x] && pair_products[k * r + i][x];
            }
            if (left != right) report.failures.push_back({j, i});
        }
    }
    report.pass = report.failures.empty();
    return report;
}

inline CosetCheckReport check_ft_condition(const CosetGeometrySpec& spec) {
    detail::check_spec(spec);
    return check_ft_condition(spec, GroupTable(spec.group));
}

/// For every J with at least two types outside it, compares G_J with the
/// subgroup generated by the G_{J+i}.
inline CosetCheckReport check_rc_condition(const CosetGeometrySpec& spec, const GroupTable& table) {
    detail::check_spec(spec);
    const std::size_t r = spec.subgroups.size();
    const std::size_t n = table.size();
    std::vector<std::vector<bool>> subs;
    for (const auto& h : spec.subgroups) subs.push_back(table.subset(h));
    CosetCheckReport report;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        std::vector<std::size_t> j;
        for (std::size_t k = 0; k < r; ++k) {
            if (mask >> k & 1U) j.push_back(k);
        }
        if (r - j.size() < 2) continue;
        ++report.checked;
        const auto gj = detail::intersection_of(subs, j, n);
        std::vector<bool> gens(n, false);
        for (std::size_t i = 0; i < r; ++i) {
            if (mask >> i & 1U) continue;
            auto ji = j;
            ji.push_back(i);
            auto part = detail::intersection_of(subs, ji, n);
            for (std::size_t x = 0; x < n; ++x) gens[x] = gens[x] || part[x];
        }
        if (table.closure(gens) != gj) report.failures.push_back({j, 0});
    }
    report.pass = report.failures.empty();
    return report;
}

inline CosetCheckReport check_rc_condition(const CosetGeometrySpec& spec) {
    detail::check_spec(spec);
    return check_rc_condition(spec, GroupTable(spec.group));
}

/// Direct check: the right action is transitive on the flags of every type subset.
inline bool is_flag_transitive(const IncidenceSystem& sys, const PermGroup& action) {
    std::map<std::vector<TypeIndex>, std::vector<std::vector<Point>>> by_type;
    for_each_flag(sys, [&](const Flag& f) {
        std::vector<TypeIndex> t;
        for (auto e : f) t.push_back(sys.type_of(e));
        std::sort(t.begin(), t.end());
        by_type[t].push_back(f);
        return true;
    });
    for (const auto& [type, flags] : by_type) {
        if (type.empty()) continue;
        if (!is_transitive_on(action, flags, true)) return false;
    }
    return true;
}

} // namespace geomrep

#endif // GEOMREP_COSET_HPP
