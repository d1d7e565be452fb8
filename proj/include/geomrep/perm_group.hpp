#ifndef GEOMREP_PERM_GROUP_HPP
#define GEOMREP_PERM_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geomrep/error.hpp"
#include "geomrep/permutation.hpp"

namespace geomrep {

/// Base and strong generating set built by deterministic Schreier-Sims.
///
/// Base points are taken from `base_prefix` first, then as the smallest
/// point moved by a generator that fixes the current base. Level `i`
/// holds the strong generators fixing base points `0..i-1` and the
/// orbit/transversal of base point `i` under them.
class StabilizerChain {
public:
    StabilizerChain() = default;

    StabilizerChain(std::size_t degree, const std::vector<Permutation>& generators,
                    std::vector<Point> base_prefix = {})
        : degree_(degree) {
        for (Point b : base_prefix) {
            if (b >= degree) throw Error("base point out of range");
            push_level(b);
        }
        for (const auto& g : generators) {
            if (g.degree() != degree) throw Error("generator degree mismatch");
            if (g.is_identity()) continue;
            std::size_t fixed_all = 0;
            while (fixed_all < levels_.size() && g(levels_[fixed_all].base) == levels_[fixed_all].base) ++fixed_all;
            if (fixed_all == levels_.size()) push_level(static_cast<Point>(g.first_moved()));
            for (std::size_t l = 0; l < levels_.size(); ++l) {
                levels_[l].gens.push_back(g);
                if (g(levels_[l].base) != levels_[l].base) break;
            }
        }
        for (std::size_t l = 0; l < levels_.size(); ++l) rebuild_orbit(l);
        schreier_sims();
    }

    [[nodiscard]] std::size_t degree() const noexcept { return degree_; }
    [[nodiscard]] std::size_t length() const noexcept { return levels_.size(); }

    [[nodiscard]] std::vector<Point> base() const {
        std::vector<Point> b;
        for (const auto& l : levels_) b.push_back(l.base);
        return b;
    }

    [[nodiscard]] BigInt order() const {
        BigInt n = 1;
        for (const auto& l : levels_) n *= l.orbit.size();
        return n;
    }

    [[nodiscard]] const std::vector<Point>& orbit(std::size_t level) const { return levels_.at(level).orbit; }

    /// Strong generators of the pointwise stabilizer of base points `0..level-1`.
    [[nodiscard]] std::vector<Permutation> stabilizer_generators(std::size_t level) const {
        if (level >= levels_.size()) return {};
        return levels_[level].gens;
    }

    /// Residue of sifting `g` from `level`: (residue, level where it dropped out).
    /// A full pass returns `length()` as the level.
    [[nodiscard]] std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t level = 0) const {
        for (std::size_t m = level; m < levels_.size(); ++m) {
            const auto& l = levels_[m];
            Point beta = g(l.base);
            std::int32_t pos = l.position[beta];
            if (pos < 0) return {std::move(g), m};
            g = g * l.inverse_transversal[static_cast<std::size_t>(pos)];
        }
        return {std::move(g), levels_.size()};
    }

    [[nodiscard]] bool contains(const Permutation& g) const {
        if (g.degree() != degree_) throw Error("domain mismatch");
        auto [residue, level] = strip(g);
        return level == levels_.size() && residue.is_identity();
    }

    /// Visits every group element exactly once.
    template <class Visitor>
    void for_each_element(Visitor&& visit) const {
        Permutation current(degree_);
        visit_level(0, current, visit);
    }

private:
    struct Level {
        Point base = 0;
        std::vector<Permutation> gens;
        std::vector<Point> orbit;
        std::vector<std::int32_t> position;
        std::vector<Permutation> transversal;          // base^u = orbit[i]
        std::vector<Permutation> inverse_transversal;
    };

    template <class Visitor>
    void visit_level(std::size_t level, const Permutation& prefix, Visitor& visit) const {
        if (level == levels_.size()) {
            visit(prefix);
            return;
        }
        // Elements factor as u_k * ... * u_1 * u_0 with u_i from level i.
        for (const auto& u : levels_[level].transversal) visit_level(level + 1, u * prefix, visit);
    }

    void push_level(Point b) {
        Level l;
        l.base = b;
        l.position.assign(degree_, -1);
        levels_.push_back(std::move(l));
    }

    void rebuild_orbit(std::size_t index) {
        Level& l = levels_[index];
        std::fill(l.position.begin(), l.position.end(), -1);
        l.orbit.clear();
        l.transversal.clear();
        l.inverse_transversal.clear();
        l.orbit.push_back(l.base);
        l.position[l.base] = 0;
        l.transversal.emplace_back(degree_);
        l.inverse_transversal.emplace_back(degree_);
        for (std::size_t i = 0; i < l.orbit.size(); ++i) {
            Point beta = l.orbit[i];
            for (const auto& s : l.gens) {
                Point gamma = s(beta);
                if (l.position[gamma] >= 0) continue;
                l.position[gamma] = static_cast<std::int32_t>(l.orbit.size());
                l.orbit.push_back(gamma);
                Permutation u = l.transversal[i] * s;
                l.inverse_transversal.push_back(u.inverse());
                l.transversal.push_back(std::move(u));
            }
        }
    }

    void schreier_sims() {
        std::size_t i = levels_.size();
        while (i > 0) {
            const std::size_t level = i - 1;
            bool restarted = false;
            for (std::size_t oi = 0; oi < levels_[level].orbit.size() && !restarted; ++oi) {
                for (std::size_t gi = 0; gi < levels_[level].gens.size(); ++gi) {
                    const Level& l = levels_[level];
                    Point beta = l.orbit[oi];
                    Point gamma = l.gens[gi](beta);
                    Permutation h = l.transversal[oi] * l.gens[gi] *
                                    l.inverse_transversal[static_cast<std::size_t>(l.position[gamma])];
                    if (h.is_identity()) continue;
                    auto [residue, drop] = strip(std::move(h), level + 1);
                    if (drop == levels_.size() && residue.is_identity()) continue;
                    if (drop == levels_.size()) push_level(static_cast<Point>(residue.first_moved()));
                    for (std::size_t m = level + 1; m <= drop; ++m) {
                        levels_[m].gens.push_back(residue);
                        rebuild_orbit(m);
                    }
                    i = drop + 1;
                    restarted = true;
                    break;
                }
            }
            if (!restarted) --i;
        }
    }

    std::size_t degree_ = 0;
    std::vector<Level> levels_;
};

/// Order, element-order histogram and center order of a finite group.
///
/// Equal fingerprints do not prove isomorphism; reports say
/// "fingerprint-equal, not proven isomorphic" where that matters.
struct GroupFingerprint {
    BigInt order;
    std::map<BigInt, BigInt> element_orders;
    BigInt center_order;

    friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

/// A permutation group given by generators, with an eagerly built
/// stabilizer chain. Immutable after construction.
class PermGroup {
public:
    PermGroup() = default;

    PermGroup(std::size_t degree, std::vector<Permutation> generators)
        : degree_(degree), generators_(std::move(generators)), chain_(degree_, generators_) {}

    static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

    [[nodiscard]] std::size_t degree() const noexcept { return degree_; }
    [[nodiscard]] const std::vector<Permutation>& generators() const noexcept { return generators_; }
    [[nodiscard]] const StabilizerChain& chain() const noexcept { return chain_; }
    [[nodiscard]] BigInt order() const { return chain_.order(); }

    [[nodiscard]] bool contains(const Permutation& g) const { return chain_.contains(g); }

    /// Orbit partition; cells sorted internally and by minimum element.
    [[nodiscard]] std::vector<std::vector<Point>> orbits() const {
        std::vector<std::int64_t> cell(degree_, -1);
        std::vector<std::vector<Point>> result;
        for (Point start = 0; start < degree_; ++start) {
            if (cell[start] >= 0) continue;
            const auto id = static_cast<std::int64_t>(result.size());
            std::vector<Point> orbit{start};
            cell[start] = id;
            for (std::size_t i = 0; i < orbit.size(); ++i) {
                for (const auto& g : generators_) {
                    Point q = g(orbit[i]);
                    if (cell[q] < 0) {
                        cell[q] = id;
                        orbit.push_back(q);
                    }
                }
            }
            std::sort(orbit.begin(), orbit.end());
            result.push_back(std::move(orbit));
        }
        return result;
    }

    /// All elements sorted by image array; throws SizeError("too large").
    [[nodiscard]] std::vector<Permutation> enumerate_elements(std::size_t bound) const {
        if (order() > bound) throw SizeError("too large");
        std::vector<Permutation> all;
        all.reserve(static_cast<std::size_t>(order()));
        chain_.for_each_element([&](const Permutation& g) { all.push_back(g); });
        std::sort(all.begin(), all.end());
        return all;
    }

    [[nodiscard]] GroupFingerprint fingerprint(std::size_t bound) const {
        auto elements = enumerate_elements(bound);
        GroupFingerprint fp;
        fp.order = elements.size();
        fp.center_order = 0;
        for (const auto& g : elements) {
            fp.element_orders[g.order()] += 1;
            bool central = std::all_of(generators_.begin(), generators_.end(),
                                       [&](const Permutation& s) { return g * s == s * g; });
            if (central) fp.center_order += 1;
        }
        return fp;
    }

private:
    std::size_t degree_ = 0;
    std::vector<Permutation> generators_;
    StabilizerChain chain_;
};

/// Image of a group acting on a block system, plus the kernel of that action.
struct InducedAction {
    PermGroup image;
    BigInt kernel_order;
    std::vector<Permutation> kernel_generators;
};

/// Action on `blocks` (disjoint point sets permuted setwise by every generator).
/// The kernel is the pointwise stabilizer of the block points in the
/// combined action on points plus blocks.
inline InducedAction induced_action(const PermGroup& group, const std::vector<std::vector<Point>>& blocks) {
    const std::size_t m = group.degree();
    std::vector<std::int64_t> block_of(m, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (Point p : blocks[b]) {
            if (p >= m) throw Error("block point out of range");
            if (block_of[p] >= 0) throw Error("blocks are not disjoint");
            block_of[p] = static_cast<std::int64_t>(b);
        }
    }
    std::vector<Permutation> image_gens;
    std::vector<Permutation> combined_gens;
    for (const auto& g : group.generators()) {
        std::vector<Point> block_images(blocks.size());
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b].empty()) throw Error("empty block");
            std::int64_t target = block_of[g(blocks[b].front())];
            if (target < 0) throw Error("generator " + g.cycles() + " maps a block outside the block system");
            for (Point p : blocks[b]) {
                if (block_of[g(p)] != target) {
                    throw Error("generator " + g.cycles() + " splits block " + std::to_string(b) + " at point " +
                                std::to_string(p));
                }
            }
            block_images[b] = static_cast<Point>(target);
        }
        Permutation on_blocks(block_images);
        std::vector<Point> combined(g.images());
        for (Point b : block_images) combined.push_back(static_cast<Point>(m + b));
        image_gens.push_back(on_blocks);
        combined_gens.emplace_back(std::move(combined));
    }
    std::vector<Point> prefix(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) prefix[b] = static_cast<Point>(m + b);
    StabilizerChain chain(m + blocks.size(), combined_gens, prefix);

    InducedAction result{PermGroup(blocks.size(), std::move(image_gens)), 1, {}};
    for (std::size_t l = blocks.size(); l < chain.length(); ++l) result.kernel_order *= chain.orbit(l).size();
    for (const auto& k : chain.stabilizer_generators(blocks.size())) {
        std::vector<Point> restricted(k.images().begin(), k.images().begin() + static_cast<std::ptrdiff_t>(m));
        result.kernel_generators.emplace_back(std::move(restricted));
    }
    if (result.image.order() * result.kernel_order != group.order()) {
        throw Error("induced action: orbit-stabilizer mismatch");
    }
    return result;
}

/// Whether the group acts transitively on `tuples`, which must be closed
/// under the action. With `as_sets`, tuples are compared after sorting.
inline bool is_transitive_on(const PermGroup& group, const std::vector<std::vector<Point>>& tuples,
                             bool as_sets = false) {
    if (tuples.empty()) throw Error("empty tuple list");
    std::map<std::vector<Point>, std::size_t> index;
    for (auto t : tuples) {
        for (Point p : t) {
            if (p >= group.degree()) throw Error("tuple contains out-of-domain point");
        }
        if (as_sets) std::sort(t.begin(), t.end());
        index.emplace(std::move(t), index.size());
    }
    std::vector<bool> reached(index.size(), false);
    std::vector<std::vector<Point>> queue;
    auto first = tuples.front();
    if (as_sets) std::sort(first.begin(), first.end());
    reached[index.at(first)] = true;
    queue.push_back(first);
    std::size_t count = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (const auto& g : group.generators()) {
            std::vector<Point> image(queue[i].size());
            std::transform(queue[i].begin(), queue[i].end(), image.begin(), [&](Point p) { return g(p); });
            if (as_sets) std::sort(image.begin(), image.end());
            auto it = index.find(image);
            if (it == index.end()) throw Error("tuple list is not invariant under the group");
            if (!reached[it->second]) {
                reached[it->second] = true;
                ++count;
                queue.push_back(std::move(image));
            }
        }
    }
    return count == index.size();
}

} // namespace geomrep

#endif // GEOMREP_PERM_GROUP_HPP
