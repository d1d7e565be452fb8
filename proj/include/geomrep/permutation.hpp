#ifndef GEOMREP_PERMUTATION_HPP
#define GEOMREP_PERMUTATION_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geomrep/error.hpp"

namespace geomrep {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1}, stored as its image array.
///
/// Products compose left to right: `(a * b)(x) == b(a(x))`, so `a * b`
/// means "apply a, then b". Right cosets, right actions and transversals
/// throughout the library follow this convention.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::size_t degree) : images_(degree) {
        std::iota(images_.begin(), images_.end(), Point{0});
    }

    explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (Point p : images_) {
            if (p >= images_.size() || seen[p]) {
                throw Error("image array is not a bijection");
            }
            seen[p] = true;
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `{{0, 1, 2}, {3, 4}}`.
    static Permutation from_cycles(std::size_t degree,
                                   std::initializer_list<std::initializer_list<Point>> cycles) {
        std::vector<std::vector<Point>> cs;
        for (const auto& c : cycles) cs.emplace_back(c);
        return from_cycles(degree, cs);
    }

    static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
        std::vector<Point> images(degree);
        std::iota(images.begin(), images.end(), Point{0});
        for (const auto& cycle : cycles) {
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                if (cycle[i] >= degree) throw Error("cycle point out of range");
                images[cycle[i]] = cycle[(i + 1) % cycle.size()];
            }
        }
        return Permutation(std::move(images));
    }

    [[nodiscard]] std::size_t degree() const noexcept { return images_.size(); }
    [[nodiscard]] Point operator()(Point x) const { return images_[x]; }
    [[nodiscard]] const std::vector<Point>& images() const noexcept { return images_; }

    [[nodiscard]] bool is_identity() const noexcept {
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (images_[i] != i) return false;
        }
        return true;
    }

    [[nodiscard]] Permutation inverse() const {
        Permutation inv;
        inv.images_.resize(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) inv.images_[images_[i]] = static_cast<Point>(i);
        return inv;
    }

    /// Smallest moved point, or degree() for the identity.
    [[nodiscard]] std::size_t first_moved() const noexcept {
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (images_[i] != i) return i;
        }
        return images_.size();
    }

    /// Element order (lcm of cycle lengths).
    [[nodiscard]] BigInt order() const {
        BigInt result = 1;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i]) continue;
            std::size_t len = 0;
            for (std::size_t j = i; !seen[j]; j = images_[j]) {
                seen[j] = true;
                ++len;
            }
            BigInt l = len;
            result = result / boost::multiprecision::gcd(result, l) * l;
        }
        return result;
    }

    [[nodiscard]] std::string cycles() const {
        std::ostringstream out;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i] || images_[i] == i) continue;
            out << '(';
            for (std::size_t j = i; !seen[j]; j = images_[j]) {
                seen[j] = true;
                if (j != i) out << ' ';
                out << j;
            }
            out << ')';
        }
        std::string s = out.str();
        return s.empty() ? "()" : s;
    }

    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.degree() != b.degree()) throw Error("degree mismatch in product");
        Permutation r;
        r.images_.resize(a.images_.size());
        for (std::size_t i = 0; i < a.images_.size(); ++i) r.images_[i] = b.images_[a.images_[i]];
        return r;
    }

    Permutation& operator*=(const Permutation& b) { return *this = *this * b; }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

private:
    std::vector<Point> images_;
};

/// `g^-1 * h * g`-style conjugate matching the left-to-right product.
inline Permutation conjugate(const Permutation& h, const Permutation& g) { return g.inverse() * h * g; }

} // namespace geomrep

#endif // GEOMREP_PERMUTATION_HPP
