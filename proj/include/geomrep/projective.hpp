#ifndef GEOMREP_PROJECTIVE_HPP
#define GEOMREP_PROJECTIVE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "geomrep/galois.hpp"
#include "geomrep/incidence.hpp"
#include "geomrep/perm_group.hpp"

namespace geomrep {

/// Homogeneous coordinates; first nonzero coordinate is 1 after `normalize`.
using Coordinates = std::vector<FieldElement>;
using Matrix = std::vector<std::vector<FieldElement>>;

/// A subspace of PG(d,q): reduced echelon basis plus its sorted point indices.
struct ProjectiveSubspace {
    Matrix basis;
    std::vector<std::uint32_t> points;

    [[nodiscard]] std::size_t dimension() const noexcept { return basis.size() - 1; }
};

/// PG(d,q) with all subspaces of projective dimension 0..d-1.
class ProjectiveSpace {
public:
    static constexpr std::size_t kMaxPoints = 100000;

    ProjectiveSpace(FiniteField field, std::size_t d) : field_(std::move(field)), d_(d) {
        if (d < 1) throw Error("projective dimension must be at least 1");
        const std::uint64_t q = field_.order();
        std::uint64_t count = 0;
        std::uint64_t power = 1;
        for (std::size_t i = 0; i <= d; ++i) {
            count += power;
            power *= q;
            if (count > kMaxPoints) throw SizeError("projective space has more than 100000 points");
        }
        subspaces_.resize(d);
        subspaces_[0] = echelon_subspaces(1);
        for (std::uint32_t i = 0; i < subspaces_[0].size(); ++i) {
            subspaces_[0][i].points = {i};
            point_index_.emplace(key(subspaces_[0][i].basis[0]), i);
        }
        for (std::size_t j = 1; j < d; ++j) {
            subspaces_[j] = echelon_subspaces(j + 1);
            for (std::uint32_t i = 0; i < subspaces_[j].size(); ++i) {
                auto& s = subspaces_[j][i];
                s.points = span_points(s.basis);
                by_points_[j].emplace(s.points, i);
            }
        }
    }

    [[nodiscard]] const FiniteField& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return d_; }
    [[nodiscard]] std::size_t point_count() const noexcept { return subspaces_[0].size(); }

    [[nodiscard]] const std::vector<ProjectiveSubspace>& subspaces(std::size_t dim) const { return subspaces_.at(dim); }

    [[nodiscard]] const Coordinates& point(std::uint32_t i) const { return subspaces_[0].at(i).basis[0]; }

    [[nodiscard]] Coordinates normalize(Coordinates v) const {
        auto it = std::find_if(v.begin(), v.end(), [](FieldElement x) { return x.code != 0; });
        if (it == v.end()) throw Error("zero vector is not a projective point");
        const FieldElement s = field_.inv(*it);
        for (auto& x : v) x = field_.mul(x, s);
        return v;
    }

    [[nodiscard]] std::uint32_t point_index(const Coordinates& v) const {
        if (v.size() != d_ + 1) throw Error("coordinate vector has wrong length");
        auto it = point_index_.find(key(normalize(v)));
        return it->second;
    }

    /// Index of the subspace of dimension `dim` with exactly this point set.
    [[nodiscard]] std::optional<std::uint32_t> subspace_index(std::size_t dim, const std::vector<std::uint32_t>& points) const {
        if (dim == 0) {
            if (points.size() != 1) return std::nullopt;
            return points[0];
        }
        auto level = by_points_.find(dim);
        if (level == by_points_.end()) return std::nullopt;
        auto it = level->second.find(points);
        if (it == level->second.end()) return std::nullopt;
        return it->second;
    }

    /// Element id of subspace (dim, index) in `incidence_system()`.
    [[nodiscard]] ElementId element_id(std::size_t dim, std::uint32_t index) const {
        ElementId offset = 0;
        for (std::size_t j = 0; j < dim; ++j) offset += static_cast<ElementId>(subspaces_[j].size());
        return offset + index;
    }

    [[nodiscard]] std::size_t subspace_total() const {
        std::size_t n = 0;
        for (const auto& s : subspaces_) n += s.size();
        return n;
    }

    /// Types "0".."d-1" by projective dimension; incidence is containment.
    [[nodiscard]] IncidenceSystem incidence_system() const {
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < d_; ++j) labels.push_back(std::to_string(j));
        IncidenceBuilder b(labels);
        for (std::size_t j = 0; j < d_; ++j) {
            for (std::size_t i = 0; i < subspaces_[j].size(); ++i) b.add_element(static_cast<TypeIndex>(j));
        }
        add_containment(b);
        return b.build();
    }

    /// Adds subspace containment pairs using `element_id` numbering.
    void add_containment(IncidenceBuilder& b) const {
        for (std::size_t j = 1; j < d_; ++j) {
            for (std::uint32_t i = 0; i < subspaces_[j].size(); ++i) {
                const auto& big = subspaces_[j][i].points;
                for (std::uint32_t p : big) b.add_incidence(element_id(0, p), element_id(j, i));
                for (std::size_t s = 1; s < j; ++s) {
                    for (std::uint32_t k = 0; k < subspaces_[s].size(); ++k) {
                        const auto& small = subspaces_[s][k].points;
                        if (std::includes(big.begin(), big.end(), small.begin(), small.end())) {
                            b.add_incidence(element_id(s, k), element_id(j, i));
                        }
                    }
                }
            }
        }
    }

    /// Permutation of all subspace elements induced by a point permutation
    /// that is a collineation; throws when some image is not a subspace.
    [[nodiscard]] Permutation induced_permutation(const Permutation& on_points) const {
        if (on_points.degree() != point_count()) throw Error("point permutation has wrong degree");
        std::vector<Point> images(subspace_total());
        for (std::size_t j = 0; j < d_; ++j) {
            for (std::uint32_t i = 0; i < subspaces_[j].size(); ++i) {
                std::vector<std::uint32_t> pts;
                for (auto p : subspaces_[j][i].points) pts.push_back(on_points(p));
                std::sort(pts.begin(), pts.end());
                auto target = subspace_index(j, pts);
                if (!target) throw Error("point permutation is not a collineation");
                images[element_id(j, i)] = element_id(j, *target);
            }
        }
        return Permutation(std::move(images));
    }

    /// Point permutation x -> x*M (row vectors).
    [[nodiscard]] Permutation matrix_action(const Matrix& m) const {
        const std::size_t n = d_ + 1;
        if (m.size() != n) throw Error("matrix has wrong size");
        std::vector<Point> images(point_count());
        for (std::uint32_t i = 0; i < point_count(); ++i) {
            const auto& x = point(i);
            Coordinates y(n, FiniteField::zero());
            for (std::size_t c = 0; c < n; ++c) {
                for (std::size_t r = 0; r < n; ++r) y[c] = field_.add(y[c], field_.mul(x[r], m[r][c]));
            }
            images[i] = point_index(y);
        }
        return Permutation(std::move(images));
    }

    [[nodiscard]] std::string format(const Coordinates& v) const {
        std::string out = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ':';
            out += field_.format(v[i]);
        }
        return out + "]";
    }

private:
    [[nodiscard]] std::uint64_t key(const Coordinates& v) const {
        std::uint64_t k = 0;
        for (auto x : v) k = k * field_.order() + x.code;
        return k;
    }

    /// Points spanned by `basis`: combinations with first nonzero coefficient 1.
    [[nodiscard]] std::vector<std::uint32_t> span_points(const Matrix& basis) const {
        const std::size_t r = basis.size();
        const std::uint32_t q = field_.order();
        std::vector<std::uint32_t> out;
        std::vector<std::uint32_t> coeff(r, 0);
        for (std::size_t lead = 0; lead < r; ++lead) {
            // coefficients before `lead` are zero, at `lead` one, after free
            const std::size_t free = r - lead - 1;
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < free; ++i) count *= q;
            for (std::uint64_t c = 0; c < count; ++c) {
                std::uint64_t rest = c;
                Coordinates v = basis[lead];
                for (std::size_t i = lead + 1; i < r; ++i) {
                    const FieldElement a{static_cast<std::uint32_t>(rest % q)};
                    rest /= q;
                    for (std::size_t col = 0; col < v.size(); ++col) {
                        v[col] = field_.add(v[col], field_.mul(a, basis[i][col]));
                    }
                }
                out.push_back(point_index(v));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// All reduced echelon r x (d+1) matrices, ordered by pivot set then free entries.
    [[nodiscard]] std::vector<ProjectiveSubspace> echelon_subspaces(std::size_t r) const {
        const std::size_t n = d_ + 1;
        const std::uint32_t q = field_.order();
        std::vector<ProjectiveSubspace> out;
        std::vector<std::size_t> pivots(r);
        for (std::size_t i = 0; i < r; ++i) pivots[i] = i;
        while (true) {
            std::vector<std::pair<std::size_t, std::size_t>> free_cells;
            for (std::size_t row = 0; row < r; ++row) {
                for (std::size_t col = pivots[row] + 1; col < n; ++col) {
                    if (std::find(pivots.begin(), pivots.end(), col) == pivots.end()) free_cells.emplace_back(row, col);
                }
            }
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < free_cells.size(); ++i) count *= q;
            for (std::uint64_t c = 0; c < count; ++c) {
                Matrix m(r, Coordinates(n, FiniteField::zero()));
                for (std::size_t row = 0; row < r; ++row) m[row][pivots[row]] = FiniteField::one();
                std::uint64_t rest = c;
                for (std::size_t i = free_cells.size(); i-- > 0;) {
                    m[free_cells[i].first][free_cells[i].second] = FieldElement{static_cast<std::uint32_t>(rest % q)};
                    rest /= q;
                }
                out.push_back({std::move(m), {}});
            }
            std::size_t i = r;
            while (i > 0 && pivots[i - 1] == n - r + (i - 1)) --i;
            if (i == 0) break;
            ++pivots[i - 1];
            for (std::size_t j = i; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
        }
        return out;
    }

    FiniteField field_;
    std::size_t d_;
    std::vector<std::vector<ProjectiveSubspace>> subspaces_;
    std::unordered_map<std::uint64_t, std::uint32_t> point_index_;
    std::map<std::size_t, std::map<std::vector<std::uint32_t>, std::uint32_t>> by_points_;
};

inline ProjectiveSpace projective_space(const FiniteField& field, std::size_t d) { return ProjectiveSpace(field, d); }

namespace detail {

inline FieldElement det2(const FiniteField& f, FieldElement a0, FieldElement b0, FieldElement a1, FieldElement b1) {
    return f.sub(f.mul(a0, b1), f.mul(b0, a1));
}

} // namespace detail

/// Cross-ratio (|13||24|)/(|23||14|), with coordinates taken in the basis
/// (p1, p2) of the common line.
inline FieldElement cross_ratio(const FiniteField& f, const Coordinates& p1, const Coordinates& p2,
                                const Coordinates& p3, const Coordinates& p4) {
    const std::size_t n = p1.size();
    if (n < 2 || p2.size() != n || p3.size() != n || p4.size() != n) throw Error("coordinate vectors differ in length");
    auto normal = [&](Coordinates v) {
        auto it = std::find_if(v.begin(), v.end(), [](FieldElement x) { return x.code != 0; });
        if (it == v.end()) throw Error("zero vector is not a projective point");
        const FieldElement s = f.inv(*it);
        for (auto& x : v) x = f.mul(x, s);
        return v;
    };
    const std::vector<Coordinates> pts{normal(p1), normal(p2), normal(p3), normal(p4)};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (pts[i] == pts[j]) throw Error("points are not distinct");
        }
    }
    const auto& u = pts[0];
    const auto& v = pts[1];
    std::size_t s = 0;
    while (u[s].code == 0) ++s;
    std::size_t t = 0;
    for (; t < n; ++t) {
        if (t != s && detail::det2(f, u[s], u[t], v[s], v[t]).code != 0) break;
    }
    const FieldElement det = detail::det2(f, u[s], u[t], v[s], v[t]);
    std::vector<std::pair<FieldElement, FieldElement>> coords;
    for (const auto& p : pts) {
        // p = a*u + b*v, solved on columns s, t
        const FieldElement a = f.div(detail::det2(f, p[s], p[t], v[s], v[t]), det);
        const FieldElement b = f.div(detail::det2(f, u[s], u[t], p[s], p[t]), det);
        for (std::size_t c = 0; c < n; ++c) {
            if (f.add(f.mul(a, u[c]), f.mul(b, v[c])) != p[c]) throw Error("points are not collinear");
        }
        coords.emplace_back(a, b);
    }
    auto bracket = [&](std::size_t i, std::size_t j) {
        return detail::det2(f, coords[i].first, coords[i].second, coords[j].first, coords[j].second);
    };
    return f.div(f.mul(bracket(0, 2), bracket(1, 3)), f.mul(bracket(1, 2), bracket(0, 3)));
}

/// Matrices generating GL(n,q): diag(z,1,..,1) for a primitive z, the
/// transvection I+E_01, the coordinate n-cycle and the swap of coordinates 0,1.
inline std::vector<Matrix> gl_generators(const FiniteField& f, std::size_t n) {
    auto identity = [&] {
        Matrix m(n, Coordinates(n, FiniteField::zero()));
        for (std::size_t i = 0; i < n; ++i) m[i][i] = FiniteField::one();
        return m;
    };
    std::vector<Matrix> gens;
    if (f.order() > 2) {
        auto d = identity();
        d[0][0] = f.primitive_element();
        gens.push_back(d);
    }
    auto t = identity();
    t[0][1] = FiniteField::one();
    gens.push_back(t);
    Matrix c(n, Coordinates(n, FiniteField::zero()));
    for (std::size_t i = 0; i < n; ++i) c[i][(i + 1) % n] = FiniteField::one();
    gens.push_back(c);
    auto s = identity();
    s[0][0] = s[1][1] = FiniteField::zero();
    s[0][1] = s[1][0] = FiniteField::one();
    gens.push_back(s);
    return gens;
}

/// PGL(n,q) acting on the points of PG(n-1,q).
inline PermGroup pgl_group(const ProjectiveSpace& space) {
    const std::size_t n = space.dimension() + 1;
    std::vector<Permutation> gens;
    for (const auto& m : gl_generators(space.field(), n)) gens.push_back(space.matrix_action(m));
    return PermGroup(space.point_count(), std::move(gens));
}

inline PermGroup pgl_group(const FiniteField& f, std::size_t n) {
    if (n < 2) throw Error("PGL needs n >= 2");
    return pgl_group(ProjectiveSpace(f, n - 1));
}

/// Point [a:b:c] <-> line {x : ax+by+cz = 0}, as a permutation of the
/// point/line elements of `incidence_system()` of a projective plane.
inline Permutation duality_map(const ProjectiveSpace& space) {
    if (space.dimension() != 2) throw Error("duality map needs a projective plane (d = 2)");
    const auto& f = space.field();
    const std::size_t np = space.point_count();
    std::vector<Point> images(2 * np);
    for (std::uint32_t u = 0; u < np; ++u) {
        std::vector<std::uint32_t> on;
        for (std::uint32_t x = 0; x < np; ++x) {
            FieldElement dot = FiniteField::zero();
            for (std::size_t c = 0; c < 3; ++c) dot = f.add(dot, f.mul(space.point(u)[c], space.point(x)[c]));
            if (dot.code == 0) on.push_back(x);
        }
        const auto line = *space.subspace_index(1, on);
        images[space.element_id(0, u)] = space.element_id(1, line);
        images[space.element_id(1, line)] = space.element_id(0, u);
    }
    return Permutation(std::move(images));
}

struct FrobeniusMap {
    Permutation map;
    bool trivial = false;
};

/// Coordinate-wise x -> x^p on every subspace element.
inline FrobeniusMap frobenius_point_map(const ProjectiveSpace& space) {
    const auto& f = space.field();
    std::vector<Point> images(space.point_count());
    for (std::uint32_t i = 0; i < space.point_count(); ++i) {
        Coordinates v = space.point(i);
        for (auto& x : v) x = f.frobenius(x);
        images[i] = space.point_index(v);
    }
    return {space.induced_permutation(Permutation(std::move(images))), f.degree() == 1};
}

} // namespace geomrep

#endif // GEOMREP_PROJECTIVE_HPP
