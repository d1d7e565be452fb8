#ifndef GEOMREP_GALOIS_HPP
#define GEOMREP_GALOIS_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "geomrep/error.hpp"

namespace geomrep {

/// Element of GF(p^k), encoded as sum(c_i * p^i) over its coefficient
/// vector in the polynomial basis 1, w, w^2, ... (w a root of the modulus).
struct FieldElement {
    std::uint32_t code = 0;

    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// GF(p^k) with the lexicographically smallest monic irreducible modulus
/// (coefficients read from degree k-1 down to the constant term).
/// Arithmetic goes through precomputed tables, so q is capped at 1024.
class FiniteField {
public:
    static constexpr std::uint32_t kMaxOrder = 1024;

    FiniteField() = default;

    FiniteField(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
        if (!is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
        if (k == 0) throw Error("extension degree must be at least 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            q *= p;
            if (q > kMaxOrder) throw SizeError("field order exceeds " + std::to_string(kMaxOrder));
        }
        q_ = static_cast<std::uint32_t>(q);
        modulus_ = smallest_irreducible();
        build_tables();
    }

    [[nodiscard]] std::uint32_t characteristic() const noexcept { return p_; }
    [[nodiscard]] std::uint32_t degree() const noexcept { return k_; }
    [[nodiscard]] std::uint32_t order() const noexcept { return q_; }

    /// Monic modulus coefficients, constant term first (size k+1).
    [[nodiscard]] const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    [[nodiscard]] static FieldElement zero() noexcept { return {0}; }
    [[nodiscard]] static FieldElement one() noexcept { return {1}; }

    /// The class of x modulo the modulus, printed "w".
    [[nodiscard]] FieldElement w() const { return k_ > 1 ? FieldElement{p_} : FieldElement{0}; }

    [[nodiscard]] FieldElement element(std::uint32_t code) const {
        if (code >= q_) throw Error("field element code out of range");
        return {code};
    }

    [[nodiscard]] std::vector<FieldElement> elements() const {
        std::vector<FieldElement> out(q_);
        for (std::uint32_t c = 0; c < q_; ++c) out[c] = {c};
        return out;
    }

    [[nodiscard]] FieldElement add(FieldElement a, FieldElement b) const { return {add_[a.code * q_ + b.code]}; }
    [[nodiscard]] FieldElement mul(FieldElement a, FieldElement b) const { return {mul_[a.code * q_ + b.code]}; }
    [[nodiscard]] FieldElement neg(FieldElement a) const { return {neg_[a.code]}; }
    [[nodiscard]] FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    [[nodiscard]] FieldElement inv(FieldElement a) const {
        if (a.code == 0) throw Error("division by zero in finite field");
        return {inv_[a.code]};
    }

    [[nodiscard]] FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    [[nodiscard]] FieldElement pow(FieldElement a, std::uint64_t e) const {
        FieldElement r = one();
        while (e > 0) {
            if (e & 1U) r = mul(r, a);
            a = mul(a, a);
            e >>= 1U;
        }
        return r;
    }

    /// x -> x^p.
    [[nodiscard]] FieldElement frobenius(FieldElement a) const { return pow(a, p_); }

    /// [x, x^p, x^(p^2), ...] up to the first repetition.
    [[nodiscard]] std::vector<FieldElement> frobenius_orbit(FieldElement x) const {
        std::vector<FieldElement> orbit{x};
        for (FieldElement y = frobenius(x); y != x; y = frobenius(y)) orbit.push_back(y);
        return orbit;
    }

    /// Membership in the subfield GF(p^d); d must divide k.
    [[nodiscard]] bool in_subfield(FieldElement x, std::uint32_t d) const {
        if (d == 0 || k_ % d != 0) throw Error("subfield degree must divide the extension degree");
        std::uint64_t pd = 1;
        for (std::uint32_t i = 0; i < d; ++i) pd *= p_;
        return pow(x, pd) == x;
    }

    [[nodiscard]] std::uint32_t multiplicative_order(FieldElement x) const {
        if (x.code == 0) throw Error("zero has no multiplicative order");
        std::uint32_t n = 1;
        for (FieldElement y = x; y != one(); y = mul(y, x)) ++n;
        return n;
    }

    /// Smallest-code generator of the multiplicative group.
    [[nodiscard]] FieldElement primitive_element() const {
        for (std::uint32_t c = 1; c < q_; ++c) {
            if (multiplicative_order({c}) == q_ - 1) return {c};
        }
        return one();
    }

    /// Polynomial in "w", highest degree first: "w^2+2w+1", "w+1", "0".
    [[nodiscard]] std::string format(FieldElement x) const {
        auto coeffs = digits(x.code);
        std::ostringstream out;
        bool first = true;
        for (std::uint32_t d = k_; d-- > 0;) {
            const std::uint32_t a = coeffs[d];
            if (a == 0) continue;
            if (!first) out << '+';
            first = false;
            if (d == 0) {
                out << a;
            } else {
                if (a != 1) out << a;
                out << 'w';
                if (d > 1) out << '^' << d;
            }
        }
        return first ? "0" : out.str();
    }

    friend bool operator==(const FiniteField& a, const FiniteField& b) {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

private:
    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
        }
        return true;
    }

    [[nodiscard]] std::vector<std::uint32_t> digits(std::uint32_t code) const {
        std::vector<std::uint32_t> out(k_, 0);
        for (std::uint32_t i = 0; i < k_; ++i) {
            out[i] = code % p_;
            code /= p_;
        }
        return out;
    }

    [[nodiscard]] std::uint32_t encode(const std::vector<std::uint32_t>& coeffs) const {
        std::uint32_t code = 0;
        for (std::uint32_t i = k_; i-- > 0;) code = code * p_ + coeffs[i];
        return code;
    }

    /// Remainder of `a` modulo monic `m` over GF(p); both constant term first.
    [[nodiscard]] std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                                      const std::vector<std::uint32_t>& m) const {
        const std::size_t dm = m.size() - 1;
        for (std::size_t i = a.size(); i-- > dm;) {
            const std::uint32_t c = a[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= dm; ++j) {
                a[i - dm + j] = (a[i - dm + j] + (p_ - c) * m[j]) % p_;
            }
        }
        a.resize(std::min(a.size(), dm));
        return a;
    }

    [[nodiscard]] std::vector<std::uint32_t> smallest_irreducible() const {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < k_; ++i) count *= p_;
        for (std::uint64_t c = 0; c < count; ++c) {
            std::vector<std::uint32_t> candidate(k_ + 1, 0);
            std::uint64_t rest = c;
            for (std::uint32_t i = 0; i < k_; ++i) {
                candidate[i] = static_cast<std::uint32_t>(rest % p_);
                rest /= p_;
            }
            candidate[k_] = 1;
            if (is_irreducible(candidate)) return candidate;
        }
        throw Error("no irreducible polynomial found");
    }

    /// Trial division by every monic polynomial of degree 1..k/2.
    [[nodiscard]] bool is_irreducible(const std::vector<std::uint32_t>& f) const {
        const std::uint32_t k = static_cast<std::uint32_t>(f.size() - 1);
        for (std::uint32_t d = 1; d <= k / 2; ++d) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < d; ++i) count *= p_;
            for (std::uint64_t c = 0; c < count; ++c) {
                std::vector<std::uint32_t> g(d + 1, 0);
                std::uint64_t rest = c;
                for (std::uint32_t i = 0; i < d; ++i) {
                    g[i] = static_cast<std::uint32_t>(rest % p_);
                    rest /= p_;
                }
                g[d] = 1;
                auto r = poly_mod(f, g);
                bool zero = true;
                for (auto x : r) zero = zero && x == 0;
                if (zero) return false;
            }
        }
        return true;
    }

    void build_tables() {
        add_.assign(static_cast<std::size_t>(q_) * q_, 0);
        mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a) {
            auto da = digits(a);
            std::vector<std::uint32_t> na(k_);
            for (std::uint32_t i = 0; i < k_; ++i) na[i] = (p_ - da[i]) % p_;
            neg_[a] = encode(na);
            for (std::uint32_t b = 0; b < q_; ++b) {
                auto db = digits(b);
                std::vector<std::uint32_t> s(k_);
                for (std::uint32_t i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
                add_[a * q_ + b] = encode(s);
                std::vector<std::uint32_t> prod(2 * k_ - 1, 0);
                for (std::uint32_t i = 0; i < k_; ++i) {
                    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
                }
                auto r = poly_mod(prod, modulus_);
                r.resize(k_, 0);
                mul_[a * q_ + b] = encode(r);
            }
        }
        for (std::uint32_t a = 1; a < q_; ++a) {
            for (std::uint32_t b = 1; b < q_; ++b) {
                if (mul_[a * q_ + b] == 1) {
                    inv_[a] = b;
                    break;
                }
            }
        }
    }

    std::uint32_t p_ = 2;
    std::uint32_t k_ = 1;
    std::uint32_t q_ = 2;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

inline FiniteField make_field(std::uint32_t p, std::uint32_t k) { return FiniteField(p, k); }

} // namespace geomrep

#endif // GEOMREP_GALOIS_HPP
