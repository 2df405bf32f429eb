#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace fsyrk {

struct NonResidueError : std::domain_error {
    explicit NonResidueError(const std::string& what) : std::domain_error(what) {}
};

struct NotNonResidueError : std::domain_error {
    explicit NotNonResidueError(const std::string& what) : std::domain_error(what) {}
};

struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

struct DimensionParityError : std::invalid_argument {
    explicit DimensionParityError(const std::string& what) : std::invalid_argument(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Prime field Z/pZ for prime 2 <= p < 2^31.  Elements are canonical
/// residues in [0, p), so every product fits a 64-bit intermediate.
class PrimeField {
  public:
    using Element = std::uint64_t;

    /// Checks primality by trial division; throws std::invalid_argument otherwise.
    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }
    std::uint64_t characteristic() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    bool is_zero(Element a) const { return a == 0; }
    bool eq(Element a, Element b) const { return a == b; }

    Element add(Element a, Element b) const {
        Element s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element mul(Element a, Element b) const { return (a * b) % p_; }
    Element conj(Element a) const { return a; }

    Element pow(Element base, std::uint64_t exp) const;
    Element inv(Element a) const;

    /// Reduces a signed integer to its canonical residue.
    Element from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<Element>(r);
    }

    /// Legendre symbol, computed as k^((p-1)/2) mapped to {-1, 0, 1}.
    /// Rejects p = 2, where the classification is meaningless.
    int legendre(Element k) const;

    /// Canonical square root min(r, p-r); throws NonResidueError when k has none.
    Element sqrt(Element k) const;

    /// Least quadratic non-residue, deterministic scan from 2 (odd p only).
    Element lqnr() const;

    /// Sum-of-squares decomposition: (a, b) with a^2 + b^2 = k (mod p).
    std::pair<Element, Element> sum_of_squares(Element k) const;

    Element random_element(std::mt19937_64& rng) const {
        return std::uniform_int_distribution<std::uint64_t>(0, p_ - 1)(rng);
    }

    std::string format(Element a) const { return std::to_string(a); }
    Element parse(const std::string& token) const;

    std::string name() const { return "F_" + std::to_string(p_); }

  private:
    std::uint64_t p_;
    Element lqnr_ = 0;  // cached at construction for odd p
};

/// Binary field GF(2^k), 1 <= k <= 16, with a fixed table of reduction
/// polynomials (lexicographically smallest irreducible per degree).
/// Elements are polynomials over F_2 encoded as k-bit integers.
class BinaryField {
  public:
    using Element = std::uint32_t;

    explicit BinaryField(unsigned degree);

    unsigned degree() const { return k_; }
    std::uint32_t reduction_poly() const { return poly_; }
    std::uint64_t characteristic() const { return 2; }
    std::uint64_t cardinality() const { return std::uint64_t{1} << k_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    bool is_zero(Element a) const { return a == 0; }
    bool eq(Element a, Element b) const { return a == b; }

    Element add(Element a, Element b) const { return a ^ b; }
    Element sub(Element a, Element b) const { return a ^ b; }
    Element neg(Element a) const { return a; }
    Element mul(Element a, Element b) const;
    Element conj(Element a) const { return a; }

    Element pow(Element base, std::uint64_t exp) const;
    Element inv(Element a) const;

    /// Frobenius square root x^(2^(k-1)); every element is a square.
    Element sqrt(Element a) const;

    Element random_element(std::mt19937_64& rng) const {
        return static_cast<Element>(
            std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(cardinality() - 1))(rng));
    }

    std::string format(Element a) const { return std::to_string(a); }
    Element parse(const std::string& token) const;

    std::string name() const { return "GF(2^" + std::to_string(k_) + ")"; }

  private:
    unsigned k_;
    std::uint32_t poly_;
};

/// Element of F_{p^2} = F_p[x]/(x^2 - ns): a + b*x.
struct QuadExtElement {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    friend bool operator==(const QuadExtElement&, const QuadExtElement&) = default;
};

/// Quadratic extension F_{p^2} over an odd prime field, modulus x^2 - ns
/// with ns the least quadratic non-residue mod p.  Since ns is a
/// non-residue, x^p = -x and conjugation (Frobenius) is (a, b) -> (a, -b).
class QuadExtField {
  public:
    using Element = QuadExtElement;

    explicit QuadExtField(std::uint64_t p);

    const PrimeField& base() const { return base_; }
    std::uint64_t characteristic() const { return base_.modulus(); }
    std::uint64_t non_residue() const { return ns_; }
    std::uint64_t cardinality() const { return base_.modulus() * base_.modulus(); }

    Element zero() const { return {0, 0}; }
    Element one() const { return {1, 0}; }
    bool is_zero(Element z) const { return z.a == 0 && z.b == 0; }
    bool eq(Element y, Element z) const { return y == z; }

    Element add(Element y, Element z) const { return {base_.add(y.a, z.a), base_.add(y.b, z.b)}; }
    Element sub(Element y, Element z) const { return {base_.sub(y.a, z.a), base_.sub(y.b, z.b)}; }
    Element neg(Element z) const { return {base_.neg(z.a), base_.neg(z.b)}; }
    Element mul(Element y, Element z) const {
        // (a + bx)(c + dx) = ac + ns*bd + (ad + bc) x
        const PrimeField& f = base_;
        return {f.add(f.mul(y.a, z.a), f.mul(ns_, f.mul(y.b, z.b))),
                f.add(f.mul(y.a, z.b), f.mul(y.b, z.a))};
    }
    Element conj(Element z) const { return {z.a, base_.neg(z.b)}; }

    Element from_base(std::uint64_t a) const { return {a % base_.modulus(), 0}; }

    Element pow(Element base, std::uint64_t exp) const;
    Element inv(Element z) const;

    /// z * conj(z) = a^2 - ns*b^2, always in the base field.
    std::uint64_t norm(Element z) const {
        return base_.sub(base_.mul(z.a, z.a), base_.mul(ns_, base_.mul(z.b, z.b)));
    }

    bool is_square(Element z) const;

    /// Square root by Tonelli-Shanks on the group of order p^2 - 1.
    /// Canonical root: the one with the smaller integer encoding a + b*p.
    Element sqrt(Element z) const;

    /// Integer encoding a + b*p in [0, p^2), used by the text format.
    std::uint64_t encode(Element z) const { return z.a + z.b * base_.modulus(); }
    Element decode(std::uint64_t v) const {
        return {v % base_.modulus(), (v / base_.modulus()) % base_.modulus()};
    }

    Element random_element(std::mt19937_64& rng) const {
        return {base_.random_element(rng), base_.random_element(rng)};
    }

    std::string format(Element z) const { return std::to_string(encode(z)); }
    Element parse(const std::string& token) const;

    std::string name() const { return "F_" + std::to_string(base_.modulus()) + "^2"; }

  private:
    PrimeField base_;
    std::uint64_t ns_;
    Element ts_nonresidue_;  // a fixed non-square, for Tonelli-Shanks
};

/// Complex numbers as pairs of doubles.  Multiplication by i is a
/// swap-and-negate and is counted as zero arithmetic operations.
class ComplexField {
  public:
    using Element = std::complex<double>;

    std::uint64_t characteristic() const { return 0; }

    Element zero() const { return {0.0, 0.0}; }
    Element one() const { return {1.0, 0.0}; }
    bool is_zero(Element z) const { return z == Element{0.0, 0.0}; }
    bool eq(Element y, Element z) const { return y == z; }

    Element add(Element y, Element z) const { return y + z; }
    Element sub(Element y, Element z) const { return y - z; }
    Element neg(Element z) const { return -z; }
    Element mul(Element y, Element z) const { return y * z; }
    Element conj(Element z) const { return std::conj(z); }
    Element inv(Element z) const { return 1.0 / z; }
    Element sqrt(Element z) const { return std::sqrt(z); }

    Element random_element(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        double re = d(rng);
        double im = d(rng);
        return {re, im};
    }

    std::string format(Element z) const;
    Element parse(const std::string& token) const;

    std::string name() const { return "C"; }
};

template <class T>
concept FieldType = requires(const T f, typename T::Element e, std::mt19937_64 rng) {
    { f.zero() } -> std::convertible_to<typename T::Element>;
    { f.one() } -> std::convertible_to<typename T::Element>;
    { f.add(e, e) } -> std::convertible_to<typename T::Element>;
    { f.sub(e, e) } -> std::convertible_to<typename T::Element>;
    { f.mul(e, e) } -> std::convertible_to<typename T::Element>;
    { f.neg(e) } -> std::convertible_to<typename T::Element>;
    { f.conj(e) } -> std::convertible_to<typename T::Element>;
    { f.eq(e, e) } -> std::convertible_to<bool>;
};

/// Equality up to a relative tolerance: exact for the finite fields,
/// magnitude-relative for complex doubles.
template <FieldType F>
bool approx_eq(const F& f, typename F::Element a, typename F::Element b, double /*tol*/) {
    return f.eq(a, b);
}

inline bool approx_eq(const ComplexField&, std::complex<double> a, std::complex<double> b,
                      double tol) {
    double scale = std::max(1.0, std::abs(b));
    return std::abs(a - b) <= tol * scale;
}

}  // namespace fsyrk
