#include "fsyrk/fields.hpp"

#include <array>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>

namespace fsyrk {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t parse_u64(const std::string& token, std::uint64_t limit, const char* what) {
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (errno != 0 || end == token.c_str() || *end != '\0' || v >= limit)
        throw ParseError(std::string("invalid ") + what + " element: '" + token + "'");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

// ---------------------------------------------------------------- PrimeField

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 31))
        throw std::invalid_argument("prime modulus must be < 2^31, got " + std::to_string(p));
    if (!is_prime_u64(p))
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (p_ % 2 == 1) {
        Element s = 2;
        while (legendre(s) == 1) ++s;
        lqnr_ = s;
    }
}

PrimeField::Element PrimeField::pow(Element base, std::uint64_t exp) const {
    Element result = 1;
    Element acc = base % p_;
    while (exp != 0) {
        if (exp & 1) result = mul(result, acc);
        acc = mul(acc, acc);
        exp >>= 1;
    }
    return result;
}

PrimeField::Element PrimeField::inv(Element a) const {
    if (a == 0) throw std::domain_error("inverse of zero in " + name());
    return pow(a, p_ - 2);
}

int PrimeField::legendre(Element k) const {
    if (p_ == 2)
        throw std::domain_error("Legendre symbol undefined for p = 2 (every element is a square)");
    k %= p_;
    if (k == 0) return 0;
    Element e = pow(k, (p_ - 1) / 2);
    return e == 1 ? 1 : -1;
}

PrimeField::Element PrimeField::sqrt(Element k) const {
    k %= p_;
    if (p_ == 2) return k;
    if (k == 0) return 0;
    if (legendre(k) != 1) throw NonResidueError(std::to_string(k) + " is not a square in " + name());

    Element r;
    if (p_ % 4 == 3) {
        r = pow(k, (p_ + 1) / 4);
    } else {
        // Tonelli-Shanks
        std::uint64_t q = p_ - 1;
        unsigned s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        Element c = pow(lqnr_, q);
        Element t = pow(k, q);
        r = pow(k, (q + 1) / 2);
        unsigned m = s;
        while (t != 1) {
            Element t2 = t;
            unsigned i = 0;
            while (t2 != 1) {
                t2 = mul(t2, t2);
                ++i;
            }
            Element b = c;
            for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b);
            m = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
    }
    return std::min(r, p_ - r);
}

PrimeField::Element PrimeField::lqnr() const {
    if (p_ == 2) throw std::domain_error("no quadratic non-residue in F_2");
    return lqnr_;
}

std::pair<PrimeField::Element, PrimeField::Element> PrimeField::sum_of_squares(Element k) const {
    if (p_ == 2) throw std::domain_error("sum-of-squares decomposition requires odd p");
    k %= p_;
    if (legendre(k) >= 0) return {sqrt(k), 0};
    Element s = lqnr_;
    Element c = sqrt(s - 1);  // s - 1 is a square: s is the least non-residue
    Element r = mul(k, inv(s));
    Element a = sqrt(r);
    return {a, mul(a, c)};
}

PrimeField::Element PrimeField::parse(const std::string& token) const {
    return parse_u64(token, p_, name().c_str());
}

// --------------------------------------------------------------- BinaryField

namespace {
// Lexicographically smallest irreducible polynomial of each degree over F_2,
// encoded with the x^k bit set; verified irreducible by the unit tests.
constexpr std::array<std::uint32_t, 17> kReductionPoly = {
    0,       0x3,    0x7,    0xb,    0x13,   0x25,   0x43,   0x83,  0x11b,
    0x203,   0x409,  0x805,  0x1009, 0x201b, 0x4021, 0x8003, 0x1002b,
};
}  // namespace

BinaryField::BinaryField(unsigned degree) : k_(degree) {
    if (degree < 1 || degree > 16)
        throw std::invalid_argument("GF(2^k) supports 1 <= k <= 16, got k = " +
                                    std::to_string(degree));
    poly_ = kReductionPoly[degree];
}

BinaryField::Element BinaryField::mul(Element a, Element b) const {
    std::uint32_t r = 0;
    std::uint32_t x = a;
    while (b != 0) {
        if (b & 1) r ^= x;
        b >>= 1;
        x <<= 1;
        if (x >> k_ & 1) x ^= poly_;
    }
    return r;
}

BinaryField::Element BinaryField::pow(Element base, std::uint64_t exp) const {
    Element result = 1;
    Element acc = base;
    while (exp != 0) {
        if (exp & 1) result = mul(result, acc);
        acc = mul(acc, acc);
        exp >>= 1;
    }
    return result;
}

BinaryField::Element BinaryField::inv(Element a) const {
    if (a == 0) throw std::domain_error("inverse of zero in " + name());
    return pow(a, cardinality() - 2);
}

BinaryField::Element BinaryField::sqrt(Element a) const {
    for (unsigned i = 0; i + 1 < k_; ++i) a = mul(a, a);
    return a;
}

BinaryField::Element BinaryField::parse(const std::string& token) const {
    return static_cast<Element>(parse_u64(token, cardinality(), name().c_str()));
}

// -------------------------------------------------------------- QuadExtField

QuadExtField::QuadExtField(std::uint64_t p) : base_(p), ns_(0) {
    if (p == 2) throw std::invalid_argument("quadratic extension requires an odd prime");
    ns_ = base_.lqnr();
    // A fixed non-square for Tonelli-Shanks: z is a square in F_{p^2} iff
    // norm(z) is a square in F_p, so scan for a candidate of non-square norm.
    for (std::uint64_t a = 0;; ++a) {
        Element z{a % p, 1};
        if (base_.legendre(norm(z)) == -1) {
            ts_nonresidue_ = z;
            break;
        }
    }
}

QuadExtField::Element QuadExtField::pow(Element base, std::uint64_t exp) const {
    Element result = one();
    Element acc = base;
    while (exp != 0) {
        if (exp & 1) result = mul(result, acc);
        acc = mul(acc, acc);
        exp >>= 1;
    }
    return result;
}

QuadExtField::Element QuadExtField::inv(Element z) const {
    if (is_zero(z)) throw std::domain_error("inverse of zero in " + name());
    // 1/z = conj(z) / (z * conj(z))
    std::uint64_t n_inv = base_.inv(norm(z));
    Element c = conj(z);
    return {base_.mul(c.a, n_inv), base_.mul(c.b, n_inv)};
}

bool QuadExtField::is_square(Element z) const {
    if (is_zero(z)) return true;
    return base_.legendre(norm(z)) == 1;
}

QuadExtField::Element QuadExtField::sqrt(Element z) const {
    if (is_zero(z)) return z;
    if (!is_square(z)) throw NonResidueError("element is not a square in " + name());

    // Tonelli-Shanks over the cyclic group of order p^2 - 1.
    const std::uint64_t p = base_.modulus();
    std::uint64_t q = p * p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Element c = pow(ts_nonresidue_, q);
    Element t = pow(z, q);
    Element r = pow(z, (q + 1) / 2);
    unsigned m = s;
    while (!eq(t, one())) {
        Element t2 = t;
        unsigned i = 0;
        while (!eq(t2, one())) {
            t2 = mul(t2, t2);
            ++i;
        }
        Element b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    Element minus_r = neg(r);
    return encode(r) <= encode(minus_r) ? r : minus_r;
}

QuadExtField::Element QuadExtField::parse(const std::string& token) const {
    return decode(parse_u64(token, cardinality(), name().c_str()));
}

// -------------------------------------------------------------- ComplexField

std::string ComplexField::format(Element z) const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", z.real(), z.imag());
    return buf;
}

ComplexField::Element ComplexField::parse(const std::string& token) const {
    std::size_t comma = token.find(',');
    if (comma == std::string::npos)
        throw ParseError("complex element must be 're,im', got '" + token + "'");
    char* end = nullptr;
    std::string re_str = token.substr(0, comma);
    std::string im_str = token.substr(comma + 1);
    double re = std::strtod(re_str.c_str(), &end);
    if (end == re_str.c_str() || *end != '\0')
        throw ParseError("invalid complex element: '" + token + "'");
    double im = std::strtod(im_str.c_str(), &end);
    if (end == im_str.c_str() || *end != '\0')
        throw ParseError("invalid complex element: '" + token + "'");
    return {re, im};
}

}  // namespace fsyrk
