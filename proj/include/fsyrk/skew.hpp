#pragma once

#include <array>

#include "fsyrk/fields.hpp"
#include "fsyrk/matrix.hpp"
#include "fsyrk/opcount.hpp"

namespace fsyrk {

/// Compact description of a skew-orthogonal matrix Y with Y*Y^T = -I
/// (or Y*conj(Y)^T = -I for the unitary variant over F_{p^2}).
///
/// ScalarRoot(i):  Y = i*I with i^2 = -1.
/// Pair(a, b):     Y = [[a*I, b*I], [-b*I, a*I]] with a^2 + b^2 = -1,
///                 defined for even dimensions only.
///
/// ycost is the number of scalar operations per element when applying Y:
/// 0 for the complex root i (swap + sign flip) and for a root equal to 1,
/// 1 for other scalar roots, 2 for Pair(1, b), 3 for a general pair.
template <FieldType F>
struct SkewOrthogonal {
    enum class Form { ScalarRoot, Pair };

    Form form = Form::ScalarRoot;
    typename F::Element a{};  // the root for ScalarRoot, else the pair's a
    typename F::Element b{};  // unused for ScalarRoot
    std::size_t dim = 0;
    int ycost = 0;

    /// Same structure for a different matrix dimension.
    SkewOrthogonal resized(std::size_t d) const {
        SkewOrthogonal y = *this;
        y.dim = d;
        return y;
    }
};

namespace detail {

template <FieldType F>
SkewOrthogonal<F> make_scalar_root(const F& f, typename F::Element root, std::size_t dim) {
    int y = 1;
    if constexpr (std::is_same_v<F, ComplexField>)
        y = 0;
    else if (f.eq(root, f.one()))
        y = 0;
    return {SkewOrthogonal<F>::Form::ScalarRoot, root, f.zero(), dim, y};
}

template <FieldType F>
SkewOrthogonal<F> make_pair(const F& f, typename F::Element a, typename F::Element b,
                            std::size_t dim) {
    if (dim % 2 != 0)
        throw DimensionParityError("pair-form skew-orthogonal matrix requires an even dimension");
    int y = f.eq(a, f.one()) ? 2 : 3;
    return {SkewOrthogonal<F>::Form::Pair, a, b, dim, y};
}

}  // namespace detail

/// Skew-orthogonal matrix for a prime field, by congruence class of p:
/// p = 2 -> I (1 = -1); p = 1 mod 4 -> sqrt(-1)*I; p = 3 mod 8 ->
/// Pair(1, sqrt(-2)); p = 7 mod 8 -> Pair(a, b) from the sum-of-squares
/// decomposition of -1.
inline SkewOrthogonal<PrimeField> skew_orthogonal(const PrimeField& f, std::size_t dim) {
    const std::uint64_t p = f.modulus();
    if (p == 2) return detail::make_scalar_root(f, f.one(), dim);
    if (p % 4 == 1) return detail::make_scalar_root(f, f.sqrt(p - 1), dim);
    if (p % 8 == 3) return detail::make_pair(f, f.one(), f.sqrt(p - 2), dim);
    auto [a, b] = f.sum_of_squares(p - 1);
    return detail::make_pair(f, a, b, dim);
}

inline SkewOrthogonal<BinaryField> skew_orthogonal(const BinaryField& f, std::size_t dim) {
    return detail::make_scalar_root(f, f.one(), dim);
}

/// -1 is always a square in an even extension.
inline SkewOrthogonal<QuadExtField> skew_orthogonal(const QuadExtField& f, std::size_t dim) {
    return detail::make_scalar_root(f, f.sqrt(f.neg(f.one())), dim);
}

inline SkewOrthogonal<ComplexField> skew_orthogonal(const ComplexField& f, std::size_t dim) {
    return detail::make_scalar_root(f, {0.0, 1.0}, dim);
}

/// Y = z*I with z*conj(z) = -1, so that Y*conj(Y)^T = -I.  When -1 is a
/// square mod p the root lives in the base field; otherwise z = a + i*b
/// with a^2 + b^2 = -1 in F_p and i = sqrt(-1) in F_{p^2}.
inline SkewOrthogonal<QuadExtField> skew_unitary(const QuadExtField& f, std::size_t dim) {
    const PrimeField& base = f.base();
    const std::uint64_t p = base.modulus();
    if (p % 4 == 1)
        return detail::make_scalar_root(f, f.from_base(base.sqrt(p - 1)), dim);
    auto [a, b] = base.sum_of_squares(p - 1);
    // i = t*x with t^2 * ns = -1; such t exists since -1/ns is a residue.
    PrimeField::Element t = base.sqrt(base.mul(p - 1, base.inv(f.non_residue())));
    return detail::make_scalar_root(f, QuadExtElement{a, base.mul(b, t)}, dim);
}

/// Dense dim x dim materialization, for verification.
template <FieldType F>
Matrix<F> materialize(const F& f, const SkewOrthogonal<F>& y) {
    Matrix<F> m(y.dim, y.dim, f.zero());
    if (y.form == SkewOrthogonal<F>::Form::ScalarRoot) {
        for (std::size_t i = 0; i < y.dim; ++i) m.at(i, i) = y.a;
    } else {
        const std::size_t h = y.dim / 2;
        for (std::size_t i = 0; i < h; ++i) {
            m.at(i, i) = y.a;
            m.at(i, h + i) = y.b;
            m.at(h + i, i) = f.neg(y.b);
            m.at(h + i, h + i) = y.a;
        }
    }
    return m;
}

/// A <- A*Y in place.  Operation counts follow the ycost classes: the
/// complex root i and the root 1 are free, other scalar roots cost one
/// multiplication per element, Pair(1,b) one mult and one add per element,
/// and a general pair two mults and one add per element.
template <FieldType F>
void apply_skew_right_inplace(const F& f, NoDeduce<MatrixView<F>> a, const SkewOrthogonal<F>& y,
                              OpCount& ops) {
    detail::require(a.cols == y.dim, "apply_skew_right: dimension mismatch");
    const std::size_t elems = a.rows * a.cols;
    if (y.form == SkewOrthogonal<F>::Form::ScalarRoot) {
        if constexpr (std::is_same_v<F, ComplexField>) {
            // multiplication by i is (re, im) -> (-im, re): no arithmetic
            for (std::size_t i = 0; i < a.rows; ++i)
                for (std::size_t j = 0; j < a.cols; ++j) {
                    auto z = a.at(i, j);
                    a.at(i, j) = {-z.imag(), z.real()};
                }
            return;
        } else {
            if (f.eq(y.a, f.one())) return;
            for (std::size_t i = 0; i < a.rows; ++i)
                for (std::size_t j = 0; j < a.cols; ++j) a.at(i, j) = f.mul(a.at(i, j), y.a);
            ops.mults += elems;
            return;
        }
    }
    // Pair form: (A1 | A2) -> (a*A1 - b*A2 | b*A1 + a*A2)
    if (a.cols % 2 != 0)
        throw DimensionParityError("pair-form Y applied to an odd number of columns");
    const std::size_t h = a.cols / 2;
    const bool a_is_one = f.eq(y.a, f.one());
    for (std::size_t i = 0; i < a.rows; ++i) {
        auto* row = a.row(i);
        for (std::size_t j = 0; j < h; ++j) {
            auto u = row[j];
            auto v = row[h + j];
            if (a_is_one) {
                row[j] = f.sub(u, f.mul(y.b, v));
                row[h + j] = f.add(f.mul(y.b, u), v);
            } else {
                row[j] = f.sub(f.mul(y.a, u), f.mul(y.b, v));
                row[h + j] = f.add(f.mul(y.b, u), f.mul(y.a, v));
            }
        }
    }
    ops.mults += (a_is_one ? 1 : 2) * elems;
    ops.adds += elems;
}

/// Returns A*Y.
template <FieldType F>
Matrix<F> apply_skew_right(const F& f, NoDeduce<ConstMatrixView<F>> a, const SkewOrthogonal<F>& y,
                           OpCount& ops) {
    Matrix<F> out(a.rows, a.cols);
    copy_into(f, a, out.view());
    apply_skew_right_inplace(f, out.view(), y, ops);
    return out;
}

/// Symmetric factorization of a pair of quadratic non-residues:
/// Y = [[a, b], [c, d]] (row-major) with Y*Y^T = diag(alpha, beta).
inline std::array<PrimeField::Element, 4> nrsyf(const PrimeField& f, PrimeField::Element alpha,
                                                PrimeField::Element beta) {
    if (f.legendre(alpha) != -1)
        throw NotNonResidueError("nrsyf: alpha = " + std::to_string(alpha) +
                                 " is not a quadratic non-residue in " + f.name());
    if (f.legendre(beta) != -1)
        throw NotNonResidueError("nrsyf: beta = " + std::to_string(beta) +
                                 " is not a quadratic non-residue in " + f.name());
    auto [a, b] = f.sum_of_squares(alpha);
    if (a == 0) throw std::logic_error("nrsyf: sum-of-squares returned a = 0 for a non-residue");
    PrimeField::Element d = f.mul(a, f.sqrt(f.mul(beta, f.inv(alpha))));
    PrimeField::Element c = f.neg(f.mul(b, f.mul(d, f.inv(a))));
    return {a, b, c, d};
}

}  // namespace fsyrk
