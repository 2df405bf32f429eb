#pragma once

#include <cstddef>
#include <random>
#include <type_traits>
#include <vector>

#include "fsyrk/fields.hpp"
#include "fsyrk/opcount.hpp"

namespace fsyrk {

/// Keeps view parameters out of template deduction so a MatrixView
/// converts to a ConstMatrixView at any call site; F is deduced from the
/// field argument alone.
template <class T>
using NoDeduce = std::type_identity_t<T>;

namespace detail {

/// RAII registration of a buffer with the thread-local allocation stats.
class TrackedSize {
  public:
    TrackedSize() = default;
    explicit TrackedSize(std::size_t n) : n_(n) {
        if (n_) alloc_stats().on_alloc(n_);
    }
    TrackedSize(const TrackedSize& other) : n_(other.n_) {
        if (n_) alloc_stats().on_alloc(n_);
    }
    TrackedSize(TrackedSize&& other) noexcept : n_(other.n_) { other.n_ = 0; }
    TrackedSize& operator=(const TrackedSize& other) {
        if (this != &other) {
            release();
            n_ = other.n_;
            if (n_) alloc_stats().on_alloc(n_);
        }
        return *this;
    }
    TrackedSize& operator=(TrackedSize&& other) noexcept {
        release();
        n_ = other.n_;
        other.n_ = 0;
        return *this;
    }
    ~TrackedSize() { release(); }

  private:
    void release() {
        if (n_) alloc_stats().on_free(n_);
        n_ = 0;
    }
    std::size_t n_ = 0;
};

}  // namespace detail

template <FieldType F>
struct ConstMatrixView {
    using Element = typename F::Element;
    const Element* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t stride = 0;

    const Element& at(std::size_t i, std::size_t j) const { return data[i * stride + j]; }
    const Element* row(std::size_t i) const { return data + i * stride; }

    ConstMatrixView block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
        return {data + r0 * stride + c0, r, c, stride};
    }
};

template <FieldType F>
struct MatrixView {
    using Element = typename F::Element;
    Element* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t stride = 0;

    Element& at(std::size_t i, std::size_t j) const { return data[i * stride + j]; }
    Element* row(std::size_t i) const { return data + i * stride; }

    MatrixView block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
        return {data + r0 * stride + c0, r, c, stride};
    }
    operator ConstMatrixView<F>() const { return {data, rows, cols, stride}; }
};

/// Dense row-major matrix over a field.  Buffer allocations are registered
/// with the thread-local AllocStats so memory contracts can be asserted.
template <FieldType F>
class Matrix {
  public:
    using Element = typename F::Element;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Element fill = Element{})
        : rows_(rows), cols_(cols), tracked_(rows * cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Element& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Element& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Element>& data() const { return data_; }

    MatrixView<F> view() { return {data_.data(), rows_, cols_, cols_}; }
    ConstMatrixView<F> view() const { return {data_.data(), rows_, cols_, cols_}; }
    MatrixView<F> block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) {
        return view().block(r0, c0, r, c);
    }
    ConstMatrixView<F> block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
        return view().block(r0, c0, r, c);
    }

    operator MatrixView<F>() { return view(); }
    operator ConstMatrixView<F>() const { return view(); }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    detail::TrackedSize tracked_;
    std::vector<Element> data_;
};

namespace detail {

inline void require(bool cond, const char* msg) {
    if (!cond) throw DimensionError(msg);
}

/// True when the element ranges of two views can overlap.
template <FieldType F>
bool may_alias(NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b) {
    if (a.rows == 0 || a.cols == 0 || b.rows == 0 || b.cols == 0) return false;
    const auto* a_end = a.data + (a.rows - 1) * a.stride + a.cols;
    const auto* b_end = b.data + (b.rows - 1) * b.stride + b.cols;
    return a.data < b_end && b.data < a_end;
}

/// Dot product of two contiguous element runs, with delayed modular
/// reduction over prime fields (all partial products fit 128 bits).
template <FieldType F>
typename F::Element dot(const F& f, const typename F::Element* a, const typename F::Element* b,
                        std::size_t n, bool conj_b) {
    if constexpr (std::is_same_v<F, PrimeField>) {
        (void)conj_b;
        unsigned __int128 acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc += static_cast<unsigned __int128>(a[l]) * b[l];
        return static_cast<typename F::Element>(acc % f.modulus());
    } else {
        typename F::Element acc = f.zero();
        for (std::size_t l = 0; l < n; ++l)
            acc = f.add(acc, f.mul(a[l], conj_b ? f.conj(b[l]) : b[l]));
        return acc;
    }
}

}  // namespace detail

// ------------------------------------------------------------- elementwise

/// C = A + B elementwise; C may alias A or B.  Counts rows*cols additions.
template <FieldType F>
void ew_add(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b, NoDeduce<MatrixView<F>> c,
            OpCount& ops) {
    detail::require(a.rows == b.rows && a.cols == b.cols && a.rows == c.rows && a.cols == c.cols,
                    "ew_add: shape mismatch");
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) c.at(i, j) = f.add(a.at(i, j), b.at(i, j));
    ops.adds += a.rows * a.cols;
}

/// C = A - B elementwise; C may alias A or B.
template <FieldType F>
void ew_sub(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b, NoDeduce<MatrixView<F>> c,
            OpCount& ops) {
    detail::require(a.rows == b.rows && a.cols == b.cols && a.rows == c.rows && a.cols == c.cols,
                    "ew_sub: shape mismatch");
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) c.at(i, j) = f.sub(a.at(i, j), b.at(i, j));
    ops.adds += a.rows * a.cols;
}

/// Lower-triangle addition (diagonal included): Low(C) = Low(A) + Low(B).
/// Counts m(m+1)/2 additions.
template <FieldType F>
void add_lower(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b, NoDeduce<MatrixView<F>> c,
               OpCount& ops) {
    detail::require(a.rows == a.cols && a.rows == b.rows && b.rows == b.cols && c.rows == a.rows &&
                        c.cols == a.cols,
                    "add_lower: shape mismatch");
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j <= i; ++j) c.at(i, j) = f.add(a.at(i, j), b.at(i, j));
    ops.adds += a.rows * (a.rows + 1) / 2;
}

/// Full elementwise addition, alias of ew_add under the name used by callers
/// pairing it with add_lower.
template <FieldType F>
void add_full(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b, NoDeduce<MatrixView<F>> c,
              OpCount& ops) {
    ew_add(f, a, b, c, ops);
}

template <FieldType F>
void copy_into(const F&, NoDeduce<ConstMatrixView<F>> src, NoDeduce<MatrixView<F>> dst) {
    detail::require(src.rows == dst.rows && src.cols == dst.cols, "copy_into: shape mismatch");
    for (std::size_t i = 0; i < src.rows; ++i)
        for (std::size_t j = 0; j < src.cols; ++j) dst.at(i, j) = src.at(i, j);
}

template <FieldType F>
Matrix<F> transpose(const F& f, NoDeduce<ConstMatrixView<F>> a, bool conjugate = false) {
    Matrix<F> t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            t.at(j, i) = conjugate ? f.conj(a.at(i, j)) : a.at(i, j);
    return t;
}

/// Dst += Src^T (or conj(Src)^T); counts a full block of additions.
template <FieldType F>
void add_transposed(const F& f, NoDeduce<ConstMatrixView<F>> src, NoDeduce<MatrixView<F>> dst, bool conjugate,
                    OpCount& ops) {
    detail::require(src.rows == dst.cols && src.cols == dst.rows, "add_transposed: shape mismatch");
    for (std::size_t i = 0; i < dst.rows; ++i)
        for (std::size_t j = 0; j < dst.cols; ++j) {
            auto v = src.at(j, i);
            dst.at(i, j) = f.add(dst.at(i, j), conjugate ? f.conj(v) : v);
        }
    ops.adds += dst.rows * dst.cols;
}

/// C[i][j] <- C[j][i] for i < j; makes C exactly symmetric (or Hermitian
/// with conjugate set).  Copies only, no arithmetic counted.
template <FieldType F>
void mirror_lower_to_upper(const F& f, NoDeduce<MatrixView<F>> c, bool conjugate = false) {
    detail::require(c.rows == c.cols, "mirror_lower_to_upper: matrix must be square");
    for (std::size_t i = 0; i < c.rows; ++i)
        for (std::size_t j = i + 1; j < c.cols; ++j)
            c.at(i, j) = conjugate ? f.conj(c.at(j, i)) : c.at(j, i);
}

/// Scales every element by alpha.  No-ops (and no counts) for alpha = 1.
template <FieldType F>
void scale_inplace(const F& f, NoDeduce<MatrixView<F>> a, typename F::Element alpha, OpCount& ops) {
    if (f.eq(alpha, f.one())) return;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) a.at(i, j) = f.mul(alpha, a.at(i, j));
    ops.mults += a.rows * a.cols;
}

template <FieldType F>
void scale_lower_inplace(const F& f, NoDeduce<MatrixView<F>> a, typename F::Element alpha, OpCount& ops) {
    if (f.eq(alpha, f.one())) return;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j <= i && j < a.cols; ++j) a.at(i, j) = f.mul(alpha, a.at(i, j));
    ops.mults += a.rows * (a.rows + 1) / 2;
}

// --------------------------------------------------------- classical kernels

/// C <- alpha*A*B + beta*C, classical triple loop.
/// Plain product (alpha=1, beta=0, square n) costs n^3 mults + n^2(n-1) adds.
template <FieldType F>
void gemm_classical(const F& f, typename F::Element alpha, NoDeduce<ConstMatrixView<F>> a,
                    NoDeduce<ConstMatrixView<F>> b, typename F::Element beta, NoDeduce<MatrixView<F>> c,
                    OpCount& ops) {
    detail::require(a.cols == b.rows && c.rows == a.rows && c.cols == b.cols,
                    "gemm_classical: dimension mismatch");
    const std::size_t n = a.rows, k = a.cols, m = b.cols;
    const bool alpha_one = f.eq(alpha, f.one());
    const bool alpha_zero = f.is_zero(alpha);
    const bool beta_one = f.eq(beta, f.one());
    const bool beta_zero = f.is_zero(beta);

    if (alpha_zero) {
        if (beta_zero) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j) c.at(i, j) = f.zero();
        } else if (!beta_one) {
            scale_inplace(f, c, beta, ops);
        }
        return;
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            typename F::Element acc = f.zero();
            if constexpr (std::is_same_v<F, PrimeField>) {
                unsigned __int128 wide = 0;
                for (std::size_t l = 0; l < k; ++l)
                    wide += static_cast<unsigned __int128>(a.at(i, l)) * b.at(l, j);
                acc = static_cast<typename F::Element>(wide % f.modulus());
            } else {
                for (std::size_t l = 0; l < k; ++l)
                    acc = f.add(acc, f.mul(a.at(i, l), b.at(l, j)));
            }
            if (!alpha_one) acc = f.mul(alpha, acc);
            if (beta_zero)
                c.at(i, j) = acc;
            else if (beta_one)
                c.at(i, j) = f.add(c.at(i, j), acc);
            else
                c.at(i, j) = f.add(f.mul(beta, c.at(i, j)), acc);
        }

    ops.mults += n * m * (k + (alpha_one ? 0 : 1) + (beta_zero || beta_one ? 0 : 1));
    if (k > 0) ops.adds += n * m * (k - 1);
    if (!beta_zero) ops.adds += n * m;
}

/// C = A * B^T (or A * conj(B)^T), classical, overwrite.
template <FieldType F>
void gemm_classical_nt(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b, NoDeduce<MatrixView<F>> c,
                       OpCount& ops, bool conj_b = false) {
    detail::require(a.cols == b.cols && c.rows == a.rows && c.cols == b.rows,
                    "gemm_classical_nt: dimension mismatch");
    const std::size_t n = a.rows, k = a.cols, m = b.rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            c.at(i, j) = detail::dot(f, a.row(i), b.row(j), k, conj_b);
    ops.mults += n * m * k;
    if (k > 0) ops.adds += n * m * (k - 1);
}

/// C <- alpha*A*B^T + beta*C (with optional conjugation of B), in place.
template <FieldType F>
void gemm_classical_nt_acc(const F& f, typename F::Element alpha, NoDeduce<ConstMatrixView<F>> a,
                           NoDeduce<ConstMatrixView<F>> b, typename F::Element beta, NoDeduce<MatrixView<F>> c,
                           OpCount& ops, bool conj_b = false) {
    detail::require(a.cols == b.cols && c.rows == a.rows && c.cols == b.rows,
                    "gemm_classical_nt_acc: dimension mismatch");
    const std::size_t n = a.rows, k = a.cols, m = b.rows;
    const bool alpha_one = f.eq(alpha, f.one());
    const bool alpha_zero = f.is_zero(alpha);
    const bool beta_one = f.eq(beta, f.one());
    const bool beta_zero = f.is_zero(beta);

    if (alpha_zero) {
        if (beta_zero) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j) c.at(i, j) = f.zero();
        } else if (!beta_one) {
            scale_inplace(f, c, beta, ops);
        }
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            typename F::Element acc = detail::dot(f, a.row(i), b.row(j), k, conj_b);
            if (!alpha_one) acc = f.mul(alpha, acc);
            if (beta_zero)
                c.at(i, j) = acc;
            else if (beta_one)
                c.at(i, j) = f.add(c.at(i, j), acc);
            else
                c.at(i, j) = f.add(f.mul(beta, c.at(i, j)), acc);
        }
    ops.mults += n * m * (k + (alpha_one ? 0 : 1) + (beta_zero || beta_one ? 0 : 1));
    if (k > 0) ops.adds += n * m * (k - 1);
    if (!beta_zero) ops.adds += n * m;
}

/// Lower triangle of C <- alpha*A*A^T + beta*C (conj(A)^T when conjugate is
/// set); the upper triangle is untouched.  Plain n=k case costs
/// n*n(n+1)/2 mults + (n-1)*n(n+1)/2 adds.
template <FieldType F>
void syrk_classical(const F& f, typename F::Element alpha, NoDeduce<ConstMatrixView<F>> a,
                    typename F::Element beta, NoDeduce<MatrixView<F>> c, OpCount& ops,
                    bool conjugate = false) {
    detail::require(c.rows == c.cols && c.rows == a.rows, "syrk_classical: dimension mismatch");
    const std::size_t n = a.rows, k = a.cols;
    const std::size_t tri = n * (n + 1) / 2;
    const bool alpha_one = f.eq(alpha, f.one());
    const bool alpha_zero = f.is_zero(alpha);
    const bool beta_one = f.eq(beta, f.one());
    const bool beta_zero = f.is_zero(beta);

    if (alpha_zero) {
        if (beta_zero) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j <= i; ++j) c.at(i, j) = f.zero();
        } else if (!beta_one) {
            scale_lower_inplace(f, c, beta, ops);
        }
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            typename F::Element acc = detail::dot(f, a.row(i), a.row(j), k, conjugate);
            if (!alpha_one) acc = f.mul(alpha, acc);
            if (beta_zero)
                c.at(i, j) = acc;
            else if (beta_one)
                c.at(i, j) = f.add(c.at(i, j), acc);
            else
                c.at(i, j) = f.add(f.mul(beta, c.at(i, j)), acc);
        }
    ops.mults += tri * (k + (alpha_one ? 0 : 1) + (beta_zero || beta_one ? 0 : 1));
    if (k > 0) ops.adds += tri * (k - 1);
    if (!beta_zero) ops.adds += tri;
}

// ------------------------------------------------------------------- helpers

/// Deterministic random matrix from a 64-bit seed.
template <FieldType F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Matrix<F> m(rows, cols);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = f.random_element(rng);
    return m;
}

template <FieldType F>
bool matrix_equal(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b, double tol = 0.0) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (!approx_eq(f, a.at(i, j), b.at(i, j), tol)) return false;
    return true;
}

/// Compares lower triangles only (diagonal included).
template <FieldType F>
bool lower_equal(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b, double tol = 0.0) {
    if (a.rows != b.rows || a.cols != b.cols || a.rows != a.cols) return false;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (!approx_eq(f, a.at(i, j), b.at(i, j), tol)) return false;
    return true;
}

}  // namespace fsyrk
