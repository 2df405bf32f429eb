#pragma once

#include <algorithm>

#include "fsyrk/matrix.hpp"

namespace fsyrk {

inline constexpr std::size_t kUnlimitedLevels = ~std::size_t{0};

/// Controls recursive algorithms: recursion proceeds only while every
/// dimension is at least `threshold`, the split point is even, and fewer
/// than `max_levels` splits have been taken.
struct RecursionPolicy {
    std::size_t threshold = 64;
    std::size_t max_levels = kUnlimitedLevels;

    void validate() const {
        if (threshold < 2) throw std::invalid_argument("recursion threshold must be >= 2");
    }
};

namespace detail {

/// The multiplication operand B, stored either directly (logical n x p) or
/// as the matrix whose (conjugate) transpose is B (stored p x n).  Keeping
/// the transposed operand in stored form lets A*B^T run without
/// materializing any transpose.
template <FieldType F>
struct WinoB {
    ConstMatrixView<F> m;
    bool trans = false;
    bool conj = false;

    std::size_t logical_rows() const { return trans ? m.cols : m.rows; }
    std::size_t logical_cols() const { return trans ? m.rows : m.cols; }

    typename F::Element at(const F& f, std::size_t i, std::size_t j) const {
        auto v = trans ? m.at(j, i) : m.at(i, j);
        return conj ? f.conj(v) : v;
    }
    /// Stored-layout view of logical block (i, j), i, j in {0, 1}.
    ConstMatrixView<F> stored_block(std::size_t i, std::size_t j, std::size_t nh,
                                    std::size_t ph) const {
        return trans ? m.block(j * ph, i * nh, ph, nh) : m.block(i * nh, j * ph, nh, ph);
    }
    WinoB sub(NoDeduce<ConstMatrixView<F>> stored) const { return {stored, trans, conj}; }
};

template <FieldType F>
void wino_classical(const F& f, NoDeduce<ConstMatrixView<F>> a, const WinoB<F>& b, NoDeduce<MatrixView<F>> c,
                    OpCount& ops) {
    if (b.trans)
        gemm_classical_nt(f, a, b.m, c, ops, b.conj);
    else
        gemm_classical(f, f.one(), a, b.m, f.zero(), c, ops);
}

template <FieldType F>
void wino_rec(const F& f, NoDeduce<ConstMatrixView<F>> a, const WinoB<F>& b, NoDeduce<MatrixView<F>> c,
              const RecursionPolicy& policy, std::size_t levels, OpCount& ops);

/// Dynamic peeling: the even core recurses, the odd rims are classical
/// rank-1 / row / column updates.
template <FieldType F>
void wino_peel(const F& f, NoDeduce<ConstMatrixView<F>> a, const WinoB<F>& b, NoDeduce<MatrixView<F>> c,
               const RecursionPolicy& policy, std::size_t levels, OpCount& ops) {
    const std::size_t m = a.rows, n = a.cols, p = b.logical_cols();
    const std::size_t mc = m & ~std::size_t{1};
    const std::size_t nc = n & ~std::size_t{1};
    const std::size_t pc = p & ~std::size_t{1};

    if (mc > 0 && nc > 0 && pc > 0) {
        ConstMatrixView<F> a_core = a.block(0, 0, mc, nc);
        ConstMatrixView<F> b_core =
            b.trans ? b.m.block(0, 0, pc, nc) : b.m.block(0, 0, nc, pc);
        wino_rec(f, a_core, b.sub(b_core), c.block(0, 0, mc, pc), policy, levels, ops);
    } else {
        for (std::size_t i = 0; i < mc; ++i)
            for (std::size_t j = 0; j < pc; ++j) c.at(i, j) = f.zero();
    }

    if (n % 2 == 1 && mc > 0 && pc > 0) {
        // rank-1 update with the last column of A and last row of B
        for (std::size_t i = 0; i < mc; ++i)
            for (std::size_t j = 0; j < pc; ++j)
                c.at(i, j) = f.add(c.at(i, j), f.mul(a.at(i, n - 1), b.at(f, n - 1, j)));
        ops.mults += mc * pc;
        ops.adds += mc * pc;
    }
    if (m % 2 == 1) {
        // last row of C, full width
        for (std::size_t j = 0; j < p; ++j) {
            auto acc = f.zero();
            for (std::size_t l = 0; l < n; ++l)
                acc = f.add(acc, f.mul(a.at(m - 1, l), b.at(f, l, j)));
            c.at(m - 1, j) = acc;
        }
        ops.mults += p * n;
        if (n > 0) ops.adds += p * (n - 1);
    }
    if (p % 2 == 1) {
        // last column of C, excluding the corner handled by the row update
        for (std::size_t i = 0; i < mc; ++i) {
            auto acc = f.zero();
            for (std::size_t l = 0; l < n; ++l)
                acc = f.add(acc, f.mul(a.at(i, l), b.at(f, l, p - 1)));
            c.at(i, p - 1) = acc;
        }
        ops.mults += mc * n;
        if (n > 0) ops.adds += mc * (n - 1);
    }
}

/// One level of the Winograd schedule (7 products, 15 block additions),
/// with two scratch blocks per level and the output blocks used as staging.
/// Variables follow the s/t/p/c numbering of the classical 2x2 schedule.
template <FieldType F>
void wino_rec(const F& f, NoDeduce<ConstMatrixView<F>> a, const WinoB<F>& b, NoDeduce<MatrixView<F>> c,
              const RecursionPolicy& policy, std::size_t levels, OpCount& ops) {
    const std::size_t m = a.rows, n = a.cols, p = b.logical_cols();
    if (levels == 0 || std::min({m, n, p}) < policy.threshold) {
        wino_classical(f, a, b, c, ops);
        return;
    }
    if (m % 2 != 0 || n % 2 != 0 || p % 2 != 0) {
        wino_peel(f, a, b, c, policy, levels, ops);
        return;
    }
    const std::size_t mh = m / 2, nh = n / 2, ph = p / 2;

    ConstMatrixView<F> a11 = a.block(0, 0, mh, nh), a12 = a.block(0, nh, mh, nh);
    ConstMatrixView<F> a21 = a.block(mh, 0, mh, nh), a22 = a.block(mh, nh, mh, nh);
    ConstMatrixView<F> b11 = b.stored_block(0, 0, nh, ph), b12 = b.stored_block(0, 1, nh, ph);
    ConstMatrixView<F> b21 = b.stored_block(1, 0, nh, ph), b22 = b.stored_block(1, 1, nh, ph);
    MatrixView<F> c11 = c.block(0, 0, mh, ph), c12 = c.block(0, ph, mh, ph);
    MatrixView<F> c21 = c.block(mh, 0, mh, ph), c22 = c.block(mh, ph, mh, ph);

    Matrix<F> x1(mh, std::max(nh, ph));
    Matrix<F> x2(b.trans ? ph : nh, b.trans ? nh : ph);
    MatrixView<F> s = x1.block(0, 0, mh, nh);   // s-chain storage
    MatrixView<F> p1 = x1.block(0, 0, mh, ph);  // later reused for p1
    MatrixView<F> t = x2.view();

    const std::size_t next = levels - 1;

    ew_sub(f, a11, a21, s, ops);                          // s1 = a11 - a21
    ew_sub(f, b22, b12, t, ops);                          // t1 = b22 - b12
    wino_rec(f, s, b.sub(t), c21, policy, next, ops);     // p4 = s1*t1
    ew_add(f, a21, a22, s, ops);                          // s2 = a21 + a22
    ew_sub(f, b12, b11, t, ops);                          // t2 = b12 - b11
    wino_rec(f, s, b.sub(t), c22, policy, next, ops);     // p7 = s2*t2
    ew_sub(f, s, a11, s, ops);                            // s3 = s2 - a11
    ew_sub(f, b22, t, t, ops);                            // t3 = b22 - t2  (= b11 + t1)
    wino_rec(f, s, b.sub(t), c12, policy, next, ops);     // p5 = s3*t3
    ew_sub(f, a12, s, s, ops);                            // s4 = a12 - s3
    wino_rec(f, s, b.sub(b22), c11, policy, next, ops);   // p6 = s4*b22
    wino_rec(f, a11, b.sub(b11), p1, policy, next, ops);  // p1 = a11*b11
    ew_add(f, c12, p1, c12, ops);                         // c1 = p1 + p5
    ew_add(f, c21, c12, c21, ops);                        // c2 = c1 + p4
    ew_add(f, c12, c22, c12, ops);                        // c6 = c1 + p7
    ew_add(f, c22, c21, c22, ops);                        // c5 = c2 + p7   [final C22]
    ew_add(f, c12, c11, c12, ops);                        // c7 = c6 + p6   [final C12]
    ew_sub(f, b21, t, t, ops);                            // t4 = b21 - t3
    wino_rec(f, a22, b.sub(t), c11, policy, next, ops);   // p3 = a22*t4
    ew_add(f, c21, c11, c21, ops);                        // c4 = c2 + p3   [final C21]
    wino_rec(f, a12, b.sub(b21), c11, policy, next, ops); // p2 = a12*b21
    ew_add(f, c11, p1, c11, ops);                         // c3 = p1 + p2   [final C11]
}

}  // namespace detail

/// C = A*B by the Strassen-Winograd recursion; exact equality with the
/// classical product for all shapes (odd dimensions are peeled).
template <FieldType F>
void gemm_winograd_into(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b, NoDeduce<MatrixView<F>> c,
                        const RecursionPolicy& policy, OpCount& ops) {
    policy.validate();
    detail::require(a.cols == b.rows && c.rows == a.rows && c.cols == b.cols,
                    "gemm_winograd: dimension mismatch");
    detail::wino_rec(f, a, detail::WinoB<F>{b, false, false}, c, policy, policy.max_levels, ops);
}

template <FieldType F>
Matrix<F> gemm_winograd(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b,
                        const RecursionPolicy& policy, OpCount& ops) {
    Matrix<F> c(a.rows, b.cols);
    gemm_winograd_into(f, a, b, c.view(), policy, ops);
    return c;
}

/// C = A*B^T (or A*conj(B)^T) with B in stored form; the generic-product
/// engine of the fast symmetric routines.  `levels` is the remaining
/// recursion budget shared with the caller.
template <FieldType F>
void gemm_winograd_nt_into(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<ConstMatrixView<F>> b,
                           NoDeduce<MatrixView<F>> c, const RecursionPolicy& policy, std::size_t levels,
                           OpCount& ops, bool conj_b = false) {
    detail::require(a.cols == b.cols && c.rows == a.rows && c.cols == b.rows,
                    "gemm_winograd_nt: dimension mismatch");
    detail::wino_rec(f, a, detail::WinoB<F>{b, true, conj_b}, c, policy, levels, ops);
}

/// C <- alpha*A*B^T + beta*C.  At the classical base this accumulates in
/// place; a recursive product goes through one output-sized temporary.
template <FieldType F>
void gemm_winograd_nt_acc(const F& f, typename F::Element alpha, NoDeduce<ConstMatrixView<F>> a,
                          NoDeduce<ConstMatrixView<F>> b, typename F::Element beta, NoDeduce<MatrixView<F>> c,
                          const RecursionPolicy& policy, std::size_t levels, OpCount& ops,
                          bool conj_b = false) {
    detail::require(a.cols == b.cols && c.rows == a.rows && c.cols == b.rows,
                    "gemm_winograd_nt_acc: dimension mismatch");
    const std::size_t m = a.rows, n = a.cols, p = b.rows;
    if (levels == 0 || std::min({m, n, p}) < policy.threshold) {
        gemm_classical_nt_acc(f, alpha, a, b, beta, c, ops, conj_b);
        return;
    }
    Matrix<F> t(m, p);
    detail::wino_rec(f, a, detail::WinoB<F>{b, true, conj_b}, t.view(), policy, levels, ops);
    const bool alpha_one = f.eq(alpha, f.one());
    const bool beta_zero = f.is_zero(beta);
    const bool beta_one = f.eq(beta, f.one());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            auto v = alpha_one ? t.at(i, j) : f.mul(alpha, t.at(i, j));
            if (beta_zero)
                c.at(i, j) = v;
            else if (beta_one)
                c.at(i, j) = f.add(c.at(i, j), v);
            else
                c.at(i, j) = f.add(f.mul(beta, c.at(i, j)), v);
        }
    ops.mults += m * p * ((alpha_one ? 0 : 1) + (beta_zero || beta_one ? 0 : 1));
    if (!beta_zero) ops.adds += m * p;
}

}  // namespace fsyrk
