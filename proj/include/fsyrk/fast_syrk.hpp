#pragma once

#include "fsyrk/matrix.hpp"
#include "fsyrk/skew.hpp"
#include "fsyrk/winograd.hpp"

namespace fsyrk {

/// Everything a fast symmetric product needs: the recursion policy, the
/// skew-orthogonal (or skew-unitary) structure reused at every level, and
/// the transpose flavor.
template <FieldType F>
struct SyrkPlan {
    RecursionPolicy policy;
    SkewOrthogonal<F> skew;
    bool mirror_output = false;
    bool conjugate = false;  // conjugate-transpose product (herk)
};

template <FieldType F>
SyrkPlan<F> make_syrk_plan(const F& f, RecursionPolicy policy = {}, bool mirror_output = false) {
    policy.validate();
    return {policy, skew_orthogonal(f, 0), mirror_output, false};
}

inline SyrkPlan<QuadExtField> make_herk_plan(const QuadExtField& f, RecursionPolicy policy = {},
                                             bool mirror_output = false) {
    policy.validate();
    return {policy, skew_unitary(f, 0), mirror_output, true};
}

namespace detail {

template <FieldType F>
bool needs_pair_padding(const SyrkPlan<F>& plan, std::size_t kh) {
    return plan.skew.form == SkewOrthogonal<F>::Form::Pair && kh % 2 == 1;
}

/// dst (h x kw) <- src zero-padded to kw >= src.cols, then dst <- dst * Y.
template <FieldType F>
void load_and_apply_skew(const F& f, NoDeduce<ConstMatrixView<F>> src, NoDeduce<MatrixView<F>> dst,
                         const SkewOrthogonal<F>& y, OpCount& ops) {
    copy_into(f, src, dst.block(0, 0, src.rows, src.cols));
    for (std::size_t i = 0; i < dst.rows; ++i)
        for (std::size_t j = src.cols; j < dst.cols; ++j) dst.at(i, j) = f.zero();
    apply_skew_right_inplace(f, dst, y, ops);
}

/// dst <- pad(b) - dst, where b has kh columns and dst kw >= kh.
template <FieldType F>
void sub_from_padded(const F& f, NoDeduce<ConstMatrixView<F>> b, NoDeduce<MatrixView<F>> dst, OpCount& ops) {
    for (std::size_t i = 0; i < dst.rows; ++i) {
        for (std::size_t j = 0; j < b.cols; ++j) dst.at(i, j) = f.sub(b.at(i, j), dst.at(i, j));
        for (std::size_t j = b.cols; j < dst.cols; ++j) dst.at(i, j) = f.neg(dst.at(i, j));
    }
    ops.adds += dst.rows * dst.cols;
}

template <FieldType F>
void syrk_fast_rec(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<MatrixView<F>> c, const SyrkPlan<F>& plan,
                   std::size_t levels, OpCount& ops);

template <FieldType F>
void syrk_fast_acc_rec(const F& f, typename F::Element alpha, NoDeduce<ConstMatrixView<F>> a,
                       typename F::Element beta, NoDeduce<MatrixView<F>> c, const SyrkPlan<F>& plan,
                       std::size_t levels, OpCount& ops);

/// One level of the 5-product recursion for C <- A*A^T, scheduled per the
/// in-place task list: the output block C12 is the only temporary storage.
///
///   1  S1 = (A21 - A11)Y        -> C21      8  P1 = A11*A11^T  -> C11
///   2  S2 = A22 - A21*Y         -> C12      9  U1 = P1 + P5    -> C12 (half),
///   3  P4^T = S2*S1^T           -> C22         then Up(U1) = Low(U1)^T
///   4  S3 = S1 - A22            -> C21     10  U2 = U1 + P4    -> C12
///   5  P5 = S3*S3^T             -> C12     11  U4 = U2 + P3    -> C21
///   6  S4 = S3 + A12            -> C11     12  U5 = U2 + P4^T  -> C22 (half)
///   7  P3 = A22*S4^T            -> C21     13  P2 = A12*A12^T  -> C12
///                                          14  U3 = P1 + P2    -> C11 (half)
///
/// When the field only admits a pair-form Y and k/2 is odd, the four blocks
/// are padded with one zero column each (kw = k/2 + 1), still inside C.
template <FieldType F>
void syrk_fast_level(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<MatrixView<F>> c, const SyrkPlan<F>& plan,
                     std::size_t levels, OpCount& ops, bool padded) {
    const std::size_t n = a.rows, k = a.cols;
    const std::size_t h = n / 2, kh = k / 2;
    const std::size_t kw = kh + (padded ? 1 : 0);
    const SkewOrthogonal<F> y = plan.skew.resized(kw);
    const bool conj = plan.conjugate;
    const std::size_t next = levels - 1;

    ConstMatrixView<F> a11 = a.block(0, 0, h, kh), a12 = a.block(0, kh, h, kh);
    ConstMatrixView<F> a21 = a.block(h, 0, h, kh), a22 = a.block(h, kh, h, kh);
    MatrixView<F> c11 = c.block(0, 0, h, h), c12 = c.block(0, h, h, h);
    MatrixView<F> c21 = c.block(h, 0, h, h), c22 = c.block(h, h, h, h);
    MatrixView<F> s1 = c21.block(0, 0, h, kw);
    MatrixView<F> s2 = c12.block(0, 0, h, kw);
    MatrixView<F> s4 = c11.block(0, 0, h, kw);

    // 1: S1 = (A21 - A11)*Y
    ew_sub(f, a21, a11, s1.block(0, 0, h, kh), ops);
    for (std::size_t i = 0; padded && i < h; ++i) s1.at(i, kh) = f.zero();
    apply_skew_right_inplace(f, s1, y, ops);
    // 2: S2 = A22 - A21*Y
    load_and_apply_skew(f, a21, s2, y, ops);
    sub_from_padded(f, a22, s2, ops);
    // 3: P4^T = S2*S1^T
    gemm_winograd_nt_into(f, s2, s1, c22, plan.policy, next, ops, conj);
    // 4: S3 = S1 - A22 (the padded column carries S1 unchanged)
    ew_sub(f, s1.block(0, 0, h, kh), a22, s1.block(0, 0, h, kh), ops);
    // 5: P5 = S3*S3^T
    syrk_fast_rec(f, s1, c12, plan, next, ops);
    // 6: S4 = S3 + A12
    ew_add(f, s1.block(0, 0, h, kh), a12, s4.block(0, 0, h, kh), ops);
    if (padded) copy_into(f, ConstMatrixView<F>(s1).block(0, kh, h, 1), s4.block(0, kh, h, 1));
    // 7: P3 = A22*S4^T (the padded column of A22 is zero, so it drops out)
    gemm_winograd_nt_into(f, a22, s4.block(0, 0, h, kh), c21, plan.policy, next, ops, conj);
    // 8: P1 = A11*A11^T
    syrk_fast_rec(f, a11, c11, plan, next, ops);
    // 9: U1 = P1 + P5, then mirror
    add_lower(f, c11, c12, c12, ops);
    mirror_lower_to_upper(f, c12, conj);
    // 10: U2 = U1 + P4
    add_transposed(f, c22, c12, conj, ops);
    // 11: U4 = U2 + P3
    ew_add(f, c12, c21, c21, ops);
    // 12: U5 = U2 + P4^T
    add_lower(f, c12, c22, c22, ops);
    // 13: P2 = A12*A12^T
    syrk_fast_rec(f, a12, c12, plan, next, ops);
    // 14: U3 = P1 + P2
    add_lower(f, c11, c12, c11, ops);
}

template <FieldType F>
void syrk_fast_rec(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<MatrixView<F>> c, const SyrkPlan<F>& plan,
                   std::size_t levels, OpCount& ops) {
    const std::size_t n = a.rows, k = a.cols;
    if (levels == 0 || n % 2 != 0 || k % 2 != 0 || std::min(n, k) < plan.policy.threshold) {
        syrk_classical(f, f.one(), a, f.zero(), c, ops, plan.conjugate);
        return;
    }
    if (k > n) {
        // The in-place schedule stores k/2-wide blocks inside n/2-wide
        // quadrants of C, so it needs k <= n; wider inputs split on k.
        const std::size_t k1 = (k / 2) & ~std::size_t{1};
        syrk_fast_rec(f, a.block(0, 0, n, k1), c, plan, levels, ops);
        syrk_fast_acc_rec(f, f.one(), a.block(0, k1, n, k - k1), f.one(), c, plan, levels, ops);
        return;
    }
    const bool padded = needs_pair_padding(plan, k / 2);
    if (padded && k / 2 + 1 > n / 2) {
        syrk_classical(f, f.one(), a, f.zero(), c, ops, plan.conjugate);
        return;
    }
    syrk_fast_level(f, a, c, plan, levels, ops, padded);
}

/// One level of C <- alpha*A*A^T + beta*C.  Same task list with one
/// (n/2+1) x (n/2) scratch block: rows 0..n/2-1 hold the S-chain and then
/// P1; the extra row holds the diagonal of the incoming C22, whose strict
/// lower triangle is parked transposed in the strict upper triangle of C11
/// until U5 consumes it.
template <FieldType F>
void syrk_fast_acc_level(const F& f, typename F::Element alpha, NoDeduce<ConstMatrixView<F>> a,
                         typename F::Element beta, NoDeduce<MatrixView<F>> c, const SyrkPlan<F>& plan,
                         std::size_t levels, OpCount& ops, bool padded) {
    const std::size_t n = a.rows, k = a.cols;
    const std::size_t h = n / 2, kh = k / 2;
    const std::size_t kw = kh + (padded ? 1 : 0);
    const SkewOrthogonal<F> y = plan.skew.resized(kw);
    const bool conj = plan.conjugate;
    const std::size_t next = levels - 1;
    const bool beta_zero = f.is_zero(beta);
    const bool beta_one = f.eq(beta, f.one());

    ConstMatrixView<F> a11 = a.block(0, 0, h, kh), a12 = a.block(0, kh, h, kh);
    ConstMatrixView<F> a21 = a.block(h, 0, h, kh), a22 = a.block(h, kh, h, kh);
    MatrixView<F> c11 = c.block(0, 0, h, h), c12 = c.block(0, h, h, h);
    MatrixView<F> c21 = c.block(h, 0, h, h), c22 = c.block(h, h, h, h);

    Matrix<F> scratch(h + 1, h);
    MatrixView<F> s = scratch.block(0, 0, h, kw);
    MatrixView<F> p1 = scratch.block(0, 0, h, h);
    MatrixView<F> saved_diag = scratch.block(h, 0, 1, h);

    // S1 = (A21 - A11)*Y -> tmp
    ew_sub(f, a21, a11, s.block(0, 0, h, kh), ops);
    for (std::size_t i = 0; padded && i < h; ++i) s.at(i, kh) = f.zero();
    apply_skew_right_inplace(f, s, y, ops);
    // S2 = A22 - A21*Y -> C12
    MatrixView<F> s2 = c12.block(0, 0, h, kw);
    load_and_apply_skew(f, a21, s2, y, ops);
    sub_from_padded(f, a22, s2, ops);
    // Save the incoming C22: Up(C11) = Low(C22)^T, diagonal to the scratch row.
    if (!beta_zero) {
        for (std::size_t i = 0; i < h; ++i) {
            saved_diag.at(0, i) = c22.at(i, i);
            for (std::size_t j = i + 1; j < h; ++j) c11.at(i, j) = c22.at(j, i);
        }
    }
    // P4^T = alpha*S2*S1^T -> C22
    gemm_winograd_nt_into(f, s2, s, c22, plan.policy, next, ops, conj);
    scale_inplace(f, c22, alpha, ops);
    // S3 = S1 - A22 -> tmp
    ew_sub(f, s.block(0, 0, h, kh), a22, s.block(0, 0, h, kh), ops);
    // P5 = alpha*S3*S3^T -> C12
    syrk_fast_rec(f, s, c12, plan, next, ops);
    scale_lower_inplace(f, c12, alpha, ops);
    // S4 = S3 + A12 -> tmp
    ew_add(f, s.block(0, 0, h, kh), a12, s.block(0, 0, h, kh), ops);
    // P3 = alpha*A22*S4^T + beta*C21 -> C21
    gemm_winograd_nt_acc(f, alpha, a22, s.block(0, 0, h, kh), beta, c21, plan.policy, next, ops,
                         conj);
    // P1 = alpha*A11*A11^T -> tmp
    syrk_fast_rec(f, a11, p1, plan, next, ops);
    scale_lower_inplace(f, p1, alpha, ops);
    // U1 = P1 + P5 -> C12, then mirror
    add_lower(f, p1, c12, c12, ops);
    mirror_lower_to_upper(f, c12, conj);
    // U2 = U1 + P4 -> C12
    add_transposed(f, c22, c12, conj, ops);
    // U4 = U2 + P3 -> C21
    ew_add(f, c12, c21, c21, ops);
    // U5 = U2 + P4^T + beta*(saved C22) -> C22
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            auto v = f.add(c22.at(i, j), c12.at(i, j));
            if (!beta_zero) {
                auto saved = i == j ? saved_diag.at(0, i) : c11.at(j, i);
                v = f.add(v, beta_one ? saved : f.mul(beta, saved));
            }
            c22.at(i, j) = v;
        }
    ops.adds += h * (h + 1) / 2;
    if (!beta_zero) {
        ops.adds += h * (h + 1) / 2;
        if (!beta_one) ops.mults += h * (h + 1) / 2;
    }
    // P2 = alpha*A12*A12^T + beta*C11 -> C11
    syrk_fast_acc_rec(f, alpha, a12, beta, c11, plan, next, ops);
    // U3 = P1 + P2 -> C11
    add_lower(f, p1, c11, c11, ops);
}

template <FieldType F>
void syrk_fast_acc_rec(const F& f, typename F::Element alpha, NoDeduce<ConstMatrixView<F>> a,
                       typename F::Element beta, NoDeduce<MatrixView<F>> c, const SyrkPlan<F>& plan,
                       std::size_t levels, OpCount& ops) {
    const std::size_t n = a.rows, k = a.cols;
    if (levels == 0 || n % 2 != 0 || k % 2 != 0 || std::min(n, k) < plan.policy.threshold) {
        syrk_classical(f, alpha, a, beta, c, ops, plan.conjugate);
        return;
    }
    if (k > n) {
        const std::size_t k1 = (k / 2) & ~std::size_t{1};
        syrk_fast_acc_rec(f, alpha, a.block(0, 0, n, k1), beta, c, plan, levels, ops);
        syrk_fast_acc_rec(f, alpha, a.block(0, k1, n, k - k1), f.one(), c, plan, levels, ops);
        return;
    }
    const bool padded = needs_pair_padding(plan, k / 2);
    if (padded && k / 2 + 1 > n / 2) {
        syrk_classical(f, alpha, a, beta, c, ops, plan.conjugate);
        return;
    }
    syrk_fast_acc_level(f, alpha, a, beta, c, plan, levels, ops, padded);
}

}  // namespace detail

/// Low(C) <- Low(A*A^T) using the 5-product recursion.  The strict upper
/// triangle of C holds scratch residue unless plan.mirror_output is set.
/// C must not alias A.
template <FieldType F>
void syrk_fast_into(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<MatrixView<F>> c, const SyrkPlan<F>& plan,
                    OpCount& ops) {
    plan.policy.validate();
    detail::require(c.rows == c.cols && c.rows == a.rows, "syrk_fast: dimension mismatch");
    if (detail::may_alias<F>(a, c)) throw std::invalid_argument("syrk_fast: C must not alias A");
    detail::syrk_fast_rec(f, a, c, plan, plan.policy.max_levels, ops);
    if (plan.mirror_output) mirror_lower_to_upper(f, c, plan.conjugate);
}

template <FieldType F>
Matrix<F> syrk_fast(const F& f, NoDeduce<ConstMatrixView<F>> a, const SyrkPlan<F>& plan, OpCount& ops) {
    Matrix<F> c(a.rows, a.rows, f.zero());
    syrk_fast_into(f, a, c.view(), plan, ops);
    return c;
}

/// Low(C) <- Low(alpha*A*A^T + beta*C).  Allocates one scratch block per
/// recursion level entered (see syrk_fast_acc_level).
template <FieldType F>
void syrk_fast_acc(const F& f, typename F::Element alpha, NoDeduce<ConstMatrixView<F>> a,
                   typename F::Element beta, NoDeduce<MatrixView<F>> c, const SyrkPlan<F>& plan,
                   OpCount& ops) {
    plan.policy.validate();
    detail::require(c.rows == c.cols && c.rows == a.rows, "syrk_fast_acc: dimension mismatch");
    if (detail::may_alias<F>(a, c))
        throw std::invalid_argument("syrk_fast_acc: C must not alias A");
    detail::syrk_fast_acc_rec(f, alpha, a, beta, c, plan, plan.policy.max_levels, ops);
    if (plan.mirror_output) mirror_lower_to_upper(f, c, plan.conjugate);
}

/// Low(C) <- Low(A*conj(A)^T) over an even extension field, using a
/// skew-unitary Y.  Rejects fields where no such Y exists.
inline void herk_fast_into(const QuadExtField& f, ConstMatrixView<QuadExtField> a,
                           MatrixView<QuadExtField> c, const SyrkPlan<QuadExtField>& plan,
                           OpCount& ops) {
    if (!plan.conjugate)
        throw std::invalid_argument("herk_fast: plan must be built by make_herk_plan");
    syrk_fast_into(f, a, c, plan, ops);
}

inline Matrix<QuadExtField> herk_fast(const QuadExtField& f, ConstMatrixView<QuadExtField> a,
                                      const SyrkPlan<QuadExtField>& plan, OpCount& ops) {
    Matrix<QuadExtField> c(a.rows, a.rows, f.zero());
    herk_fast_into(f, a, c.view(), plan, ops);
    return c;
}

/// Classical divide and conquer SYRK: four recursive calls plus two generic
/// products per level (the baseline the fast recursion is compared with).
template <FieldType F>
void syrk_dc_into(const F& f, NoDeduce<ConstMatrixView<F>> a, NoDeduce<MatrixView<F>> c, const RecursionPolicy& policy,
                  std::size_t levels, OpCount& ops) {
    const std::size_t n = a.rows, k = a.cols;
    if (levels == 0 || n % 2 != 0 || k % 2 != 0 || std::min(n, k) < policy.threshold) {
        syrk_classical(f, f.one(), a, f.zero(), c, ops);
        return;
    }
    const std::size_t h = n / 2, kh = k / 2;
    ConstMatrixView<F> a11 = a.block(0, 0, h, kh), a12 = a.block(0, kh, h, kh);
    ConstMatrixView<F> a21 = a.block(h, 0, h, kh), a22 = a.block(h, kh, h, kh);
    MatrixView<F> c11 = c.block(0, 0, h, h), c21 = c.block(h, 0, h, h);
    MatrixView<F> c22 = c.block(h, h, h, h);

    Matrix<F> t(h, h);
    syrk_dc_into(f, a11, c11, policy, levels - 1, ops);
    syrk_dc_into(f, a12, t.view(), policy, levels - 1, ops);
    add_lower(f, c11, t, c11, ops);
    syrk_dc_into(f, a21, c22, policy, levels - 1, ops);
    syrk_dc_into(f, a22, t.view(), policy, levels - 1, ops);
    add_lower(f, c22, t, c22, ops);
    gemm_winograd_nt_into(f, a21, a11, c21, policy, levels - 1, ops);
    gemm_winograd_nt_into(f, a22, a12, t.view(), policy, levels - 1, ops);
    ew_add(f, c21, t, c21, ops);
}

template <FieldType F>
Matrix<F> syrk_dc(const F& f, NoDeduce<ConstMatrixView<F>> a, const RecursionPolicy& policy, OpCount& ops) {
    policy.validate();
    Matrix<F> c(a.rows, a.rows, f.zero());
    syrk_dc_into(f, a, c.view(), policy, policy.max_levels, ops);
    return c;
}

// ------------------------------------------------------- complex 2M and 3M

namespace detail {

struct RealMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// C = A*B^T over the reals; bumps the real-product counter used by the 2M
/// and 3M instrumentation.
inline RealMatrix real_gemm_nt(const RealMatrix& a, const RealMatrix& b, OpCount& ops,
                               int* products) {
    RealMatrix c(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.rows; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < a.cols; ++l) acc += a.at(i, l) * b.at(j, l);
            c.at(i, j) = acc;
        }
    ops.mults += a.rows * b.rows * a.cols;
    if (a.cols > 0) ops.adds += a.rows * b.rows * (a.cols - 1);
    if (products) ++*products;
    return c;
}

inline RealMatrix real_gemm_nn(const RealMatrix& a, const RealMatrix& b, OpCount& ops,
                               int* products) {
    RealMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < a.cols; ++l) acc += a.at(i, l) * b.at(l, j);
            c.at(i, j) = acc;
        }
    ops.mults += a.rows * b.cols * a.cols;
    if (a.cols > 0) ops.adds += a.rows * b.cols * (a.cols - 1);
    if (products) ++*products;
    return c;
}

}  // namespace detail

/// A*A^T for complex A via two real products:
/// H = Re*Im^T, G = (Re+Im)(Re-Im)^T, result (G - H^T + H) + i(H + H^T).
/// Counts are real-arithmetic operations; *real_products reports exactly
/// how many real matrix products were performed.
inline Matrix<ComplexField> syrk_2m_complex(const ComplexField& /*f*/,
                                            ConstMatrixView<ComplexField> a, OpCount& ops,
                                            int* real_products = nullptr) {
    const std::size_t n = a.rows, k = a.cols;
    detail::RealMatrix re(n, k), im(n, k), sum(n, k), diff(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            re.at(i, j) = a.at(i, j).real();
            im.at(i, j) = a.at(i, j).imag();
            sum.at(i, j) = re.at(i, j) + im.at(i, j);
            diff.at(i, j) = re.at(i, j) - im.at(i, j);
        }
    ops.adds += 2 * n * k;
    detail::RealMatrix h = detail::real_gemm_nt(re, im, ops, real_products);
    detail::RealMatrix g = detail::real_gemm_nt(sum, diff, ops, real_products);
    Matrix<ComplexField> c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c.at(i, j) = {g.at(i, j) - h.at(j, i) + h.at(i, j), h.at(i, j) + h.at(j, i)};
    ops.adds += 3 * n * n;
    return c;
}

/// A*B for complex matrices via three real products (Karatsuba):
/// T1 = Ar*Br, T2 = Ai*Bi, T3 = (Ar+Ai)(Br+Bi); result (T1-T2) + i(T3-T1-T2).
inline Matrix<ComplexField> gemm_3m_complex(const ComplexField& /*f*/,
                                            ConstMatrixView<ComplexField> a,
                                            ConstMatrixView<ComplexField> b, OpCount& ops,
                                            int* real_products = nullptr) {
    detail::require(a.cols == b.rows, "gemm_3m_complex: dimension mismatch");
    const std::size_t m = a.rows, n = a.cols, p = b.cols;
    detail::RealMatrix ar(m, n), ai(m, n), as(m, n);
    detail::RealMatrix br(n, p), bi(n, p), bs(n, p);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ar.at(i, j) = a.at(i, j).real();
            ai.at(i, j) = a.at(i, j).imag();
            as.at(i, j) = ar.at(i, j) + ai.at(i, j);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            br.at(i, j) = b.at(i, j).real();
            bi.at(i, j) = b.at(i, j).imag();
            bs.at(i, j) = br.at(i, j) + bi.at(i, j);
        }
    ops.adds += m * n + n * p;
    detail::RealMatrix t1 = detail::real_gemm_nn(ar, br, ops, real_products);
    detail::RealMatrix t2 = detail::real_gemm_nn(ai, bi, ops, real_products);
    detail::RealMatrix t3 = detail::real_gemm_nn(as, bs, ops, real_products);
    Matrix<ComplexField> c(m, p);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < p; ++j)
            c.at(i, j) = {t1.at(i, j) - t2.at(i, j), t3.at(i, j) - t1.at(i, j) - t2.at(i, j)};
    ops.adds += 3 * m * p;
    return c;
}

}  // namespace fsyrk
