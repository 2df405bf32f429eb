#pragma once

#include <vector>

#include "fsyrk/fast_syrk.hpp"

namespace fsyrk {

/// Middle matrix of A*B*A^T: scalar blocks d and 2x2 blocks ((0, beta),
/// (beta, gamma)) with beta != 0.  gamma = 0 is an antidiagonal block;
/// gamma != 0 (antitriangular) only arises in characteristic 2.
template <FieldType F>
struct BlockDiagonal {
    struct Block {
        bool two = false;
        typename F::Element d{};      // scalar block value
        typename F::Element beta{};   // 2x2 off-diagonal
        typename F::Element gamma{};  // 2x2 lower-right
    };
    std::vector<Block> blocks;

    static Block scalar(typename F::Element d) { return {false, d, {}, {}}; }
    static Block two_by_two(typename F::Element beta, typename F::Element gamma) {
        return {true, {}, beta, gamma};
    }

    std::size_t dimension() const {
        std::size_t n = 0;
        for (const auto& b : blocks) n += b.two ? 2 : 1;
        return n;
    }

    void validate(const F& f) const {
        for (const auto& b : blocks)
            if (b.two && f.is_zero(b.beta))
                throw std::invalid_argument("block-diagonal: 2x2 block requires beta != 0");
    }
};

namespace detail {

template <class F>
void scale_column(const F& f, NoDeduce<MatrixView<F>> a, std::size_t j, typename F::Element s,
                  OpCount& ops) {
    if (f.eq(s, f.one())) return;
    for (std::size_t i = 0; i < a.rows; ++i) a.at(i, j) = f.mul(a.at(i, j), s);
    ops.mults += a.rows;
}

}  // namespace detail

/// Low(C) <- Low(A * Diag(d) * A^T) by factoring the diagonal into the
/// columns of A: residue entries scale their column by a square root;
/// non-residues are consumed in pairs through their 2x2 symmetric factor.
/// An odd number of non-residues duplicates one of them against an appended
/// zero column.  Over GF(2^k) every entry is a square and only the scaling
/// loop runs.
template <class F>
    requires(std::is_same_v<F, PrimeField> || std::is_same_v<F, BinaryField>)
Matrix<F> syrkd(const F& f, NoDeduce<ConstMatrixView<F>> a, const std::vector<typename F::Element>& d,
                const SyrkPlan<F>& plan, OpCount& ops) {
    detail::require(d.size() == a.cols, "syrkd: diagonal length must match column count");
    const std::size_t m = a.rows;

    if constexpr (std::is_same_v<F, BinaryField>) {
        Matrix<F> abar(m, a.cols);
        copy_into(f, a, abar.view());
        for (std::size_t j = 0; j < a.cols; ++j)
            detail::scale_column(f, abar.view(), j, f.sqrt(d[j]), ops);
        return syrk_fast(f, abar.view(), plan, ops);
    } else {
        if (f.modulus() == 2) throw std::invalid_argument("syrkd requires an odd prime field");
        std::vector<std::size_t> nonresidues;
        for (std::size_t j = 0; j < d.size(); ++j)
            if (f.legendre(d[j]) == -1) nonresidues.push_back(j);

        const bool augment = nonresidues.size() % 2 == 1;
        std::vector<typename F::Element> dbar(d.begin(), d.end());
        Matrix<F> abar(m, a.cols + (augment ? 1 : 0), f.zero());
        copy_into(f, a, abar.block(0, 0, m, a.cols));
        if (augment) {
            dbar.push_back(d[nonresidues.front()]);
            nonresidues.push_back(a.cols);
        }

        for (std::size_t j = 0; j < dbar.size(); ++j)
            if (f.legendre(dbar[j]) >= 0)
                detail::scale_column(f, abar.view(), j, f.sqrt(dbar[j]), ops);

        for (std::size_t t = 0; t + 1 < nonresidues.size(); t += 2) {
            const std::size_t i = nonresidues[t], j = nonresidues[t + 1];
            auto y = nrsyf(f, dbar[i], dbar[j]);  // [[a, b], [c, d]], Y*Y^T = diag
            for (std::size_t r = 0; r < m; ++r) {
                auto u = abar.at(r, i);
                auto v = abar.at(r, j);
                abar.at(r, i) = f.add(f.mul(y[0], u), f.mul(y[2], v));
                abar.at(r, j) = f.add(f.mul(y[1], u), f.mul(y[3], v));
            }
            ops.mults += 4 * m;
            ops.adds += 2 * m;
        }
        return syrk_fast(f, abar.view(), plan, ops);
    }
}

/// Low(C) <- Low(A * B * A^T) for block-diagonal B.  All 2x2 blocks are
/// folded into column transforms of A once, up front, then the problem
/// reduces to a diagonal scaling.
///
/// Odd characteristic: antidiagonal blocks split into diagonal entries
/// +-beta/2 under the column transform [[1, 1], [1, -1]].
///
/// Characteristic 2: antitriangular blocks factor through sqrt(gamma);
/// antidiagonal blocks consume a scalar pivot column via the pentadiagonal
/// 3-column transform, or, when every block is antidiagonal, the first one
/// is unfolded against an appended column.
template <class F>
    requires(std::is_same_v<F, PrimeField> || std::is_same_v<F, BinaryField>)
Matrix<F> syrkbd(const F& f, NoDeduce<ConstMatrixView<F>> a, const BlockDiagonal<F>& b,
                 const SyrkPlan<F>& plan, OpCount& ops) {
    b.validate(f);
    const std::size_t n = b.dimension();
    detail::require(n == a.cols, "syrkbd: block-diagonal dimension must match column count");
    const std::size_t m = a.rows;

    // Column positions of each block.
    std::vector<std::size_t> pos(b.blocks.size());
    {
        std::size_t at = 0;
        for (std::size_t i = 0; i < b.blocks.size(); ++i) {
            pos[i] = at;
            at += b.blocks[i].two ? 2 : 1;
        }
    }

    if constexpr (std::is_same_v<F, PrimeField>) {
        if (f.modulus() == 2)
            throw std::invalid_argument("syrkbd over characteristic 2 uses BinaryField");
        Matrix<F> abar(m, n);
        copy_into(f, a, abar.view());
        std::vector<typename F::Element> dbar(n, f.one());
        const auto half = f.inv(f.from_int(2));
        for (std::size_t i = 0; i < b.blocks.size(); ++i) {
            const auto& blk = b.blocks[i];
            const std::size_t j = pos[i];
            if (!blk.two) {
                dbar[j] = blk.d;
                continue;
            }
            if (!f.is_zero(blk.gamma))
                throw std::invalid_argument(
                    "syrkbd: 2x2 blocks in odd characteristic must be antidiagonal");
            dbar[j] = f.mul(half, blk.beta);
            dbar[j + 1] = f.neg(dbar[j]);
            for (std::size_t r = 0; r < m; ++r) {
                auto u = abar.at(r, j);
                auto v = abar.at(r, j + 1);
                abar.at(r, j) = f.add(u, v);
                abar.at(r, j + 1) = f.sub(u, v);
            }
            ops.adds += 2 * m;
        }
        return syrkd(f, abar.view(), dbar, plan, ops);
    } else {
        std::size_t antidiag_count = 0;
        std::size_t antitri_count = 0;
        for (const auto& blk : b.blocks)
            if (blk.two) (f.is_zero(blk.gamma) ? antidiag_count : antitri_count)++;
        const bool all_antidiagonal = antidiag_count == b.blocks.size();

        Matrix<F> abar(m, n + (all_antidiagonal ? 1 : 0), f.zero());
        copy_into(f, a, abar.block(0, 0, m, n));
        std::vector<typename F::Element> dbar(abar.cols(), f.one());

        for (std::size_t i = 0; i < b.blocks.size(); ++i)
            if (!b.blocks[i].two) dbar[pos[i]] = b.blocks[i].d;

        for (std::size_t i = 0; i < b.blocks.size(); ++i) {
            const auto& blk = b.blocks[i];
            if (!blk.two || f.is_zero(blk.gamma)) continue;
            const std::size_t j = pos[i];
            auto delta = f.sqrt(blk.gamma);
            detail::scale_column(f, abar.view(), j, f.mul(blk.beta, f.inv(delta)), ops);
            detail::scale_column(f, abar.view(), j + 1, delta, ops);
            for (std::size_t r = 0; r < m; ++r)
                abar.at(r, j + 1) = f.add(abar.at(r, j + 1), abar.at(r, j));
            ops.adds += m;
            for (std::size_t r = 0; r < m; ++r) std::swap(abar.at(r, j), abar.at(r, j + 1));
        }

        std::size_t pivot = 0;
        typename F::Element delta = f.one();
        std::size_t first_remaining = 0;  // index into blocks of the first antidiagonal to process
        if (antidiag_count > 0) {
            if (all_antidiagonal) {
                const auto beta0 = b.blocks.front().beta;
                detail::scale_column(f, abar.view(), 1, beta0, ops);
                for (std::size_t r = 0; r < m; ++r)
                    abar.at(r, n) = f.add(abar.at(r, 0), abar.at(r, 1));
                ops.adds += m;
                pivot = 0;
                delta = f.one();
                first_remaining = 1;
            } else {
                // A scalar pivot if one exists, else a column of a processed
                // antitriangular block (its diagonal weight is already 1).
                bool found = false;
                for (std::size_t i = 0; i < b.blocks.size() && !found; ++i)
                    if (!b.blocks[i].two) {
                        pivot = pos[i];
                        delta = f.sqrt(dbar[pivot]);
                        found = true;
                    }
                for (std::size_t i = 0; i < b.blocks.size() && !found; ++i)
                    if (b.blocks[i].two && !f.is_zero(b.blocks[i].gamma)) {
                        pivot = pos[i];
                        delta = f.one();
                        found = true;
                    }
            }
        }

        std::size_t seen = 0;
        for (std::size_t i = 0; i < b.blocks.size(); ++i) {
            const auto& blk = b.blocks[i];
            if (!blk.two || !f.is_zero(blk.gamma)) continue;
            if (seen++ < first_remaining) continue;
            const std::size_t j = pos[i];
            detail::scale_column(f, abar.view(), pivot, delta, ops);
            detail::scale_column(f, abar.view(), j + 1, blk.beta, ops);
            for (std::size_t r = 0; r < m; ++r) {
                auto u = abar.at(r, pivot);
                auto v = abar.at(r, j);
                auto w = abar.at(r, j + 1);
                abar.at(r, pivot) = f.add(u, v);
                abar.at(r, j) = f.add(u, w);
                abar.at(r, j + 1) = f.add(f.add(u, v), w);
            }
            ops.adds += 4 * m;
            dbar[pivot] = f.one();  // sqrt(x) is folded into the pivot column
            delta = f.one();
        }
        return syrkd(f, abar.view(), dbar, plan, ops);
    }
}

}  // namespace fsyrk
