#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fsyrk/matrix.hpp"
#include "fsyrk/scaled_syrk.hpp"

namespace fsyrk {

/// Matrix text format: first line "rows cols", then one line per row of
/// whitespace-separated canonical entries.  Residues and the integer
/// encodings of GF(2^k) / F_{p^2} elements print as decimal integers;
/// complex entries print as "re,im" with round-trip precision.
template <FieldType F>
void write_matrix(const F& f, std::ostream& os, NoDeduce<ConstMatrixView<F>> m) {
    os << m.rows << ' ' << m.cols << '\n';
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) os << ' ';
            os << f.format(m.at(i, j));
        }
        os << '\n';
    }
}

template <FieldType F>
Matrix<F> read_matrix(const F& f, std::istream& is) {
    std::size_t rows = 0, cols = 0;
    if (!(is >> rows >> cols)) throw ParseError("matrix header must be 'rows cols'");
    Matrix<F> m(rows, cols);
    std::string token;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(is >> token))
                throw ParseError("matrix body ended early at row " + std::to_string(i));
            m.at(i, j) = f.parse(token);
        }
    return m;
}

/// Block-diagonal text format: one line per block, "S d" for a scalar
/// block or "T beta gamma" for a 2x2 block ((0, beta), (beta, gamma)).
template <FieldType F>
void write_block_diagonal(const F& f, std::ostream& os, const BlockDiagonal<F>& b) {
    for (const auto& blk : b.blocks) {
        if (blk.two)
            os << "T " << f.format(blk.beta) << ' ' << f.format(blk.gamma) << '\n';
        else
            os << "S " << f.format(blk.d) << '\n';
    }
}

template <FieldType F>
BlockDiagonal<F> read_block_diagonal(const F& f, std::istream& is) {
    BlockDiagonal<F> b;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;  // blank line
        std::string t1, t2;
        if (kind == "S") {
            if (!(ls >> t1)) throw ParseError("scalar block needs one value: '" + line + "'");
            b.blocks.push_back(BlockDiagonal<F>::scalar(f.parse(t1)));
        } else if (kind == "T") {
            if (!(ls >> t1 >> t2))
                throw ParseError("2x2 block needs beta and gamma: '" + line + "'");
            b.blocks.push_back(BlockDiagonal<F>::two_by_two(f.parse(t1), f.parse(t2)));
        } else {
            throw ParseError("block kind must be S or T, got '" + kind + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens in block line: '" + line + "'");
    }
    b.validate(f);
    return b;
}

}  // namespace fsyrk
