#pragma once

#include <cstdint>
#include <string>

namespace fsyrk {

/// Closed-form operation counts for every algorithm variant, at power-of-two
/// sizes where no padding or peeling occurs.
enum class CountAlg {
    ClassicalSyrk,  // one triangle of A*A^T, classical
    ClassicalGemm,  // full classical product
    WinogradGemm,   // Strassen-Winograd with a fixed number of levels
    FastSyrk,       // 5-product recursion, parameterized by the Y cost class
    SyrkDC,         // classical divide and conquer (4 recursive + 2 generic)
};

/// The G rows of the arithmetic table count a half addition on an m x m
/// block as m^2/2; the Syrk rows and the runtime instrument count the exact
/// triangle m(m+1)/2.  Both conventions are implemented and never mixed.
enum class HalfAddConvention { Triangular, SquareHalf };

struct CountModel {
    CountAlg alg = CountAlg::ClassicalSyrk;
    std::uint64_t n = 0;
    unsigned rec = 0;  // recursion levels (FastSyrk / SyrkDC / WinogradGemm)
    int y = 0;         // per-element cost of applying Y, in {0, 1, 2, 3}
    HalfAddConvention half = HalfAddConvention::Triangular;
};

/// Exact operation count; throws std::invalid_argument for sizes where the
/// recursion cannot run (n not a power of two, FastSyrk needs n >= 2^(rec+1),
/// SyrkDC needs n >= 2^rec).
std::uint64_t count(const CountModel& model);

/// The full arithmetic-operation grid as CSV with columns
/// algorithm,rec,n,count for n in {4, ..., 128}: the classical syrk row,
/// Syrk-1..4, and G0..G3 at 1..4 recursion levels (G rows under the
/// SquareHalf convention, Syrk rows under Triangular).
std::string table5_csv();

/// Smallest power of two where one recursion level beats the classical
/// count, per Y cost class (SquareHalf convention, as in the table).
std::uint64_t crossover(int y);

}  // namespace fsyrk
