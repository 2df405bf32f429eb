#include "fsyrk/count_model.hpp"

#include <sstream>
#include <stdexcept>

namespace fsyrk {

namespace {

bool is_pow2(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::uint64_t tri(std::uint64_t m) { return m * (m + 1) / 2; }

std::uint64_t classical_syrk(std::uint64_t n) {
    // n*n(n+1)/2 mults + (n-1)*n(n+1)/2 adds
    return tri(n) * (2 * n - 1);
}

std::uint64_t classical_gemm(std::uint64_t n) { return 2 * n * n * n - n * n; }

std::uint64_t winograd(std::uint64_t n, unsigned rec) {
    if (rec == 0) return classical_gemm(n);
    if (n % 2 != 0)
        throw std::invalid_argument("WinogradGemm: n must be divisible by 2^rec");
    const std::uint64_t h = n / 2;
    return 7 * winograd(h, rec - 1) + 15 * h * h;
}

std::uint64_t half_add(std::uint64_t m, HalfAddConvention half) {
    if (half == HalfAddConvention::Triangular) return tri(m);
    if (m * m % 2 != 0)
        throw std::invalid_argument("SquareHalf convention is fractional at odd block sizes");
    return m * m / 2;
}

std::uint64_t fast_syrk(std::uint64_t n, unsigned rec, int y, HalfAddConvention half) {
    if (rec == 0) return classical_syrk(n);
    if (n < (std::uint64_t{2} << rec))
        throw std::invalid_argument("FastSyrk: requires n >= 2^(rec+1)");
    const std::uint64_t h = n / 2;
    return 3 * fast_syrk(h, rec - 1, y, half) + 2 * winograd(h, rec - 1) + 6 * h * h +
           3 * half_add(h, half) + 2 * static_cast<std::uint64_t>(y) * h * h;
}

std::uint64_t syrk_dc(std::uint64_t n, unsigned rec, HalfAddConvention half) {
    if (rec == 0) return classical_syrk(n);
    if (n < (std::uint64_t{1} << rec))
        throw std::invalid_argument("SyrkDC: requires n >= 2^rec");
    const std::uint64_t h = n / 2;
    return 4 * syrk_dc(h, rec - 1, half) + 2 * winograd(h, rec - 1) + h * h +
           2 * half_add(h, half);
}

}  // namespace

std::uint64_t count(const CountModel& model) {
    if (!is_pow2(model.n)) throw std::invalid_argument("count model requires a power-of-two size");
    switch (model.alg) {
        case CountAlg::ClassicalSyrk:
            return classical_syrk(model.n);
        case CountAlg::ClassicalGemm:
            return classical_gemm(model.n);
        case CountAlg::WinogradGemm:
            return winograd(model.n, model.rec);
        case CountAlg::FastSyrk:
            if (model.y < 0 || model.y > 3)
                throw std::invalid_argument("FastSyrk: y must be in {0, 1, 2, 3}");
            return fast_syrk(model.n, model.rec, model.y, model.half);
        case CountAlg::SyrkDC:
            return syrk_dc(model.n, model.rec, model.half);
    }
    throw std::invalid_argument("unknown count model");
}

std::string table5_csv() {
    std::ostringstream os;
    os << "algorithm,rec,n,count\n";
    const std::uint64_t sizes[] = {4, 8, 16, 32, 64, 128};
    for (std::uint64_t n : sizes) os << "syrk,0," << n << ',' << classical_syrk(n) << '\n';
    for (unsigned rec = 1; rec <= 4; ++rec) {
        for (std::uint64_t n : sizes)
            if (n >= (std::uint64_t{1} << rec))
                os << "Syrk," << rec << ',' << n << ','
                   << syrk_dc(n, rec, HalfAddConvention::Triangular) << '\n';
        for (int y = 0; y <= 3; ++y)
            for (std::uint64_t n : sizes)
                if (n >= (std::uint64_t{2} << rec))
                    os << 'G' << y << ',' << rec << ',' << n << ','
                       << fast_syrk(n, rec, y, HalfAddConvention::SquareHalf) << '\n';
    }
    return os.str();
}

std::uint64_t crossover(int y) {
    for (std::uint64_t n = 4; n <= (std::uint64_t{1} << 20); n *= 2)
        if (fast_syrk(n, 1, y, HalfAddConvention::SquareHalf) < classical_syrk(n)) return n;
    throw std::logic_error("no crossover found");
}

}  // namespace fsyrk
