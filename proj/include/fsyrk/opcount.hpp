#pragma once

#include <cstddef>
#include <cstdint>

namespace fsyrk {

/// Exact tally of scalar field operations performed by a kernel.
/// Additions and subtractions are pooled in `adds`.
struct OpCount {
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;

    std::uint64_t total() const { return mults + adds; }

    OpCount& operator+=(const OpCount& other) {
        mults += other.mults;
        adds += other.adds;
        return *this;
    }
    friend OpCount operator+(OpCount a, const OpCount& b) { return a += b; }
    friend bool operator==(const OpCount&, const OpCount&) = default;

    void reset() { mults = 0; adds = 0; }
};

/// Thread-local statistics on matrix buffer allocations, used by the
/// memory-contract tests.  Every Matrix buffer registers itself here.
struct AllocStats {
    std::uint64_t live_buffers = 0;
    std::uint64_t peak_buffers = 0;
    std::uint64_t total_buffers = 0;  // cumulative count of allocations
    std::uint64_t live_elements = 0;
    std::uint64_t peak_elements = 0;

    void on_alloc(std::size_t elements) {
        ++live_buffers;
        ++total_buffers;
        live_elements += elements;
        if (live_buffers > peak_buffers) peak_buffers = live_buffers;
        if (live_elements > peak_elements) peak_elements = live_elements;
    }
    void on_free(std::size_t elements) {
        --live_buffers;
        live_elements -= elements;
    }
};

inline AllocStats& alloc_stats() {
    thread_local AllocStats stats;
    return stats;
}

/// Measures buffer allocations within a scope: peak beyond the live set at
/// construction, and the number of allocations made.
class AllocProbe {
  public:
    AllocProbe() {
        AllocStats& s = alloc_stats();
        base_live_ = s.live_buffers;
        base_total_ = s.total_buffers;
        s.peak_buffers = s.live_buffers;
        s.peak_elements = s.live_elements;
    }
    /// Max number of buffers simultaneously alive beyond those at probe start.
    std::uint64_t peak_extra_buffers() const {
        const AllocStats& s = alloc_stats();
        return s.peak_buffers > base_live_ ? s.peak_buffers - base_live_ : 0;
    }
    /// Number of buffer allocations made since probe start.
    std::uint64_t buffers_allocated() const {
        return alloc_stats().total_buffers - base_total_;
    }

  private:
    std::uint64_t base_live_ = 0;
    std::uint64_t base_total_ = 0;
};

}  // namespace fsyrk
