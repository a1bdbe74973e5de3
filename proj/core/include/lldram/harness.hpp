#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lldram/variation.hpp"

namespace lldram {

enum class AddressOrder { kAscending, kDescending, kColumnMajor };

// One profiling test: write a data pattern, re-access with target
// timings, wait out the refresh interval, verify.
struct TestSpec {
    OpKind op = OpKind::kRead;
    uint32_t pattern = 0;     // index into the eight checkered patterns
    bool row_stripe = false;  // inverted pattern on odd rows
    TimingParams timings;
    double temp_c = 85.0;
    double refresh_ms = 64.0;
    uint32_t iterations = 10;
    AddressOrder order = AddressOrder::kAscending;
    uint32_t max_banks = 0;  // 0 = test every bank

    static constexpr std::array<uint8_t, 8> kCheckeredPatterns = {
        0b0000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111};
};

struct ErrorEntry {
    Address addr;
    uint8_t burst_bit;  // 0..63 within the per-chip transfer
    FailureKind kind;
    uint32_t iteration;
};

struct ErrorLog {
    std::vector<ErrorEntry> entries;

    bool empty() const { return entries.empty(); }
    size_t size() const { return entries.size(); }
    std::string to_csv() const;
};

// Per-cell application of the failure oracle in the spec'd address order.
ErrorLog run_read_test(const ChipModel& chip, const TestSpec& spec);
ErrorLog run_write_test(const ChipModel& chip, const TestSpec& spec);
ErrorLog run_test(const ChipModel& chip, const TestSpec& spec);

// True as soon as one cell fails; used by interval/grid searches.
bool test_has_errors(const ChipModel& chip, const TestSpec& spec);

// 64 counts by bit position; sum equals the entry count.
std::array<uint64_t, 64> burst_bit_error_profile(const ErrorLog& log);

struct SweepAxes {
    std::vector<TimingParams> timing_points;
    std::vector<double> temps;
    std::vector<double> refresh_ms;
};

// Error counts for one (timing, temperature, refresh) combination.
struct SweepCell {
    TimingParams timings;
    double temp_c;
    double refresh_ms;
    uint64_t total_errors = 0;
    std::vector<uint64_t> per_external_row;  // subarray-major, length S*R
    std::vector<uint64_t> row_hist_mod;      // by row_internal mod rows-per-mat
    std::array<uint64_t, 64> burst_counts{};
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::string to_csv() const;
};

// Cartesian product of the axes; cells appear in axis order. `jobs`
// parallelizes over combinations (results are merged in combo order).
SweepResult sweep(const ChipModel& chip, const SweepAxes& axes, const TestSpec& tmpl,
                  unsigned jobs = 1);

// Estimated external-to-internal row mapping from per-row error counts.
struct BitClaim {
    int internal_bit = -1;  // -1: no claim
    double confidence = 0.5;
    bool inverted = false;
};

struct RowMapEstimate {
    std::vector<BitClaim> per_external_bit;
};

// Rows are ranked by error count within mat-sized groups; each internal
// bit is matched to the external address bit that agrees most often.
RowMapEstimate estimate_row_mapping(std::span<const uint64_t> per_row_counts,
                                    uint32_t rows_per_mat);

// Autocorrelation of a count sequence at the given lag (mean-removed,
// normalized); used to detect mat-period structure.
double autocorrelation(std::span<const uint64_t> seq, size_t lag);
size_t autocorrelation_peak_lag(std::span<const uint64_t> seq, size_t max_lag);

}  // namespace lldram
