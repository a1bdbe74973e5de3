#include "lldram/harness.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <thread>

#include "lldram/errors.hpp"

namespace lldram {

namespace {

const char* kind_name(FailureKind k) {
    return k == FailureKind::kTiming ? "timing" : "retention";
}

// Visits every tested (address, burst_bit) cell in the spec's order.
template <typename Fn>
void for_each_cell(const Topology& topo, const TestSpec& spec, Fn&& fn) {
    uint32_t banks = topo.banks_per_rank;
    if (spec.max_banks > 0) banks = std::min(banks, spec.max_banks);
    auto visit_row = [&](uint32_t bank, uint32_t sa, uint32_t row) {
        Address a;
        a.bank = bank;
        a.subarray = sa;
        a.row_external = row;
        for (uint32_t col = 0; col < topo.columns_per_row; ++col) {
            a.column = col;
            for (uint32_t bit = 0; bit < 64; ++bit) fn(a, bit);
        }
    };
    auto visit_col_major = [&](uint32_t bank, uint32_t sa) {
        Address a;
        a.bank = bank;
        a.subarray = sa;
        for (uint32_t col = 0; col < topo.columns_per_row; ++col) {
            a.column = col;
            for (uint32_t row = 0; row < topo.rows_per_subarray; ++row) {
                a.row_external = row;
                for (uint32_t bit = 0; bit < 64; ++bit) fn(a, bit);
            }
        }
    };
    for (uint32_t bank = 0; bank < banks; ++bank) {
        for (uint32_t sa = 0; sa < topo.subarrays_per_bank; ++sa) {
            switch (spec.order) {
                case AddressOrder::kAscending:
                    for (uint32_t row = 0; row < topo.rows_per_subarray; ++row) {
                        visit_row(bank, sa, row);
                    }
                    break;
                case AddressOrder::kDescending:
                    for (uint32_t row = topo.rows_per_subarray; row-- > 0;) {
                        visit_row(bank, sa, row);
                    }
                    break;
                case AddressOrder::kColumnMajor:
                    visit_col_major(bank, sa);
                    break;
            }
        }
    }
}

}  // namespace

std::string ErrorLog::to_csv() const {
    std::ostringstream os;
    os << "bank,subarray,row_ext,row_int,col,burst_bit,kind,iteration\n";
    for (const auto& e : entries) {
        os << e.addr.bank << ',' << e.addr.subarray << ',' << e.addr.row_external << ','
           << e.addr.row_internal << ',' << e.addr.column << ',' << unsigned(e.burst_bit)
           << ',' << kind_name(e.kind) << ',' << e.iteration << '\n';
    }
    return os.str();
}

ErrorLog run_test(const ChipModel& chip, const TestSpec& spec) {
    if (spec.iterations < 1) throw ConfigError("iterations must be >= 1");
    if (spec.pattern >= TestSpec::kCheckeredPatterns.size()) {
        throw ConfigError("pattern index out of range");
    }
    const Topology& topo = chip.topology();
    ErrorLog log;
    // row map is the chip's concern during simulation; profiling sees the
    // identity external view, so row_internal mirrors row_external here
    for (uint32_t iter = 0; iter < spec.iterations; ++iter) {
        NoiseSalt salt;
        salt.op = spec.op;
        salt.pattern = spec.pattern + (spec.row_stripe ? 8u : 0u);
        salt.iteration = iter;
        for_each_cell(topo, spec, [&](Address& a, uint32_t bit) {
            a.row_internal = chip.row_internal(a.row_external);
            CellCoords c = chip.cell_coords(a, bit);
            FailureKind k = chip.cell_failure(c, spec.timings, spec.temp_c,
                                              spec.refresh_ms, spec.op, salt);
            if (k != FailureKind::kNone) {
                log.entries.push_back({a, uint8_t(bit), k, iter});
            }
        });
    }
    return log;
}

ErrorLog run_read_test(const ChipModel& chip, const TestSpec& spec) {
    if (spec.op != OpKind::kRead) throw ConfigError("read test requires op=read");
    return run_test(chip, spec);
}

ErrorLog run_write_test(const ChipModel& chip, const TestSpec& spec) {
    if (spec.op != OpKind::kWrite) throw ConfigError("write test requires op=write");
    return run_test(chip, spec);
}

bool test_has_errors(const ChipModel& chip, const TestSpec& spec) {
    const Topology& topo = chip.topology();
    for (uint32_t iter = 0; iter < spec.iterations; ++iter) {
        NoiseSalt salt;
        salt.op = spec.op;
        salt.pattern = spec.pattern + (spec.row_stripe ? 8u : 0u);
        salt.iteration = iter;
        bool found = false;
        uint32_t banks = topo.banks_per_rank;
        if (spec.max_banks > 0) banks = std::min(banks, spec.max_banks);
        for (uint32_t bank = 0; bank < banks && !found; ++bank) {
            for (uint32_t sa = 0; sa < topo.subarrays_per_bank && !found; ++sa) {
                Address a;
                a.bank = bank;
                a.subarray = sa;
                for (uint32_t row = 0; row < topo.rows_per_subarray && !found; ++row) {
                    a.row_external = row;
                    a.row_internal = row;
                    for (uint32_t col = 0; col < topo.columns_per_row && !found; ++col) {
                        a.column = col;
                        for (uint32_t bit = 0; bit < 64; ++bit) {
                            CellCoords c = chip.cell_coords(a, bit);
                            if (chip.cell_failure(c, spec.timings, spec.temp_c,
                                                  spec.refresh_ms, spec.op,
                                                  salt) != FailureKind::kNone) {
                                found = true;
                                break;
                            }
                        }
                    }
                }
            }
        }
        if (found) return true;
    }
    return false;
}

std::array<uint64_t, 64> burst_bit_error_profile(const ErrorLog& log) {
    std::array<uint64_t, 64> counts{};
    for (const auto& e : log.entries) counts[e.burst_bit]++;
    return counts;
}

namespace {

SweepCell run_sweep_cell(const ChipModel& chip, const TestSpec& tmpl,
                         const TimingParams& t, double temp, double refresh) {
    const Topology& topo = chip.topology();
    TestSpec spec = tmpl;
    spec.timings = t;
    spec.temp_c = temp;
    spec.refresh_ms = refresh;
    SweepCell cell;
    cell.timings = t;
    cell.temp_c = temp;
    cell.refresh_ms = refresh;
    cell.per_external_row.assign(
        size_t(topo.subarrays_per_bank) * topo.rows_per_subarray, 0);
    cell.row_hist_mod.assign(topo.cells_per_mat_side, 0);
    ErrorLog log = run_test(chip, spec);
    cell.total_errors = log.size();
    for (const auto& e : log.entries) {
        cell.per_external_row[size_t(e.addr.subarray) * topo.rows_per_subarray +
                              e.addr.row_external]++;
        cell.row_hist_mod[e.addr.row_internal % topo.cells_per_mat_side]++;
        cell.burst_counts[e.burst_bit]++;
    }
    return cell;
}

}  // namespace

SweepResult sweep(const ChipModel& chip, const SweepAxes& axes, const TestSpec& tmpl,
                  unsigned jobs) {
    if (axes.timing_points.empty() || axes.temps.empty() || axes.refresh_ms.empty()) {
        throw ConfigError("sweep axes must be non-empty");
    }
    struct Combo {
        TimingParams t;
        double temp;
        double refresh;
    };
    std::vector<Combo> combos;
    for (const auto& t : axes.timing_points) {
        for (double temp : axes.temps) {
            for (double r : axes.refresh_ms) combos.push_back({t, temp, r});
        }
    }
    SweepResult result;
    result.cells.resize(combos.size());
    if (jobs <= 1 || combos.size() <= 1) {
        for (size_t i = 0; i < combos.size(); ++i) {
            result.cells[i] = run_sweep_cell(chip, tmpl, combos[i].t, combos[i].temp,
                                             combos[i].refresh);
        }
        return result;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= combos.size()) return;
            result.cells[i] = run_sweep_cell(chip, tmpl, combos[i].t, combos[i].temp,
                                             combos[i].refresh);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(jobs, std::thread::hardware_concurrency());
    for (unsigned i = 0; i < std::max(1u, n); ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return result;
}

std::string SweepResult::to_csv() const {
    std::ostringstream os;
    os << "trcd_ps,tras_ps,trp_ps,twr_ps,temp_c,refresh_ms,metric,key,value\n";
    auto prefix = [&](const SweepCell& c) {
        os << c.timings.trcd << ',' << c.timings.tras << ',' << c.timings.trp << ','
           << c.timings.twr << ',' << c.temp_c << ',' << c.refresh_ms << ',';
    };
    for (const auto& c : cells) {
        prefix(c);
        os << "total,0," << c.total_errors << '\n';
        for (size_t r = 0; r < c.per_external_row.size(); ++r) {
            if (c.per_external_row[r] == 0) continue;
            prefix(c);
            os << "row," << r << ',' << c.per_external_row[r] << '\n';
        }
        for (size_t r = 0; r < c.row_hist_mod.size(); ++r) {
            prefix(c);
            os << "row_mod," << r << ',' << c.row_hist_mod[r] << '\n';
        }
        for (size_t b = 0; b < c.burst_counts.size(); ++b) {
            prefix(c);
            os << "burst_bit," << b << ',' << c.burst_counts[b] << '\n';
        }
    }
    return os.str();
}

RowMapEstimate estimate_row_mapping(std::span<const uint64_t> per_row_counts,
                                    uint32_t rows_per_mat) {
    if (rows_per_mat < 2 || per_row_counts.size() < rows_per_mat ||
        (rows_per_mat & (rows_per_mat - 1)) != 0) {
        throw ConfigError("estimation needs at least one power-of-two row group");
    }
    uint32_t nbits = 0;
    while ((1u << nbits) < rows_per_mat) ++nbits;

    // fold all complete groups; the same map applies in each
    std::vector<uint64_t> counts(rows_per_mat, 0);
    size_t groups = per_row_counts.size() / rows_per_mat;
    for (size_t g = 0; g < groups; ++g) {
        for (uint32_t r = 0; r < rows_per_mat; ++r) {
            counts[r] += per_row_counts[g * rows_per_mat + r];
        }
    }

    RowMapEstimate est;
    est.per_external_bit.assign(nbits, BitClaim{});
    uint64_t lo = *std::min_element(counts.begin(), counts.end());
    uint64_t hi = *std::max_element(counts.begin(), counts.end());
    if (lo == hi) return est;  // degenerate: no signal, no claims

    // rank of an external row = its estimated internal row
    std::vector<uint32_t> order(rows_per_mat);
    for (uint32_t i = 0; i < rows_per_mat; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (counts[a] != counts[b]) return counts[a] < counts[b];
        return a < b;
    });
    std::vector<uint32_t> rank(rows_per_mat);
    for (uint32_t pos = 0; pos < rows_per_mat; ++pos) rank[order[pos]] = pos;

    // agreement[i][j]: how often external bit i matches internal bit j
    std::vector<std::vector<uint64_t>> agree(nbits, std::vector<uint64_t>(nbits, 0));
    for (uint32_t e = 0; e < rows_per_mat; ++e) {
        for (uint32_t i = 0; i < nbits; ++i) {
            for (uint32_t j = 0; j < nbits; ++j) {
                agree[i][j] += (((e >> i) & 1u) == ((rank[e] >> j) & 1u)) ? 1 : 0;
            }
        }
    }
    // greedy injective assignment, strongest claims first
    struct Cand {
        double conf;
        bool inverted;
        uint32_t ext, internal;
    };
    std::vector<Cand> cands;
    for (uint32_t i = 0; i < nbits; ++i) {
        for (uint32_t j = 0; j < nbits; ++j) {
            double frac = double(agree[i][j]) / double(rows_per_mat);
            cands.push_back({std::max(frac, 1.0 - frac), frac < 0.5, i, j});
        }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.conf != b.conf) return a.conf > b.conf;
        if (a.ext != b.ext) return a.ext < b.ext;  // ties to the lower bit index
        return a.internal < b.internal;
    });
    std::vector<bool> ext_used(nbits, false), int_used(nbits, false);
    for (const Cand& c : cands) {
        if (ext_used[c.ext] || int_used[c.internal]) continue;
        ext_used[c.ext] = true;
        int_used[c.internal] = true;
        est.per_external_bit[c.ext] = {int(c.internal), c.conf, c.inverted};
    }
    return est;
}

double autocorrelation(std::span<const uint64_t> seq, size_t lag) {
    if (seq.size() < lag + 2) return 0.0;
    double mean = 0.0;
    for (uint64_t v : seq) mean += double(v);
    mean /= double(seq.size());
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < seq.size(); ++i) {
        double d = double(seq[i]) - mean;
        den += d * d;
    }
    if (den == 0.0) return 0.0;
    for (size_t i = 0; i + lag < seq.size(); ++i) {
        num += (double(seq[i]) - mean) * (double(seq[i + lag]) - mean);
    }
    return num / den;
}

size_t autocorrelation_peak_lag(std::span<const uint64_t> seq, size_t max_lag) {
    size_t best = 1;
    double best_v = -2.0;
    for (size_t lag = 1; lag <= max_lag; ++lag) {
        double v = autocorrelation(seq, lag);
        if (v > best_v) {
            best_v = v;
            best = lag;
        }
    }
    return best;
}

}  // namespace lldram
