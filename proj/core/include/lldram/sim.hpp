#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lldram/aldram.hpp"
#include "lldram/ava.hpp"
#include "lldram/bank.hpp"
#include "lldram/policies.hpp"
#include "lldram/tldram.hpp"
#include "lldram/trace.hpp"

namespace lldram {

// Gap-and-block core abstraction: IPC numbers are proxies, every
// performance statement derived from them is trend-level only.
struct CoreModel {
    double nonmem_ipc = 3.0;
    uint32_t mshr_limit = 8;
    bool blocking_reads = false;  // true: stall the core on every read
};

enum class MechanismKind { kBaseline, kTlDram, kAlDram, kAva };

enum class TlPolicy {
    kNone,  // expose full capacity, no caching
    kSc,
    kWmc,
    kBbc,
    kExclusiveSc,
    kExclusiveWmc,
    kExclusiveBbc,
    kProfile,
};

struct SimConfig {
    Topology topo;
    TimingParams timings;  // standard timings of the module
    MappingScheme scheme = MappingScheme::kRowInterleaved;
    bool open_page = false;  // default closed-page
    CoreModel core;
    uint32_t write_queue_limit = 64;  // per channel
    double temp_c = 55.0;
    double refresh_ms = 64.0;
    Picos trfc_ps = 160000;
    MechanismKind mechanism = MechanismKind::kBaseline;

    // TL-DRAM
    SegmentConfig segments;
    TlPolicy policy = TlPolicy::kNone;
    ProfileMapping profile_mapping;  // for TlPolicy::kProfile

    // AL-DRAM
    TimingTable timing_table;
    TemperatureTrace temp_trace;  // empty: constant temp_c
    double enforce_interval_ms = 256.0;

    // AVA
    TimingParams ava_timings;
    ShuffleMap shuffle = ShuffleMap::identity();

    // model-backed error accounting (AL-DRAM verification, AVA injection)
    bool verify_against_chip = false;

    uint64_t max_cycles = 200'000'000;
    bool collect_log = false;
};

struct Stats {
    uint64_t instructions = 0;
    uint64_t cycles = 0;
    double ipc_proxy = 0.0;
    uint64_t reads = 0;
    uint64_t writes = 0;
    uint64_t rowbuf_hits = 0;
    uint64_t near_hits = 0;
    uint64_t far_accesses = 0;
    double avg_read_latency_ns = 0.0;
    double energy_units = 0.0;
    uint64_t caching_transfers = 0;
    uint64_t errors_injected = 0;
    uint64_t errors_corrected = 0;
    uint64_t errors_uncorrectable = 0;
    uint64_t timing_induced_failures = 0;
    uint64_t retention_failures = 0;

    double rowbuf_frac() const;
    double near_frac() const;
    double far_frac() const;
};

struct CompletionRecord {
    uint64_t id;
    uint32_t core;
    OpKind op;
    Cycles arrival;
    Cycles complete;
    AccessClass cls;
    uint64_t data_id;      // content tag observed by a read
    uint32_t data_version; // write counter of that content
};

struct SimResult {
    std::vector<Stats> per_core;
    Stats aggregate;
    std::vector<Command> command_log;          // when collect_log
    std::vector<CompletionRecord> completions; // when collect_log
    bool hit_cycle_cap = false;
};

// Deterministic single-threaded cycle loop; `chip` backs error accounting
// and may be null for ideal memory.
SimResult run_simulation(const SimConfig& config, const ChipModel* chip,
                         const std::vector<std::vector<TraceRequest>>& traces);

// Pending request view used by the scheduler.
struct PendingRequest {
    uint64_t id;
    uint32_t core;
    OpKind op;
    Address addr;
    uint32_t physical_row;  // subarray-physical row after policy mapping
    int tier;
    Cycles arrival;
    bool caused_act = false;
};

// FR-FCFS: column commands to open rows first (oldest first), then the
// oldest actionable request. Returns nullopt when nothing is issuable.
struct FrfcfsChoice {
    CommandKind kind;
    size_t bank_index;
    size_t queue_index;
};
std::optional<FrfcfsChoice> frfcfs_select(
    std::span<const std::vector<PendingRequest>> queues,
    std::span<const BankState> banks, Cycles now);

// sum_i ipc_i / baseline_i; baseline against itself gives the core count.
double weighted_speedup(std::span<const double> per_core_ipc,
                        std::span<const double> baseline_ipc);

// Total energy of a recorded command log.
double account_energy(std::span<const Command> log, const SegmentConfig& cfg,
                      const Topology& topo);

}  // namespace lldram
