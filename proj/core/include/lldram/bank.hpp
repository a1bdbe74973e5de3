#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lldram/address.hpp"
#include "lldram/timing.hpp"

namespace lldram {

enum class CommandKind { kAct, kRead, kWrite, kPre, kRef, kTransfer };

const char* to_string(CommandKind k);

struct Command {
    CommandKind kind;
    Address addr;
    Cycles issue_time = 0;
    // Transfer destination; meaningful only for kTransfer.
    std::optional<Address> transfer_dst;
};

enum class BankPhase { kPrecharged, kActivating, kActivated, kPrecharging };

// Deadlines are materialized in controller cycles when each command is
// applied, so legality checks never need to look back at which segment a
// past command targeted.
struct BankState {
    BankPhase status = BankPhase::kPrecharged;
    std::optional<uint64_t> open_row;  // row_uid within the bank
    int open_tier = 0;                 // TL-DRAM segment of the open row

    Cycles last_act = kNever;
    Cycles last_col = kNever;
    Cycles last_pre = kNever;

    Cycles col_ready = kNever;   // ACT + tRCD
    Cycles pre_ready = kNever;   // max(ACT + tRAS, write data end + tWR)
    Cycles act_ready = 0;        // max(PRE + tRP, prev ACT + tRC, REF end)

    // Observable phase at a given cycle: Activating until tRCD elapses,
    // Precharging until tRP elapses.
    BankPhase phase_at(Cycles now) const;
};

// Earliest cycle >= now at which cmd violates no timing constraint.
// Throws IllegalCommand when the command kind is incompatible with the
// bank state (e.g. RD while precharged, ACT while a row is open).
Cycles earliest_legal_time(const BankState& state, const Command& cmd,
                           const TimingParams& timings, Picos clock_ps, Cycles now);

// Applies cmd at cmd.issue_time; timings are those of the segment the
// command operates on. Returns the successor state.
BankState apply_command(const BankState& state, const Command& cmd,
                        const TimingParams& timings, Picos clock_ps, int tier = 0);

// Post-hoc validation of a recorded command log against the five enforced
// constraints (tRCD, tRAS, tRP, tRC, tWR). The resolver supplies the
// timing vector that governed each command (per-segment in TL-DRAM mode).
struct TimingViolation {
    size_t cmd_index;
    std::string what;
};

std::vector<TimingViolation> check_schedule(
    const std::vector<Command>& log,
    const std::function<TimingParams(const Command&)>& resolver, Picos clock_ps);

}  // namespace lldram
