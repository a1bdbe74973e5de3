#include "lldram/bank.hpp"

#include <algorithm>
#include <map>

#include "lldram/errors.hpp"

namespace lldram {

const char* to_string(CommandKind k) {
    switch (k) {
        case CommandKind::kAct: return "ACT";
        case CommandKind::kRead: return "RD";
        case CommandKind::kWrite: return "WR";
        case CommandKind::kPre: return "PRE";
        case CommandKind::kRef: return "REF";
        case CommandKind::kTransfer: return "TRANSFER";
    }
    return "?";
}

BankPhase BankState::phase_at(Cycles now) const {
    if (status == BankPhase::kPrecharged) {
        return now < act_ready ? BankPhase::kPrecharging : BankPhase::kPrecharged;
    }
    return now < col_ready ? BankPhase::kActivating : BankPhase::kActivated;
}

Cycles earliest_legal_time(const BankState& state, const Command& cmd,
                           const TimingParams& timings, Picos clock_ps, Cycles now) {
    (void)timings;
    (void)clock_ps;
    bool open = state.status == BankPhase::kActivating ||
                state.status == BankPhase::kActivated;
    switch (cmd.kind) {
        case CommandKind::kAct:
            if (open) throw IllegalCommand("ACT while a row is open");
            return std::max(now, state.act_ready);
        case CommandKind::kRead:
        case CommandKind::kWrite:
            if (!open) throw IllegalCommand("column command while precharged");
            return std::max(now, state.col_ready);
        case CommandKind::kPre:
            if (!open) throw IllegalCommand("PRE while precharged");
            return std::max(now, state.pre_ready);
        case CommandKind::kRef:
            if (open) throw IllegalCommand("REF requires all banks precharged");
            return std::max(now, state.act_ready);
        case CommandKind::kTransfer:
            // transfer begins with an ACT on the source row
            if (open) throw IllegalCommand("TRANSFER while a row is open");
            return std::max(now, state.act_ready);
    }
    throw IllegalCommand("unknown command kind");
}

BankState apply_command(const BankState& state, const Command& cmd,
                        const TimingParams& t, Picos clock_ps, int tier) {
    BankState s = state;
    Cycles at = cmd.issue_time;
    switch (cmd.kind) {
        case CommandKind::kAct: {
            if (state.status != BankPhase::kPrecharged) {
                throw IllegalCommand("ACT while a row is open");
            }
            s.status = BankPhase::kActivated;
            s.open_row = cmd.addr.row_uid();
            s.open_tier = tier;
            s.last_act = at;
            s.col_ready = at + ps_to_cycles(t.trcd, clock_ps);
            s.pre_ready = at + ps_to_cycles(t.tras, clock_ps);
            s.act_ready = std::max(s.act_ready, at + ps_to_cycles(t.trc, clock_ps));
            break;
        }
        case CommandKind::kRead: {
            if (state.status == BankPhase::kPrecharged) {
                throw IllegalCommand("RD while precharged");
            }
            s.last_col = at;
            break;
        }
        case CommandKind::kWrite: {
            if (state.status == BankPhase::kPrecharged) {
                throw IllegalCommand("WR while precharged");
            }
            s.last_col = at;
            Cycles data_end = at + ps_to_cycles(t.tcwl, clock_ps) +
                              ps_to_cycles(t.tbl, clock_ps);
            s.pre_ready = std::max(s.pre_ready, data_end + ps_to_cycles(t.twr, clock_ps));
            break;
        }
        case CommandKind::kPre: {
            if (state.status == BankPhase::kPrecharged) {
                throw IllegalCommand("PRE while precharged");
            }
            s.status = BankPhase::kPrecharged;
            s.open_row.reset();
            s.last_pre = at;
            s.act_ready = std::max(s.act_ready, at + ps_to_cycles(t.trp, clock_ps));
            s.col_ready = kNever;
            s.pre_ready = kNever;
            break;
        }
        case CommandKind::kRef: {
            if (state.status != BankPhase::kPrecharged) {
                throw IllegalCommand("REF requires all banks precharged");
            }
            // occupancy is applied by the controller via act_ready
            break;
        }
        case CommandKind::kTransfer: {
            throw IllegalCommand("TRANSFER is applied via its expanded schedule");
        }
    }
    return s;
}

std::vector<TimingViolation> check_schedule(
    const std::vector<Command>& log,
    const std::function<TimingParams(const Command&)>& resolver, Picos clock_ps) {
    struct BankTrack {
        Cycles act = kNever;
        Cycles pre = kNever;
        Cycles wr_data_end = kNever;
        TimingParams act_t;
        bool open = false;
    };
    std::vector<TimingViolation> out;
    std::map<std::tuple<uint32_t, uint32_t, uint32_t>, BankTrack> banks;
    auto key = [](const Address& a) {
        return std::make_tuple(a.channel, a.rank, a.bank);
    };
    auto fail = [&out](size_t i, const std::string& w) {
        out.push_back({i, w});
    };
    for (size_t i = 0; i < log.size(); ++i) {
        const Command& c = log[i];
        if (c.kind == CommandKind::kRef) continue;
        TimingParams t = resolver(c);
        BankTrack& b = banks[key(c.addr)];
        Cycles at = c.issue_time;
        switch (c.kind) {
            case CommandKind::kAct:
                if (b.open) fail(i, "ACT on open bank");
                if (b.act != kNever &&
                    at - b.act < ps_to_cycles(b.act_t.trc, clock_ps)) {
                    fail(i, "tRC violated");
                }
                if (b.pre != kNever &&
                    at - b.pre < ps_to_cycles(b.act_t.trp, clock_ps)) {
                    fail(i, "tRP violated");
                }
                b.act = at;
                b.act_t = t;
                b.open = true;
                b.wr_data_end = kNever;
                break;
            case CommandKind::kRead:
            case CommandKind::kWrite:
                if (!b.open) {
                    fail(i, "column command on closed bank");
                    break;
                }
                if (at - b.act < ps_to_cycles(b.act_t.trcd, clock_ps)) {
                    fail(i, "tRCD violated");
                }
                if (c.kind == CommandKind::kWrite) {
                    Cycles end = at + ps_to_cycles(t.tcwl, clock_ps) +
                                 ps_to_cycles(t.tbl, clock_ps);
                    b.wr_data_end = std::max(b.wr_data_end, end);
                }
                break;
            case CommandKind::kPre:
                if (!b.open) {
                    fail(i, "PRE on closed bank");
                    break;
                }
                if (at - b.act < ps_to_cycles(b.act_t.tras, clock_ps)) {
                    fail(i, "tRAS violated");
                }
                if (b.wr_data_end != kNever &&
                    at - b.wr_data_end < ps_to_cycles(b.act_t.twr, clock_ps)) {
                    fail(i, "tWR violated");
                }
                b.pre = at;
                b.open = false;
                break;
            default:
                break;
        }
    }
    return out;
}

}  // namespace lldram
