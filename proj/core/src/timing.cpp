#include "lldram/timing.hpp"

namespace lldram {

Cycles ps_to_cycles(Picos d, Picos clock_period_ps) {
    if (clock_period_ps <= 0) throw ConfigError("clock period must be positive");
    if (d <= 0) return 0;
    return (d + clock_period_ps - 1) / clock_period_ps;
}

TimingParams TimingParams::create(Picos trcd, Picos tras, Picos trp, Picos twr,
                                  Picos tcl, Picos tcwl, Picos tbl) {
    if (trcd <= 0 || tras <= 0 || trp <= 0 || twr <= 0 || tcl <= 0 || tcwl <= 0 ||
        tbl <= 0) {
        throw ConfigError("timing parameters must be positive");
    }
    TimingParams t;
    t.trcd = trcd;
    t.tras = tras;
    t.trp = trp;
    t.twr = twr;
    t.trc = tras + trp;
    t.tcl = tcl;
    t.tcwl = tcwl;
    t.tbl = tbl;
    return t;
}

TimingParams TimingParams::create_checked(Picos trcd, Picos tras, Picos trp, Picos twr,
                                          Picos trc, Picos tcl, Picos tcwl, Picos tbl) {
    if (trc != tras + trp) throw ConfigError("trc must equal tras + trp");
    return create(trcd, tras, trp, twr, tcl, tcwl, tbl);
}

TimingParams TimingParams::with_row_timings(Picos trcd2, Picos tras2, Picos trp2,
                                            Picos twr2) const {
    return create(trcd2, tras2, trp2, twr2, tcl, tcwl, tbl);
}

Picos access_latency(bool loaded, const TimingParams& t) {
    Picos unloaded = t.trcd + t.tcl + t.tbl;
    return loaded ? t.trc + unloaded : unloaded;
}

TimingParams ddr3_1066() {
    return TimingParams::create(15000, 37500, 15000, 15000, 15000, 11250, 7500);
}

TimingParams ddr3_1600() {
    return TimingParams::create(13750, 35000, 13750, 15000, 13750, 10000, 5000);
}

std::vector<Picos> GridAxis::points() const {
    if (step <= 0 || hi < lo) throw ConfigError("bad grid axis");
    std::vector<Picos> out;
    for (Picos v = lo; v <= hi; v += step) out.push_back(v);
    return out;
}

TimingGrid standard_grid() {
    TimingGrid g;
    g.trcd = {10000, 12500, 1250};
    g.tras = {20000, 35000, 1250};
    g.twr = {5000, 15000, 1250};
    g.trp = {10000, 12500, 1250};
    return g;
}

TimingGrid extended_grid() {
    TimingGrid g;
    g.trcd = {5000, 13750, 1250};
    g.tras = {15000, 35000, 1250};
    g.twr = {2500, 15000, 1250};
    g.trp = {5000, 13750, 1250};
    return g;
}

}  // namespace lldram
