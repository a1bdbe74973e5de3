#include "lldram/aldram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lldram/errors.hpp"

namespace lldram {

std::optional<TimingTableEntry> TimingTable::lookup(double temp_c) const {
    for (const auto& e : entries) {
        if (e.temp_c >= temp_c) return e;
    }
    return std::nullopt;
}

void TimingTable::validate() const {
    for (size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].temp_c <= entries[i - 1].temp_c) {
            throw ConfigError("timing table temperatures must ascend");
        }
        const TimingParams& a = entries[i - 1].timings;
        const TimingParams& b = entries[i].timings;
        if (b.trcd < a.trcd || b.tras < a.tras || b.twr < a.twr || b.trp < a.trp) {
            throw ConfigError("timing table must be componentwise non-decreasing in temperature");
        }
    }
}

std::string TimingTable::serialize() const {
    std::ostringstream os;
    os << "# adaptive timing table\n";
    os << "schema_version 1\n";
    os << "safe_refresh_read_ms " << safe_refresh_read_ms << '\n';
    os << "safe_refresh_write_ms " << safe_refresh_write_ms << '\n';
    auto emit = [&os](const char* tag, const TimingParams& t) {
        os << tag << "_trcd_ps " << t.trcd << '\n';
        os << tag << "_tras_ps " << t.tras << '\n';
        os << tag << "_trp_ps " << t.trp << '\n';
        os << tag << "_twr_ps " << t.twr << '\n';
        os << tag << "_tcl_ps " << t.tcl << '\n';
        os << tag << "_tcwl_ps " << t.tcwl << '\n';
        os << tag << "_tbl_ps " << t.tbl << '\n';
    };
    emit("standard", standard);
    for (const auto& e : entries) {
        os << "[temp " << e.temp_c << "]\n";
        os << "from_grid " << (e.from_grid ? 1 : 0) << '\n';
        emit("entry", e.timings);
    }
    return os.str();
}

TimingTable TimingTable::parse(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    TimingTable t;
    struct Acc {
        Picos trcd = 0, tras = 0, trp = 0, twr = 0, tcl = 0, tcwl = 0, tbl = 0;
    };
    Acc std_acc, cur;
    double cur_temp = 0.0;
    bool in_entry = false;
    bool cur_from_grid = true;
    auto flush = [&]() {
        if (!in_entry) return;
        t.entries.push_back({cur_temp,
                             TimingParams::create(cur.trcd, cur.tras, cur.trp, cur.twr,
                                                  cur.tcl, cur.tcwl, cur.tbl),
                             cur_from_grid});
    };
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line[0] == '[') {
            flush();
            in_entry = true;
            cur = Acc{};
            cur_from_grid = true;
            std::istringstream ls(line.substr(1));
            std::string word;
            ls >> word >> cur_temp;
            if (word != "temp" || !ls) throw ConfigError("bad timing table section: " + line);
            continue;
        }
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        auto want = [&](const char* name, Picos& out) {
            if (key != name) return false;
            int64_t v;
            ls >> v;
            out = v;
            return true;
        };
        Acc& a = in_entry ? cur : std_acc;
        const char* tag = in_entry ? "entry" : "standard";
        std::string p(tag);
        if (key == "schema_version" || key == "safe_refresh_read_ms" ||
            key == "safe_refresh_write_ms" || key == "from_grid") {
            double v;
            ls >> v;
            if (key == "safe_refresh_read_ms") t.safe_refresh_read_ms = v;
            if (key == "safe_refresh_write_ms") t.safe_refresh_write_ms = v;
            if (key == "from_grid") cur_from_grid = v != 0;
            continue;
        }
        if (!(want((p + "_trcd_ps").c_str(), a.trcd) ||
              want((p + "_tras_ps").c_str(), a.tras) ||
              want((p + "_trp_ps").c_str(), a.trp) ||
              want((p + "_twr_ps").c_str(), a.twr) ||
              want((p + "_tcl_ps").c_str(), a.tcl) ||
              want((p + "_tcwl_ps").c_str(), a.tcwl) ||
              want((p + "_tbl_ps").c_str(), a.tbl))) {
            throw ConfigError("unknown timing table key: " + key);
        }
    }
    flush();
    t.standard = TimingParams::create(std_acc.trcd, std_acc.tras, std_acc.trp,
                                      std_acc.twr, std_acc.tcl, std_acc.tcwl,
                                      std_acc.tbl);
    t.validate();
    return t;
}

double find_safe_refresh_interval(const ChipModel& chip, double temp_c,
                                  const TimingParams& standard, OpKind op,
                                  const IdentifyOptions& opts) {
    TestSpec spec;
    spec.op = op;
    spec.timings = standard;
    spec.temp_c = temp_c;
    spec.iterations = opts.iterations;
    auto errors_at = [&](double refresh) {
        for (uint32_t p : opts.patterns) {
            spec.pattern = p;
            spec.refresh_ms = refresh;
            if (test_has_errors(chip, spec)) return true;
        }
        return false;
    };
    if (errors_at(64.0)) {
        throw ModuleRejected("errors at the standard 64 ms refresh interval");
    }
    double last_good = 64.0;
    for (double r = 64.0 + opts.step_ms; r <= opts.sweep_cap_ms; r += opts.step_ms) {
        if (errors_at(r)) break;
        last_good = r;
    }
    return last_good - opts.step_ms;
}

WorstCase worst_required(const ChipModel& chip, OpKind op, double temp_c,
                         double refresh_ms, const IdentifyOptions& opts) {
    const Topology& topo = chip.topology();
    WorstCase w;
    w.required = {0, 0, 0, 0};
    w.min_retention_ms = 1e300;
    bool noiseless = chip.params().sigma_process == 0.0;
    Address a;
    for (uint32_t bank = 0; bank < topo.banks_per_rank; ++bank) {
        a.bank = bank;
        for (uint32_t sa = 0; sa < topo.subarrays_per_bank; ++sa) {
            a.subarray = sa;
            for (uint32_t row = 0; row < topo.rows_per_subarray; ++row) {
                a.row_external = row;
                for (uint32_t col = 0; col < topo.columns_per_row; ++col) {
                    a.column = col;
                    for (uint32_t bit = 0; bit < 64; ++bit) {
                        CellCoords c = chip.cell_coords(a, bit);
                        NoiseSalt salt;
                        salt.op = op;
                        if (noiseless) {
                            w.required.max_with(
                                chip.required_row_timings(c, temp_c, refresh_ms, salt));
                        } else {
                            for (uint32_t p : opts.patterns) {
                                salt.pattern = p;
                                for (uint32_t it = 0; it < opts.iterations; ++it) {
                                    salt.iteration = it;
                                    w.required.max_with(chip.required_row_timings(
                                        c, temp_c, refresh_ms, salt));
                                }
                            }
                        }
                        w.min_retention_ms = std::min(
                            w.min_retention_ms, chip.retention_ms(c, temp_c, salt));
                    }
                }
            }
        }
    }
    return w;
}

namespace {

// Smallest grid point >= need; nullopt when the axis tops out below it.
std::optional<Picos> grid_ceil(const GridAxis& axis, Picos need) {
    if (need <= axis.lo) return axis.lo;
    if (need > axis.hi) return std::nullopt;
    Picos steps = (need - axis.lo + axis.step - 1) / axis.step;
    return axis.lo + steps * axis.step;
}

}  // namespace

TimingTable identify_timing_table(const ChipModel& chip, const std::vector<double>& temps,
                                  const TimingGrid& grid, const TimingParams& standard,
                                  const IdentifyOptions& opts) {
    TimingTable table;
    table.standard = standard;
    table.safe_refresh_read_ms =
        find_safe_refresh_interval(chip, 85.0, standard, OpKind::kRead, opts);
    table.safe_refresh_write_ms =
        find_safe_refresh_interval(chip, 85.0, standard, OpKind::kWrite, opts);

    std::vector<double> sorted = temps;
    std::sort(sorted.begin(), sorted.end());
    for (double temp : sorted) {
        WorstCase rd =
            worst_required(chip, OpKind::kRead, temp, table.safe_refresh_read_ms, opts);
        WorstCase wr =
            worst_required(chip, OpKind::kWrite, temp, table.safe_refresh_write_ms, opts);
        bool retention_ok = rd.min_retention_ms >= table.safe_refresh_read_ms &&
                            wr.min_retention_ms >= table.safe_refresh_write_ms;
        // read exercises tRCD/tRAS/tRP, write exercises tRCD/tWR/tRP; a
        // combination passes both tests iff it covers the union
        auto trcd = grid_ceil(grid.trcd, std::max(rd.required.trcd, wr.required.trcd));
        auto tras = grid_ceil(grid.tras, rd.required.tras);
        auto twr = grid_ceil(grid.twr, wr.required.twr);
        auto trp = grid_ceil(grid.trp, std::max(rd.required.trp, wr.required.trp));
        if (retention_ok && trcd && tras && twr && trp) {
            table.entries.push_back(
                {temp, standard.with_row_timings(*trcd, *tras, *trp, *twr), true});
        } else {
            table.entries.push_back({temp, standard, false});
        }
    }
    table.validate();
    return table;
}

double TemperatureTrace::at(double time_s) const {
    if (samples.empty()) throw ConfigError("temperature trace is empty");
    double t = samples.front().temp_c;
    for (const auto& s : samples) {
        if (s.time_s > time_s) break;
        t = s.temp_c;
    }
    return t;
}

std::vector<std::string> TemperatureTrace::validate() const {
    std::vector<std::string> warnings;
    for (size_t i = 1; i < samples.size(); ++i) {
        double dt = samples[i].time_s - samples[i - 1].time_s;
        if (dt <= 0) {
            warnings.push_back("non-increasing timestamps at sample " + std::to_string(i));
            continue;
        }
        double rate = std::abs(samples[i].temp_c - samples[i - 1].temp_c) / dt;
        if (rate > 0.1 + 1e-12) {
            warnings.push_back("temperature slew " + std::to_string(rate) +
                               " degC/s at sample " + std::to_string(i) +
                               " exceeds 0.1 degC/s");
        }
    }
    return warnings;
}

std::string TemperatureTrace::serialize() const {
    std::ostringstream os;
    for (const auto& s : samples) os << s.time_s << ' ' << s.temp_c << '\n';
    return os.str();
}

TemperatureTrace TemperatureTrace::parse(const std::string& text) {
    TemperatureTrace t;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Sample s{};
        if (!(ls >> s.time_s >> s.temp_c)) {
            throw TraceError("bad temperature sample", line_no);
        }
        t.samples.push_back(s);
    }
    return t;
}

std::vector<EnforcementSlice> enforce_timings(const TimingTable& table,
                                              const TemperatureTrace& temps,
                                              double horizon_ms, double interval_ms) {
    if (table.entries.empty()) throw ConfigError("timing table is empty");
    if (interval_ms <= 0) throw ConfigError("enforcement interval must be positive");
    std::vector<EnforcementSlice> out;
    for (double start = 0.0; start < horizon_ms; start += interval_ms) {
        double temp = temps.at(start / 1000.0);
        auto entry = table.lookup(temp);
        EnforcementSlice s;
        s.start_ms = start;
        s.temp_c = temp;
        if (entry) {
            s.applied = entry->timings;
            s.from_table = true;
        } else {
            s.applied = table.standard;  // hotter than every profiled point
            s.from_table = false;
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace lldram
