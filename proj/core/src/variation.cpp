#include "lldram/variation.hpp"

#include <algorithm>
#include <cmath>

#include "lldram/errors.hpp"
#include "lldram/rng.hpp"

namespace lldram {

namespace {

// stream tags for the counter-based noise
constexpr uint64_t kStreamTiming = 0x74696d696e67ULL;
constexpr uint64_t kStreamRetention = 0x726574ULL;
constexpr uint64_t kStreamVrt = 0x767274ULL;
constexpr uint64_t kStreamOpSalt = 0x6f70ULL;
constexpr uint64_t kStreamPatternSalt = 0x706174ULL;
constexpr uint64_t kStreamIterSalt = 0x697465ULL;

HashStream cell_stream(uint64_t seed, const CellCoords& c, uint64_t stream,
                       uint32_t chip) {
    HashStream h(seed);
    h.mix(stream)
        .mix(chip)
        .mix(c.bank)
        .mix(c.subarray)
        .mix(c.mat_index)
        .mix(c.row_in_mat)
        .mix(c.col_in_mat)
        .mix(c.odd_bitline ? 1 : 0);
    return h;
}

double clamped_gaussian(const HashStream& h) {
    return std::clamp(h.gaussian(), -3.0, 3.0);
}

}  // namespace

void VariationParams::validate() const {
    if (kappa_bitline < 0 || kappa_wordline < 0 || kappa_precharge < 0) {
        throw ConfigError("kappa slopes must be non-negative");
    }
    if (!(alpha_ps > beta_ps) || beta_ps < 0) {
        throw ConfigError("precharge delays require alpha > beta >= 0");
    }
    if (sigma_process < 0) throw ConfigError("sigma_process must be non-negative");
    if (retention_median_ms <= 0) throw ConfigError("retention median must be positive");
    if (write_retention_derate <= 0 || write_retention_derate > 1.0) {
        throw ConfigError("write_retention_derate must be in (0, 1]");
    }
}

double bitline_distance(const CellCoords& coords, const Topology& topo,
                        bool open_bitline) {
    uint32_t n = topo.cells_per_mat_side;
    if (n <= 1) return 0.0;
    double d = double(coords.row_in_mat) / double(n - 1);
    if (open_bitline && coords.odd_bitline) d = 1.0 - d;
    return d;
}

Picos precharge_arrival_delay(uint32_t m, uint32_t mat_count,
                              const VariationParams& params) {
    if (m >= mat_count) throw ConfigError("mat index out of range");
    if (mat_count <= 1) return 0;
    int64_t main_path = int64_t(m) * params.alpha_ps;
    int64_t sub_path = int64_t(mat_count - 1) * params.beta_ps +
                       int64_t(mat_count - 1 - m) * params.alpha_ps;
    return std::min(main_path, sub_path);
}

ChipModel::ChipModel(Topology topo, VariationParams params, RowMap row_map)
    : topo_(std::move(topo)), params_(std::move(params)), row_map_(std::move(row_map)) {
    topo_.validate();
    params_.validate();
    row_map_.to_internal(0, topo_.rows_per_subarray);  // width check
    for (uint32_t m = 0; m < topo_.mats_per_subarray_row; ++m) {
        Picos d = precharge_arrival_delay(m, topo_.mats_per_subarray_row, params_);
        if (d > max_pre_delay_) {
            max_pre_delay_ = d;
            slowest_mat_ = m;
        }
    }
}

CellCoords ChipModel::cell_coords(const Address& addr, uint32_t burst_bit) const {
    if (burst_bit >= 64) throw AddressError("burst bit out of range");
    CellCoords c;
    c.bank = addr.bank;
    c.subarray = addr.subarray;
    uint64_t bitline = uint64_t(burst_bit) * topo_.columns_per_row + addr.column;
    c.mat_index = static_cast<uint32_t>(bitline / topo_.cells_per_mat_side);
    c.col_in_mat = static_cast<uint32_t>(bitline % topo_.cells_per_mat_side);
    c.row_in_mat = row_internal(addr.row_external) % topo_.cells_per_mat_side;
    c.odd_bitline = (bitline & 1) != 0;
    return c;
}

double ChipModel::process_eps(const CellCoords& coords, const NoiseSalt& salt) const {
    double sigma = params_.sigma_process;
    if (sigma == 0.0) return 0.0;
    double eps =
        sigma * clamped_gaussian(cell_stream(params_.seed, coords, kStreamTiming,
                                             salt.chip));
    if (params_.rw_salt_frac > 0) {
        auto h = cell_stream(params_.seed, coords, kStreamOpSalt, salt.chip);
        h.mix(salt.op == OpKind::kWrite ? 1 : 0);
        eps += sigma * params_.rw_salt_frac * clamped_gaussian(h);
    }
    if (params_.pattern_salt_frac > 0) {
        auto h = cell_stream(params_.seed, coords, kStreamPatternSalt, salt.chip);
        h.mix(salt.pattern);
        eps += sigma * params_.pattern_salt_frac * clamped_gaussian(h);
    }
    if (params_.iter_salt_frac > 0) {
        auto h = cell_stream(params_.seed, coords, kStreamIterSalt, salt.chip);
        h.mix(salt.op == OpKind::kWrite ? 1 : 0).mix(salt.pattern).mix(salt.iteration);
        eps += sigma * params_.iter_salt_frac * clamped_gaussian(h);
    }
    return eps;
}

double ChipModel::retention_ms(const CellCoords& coords, double temp_c,
                               const NoiseSalt& salt) const {
    double r = params_.retention_median_ms;
    if (params_.retention_sigma > 0) {
        auto h = cell_stream(params_.seed, coords, kStreamRetention, salt.chip);
        r *= std::exp(params_.retention_sigma * h.gaussian());
    }
    if (params_.vrt_probability > 0) {
        auto h = cell_stream(params_.seed, coords, kStreamVrt, salt.chip);
        h.mix(salt.iteration);
        if (h.uniform() < params_.vrt_probability) r *= params_.vrt_factor;
    }
    if (salt.op == OpKind::kWrite) r *= params_.write_retention_derate;
    return r * std::exp2((85.0 - temp_c) / 10.0);
}

RequiredRowTimings ChipModel::deterministic_row_timings(const CellCoords& coords,
                                                        double temp_c) const {
    double d_bl = bitline_distance(coords, topo_, params_.open_bitline);
    uint64_t span = topo_.bitlines_per_row();
    double d_wl =
        span > 1 ? double(uint64_t(coords.mat_index) * topo_.cells_per_mat_side +
                          coords.col_in_mat) /
                       double(span - 1)
                 : 0.0;
    double d_pre = max_pre_delay_ > 0
                       ? double(precharge_arrival_delay(
                             coords.mat_index, topo_.mats_per_subarray_row, params_)) /
                             double(max_pre_delay_)
                       : 0.0;
    double tau = 1.0 + params_.lambda_temp * (temp_c - 55.0);
    double cell_factor = (1.0 + params_.kappa_bitline * d_bl +
                          params_.kappa_wordline * d_wl) *
                         tau;
    double pre_factor =
        (1.0 + params_.kappa_bitline * d_bl + params_.kappa_precharge * d_pre) * tau;
    RequiredRowTimings r;
    r.trcd = std::max<Picos>(kFloorPs, Picos(std::llround(params_.base.trcd * cell_factor)));
    r.tras = std::max<Picos>(kFloorPs, Picos(std::llround(params_.base.tras * cell_factor)));
    r.twr = std::max<Picos>(kFloorPs, Picos(std::llround(params_.base.twr * cell_factor)));
    r.trp = std::max<Picos>(kFloorPs, Picos(std::llround(params_.base.trp * pre_factor)));
    return r;
}

double ChipModel::noise_scale(const CellCoords& coords, double temp_c,
                              double refresh_ms, const NoiseSalt& salt) const {
    double scale = 1.0 + process_eps(coords, salt);
    if (params_.gamma_charge > 0) {
        double c = refresh_ms / retention_ms(coords, temp_c, salt);
        scale *= 1.0 + params_.gamma_charge * std::max(0.0, c - params_.c0);
    }
    return scale;
}

RequiredRowTimings ChipModel::required_row_timings(const CellCoords& coords,
                                                   double temp_c, double refresh_ms,
                                                   const NoiseSalt& salt) const {
    RequiredRowTimings r = deterministic_row_timings(coords, temp_c);
    double scale = noise_scale(coords, temp_c, refresh_ms, salt);
    if (scale != 1.0) {
        r.trcd = Picos(std::llround(r.trcd * scale));
        r.tras = Picos(std::llround(r.tras * scale));
        r.twr = Picos(std::llround(r.twr * scale));
        r.trp = Picos(std::llround(r.trp * scale));
    }
    r.trcd = std::max<Picos>(kFloorPs, r.trcd);
    r.tras = std::max<Picos>(kFloorPs, r.tras);
    r.twr = std::max<Picos>(kFloorPs, r.twr);
    r.trp = std::max<Picos>(kFloorPs, r.trp);
    return r;
}

TimingParams ChipModel::required_timings(const CellCoords& coords, double temp_c,
                                         double refresh_ms,
                                         const NoiseSalt& salt) const {
    RequiredRowTimings r = required_row_timings(coords, temp_c, refresh_ms, salt);
    return params_.base.with_row_timings(r.trcd, r.tras, r.trp, r.twr);
}

FailureKind ChipModel::cell_failure(const CellCoords& coords,
                                    const TimingParams& applied, double temp_c,
                                    double refresh_ms, OpKind op,
                                    const NoiseSalt& salt) const {
    NoiseSalt s = salt;
    s.op = op;
    RequiredRowTimings req = required_row_timings(coords, temp_c, refresh_ms, s);
    bool timing_fail;
    if (op == OpKind::kRead) {
        timing_fail = applied.trcd < req.trcd || applied.tras < req.tras ||
                      applied.trp < req.trp;
    } else {
        timing_fail = applied.trcd < req.trcd || applied.twr < req.twr ||
                      applied.trp < req.trp;
    }
    if (timing_fail) return FailureKind::kTiming;
    if (refresh_ms > retention_ms(coords, temp_c, s)) return FailureKind::kRetention;
    return FailureKind::kNone;
}

}  // namespace lldram
