#include "lldram/address.hpp"

#include <bit>

#include "lldram/errors.hpp"

namespace lldram {

namespace {

uint32_t row_bits_of(uint32_t rows_per_subarray) {
    if (!std::has_single_bit(rows_per_subarray)) {
        throw ConfigError("non-identity row maps require power-of-two rows_per_subarray");
    }
    return std::bit_width(rows_per_subarray) - 1;
}

}  // namespace

RowMap RowMap::permutation(std::vector<uint8_t> perm, uint32_t mask) {
    // perm must be a permutation of 0..n-1
    std::vector<bool> seen(perm.size(), false);
    for (uint8_t p : perm) {
        if (p >= perm.size() || seen[p]) throw ConfigError("row map is not a permutation");
        seen[p] = true;
    }
    RowMap m;
    m.bit_perm = std::move(perm);
    m.xor_mask = mask;
    return m;
}

uint32_t RowMap::to_internal(uint32_t row_external, uint32_t rows_per_subarray) const {
    if (is_identity()) return row_external;
    uint32_t nbits = row_bits_of(rows_per_subarray);
    if (bit_perm.size() != nbits) throw ConfigError("row map width mismatch");
    uint32_t scram = row_external ^ xor_mask;
    uint32_t out = 0;
    for (uint32_t i = 0; i < nbits; ++i) {
        out |= ((scram >> bit_perm[i]) & 1u) << i;
    }
    return out;
}

uint32_t RowMap::to_external(uint32_t row_internal, uint32_t rows_per_subarray) const {
    if (is_identity()) return row_internal;
    uint32_t nbits = row_bits_of(rows_per_subarray);
    uint32_t scram = 0;
    for (uint32_t i = 0; i < nbits; ++i) {
        scram |= ((row_internal >> i) & 1u) << bit_perm[i];
    }
    return scram ^ xor_mask;
}

Address decode_address(uint64_t byte_addr, const Topology& topo, MappingScheme scheme,
                       const RowMap& row_map) {
    if (byte_addr >= topo.capacity_bytes()) {
        throw AddressError("byte address beyond topology capacity");
    }
    Address a;
    uint64_t rest = byte_addr;
    auto take = [&rest](uint64_t radix) {
        uint64_t v = rest % radix;
        rest /= radix;
        return static_cast<uint32_t>(v);
    };
    switch (scheme) {
        case MappingScheme::kRowInterleaved:
            a.byte_offset = take(topo.line_bytes());
            a.column = take(topo.columns_per_row);
            a.channel = take(topo.channels);
            a.rank = take(topo.ranks_per_channel);
            a.bank = take(topo.banks_per_rank);
            a.row_external = take(topo.rows_per_subarray);
            a.subarray = take(topo.subarrays_per_bank);
            break;
        case MappingScheme::kLineInterleaved:
            a.byte_offset = take(topo.line_bytes());
            a.channel = take(topo.channels);
            a.column = take(topo.columns_per_row);
            a.rank = take(topo.ranks_per_channel);
            a.bank = take(topo.banks_per_rank);
            a.row_external = take(topo.rows_per_subarray);
            a.subarray = take(topo.subarrays_per_bank);
            break;
    }
    a.row_internal = row_map.to_internal(a.row_external, topo.rows_per_subarray);
    return a;
}

uint64_t encode_address(const Address& a, const Topology& topo, MappingScheme scheme) {
    uint64_t v = 0;
    auto put = [&v](uint64_t field, uint64_t radix) { v = v * radix + field; };
    switch (scheme) {
        case MappingScheme::kRowInterleaved:
            put(a.subarray, topo.subarrays_per_bank);
            put(a.row_external, topo.rows_per_subarray);
            put(a.bank, topo.banks_per_rank);
            put(a.rank, topo.ranks_per_channel);
            put(a.channel, topo.channels);
            put(a.column, topo.columns_per_row);
            put(a.byte_offset, topo.line_bytes());
            break;
        case MappingScheme::kLineInterleaved:
            put(a.subarray, topo.subarrays_per_bank);
            put(a.row_external, topo.rows_per_subarray);
            put(a.bank, topo.banks_per_rank);
            put(a.rank, topo.ranks_per_channel);
            put(a.column, topo.columns_per_row);
            put(a.channel, topo.channels);
            put(a.byte_offset, topo.line_bytes());
            break;
    }
    return v;
}

}  // namespace lldram
