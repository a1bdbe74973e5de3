#pragma once

#include <cstdint>
#include <vector>

#include "lldram/topology.hpp"

namespace lldram {

// DRAM-external row addresses are scrambled inside the chip. Modeled as an
// invertible bit permutation plus XOR mask over the within-subarray row
// bits; identity by default. Non-identity maps require power-of-two
// rows_per_subarray.
struct RowMap {
    std::vector<uint8_t> bit_perm;  // internal bit i comes from external bit bit_perm[i]
    uint32_t xor_mask = 0;

    static RowMap identity() { return RowMap{}; }
    static RowMap permutation(std::vector<uint8_t> perm, uint32_t mask = 0);

    bool is_identity() const { return bit_perm.empty() && xor_mask == 0; }
    uint32_t to_internal(uint32_t row_external, uint32_t rows_per_subarray) const;
    uint32_t to_external(uint32_t row_internal, uint32_t rows_per_subarray) const;
};

enum class MappingScheme {
    kRowInterleaved,   // whole rows striped across channel, rank, bank
    kLineInterleaved,  // 64B lines striped across channels first
};

struct Address {
    uint32_t channel = 0;
    uint32_t rank = 0;
    uint32_t bank = 0;
    uint32_t subarray = 0;
    uint32_t row_external = 0;  // within subarray
    uint32_t row_internal = 0;  // within subarray, after the row map
    uint32_t column = 0;
    uint32_t byte_offset = 0;

    bool same_bank(const Address& o) const {
        return channel == o.channel && rank == o.rank && bank == o.bank;
    }
    bool same_row(const Address& o) const {
        return same_bank(o) && subarray == o.subarray && row_external == o.row_external;
    }
    // Flat row id within a bank (subarray-major).
    uint64_t row_uid() const { return (uint64_t(subarray) << 32) | row_external; }
};

// Bijective over [0, capacity). Throws AddressError out of range.
Address decode_address(uint64_t byte_addr, const Topology& topo, MappingScheme scheme,
                       const RowMap& row_map = RowMap::identity());
uint64_t encode_address(const Address& a, const Topology& topo, MappingScheme scheme);

}  // namespace lldram
