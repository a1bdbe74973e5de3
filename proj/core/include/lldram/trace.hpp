#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lldram/variation.hpp"

namespace lldram {

// One post-LLC memory request: run gap_instructions non-memory
// instructions, then issue op at byte_addr.
struct TraceRequest {
    uint64_t gap_instructions = 0;
    OpKind op = OpKind::kRead;
    uint64_t byte_addr = 0;
};

// UTF-8 lines: `<gap_instructions> <R|W> <hex_byte_address>`, `#` comments.
std::vector<TraceRequest> parse_trace(const std::string& text);
std::string serialize_trace(const std::vector<TraceRequest>& reqs);

}  // namespace lldram
