#include "lldram/trace.hpp"

#include <sstream>

#include "lldram/errors.hpp"

namespace lldram {

std::vector<TraceRequest> parse_trace(const std::string& text) {
    std::vector<TraceRequest> reqs;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        uint64_t gap;
        std::string op;
        std::string addr;
        if (!(ls >> gap)) {
            std::string rest;
            if (ls.clear(), !(ls >> rest)) continue;  // blank or comment-only
            throw TraceError("expected instruction gap", line_no);
        }
        if (!(ls >> op >> addr)) throw TraceError("expected `<gap> <R|W> <hex_addr>`", line_no);
        TraceRequest r;
        r.gap_instructions = gap;
        if (op == "R" || op == "r") {
            r.op = OpKind::kRead;
        } else if (op == "W" || op == "w") {
            r.op = OpKind::kWrite;
        } else {
            throw TraceError("op must be R or W", line_no);
        }
        try {
            size_t pos = 0;
            r.byte_addr = std::stoull(addr, &pos, 16);
            if (pos != addr.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw TraceError("bad hex byte address", line_no);
        }
        std::string extra;
        if (ls >> extra) throw TraceError("trailing tokens", line_no);
        reqs.push_back(r);
    }
    return reqs;
}

std::string serialize_trace(const std::vector<TraceRequest>& reqs) {
    std::ostringstream os;
    os << std::hex;
    for (const auto& r : reqs) {
        os << std::dec << r.gap_instructions << ' '
           << (r.op == OpKind::kRead ? 'R' : 'W') << ' ' << std::hex << r.byte_addr
           << '\n';
    }
    return os.str();
}

}  // namespace lldram
