#pragma once

// Resolved run configuration, echoed verbatim into every report so a run
// can be reproduced from its own output.

#include <cstdint>
#include <string>
#include <vector>

#include "body.hpp"

namespace mixvol {

struct RunConfig {
    std::string command;                    // e.g. "verify theorem"
    std::vector<std::string> body_tokens;   // body shortcuts / inline JSON, as given
    std::vector<BodySpec> bodies;
    int d = 0;
    int n = 0;
    int k = 0;
    std::uint64_t samples = 0;
    int m_ball = 256;
    std::uint64_t seed = 0;
    std::string format = "table";           // table | json | csv
    std::string out_path;
    int workers = 0;                        // 0 = auto; execution detail only
    bool emit_timing = false;               // real timings make output non-canonical
};

/// Default Monte Carlo sample counts: 1e4 up to three dimensions, 1e3 above.
inline std::uint64_t default_samples(int n) { return n <= 3 ? 10000 : 1000; }

}  // namespace mixvol
