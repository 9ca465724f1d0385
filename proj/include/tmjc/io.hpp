#pragma once
// CSV / JSON serialisation of scans and traces.  Output is byte-for-byte
// deterministic: doubles are printed with %.17g (round-trip exact), field
// order is fixed, and no timestamps or environment details are embedded.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "analysis.hpp"
#include "propagator.hpp"
#include "semiclassical.hpp"

namespace tmjc {

// Fixed-order JSON object; keeps emitted files stable across runs.
using Json = nlohmann::ordered_json;

// Filesystem failures, kept distinct from numerical errors so callers can
// map them to a separate exit status.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);  // %.17g

// Scan: '#'-prefixed config header, then one row per grid point with
// columns delta1,delta2,max_occupation,t_at_max,degenerate_vicinity.
std::string scan_to_csv(const ScanResult& r, const Json& config);
// Fields: config, delta1_values, delta2_values, max_occupation (row-major
// nested arrays), argmax_time, degenerate_vicinity.
Json scan_to_json(const ScanResult& r, const Json& config);

// Trace: columns t,p_excited,n_mode1,n_mode2[,p_<ket>...].
std::string trace_to_csv(const OccupationTrace& tr, const Json& config);
Json trace_to_json(const OccupationTrace& tr, const Json& config);

std::string trace_to_csv(const TwoLevelTrace& tr, const Json& config);
Json trace_to_json(const TwoLevelTrace& tr, const Json& config);

// Throws IoError with the path in the message on failure.
void write_file(const std::string& path, const std::string& content);

} // namespace tmjc
