#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tightproj/finite_codim.hpp"
#include "tightproj/linalg.hpp"
#include "tightproj/multop.hpp"
#include "tightproj/pairing.hpp"
#include "tightproj/spectrum.hpp"

namespace tightproj::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = TIGHTPROJ_VERSION;

// Parsers throw Error(invalid_input) on schema violations; the domain
// constructors raise their own errors (model errors for spectrum models).

Json to_json(const FrameSpec& frame);
FrameSpec frame_from_json(const Json& j);

Json to_json(const Projection& p);
Projection projection_from_json(const Json& j);

Json to_json(const SpectrumModel& model);
SpectrumModel model_from_json(const Json& j);

Json to_json(const MultOpSpec& spec);
MultOpSpec multop_from_json(const Json& j);
/// Optional "partition": [[[lo, hi], ...], ...] next to the symbol.
std::vector<IntervalSet> partition_from_json(const Json& j);

Json to_json(const TightnessCertificate& cert);
Json to_json(const PairingPlan& plan);
Json to_json(const Classification& c);
Json to_json(const MultOpCertificate& cert);
Json to_json(const MultOpTightening& t);
Json to_json(const IntervalSet& s);

Json read_json_file(const std::string& path);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace tightproj::io
