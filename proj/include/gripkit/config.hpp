#pragma once

#include <json.hpp>
#include <string>

#include "gripkit/design_search.hpp"
#include "gripkit/ls_cvt.hpp"
#include "gripkit/object.hpp"
#include "gripkit/planner.hpp"
#include "gripkit/quick_return.hpp"
#include "gripkit/statics.hpp"

namespace gripkit::config {

using Json = nlohmann::ordered_json;

// Everything the command-line tool reads. Blocks and fields left out of a
// config file keep their defaults; unknown fields are rejected.
struct ToolConfig {
  quick_return::FingerGeometry finger;
  ls_cvt::CvtGeometry cvt;
  statics::LoadCase load;
  design_search::FingerSearchSpace finger_search;
  design_search::CvtSearchSpace cvt_search;

  static ToolConfig defaults();
  // Runs every embedded validate(); kMalformedInput names the field.
  void validate() const;
};

Json to_json(const ToolConfig& c);
// When the cvt block omits theta_in_range_deg it is derived from the finger
// stroke.
ToolConfig config_from_json(const Json& j);
ToolConfig load_config(const std::string& path);

// Search-space files: the same layout as the config's search blocks. Grids
// are required.
Json to_json(const design_search::FingerSearchSpace& s);
Json to_json(const design_search::CvtSearchSpace& s);
design_search::FingerSearchSpace finger_space_from_json(const Json& j);
design_search::CvtSearchSpace cvt_space_from_json(const Json& j);

Json to_json(const design_search::FingerSearchResult& r, const design_search::FingerSearchSpace& s);
Json to_json(const design_search::CvtSearchResult& r);

ObjectSpec object_from_json(const Json& j);
Json to_json(const ObjectSpec& obj);
Json to_json(const planner::Plan& p);

// Parses text, reporting the line of a syntax error as kMalformedInput.
Json parse_json(const std::string& text, const std::string& source);

}  // namespace gripkit::config
