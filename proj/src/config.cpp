#include "gripkit/config.hpp"

#include <cmath>
#include <set>

#include "gripkit/error.hpp"
#include "gripkit/report.hpp"

namespace gripkit::config {

namespace {

using geom::deg_to_rad;
using geom::rad_to_deg;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::kMalformedInput, msg); }

// Field access on one JSON object with path-qualified diagnostics; finish()
// rejects keys nobody asked for.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) bad(where("") + " must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  void known(const std::string& key) { seen_.insert(key); }

  double num(const std::string& key, double fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number()) bad(where(key) + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) bad(where(key) + " must be finite");
    return d;
  }

  int integer(const std::string& key, int fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) bad(where(key) + " must be an integer");
    return v.get<int>();
  }

  std::string str(const std::string& key, const std::string& fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_string()) bad(where(key) + " must be a string");
    return v.get<std::string>();
  }

  std::optional<std::pair<double, double>> pair(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    const Json& v = j_.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      bad(where(key) + " must be a [number, number] pair");
    }
    return std::pair{v[0].get<double>(), v[1].get<double>()};
  }

  design_search::Grid grid(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) bad(where(key) + " grid is missing");
    Reader r(j_.at(key), where(key));
    design_search::Grid g;
    for (const char* f : {"min", "max", "step"}) {
      if (!r.has(f)) bad(where(key) + "." + f + " is missing");
    }
    g.lo = r.num("min", 0.0);
    g.hi = r.num("max", 0.0);
    g.step = r.num("step", 0.0);
    r.finish();
    g.validate(where(key));
    return g;
  }

  Reader child(const std::string& key) {
    seen_.insert(key);
    return Reader(j_.at(key), where(key));
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) bad("unknown field " + where(k));
    }
  }

  std::string where(const std::string& key) const {
    if (key.empty()) return path_;
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Json grid_json(const design_search::Grid& g) { return Json{{"min", g.lo}, {"max", g.hi}, {"step", g.step}}; }

Json lengths_json(const design_search::CvtLengths& l) {
  return Json{{"l_in1_mm", l.l_in1}, {"l_in2_mm", l.l_in2}, {"l_fix_mm", l.l_fix},
              {"l_flt_mm", l.l_flt}, {"l_out_mm", l.l_out}};
}

design_search::CvtLengths lengths_from(Reader r, design_search::CvtLengths l) {
  l.l_in1 = r.num("l_in1_mm", l.l_in1);
  l.l_in2 = r.num("l_in2_mm", l.l_in2);
  l.l_fix = r.num("l_fix_mm", l.l_fix);
  l.l_flt = r.num("l_flt_mm", l.l_flt);
  l.l_out = r.num("l_out_mm", l.l_out);
  r.finish();
  return l;
}

quick_return::FingerGeometry finger_from(Reader r) {
  quick_return::FingerGeometry g;
  g.r_op = r.num("r_op_mm", g.r_op);
  g.r_ip = r.num("r_ip_mm", g.r_ip);
  g.l_ft = r.num("l_ft_mm", g.l_ft);
  g.phi2 = deg_to_rad(r.num("phi2_deg", rad_to_deg(g.phi2)));
  g.r_ft = r.num("r_ft_mm", g.r_ft);
  g.theta_closed = deg_to_rad(r.num("theta_ip_closed_deg", rad_to_deg(g.theta_closed)));
  g.theta_open = deg_to_rad(r.num("theta_ip_open_deg", rad_to_deg(g.theta_open)));
  r.finish();
  return g;
}

ls_cvt::CvtGeometry cvt_from(Reader r, bool* has_range) {
  ls_cvt::CvtGeometry g;
  g.l_in1 = r.num("l_in1_mm", g.l_in1);
  g.l_in2 = r.num("l_in2_mm", g.l_in2);
  g.l_fix = r.num("l_fix_mm", g.l_fix);
  g.l_flt = r.num("l_flt_mm", g.l_flt);
  g.l_out = r.num("l_out_mm", g.l_out);
  g.lambda = deg_to_rad(r.num("lambda_deg", rad_to_deg(g.lambda)));
  g.mount_offset = deg_to_rad(r.num("mount_offset_deg", 0.0));
  g.ground_angle = deg_to_rad(r.num("ground_angle_deg", 0.0));
  g.lin_v_max = r.num("lin_v_max_mm", g.lin_v_max);
  g.lin_v_min = r.num("lin_v_min_mm", g.lin_v_min);
  g.input_branch = r.integer("input_branch", g.input_branch);
  g.output_branch = r.integer("output_branch", g.output_branch);
  g.knee_side = r.integer("knee_side", g.knee_side);
  if (auto p = r.pair("theta_in_range_deg")) {
    g.theta_in_range = {deg_to_rad(p->first), deg_to_rad(p->second)};
    *has_range = true;
  }
  r.finish();
  return g;
}

statics::LoadCase load_from(Reader r) {
  statics::LoadCase l;
  l.tau_in = r.num("tau_in_Nmm", l.tau_in);
  l.loss_factor = r.num("loss_factor", l.loss_factor);
  l.r_ob_min = r.num("r_ob_min_mm", l.r_ob_min);
  l.r_ob_max = r.num("r_ob_max_mm", l.r_ob_max);
  l.n_samples = r.integer("n_samples", l.n_samples);
  const std::string model = r.str("pin_force_model", "tangential");
  if (model == "tangential") {
    l.model = statics::PinForceModel::kTangential;
  } else if (model == "slot-reaction") {
    l.model = statics::PinForceModel::kSlotReaction;
  } else {
    bad(r.where("pin_force_model") + " must be \"tangential\" or \"slot-reaction\"");
  }
  r.finish();
  return l;
}

design_search::FingerSearchSpace finger_space_from(Reader r) {
  design_search::FingerSearchSpace s;
  s.r_op = r.num("r_op_mm", s.r_op);
  s.l_ft = r.num("l_ft_mm", s.l_ft);
  s.r_ft = r.num("r_ft_mm", s.r_ft);
  s.r_ip = r.grid("r_ip_mm");
  s.phi2_deg = r.grid("phi2_deg");
  s.envelope_radius = r.num("envelope_radius_mm", s.envelope_radius);
  s.min_pin_distance = r.num("min_pin_distance_mm", s.min_pin_distance);
  s.min_graspable_width = r.num("min_graspable_width_mm", s.min_graspable_width);
  s.stroke_reach = r.num("stroke_reach_mm", s.stroke_reach);
  s.scan_step_deg = r.num("scan_step_deg", s.scan_step_deg);
  r.finish();
  s.validate();
  return s;
}

design_search::CvtSearchSpace cvt_space_from(Reader r) {
  design_search::CvtSearchSpace s;
  s.l_in1 = r.grid("l_in1_mm");
  s.l_in2 = r.grid("l_in2_mm");
  s.l_fix = r.grid("l_fix_mm");
  s.l_flt = r.grid("l_flt_mm");
  s.l_out = r.grid("l_out_mm");
  s.stroke_width_deg = r.num("stroke_width_deg", s.stroke_width_deg);
  s.envelope_radius = r.num("envelope_radius_mm", s.envelope_radius);
  s.dead_point_limit_deg = r.num("dead_point_limit_deg", s.dead_point_limit_deg);
  s.placement_step_deg = r.num("placement_step_deg", s.placement_step_deg);
  s.sweep_step_deg = r.num("sweep_step_deg", s.sweep_step_deg);
  if (r.has("reference")) s.reference = lengths_from(r.child("reference"), s.reference);
  r.finish();
  s.validate();
  return s;
}

Json point_json(const geom::Point2& p) { return Json::array({p.x, p.y}); }

geom::Point2 point_from(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    bad(where + " must be an [x, y] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

ToolConfig ToolConfig::defaults() {
  ToolConfig c;
  c.cvt = ls_cvt::CvtGeometry::nominal();
  return c;
}

void ToolConfig::validate() const {
  finger.validate();
  cvt.validate();
  load.validate();
  finger_search.validate();
  cvt_search.validate();
}

Json to_json(const ToolConfig& c) {
  const auto& f = c.finger;
  const auto& g = c.cvt;
  const auto& l = c.load;
  Json j;
  j["finger"] = Json{{"r_op_mm", f.r_op},
                     {"r_ip_mm", f.r_ip},
                     {"l_ft_mm", f.l_ft},
                     {"phi2_deg", rad_to_deg(f.phi2)},
                     {"r_ft_mm", f.r_ft},
                     {"theta_ip_closed_deg", rad_to_deg(f.theta_closed)},
                     {"theta_ip_open_deg", rad_to_deg(f.theta_open)}};
  j["cvt"] = Json{{"l_in1_mm", g.l_in1},
                  {"l_in2_mm", g.l_in2},
                  {"l_fix_mm", g.l_fix},
                  {"l_flt_mm", g.l_flt},
                  {"l_out_mm", g.l_out},
                  {"lambda_deg", rad_to_deg(g.lambda)},
                  {"mount_offset_deg", rad_to_deg(g.mount_offset)},
                  {"ground_angle_deg", rad_to_deg(g.ground_angle)},
                  {"lin_v_max_mm", g.lin_v_max},
                  {"lin_v_min_mm", g.lin_v_min},
                  {"input_branch", g.input_branch},
                  {"output_branch", g.output_branch},
                  {"knee_side", g.knee_side},
                  {"theta_in_range_deg",
                   Json::array({rad_to_deg(g.theta_in_range.lo), rad_to_deg(g.theta_in_range.hi)})}};
  j["load"] = Json{{"tau_in_Nmm", l.tau_in},
                   {"loss_factor", l.loss_factor},
                   {"r_ob_min_mm", l.r_ob_min},
                   {"r_ob_max_mm", l.r_ob_max},
                   {"n_samples", l.n_samples},
                   {"pin_force_model",
                    l.model == statics::PinForceModel::kTangential ? "tangential" : "slot-reaction"}};
  j["finger_search"] = to_json(c.finger_search);
  j["cvt_search"] = to_json(c.cvt_search);
  return j;
}

ToolConfig config_from_json(const Json& j) {
  ToolConfig c;
  Reader r(j, "");
  bool has_range = false;
  if (r.has("finger")) c.finger = finger_from(r.child("finger"));
  if (r.has("cvt")) c.cvt = cvt_from(r.child("cvt"), &has_range);
  if (r.has("load")) c.load = load_from(r.child("load"));
  if (r.has("finger_search")) c.finger_search = finger_space_from(r.child("finger_search"));
  if (r.has("cvt_search")) c.cvt_search = cvt_space_from(r.child("cvt_search"));
  r.finish();
  c.finger.validate();
  if (!has_range) {
    c.cvt.theta_in_range.lo = 0.0;
    c.cvt.theta_in_range.hi = 1.0;  // placeholder so validate() checks the rest
    c.cvt.validate();
    c.cvt.theta_in_range =
        ls_cvt::operating_input_range(c.cvt, c.finger.theta_closed, c.finger.theta_open);
  }
  c.validate();
  return c;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(source + ": " + e.what());
  }
}

ToolConfig load_config(const std::string& path) {
  return config_from_json(parse_json(report::read_text(path), path));
}

Json to_json(const design_search::FingerSearchSpace& s) {
  return Json{{"r_op_mm", s.r_op},
              {"l_ft_mm", s.l_ft},
              {"r_ft_mm", s.r_ft},
              {"r_ip_mm", grid_json(s.r_ip)},
              {"phi2_deg", grid_json(s.phi2_deg)},
              {"envelope_radius_mm", s.envelope_radius},
              {"min_pin_distance_mm", s.min_pin_distance},
              {"min_graspable_width_mm", s.min_graspable_width},
              {"stroke_reach_mm", s.stroke_reach},
              {"scan_step_deg", s.scan_step_deg}};
}

Json to_json(const design_search::CvtSearchSpace& s) {
  return Json{{"l_in1_mm", grid_json(s.l_in1)},
              {"l_in2_mm", grid_json(s.l_in2)},
              {"l_fix_mm", grid_json(s.l_fix)},
              {"l_flt_mm", grid_json(s.l_flt)},
              {"l_out_mm", grid_json(s.l_out)},
              {"stroke_width_deg", s.stroke_width_deg},
              {"envelope_radius_mm", s.envelope_radius},
              {"dead_point_limit_deg", s.dead_point_limit_deg},
              {"placement_step_deg", s.placement_step_deg},
              {"sweep_step_deg", s.sweep_step_deg},
              {"reference", lengths_json(s.reference)}};
}

design_search::FingerSearchSpace finger_space_from_json(const Json& j) {
  return finger_space_from(Reader(j, ""));
}

design_search::CvtSearchSpace cvt_space_from_json(const Json& j) { return cvt_space_from(Reader(j, "")); }

Json to_json(const design_search::FingerSearchResult& r, const design_search::FingerSearchSpace& s) {
  const auto cell = [](const design_search::FingerCell& c) {
    return Json{{"r_ip_mm", c.r_ip},
                {"phi2_deg", c.phi2_deg},
                {"theta_ip_closed_deg", rad_to_deg(c.theta_closed)},
                {"theta_ip_open_deg", rad_to_deg(c.theta_open)},
                {"peak_ratio_mm_per_rad", c.peak_ratio},
                {"mean_ratio_mm_per_rad", c.mean_ratio}};
  };
  std::size_t feasible = 0;
  for (const auto& c : r.cells) feasible += c.feasible;
  return Json{{"space", to_json(s)},
              {"cells", r.cells.size()},
              {"feasible_cells", feasible},
              {"best_by_peak", cell(r.best(design_search::FingerObjective::kPeak))},
              {"best_by_mean", cell(r.best(design_search::FingerObjective::kMean))}};
}

Json to_json(const design_search::CvtSearchResult& r) {
  const auto cell = [](const design_search::CvtCell& c) {
    Json j = lengths_json(c.lengths);
    j["feasible"] = c.feasible;
    if (!c.feasible) j["reason"] = c.reason;
    j["torque_objective"] = c.torque_objective;
    j["speed_objective"] = c.speed_objective;
    if (c.feasible) j["stroke_start_deg"] = rad_to_deg(c.stroke_start);
    j["pareto"] = c.pareto;
    return j;
  };
  std::size_t feasible = 0;
  for (const auto& c : r.cells) feasible += c.feasible;
  Json front = Json::array();
  for (std::size_t i : r.pareto) front.push_back(cell(r.cells[i]));
  Json j{{"cells", r.cells.size()}, {"feasible_cells", feasible}, {"pareto", front}};
  if (r.reference) {
    j["reference"] = cell(r.cells[*r.reference]);
  } else {
    j["reference"] = nullptr;
  }
  j["reference_feasible"] = r.reference_feasible();
  j["reference_nondominated"] = r.reference_nondominated();
  return j;
}

ObjectSpec object_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) bad("object file must hold exactly one of \"cylinder\" or \"prism\"");
  if (j.contains("cylinder")) {
    Reader r(j.at("cylinder"), "cylinder");
    Cylinder c;
    c.radius = r.num("radius_mm", 0.0);
    if (!r.has("radius_mm")) bad("cylinder.radius_mm is missing");
    if (auto p = r.pair("center_mm")) c.center = {p->first, p->second};
    r.finish();
    validate_object(c);
    return c;
  }
  if (j.contains("prism")) {
    const Json& p = j.at("prism");
    if (!p.is_object() || !p.contains("vertices_mm") || !p.at("vertices_mm").is_array()) {
      bad("prism.vertices_mm must be an array of [x, y] pairs");
    }
    Reader r(p, "prism");
    r.known("vertices_mm");
    Prism out;
    const Json& vs = p.at("vertices_mm");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      out.vertices.push_back(point_from(vs[i], "prism.vertices_mm[" + std::to_string(i) + "]"));
    }
    r.finish();
    validate_object(out);
    return out;
  }
  bad("object file must hold exactly one of \"cylinder\" or \"prism\"");
}

Json to_json(const ObjectSpec& obj) {
  if (const auto* c = std::get_if<Cylinder>(&obj)) {
    return Json{{"cylinder", Json{{"radius_mm", c->radius}, {"center_mm", point_json(c->center)}}}};
  }
  Json vs = Json::array();
  for (const auto& p : std::get<Prism>(obj).vertices) vs.push_back(point_json(p));
  return Json{{"prism", Json{{"vertices_mm", vs}}}};
}

Json to_json(const planner::Plan& p) {
  Json edges = Json::array();
  if (p.grasp.state != immobility::StateLabel::F) {
    for (int e : p.grasp.edges) edges.push_back(e);
  }
  Json tri = Json::array();
  for (const auto& c : p.grasp.contacts) tri.push_back(point_json(c));
  return Json{{"x_gri_mm", p.pose.center.x},
              {"y_gri_mm", p.pose.center.y},
              {"theta_gri_deg", rad_to_deg(p.pose.theta)},
              {"state", std::string(immobility::to_string(p.grasp.state))},
              {"edges", edges},
              {"triangle_mm", tri}};
}

}  // namespace gripkit::config
