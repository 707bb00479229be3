#include "gripkit/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "gripkit/config.hpp"
#include "gripkit/report.hpp"

namespace gripkit::cli {

namespace {

using config::Json;
using geom::deg_to_rad;
using geom::rad_to_deg;

struct Options {
  std::string config_path;
  std::string output = "-";
  std::string svg;
  int samples = 121;
  std::string mode = "stopper";
  std::optional<double> tau_in;
  std::optional<double> loss;
  std::optional<int> force_samples;
  std::string model;
  std::string score_input;
  std::vector<std::string> triplets;
  std::string object_path;
  std::string space_path;
  std::string csv_path;
};

class Emitter {
 public:
  explicit Emitter(std::ostream& out) : out_(out) {}
  void operator()(const std::string& path, const std::string& text) const {
    if (path == "-") {
      out_ << text;
    } else {
      report::write_text(path, text);
    }
  }

 private:
  std::ostream& out_;
};

config::ToolConfig load(const Options& o) {
  return o.config_path.empty() ? config::ToolConfig::defaults() : config::load_config(o.config_path);
}

void maybe_svg(const Options& o, std::string_view title, std::string_view xl, std::string_view yl,
               report::Series s) {
  if (o.svg.empty()) return;
  const report::Series one[] = {std::move(s)};
  report::write_text(o.svg, report::svg_plot(title, xl, yl, one));
}

int cmd_defaults(const Options& o, const Emitter& emit) {
  emit(o.output, config::to_json(config::ToolConfig::defaults()).dump(2) + "\n");
  return kOk;
}

int cmd_trajectory(const Options& o, const Emitter& emit) {
  const auto c = load(o);
  std::string csv = "theta_ip_deg,x_mm,y_mm,r_mm\n";
  report::Series s{"p_ft", {}, {}};
  for (const auto& p : quick_return::trajectory(c.finger, o.samples)) {
    csv += report::csv_row({rad_to_deg(p.theta_ip), p.p_ft.x, p.p_ft.y, p.radial_distance});
    s.x.push_back(p.p_ft.x);
    s.y.push_back(p.p_ft.y);
  }
  emit(o.output, csv);
  maybe_svg(o, "Fingertip trajectory", "x (mm)", "y (mm)", std::move(s));
  return kOk;
}

int cmd_speed(const Options& o, const Emitter& emit) {
  const auto c = load(o);
  std::string csv = "theta_ip_deg,ratio_mm_per_rad\n";
  report::Series s{"ratio", {}, {}};
  for (const auto& p : quick_return::trajectory(c.finger, o.samples)) {
    csv += report::csv_row({rad_to_deg(p.theta_ip), p.speed_ratio});
    s.x.push_back(rad_to_deg(p.theta_ip));
    s.y.push_back(p.speed_ratio);
  }
  emit(o.output, csv);
  maybe_svg(o, "Speed increase ratio", "theta_ip (deg)", "mm/rad", std::move(s));
  return kOk;
}

int cmd_amplification(const Options& o, const Emitter& emit) {
  const auto c = load(o);
  ls_cvt::LoadMode mode;
  if (o.mode == "stopper") {
    mode = ls_cvt::LoadMode::kStopperEngaged;
  } else if (o.mode == "no-load") {
    mode = ls_cvt::LoadMode::kNoLoad;
  } else {
    throw Error(ErrorCode::kMalformedInput, "--mode must be stopper or no-load");
  }
  if (o.samples < 2) throw Error(ErrorCode::kDomain, "--samples must be >= 2");
  std::string csv = "theta_in_deg,eps_amp\n";
  report::Series s{"eps", {}, {}};
  const double lo = c.finger.theta_closed, hi = c.finger.theta_open;
  for (int i = 0; i < o.samples; ++i) {
    const double plate = lo + (hi - lo) * i / (o.samples - 1);
    const auto st = ls_cvt::state_from_output(c.cvt, ls_cvt::output_angle_for_plate(c.cvt, plate), mode);
    csv += report::csv_row({rad_to_deg(st.theta_in_v), st.eps_amp});
    s.x.push_back(rad_to_deg(st.theta_in_v));
    s.y.push_back(st.eps_amp);
  }
  emit(o.output, csv);
  maybe_svg(o, "Torque amplification", "theta_in (deg)", "eps_amp", std::move(s));
  return kOk;
}

int cmd_force(const Options& o, const Emitter& emit) {
  auto c = load(o);
  if (o.tau_in) c.load.tau_in = *o.tau_in;
  if (o.loss) c.load.loss_factor = *o.loss;
  if (o.force_samples) c.load.n_samples = *o.force_samples;
  if (o.model == "slot-reaction") {
    c.load.model = statics::PinForceModel::kSlotReaction;
  } else if (o.model == "tangential") {
    c.load.model = statics::PinForceModel::kTangential;
  } else if (!o.model.empty()) {
    throw Error(ErrorCode::kMalformedInput, "--model must be tangential or slot-reaction");
  }
  const auto prof = statics::force_profile(c.finger, c.cvt, c.load);
  emit(o.output, prof.to_csv());
  report::Series s{"f_cnt", {}, {}};
  for (const auto& p : prof.samples) {
    s.x.push_back(p.r_ob);
    s.y.push_back(p.f_cnt);
  }
  maybe_svg(o, "Fingertip force", "r_ob (mm)", "f_cnt (N)", std::move(s));
  return kOk;
}

std::vector<double> split_numbers(const std::string& line, int line_no, bool* is_header) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t\r");
    const auto e = tok.find_last_not_of(" \t\r");
    tok = b == std::string::npos ? "" : tok.substr(b, e - b + 1);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || *end != '\0') {
      if (is_header) {
        *is_header = true;
        return {};
      }
      throw Error(ErrorCode::kMalformedInput, "line " + std::to_string(line_no) + ": '" + tok + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.size() != 3) {
    throw Error(ErrorCode::kMalformedInput,
                "line " + std::to_string(line_no) + ": expected speed,force,weight");
  }
  return out;
}

int cmd_score(const Options& o, const Emitter& emit) {
  std::vector<std::vector<double>> rows;
  if (!o.score_input.empty()) {
    std::stringstream in(report::read_text(o.score_input));
    std::string line;
    int n = 0;
    bool first = true;
    while (std::getline(in, line)) {
      ++n;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      bool header = false;
      auto v = split_numbers(line, n, first ? &header : nullptr);
      first = false;
      if (!header) rows.push_back(std::move(v));
    }
  }
  for (std::size_t i = 0; i < o.triplets.size(); ++i) {
    rows.push_back(split_numbers(o.triplets[i], static_cast<int>(i) + 1, nullptr));
  }
  if (rows.empty()) throw Error(ErrorCode::kMalformedInput, "score needs --input or --triplet");
  std::string csv = "closing_speed_mm_s,tip_force_N,weight_kg,eta\n";
  for (const auto& r : rows) {
    csv += report::csv_row({r[0], r[1], r[2], statics::performance_score(r[0], r[1], r[2])});
  }
  emit(o.output, csv);
  return kOk;
}

int cmd_plan(const Options& o, const Emitter& emit, std::ostream& err) {
  const auto c = load(o);
  const auto obj = config::object_from_json(
      config::parse_json(report::read_text(o.object_path), o.object_path));
  try {
    const auto p = planner::plan(obj, c.finger);
    emit(o.output, config::to_json(p).dump(2) + "\n");
    if (!o.svg.empty()) {
      std::vector<report::Series> series;
      if (const auto* prism = std::get_if<Prism>(&obj)) {
        report::Series outline{"object", {}, {}};
        for (std::size_t i = 0; i <= prism->vertices.size(); ++i) {
          const auto& v = prism->vertices[i % prism->vertices.size()];
          outline.x.push_back(v.x);
          outline.y.push_back(v.y);
        }
        series.push_back(std::move(outline));
      }
      report::Series tri{"grasp triangle", {}, {}};
      for (int i = 0; i <= 3; ++i) {
        tri.x.push_back(p.grasp.contacts[i % 3].x);
        tri.y.push_back(p.grasp.contacts[i % 3].y);
      }
      series.push_back(std::move(tri));
      report::write_text(o.svg, report::svg_plot("Grasp plan", "x (mm)", "y (mm)", series));
    }
    return kOk;
  } catch (const planner::NoPlanError& e) {
    const Json j{{"state", "NO_PLAN"}, {"cause", std::string(planner::to_string(e.cause()))},
                 {"reason", e.what()}};
    emit(o.output, j.dump(2) + "\n");
    err << "NO_PLAN " << planner::to_string(e.cause()) << ": " << e.what() << "\n";
    return kNoPlan;
  }
}

int cmd_search_finger(const Options& o, const Emitter& emit) {
  auto space = load(o).finger_search;
  if (!o.space_path.empty()) {
    space = config::finger_space_from_json(
        config::parse_json(report::read_text(o.space_path), o.space_path));
  }
  const auto res = design_search::optimize_finger(space);
  emit(o.output, config::to_json(res, space).dump(2) + "\n");
  if (!o.csv_path.empty()) report::write_text(o.csv_path, res.to_csv());
  return kOk;
}

int cmd_search_cvt(const Options& o, const Emitter& emit) {
  auto space = load(o).cvt_search;
  if (!o.space_path.empty()) {
    space = config::cvt_space_from_json(config::parse_json(report::read_text(o.space_path), o.space_path));
  }
  const auto res = design_search::optimize_cvt(space);
  Json j = config::to_json(res);
  j["space"] = config::to_json(space);
  emit(o.output, j.dump(2) + "\n");
  if (!o.csv_path.empty()) report::write_text(o.csv_path, res.to_csv());
  return kOk;
}

int cmd_lambda(const Options& o, const Emitter& emit) {
  const auto c = load(o);
  const double lambda = design_search::derive_lambda(c.cvt, c.finger.theta_closed, c.finger.theta_open);
  const auto w = ls_cvt::output_window(c.cvt, c.cvt.lin_v_min);
  const Json j{{"lambda_deg", rad_to_deg(lambda)},
               {"configured_lambda_deg", rad_to_deg(c.cvt.lambda)},
               {"stopper_window_deg", Json::array({rad_to_deg(w.lo), rad_to_deg(w.hi)})}};
  emit(o.output, j.dump(2) + "\n");
  return kOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput:
    case ErrorCode::kDegenerateInput:
    case ErrorCode::kDomain:
      return kInputError;
    case ErrorCode::kNoPlan:
    case ErrorCode::kUngraspable:
      return kNoPlan;
    case ErrorCode::kEmptyFeasibleSet:
      return kEmptySearch;
    default:
      return kInfeasibleGeometry;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis and grasp planning for a three-finger quick-return gripper", "gripkit"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;
  const Emitter emit(out);

  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", o.config_path, "ToolConfig JSON (defaults when omitted)")
        ->check(CLI::ExistingFile);
  };
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "Output path, - for stdout");
  };

  auto* defaults = app.add_subcommand("defaults", "Write the default configuration");
  add_output(defaults);
  defaults->callback([&] { action = [&] { return cmd_defaults(o, emit); }; });

  auto* analyze = app.add_subcommand("analyze", "Kinematic and static analyses");
  analyze->require_subcommand(1);
  const auto analysis = [&](const char* name, const char* help, auto fn, bool with_svg = true) {
    auto* sub = analyze->add_subcommand(name, help);
    add_config(sub);
    add_output(sub);
    if (with_svg) sub->add_option("--svg", o.svg, "Also write an SVG plot");
    sub->callback([&, fn] { action = [&, fn] { return fn(o, emit); }; });
    return sub;
  };
  analysis("trajectory", "Fingertip path over the stroke", cmd_trajectory)
      ->add_option("-n,--samples", o.samples, "Samples over the stroke")
      ->check(CLI::PositiveNumber);
  analysis("speed", "Speed increase ratio over the stroke", cmd_speed)
      ->add_option("-n,--samples", o.samples, "Samples over the stroke")
      ->check(CLI::PositiveNumber);
  auto* amp = analysis("amplification", "CVT torque amplification", cmd_amplification);
  amp->add_option("-n,--samples", o.samples, "Samples over the stroke")->check(CLI::PositiveNumber);
  amp->add_option("--mode", o.mode, "stopper or no-load");
  auto* force = analysis("force-profile", "Fingertip force against object radius", cmd_force);
  force->add_option("--tau-in", o.tau_in, "Motor torque, N mm");
  force->add_option("--loss", o.loss, "Transmission loss factor");
  force->add_option("-n,--samples", o.force_samples, "Object radii sampled");
  force->add_option("--model", o.model, "tangential or slot-reaction");
  auto* score = analysis("score", "Performance score from speed,force,weight", cmd_score, false);
  score->add_option("-i,--input", o.score_input, "CSV of speed_mm_s,force_N,weight_kg rows")
      ->check(CLI::ExistingFile);
  score->add_option("-t,--triplet", o.triplets, "speed,force,weight");

  auto* plan = app.add_subcommand("plan", "Grasp plan for an object");
  add_config(plan);
  add_output(plan);
  plan->add_option("--object", o.object_path, "Object JSON")->required()->check(CLI::ExistingFile);
  plan->add_option("--svg", o.svg, "Also write an SVG sketch");
  plan->callback([&] { action = [&] { return cmd_plan(o, emit, err); }; });

  auto* search = app.add_subcommand("design-search", "Parameter grid searches");
  search->require_subcommand(1);
  const auto searcher = [&](const char* name, const char* help, auto fn) {
    auto* sub = search->add_subcommand(name, help);
    add_config(sub);
    add_output(sub);
    sub->add_option("--space", o.space_path, "Search space JSON")->check(CLI::ExistingFile);
    sub->add_option("--csv", o.csv_path, "Also write the per-cell CSV");
    sub->callback([&, fn] { action = [&, fn] { return fn(o, emit); }; });
  };
  searcher("finger", "Finger unit r_ip x phi2 search", cmd_search_finger);
  searcher("cvt", "CVT link length search", cmd_search_cvt);
  auto* lambda = search->add_subcommand("lambda", "Plate offset from the CVT geometry");
  add_config(lambda);
  add_output(lambda);
  lambda->callback([&] { action = [&] { return cmd_lambda(o, emit); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace gripkit::cli
