#include "uuvloc/commands.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "uuvloc/error.hpp"
#include "uuvloc/eval.hpp"
#include "uuvloc/io.hpp"
#include "uuvloc/recovery.hpp"
#include "uuvloc/synth.hpp"

namespace uuvloc {

namespace {

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::ConfigError ? kExitConfigError : kExitInputError;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  return out;
}

template <typename Fn>
int guarded(std::ostream& err, const char* command, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << command << ": " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << command << ": " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace

int run_recover(const RecoverArgs& args, std::ostream& err) {
  return guarded(err, "recover", [&] {
    const RunConfig cfg = load_run_config(args.config);
    const CsvTable table = read_csv(args.input);
    if (table.rows.empty()) {
      throw Error(ErrorCode::EmptyTrajectory, args.input.string() + ": no observations");
    }
    const std::vector<ObservationRecord> records =
        parse_observations(table, cfg.altitude_datum_offset);

    std::vector<TrajectoryRow> accepted;
    std::ostringstream excluded;
    excluded << "line,t,reason\n";
    std::size_t n_excluded = 0;
    for (const ObservationRecord& rec : records) {
      Observation obs = rec.obs;
      if (cfg.origin_track) {
        if (!rec.origin_px) {
          throw Error(ErrorCode::ParseError,
                      "origin_track is enabled but the log has no origin_u/origin_v columns");
        }
        // Track the UUV relative to the tracked grid origin, anchored at the
        // principal point.
        obs.px.u = rec.obs.px.u - rec.origin_px->u + cfg.calib.intrinsics.cx;
        obs.px.v = rec.obs.px.v - rec.origin_px->v + cfg.calib.intrinsics.cy;
      }
      RecoveredSample sample = recover_observation(obs, cfg.calib, cfg.rig, cfg.ellipsoid);
      if (sample.ok()) {
        accepted.push_back({obs.t, std::move(sample), obs.d_uuv});
      } else {
        ++n_excluded;
        excluded << rec.line << ',' << format_double(obs.t) << ',' << to_string(sample.status)
                 << '\n';
      }
    }

    std::ofstream out = open_output(args.output);
    write_trajectory(out, accepted);
    std::ofstream side = open_output(args.output.string() + ".excluded.csv");
    side << excluded.str();
    err << "recover: " << accepted.size() << " recovered, " << n_excluded << " excluded\n";
    return kExitOk;
  });
}

int run_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "evaluate", [&] {
    const RunConfig cfg = load_run_config(args.config);
    const std::vector<TrajectoryRecord> traj = parse_trajectory(read_csv(args.input));
    std::vector<GroundTruthSample> gt = parse_ground_truth(read_csv(args.gt));
    if (traj.empty()) throw Error(ErrorCode::EmptyTrajectory, "trajectory has no samples");
    if (gt.empty()) throw Error(ErrorCode::EmptyTrajectory, "ground truth has no samples");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (cfg.sync_max_gap > 0.0) {
      std::stable_sort(gt.begin(), gt.end(),
                       [](const auto& a, const auto& b) { return a.t < b.t; });
      std::vector<double> t_est(traj.size());
      std::vector<double> t_gt(gt.size());
      std::transform(traj.begin(), traj.end(), t_est.begin(), [](const auto& r) { return r.t; });
      std::transform(gt.begin(), gt.end(), t_gt.begin(), [](const auto& r) { return r.t; });
      pairs = sync_nearest(t_est, t_gt, cfg.sync_max_gap);
    } else {
      if (traj.size() != gt.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "row-wise pairing needs equal lengths: " + std::to_string(traj.size()) +
                        " trajectory vs " + std::to_string(gt.size()) + " ground-truth rows");
      }
      for (std::size_t i = 0; i < traj.size(); ++i) pairs.emplace_back(i, i);
    }
    if (pairs.empty()) {
      throw Error(ErrorCode::LengthMismatch,
                  "no trajectory sample matched ground truth within " +
                      format_double(cfg.sync_max_gap) + " s (" + std::to_string(traj.size()) +
                      " trajectory vs " + std::to_string(gt.size()) + " ground-truth rows)");
    }

    std::vector<Eigen::Vector2d> est_xy;
    std::vector<Eigen::Vector2d> gt_xy;
    std::vector<double> est_z;
    std::vector<double> gt_z;
    for (const auto& [i, j] : pairs) {
      const TrajectoryRecord& r = traj[i];
      Eigen::Vector3d est = r.enu;
      Eigen::Vector3d nadir(r.nadir_en.x(), r.nadir_en.y(), 0.0);
      if (cfg.gt_frame) {
        est = enu_to_ground_truth(est, *cfg.gt_frame);
        nadir = enu_to_ground_truth(nadir, *cfg.gt_frame);
      }
      Eigen::Vector2d truth = gt[j].enu.head<2>();
      if (cfg.gt_grid_rescale) {
        if (!nadir.allFinite() || !std::isfinite(r.a_cam) || !std::isfinite(r.d_uuv)) {
          throw Error(ErrorCode::ParseError,
                      "grid rescaling needs a_cam, d_uuv and a finite nadir in the trajectory");
        }
        truth = rescale_grid_point(truth, nadir.head<2>(), r.a_cam, r.d_uuv);
      }
      est_xy.push_back(est.head<2>());
      gt_xy.push_back(truth);
      est_z.push_back(est.z());
      gt_z.push_back(gt[j].enu.z());
    }

    TrajectoryErrorReport report = trajectory_errors(est_xy, gt_xy);
    report.n_excluded = traj.size() - pairs.size();
    if (report.n_excluded > 0) {
      err << "evaluate: warning: " << report.n_excluded
          << " trajectory samples had no ground truth within the sync gap\n";
    }
    std::optional<AxisErrors> z;
    if (!cfg.gt_grid_rescale) z = scalar_errors(est_z, gt_z);
    const std::string json = to_json(report, z);
    if (args.output) {
      std::ofstream file = open_output(*args.output);
      file << json;
    } else {
      out << json;
    }
    return kExitOk;
  });
}

int run_simulate(const SimulateArgs& args, std::ostream& err) {
  return guarded(err, "simulate", [&] {
    ScenarioConfig cfg = load_scenario_config(args.config);
    if (args.seed) cfg.noise.seed = *args.seed;
    const Scenario scenario = make_scenario(cfg);
    const SyntheticLogs logs = generate_logs(scenario);
    std::ofstream obs = open_output(args.output);
    write_observations(obs, logs.observations, cfg.run.altitude_datum_offset);
    std::ofstream gt = open_output(args.gt);
    write_ground_truth(gt, logs.ground_truth);
    err << "simulate: " << logs.observations.size() << " samples written\n";
    return kExitOk;
  });
}

}  // namespace uuvloc
