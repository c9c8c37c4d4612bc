#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "uuvloc/camera.hpp"
#include "uuvloc/eval.hpp"
#include "uuvloc/geodesy.hpp"
#include "uuvloc/recovery.hpp"
#include "uuvloc/synth.hpp"

namespace uuvloc {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Strict full-string double parse; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);

/**
 * @brief `key = value` text with `#` comments.
 *
 * Every getter marks its key as consumed; ensure_all_consumed() rejects
 * whatever was never asked for, so typos in frame conventions surface as
 * errors instead of silently falling back to defaults.
 */
class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text, std::string source = "<memory>");
  static KeyValueFile load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get_string(const std::string& key);
  std::string require_string(const std::string& key);
  double get_double(const std::string& key, double fallback);
  std::optional<double> get_optional_double(const std::string& key);
  double require_double(const std::string& key);
  long long get_int(const std::string& key, long long fallback);
  bool get_bool(const std::string& key, bool fallback);

  void ensure_all_consumed() const;
  const std::string& source() const { return source_; }
  const std::filesystem::path& directory() const { return directory_; }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
  std::string source_;
  std::filesystem::path directory_;
};

/// Calibration file: fx, fy, cx, cy, width, height, k1, k2, k3, p1, p2.
CameraCalibration load_calibration(const std::filesystem::path& path);
CameraCalibration parse_calibration(KeyValueFile& kv);

struct RunConfig {
  CameraCalibration calib;
  RigConfig rig;
  double altitude_datum_offset = 0.0;
  Ellipsoid ellipsoid = Ellipsoid::wgs84();
  double sync_max_gap = 0.05;
  std::optional<GroundTruthFrame> gt_frame;
  bool gt_grid_rescale = false;
  bool origin_track = false;
};

/// Reads the run keys out of `kv` without checking for leftovers.
RunConfig parse_run_config(KeyValueFile& kv);
RunConfig load_run_config(const std::filesystem::path& path);

struct ScenarioConfig {
  RunConfig run;
  TrajectorySpec trajectory;
  NoiseSpec noise;
  GeodeticCoord ref_geo;
};

ScenarioConfig load_scenario_config(const std::filesystem::path& path);
Scenario make_scenario(const ScenarioConfig& cfg);

// ---------------------------------------------------------------- CSV ----

struct CsvTable {
  std::vector<std::string> header;
  struct Row {
    std::size_t line = 0;
    std::vector<std::string> cells;
  };
  std::vector<Row> rows;

  /// Index of `name` in the header, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
};

/// Comma separated, header required, blank lines skipped. Throws
/// Error(ParseError) with a line number on ragged rows.
CsvTable parse_csv(std::string_view text, std::string_view source = "<memory>");
CsvTable read_csv(const std::filesystem::path& path);

struct ObservationRecord {
  std::size_t line = 0;
  Observation obs;
  std::optional<PixelCoord> origin_px;
};

/// Observation log rows. Angles converted from degrees; altitude datum
/// offset added. Throws Error(ParseError) on schema violations.
std::vector<ObservationRecord> parse_observations(const CsvTable& table,
                                                  double altitude_datum_offset = 0.0);

extern const std::vector<std::string> kObservationColumns;
extern const std::vector<std::string> kTrajectoryColumns;

void write_observations(std::ostream& out, const std::vector<Observation>& observations,
                        double altitude_datum_offset = 0.0);
void write_ground_truth(std::ostream& out, const std::vector<GroundTruthSample>& gt);
std::vector<GroundTruthSample> parse_ground_truth(const CsvTable& table);

struct TrajectoryRow {
  double t = 0.0;
  RecoveredSample sample;
  double d_uuv = 0.0;
};

void write_trajectory(std::ostream& out, const std::vector<TrajectoryRow>& rows);

/// The evaluation-relevant subset of a trajectory file.
struct TrajectoryRecord {
  double t = 0.0;
  Eigen::Vector3d enu = Eigen::Vector3d::Zero();
  double a_cam = 0.0;
  double d_uuv = 0.0;
  Eigen::Vector2d nadir_en = Eigen::Vector2d::Zero();
};

std::vector<TrajectoryRecord> parse_trajectory(const CsvTable& table);

std::string to_json(const TrajectoryErrorReport& report, const std::optional<AxisErrors>& z);

}  // namespace uuvloc
