#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarmbridge/statics.hpp"

namespace swarmbridge::harness {

struct SweepGrid {
    std::vector<int> robot_counts{1, 2, 3, 6, 9};
    std::vector<double> gaps_mm{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    std::vector<double> headings_deg{0, 10, 20, 30, 40, 50};
    std::vector<double> height_diffs_mm{0, 6, 12};
    int reps = 5;
    std::uint64_t base_seed = 1;

    std::size_t cell_count() const {
        return robot_counts.size() * gaps_mm.size() * headings_deg.size() *
               height_diffs_mm.size();
    }
    std::size_t trial_count() const { return cell_count() * static_cast<std::size_t>(reps); }
    void validate() const;
};

struct TrialRecord {
    long trial_id = 0;
    int n_robots = 0;
    double gap_mm = 0;
    double heading_deg = 0;
    double height_diff_mm = 0;
    int rep = 0;
    std::uint64_t seed = 0;
    statics::OutcomeKind outcome = statics::OutcomeKind::Success;
    double tip_drop_mm = 0;
    double com_margin_mm = 0;

    bool success() const { return outcome == statics::OutcomeKind::Success; }
};

// One quasi-static trial per (cell, rep), each with a seed derived from
// (base_seed, trial index). Trials are independent; jobs > 1 runs them on
// a worker pool with identical results.
std::vector<TrialRecord> run_sweep(const SweepGrid& grid, const statics::CrossingParams& params,
                                   int jobs = 1);

// Largest gap whose success rate exceeds `threshold`, per (n, height).
// A gap counts as crossable at its best heading; `pooled_headings`
// averages across headings instead. 0 when no gap crosses.
struct MaxGapRow {
    int n_robots = 0;
    double height_diff_mm = 0;
    double max_gap_mm = 0;
};
std::vector<MaxGapRow> max_gap_per_count(const std::vector<TrialRecord>& records,
                                         double threshold = 0.5,
                                         bool pooled_headings = false);

struct GapRatioRow {
    int n_robots = 0;
    double height_diff_mm = 0;
    double max_gap_mm = 0;
    double ratio = 0;  // max gap / (n * body_length)
};
std::vector<GapRatioRow> gap_ratio_per_count(const std::vector<TrialRecord>& records,
                                             double body_length = 50.0,
                                             double threshold = 0.5,
                                             bool pooled_headings = false);

struct HeadingRateRow {
    double heading_deg = 0;
    double height_diff_mm = 0;
    double rate = 0;  // mean success over every count and gap
};
std::vector<HeadingRateRow> success_vs_heading(const std::vector<TrialRecord>& records);

// Tilt angles of an n-robot chain caught just as the whole assembly is
// about to move off the start platform, per hook width. theta[0] is the
// lead robot (largest pitch).
struct HookReport {
    double hook_width_mm = 0;
    bool locks = false;
    double joint_tilt_rad = 0;
    std::vector<double> theta_rad;
    double tip_drop_mm = 0;
};
std::vector<HookReport> characterize_hooks(const std::vector<double>& hook_widths,
                                           int n_robots, const RobotParams& robot,
                                           double pitch_cap = 0.6);
std::vector<HookReport> characterize_hooks();  // paper widths 1.0/1.5/2.0, n=3

// trial_id,n_robots,gap_mm,heading_deg,height_diff_mm,rep,seed,outcome,
// tip_drop_mm,com_margin_mm
std::string records_to_csv(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> records_from_csv(std::istream& in);

std::string max_gap_csv(const std::vector<MaxGapRow>& rows);
std::string gap_ratio_csv(const std::vector<GapRatioRow>& rows);
std::string heading_rate_csv(const std::vector<HeadingRateRow>& rows);
std::string hook_report_csv(const std::vector<HookReport>& rows);

// deterministic shortest-roundtrip double formatting shared by all CSVs
std::string format_double(double v);

}  // namespace swarmbridge::harness
