#include "swarmbridge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "swarmbridge/errors.hpp"
#include "swarmbridge/rng.hpp"

namespace swarmbridge::harness {

void SweepGrid::validate() const {
    if (robot_counts.empty() || gaps_mm.empty() || headings_deg.empty() ||
        height_diffs_mm.empty())
        throw InvalidConfig("sweep grid lists must be non-empty");
    if (reps < 1) throw InvalidConfig("reps must be >= 1");
    for (int n : robot_counts)
        if (n < 1) throw InvalidConfig("robot counts must be >= 1");
    for (double g : gaps_mm)
        if (g <= 0) throw InvalidConfig("gaps must be positive");
}

std::vector<TrialRecord> run_sweep(const SweepGrid& grid, const statics::CrossingParams& params,
                                   int jobs) {
    grid.validate();
    params.validate();
    if (jobs < 1) jobs = 1;

    std::vector<TrialRecord> records(grid.trial_count());
    long id = 0;
    for (int n : grid.robot_counts)
        for (double gap : grid.gaps_mm)
            for (double heading : grid.headings_deg)
                for (double height : grid.height_diffs_mm)
                    for (int rep = 0; rep < grid.reps; ++rep) {
                        TrialRecord& r = records[id];
                        r.trial_id = id;
                        r.n_robots = n;
                        r.gap_mm = gap;
                        r.heading_deg = heading;
                        r.height_diff_mm = height;
                        r.rep = rep;
                        r.seed = CounterRng(grid.base_seed,
                                            static_cast<std::uint64_t>(id))
                                     .next_u64();
                        ++id;
                    }

    auto run_one = [&](TrialRecord& r) {
        statics::Environment env{r.gap_mm, r.height_diff_mm, 0.0};
        const auto out = statics::classify_crossing(
            r.n_robots, env, r.heading_deg * M_PI / 180.0, params, r.seed);
        r.outcome = out.kind;
        r.tip_drop_mm = out.max_tip_drop;
        r.com_margin_mm = out.com_margin;
    };

    if (jobs == 1) {
        for (auto& r : records) run_one(r);
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= records.size()) return;
                run_one(records[i]);
            }
        });
    }
    for (auto& t : pool) t.join();
    return records;
}

namespace {

struct CellKey {
    int n;
    double gap, heading, height;
    bool operator<(const CellKey& o) const {
        if (n != o.n) return n < o.n;
        if (gap != o.gap) return gap < o.gap;
        if (heading != o.heading) return heading < o.heading;
        return height < o.height;
    }
};

std::map<CellKey, std::pair<int, int>> cell_rates(const std::vector<TrialRecord>& records) {
    std::map<CellKey, std::pair<int, int>> cells;  // successes, trials
    for (const auto& r : records) {
        auto& c = cells[{r.n_robots, r.gap_mm, r.heading_deg, r.height_diff_mm}];
        c.first += r.success() ? 1 : 0;
        c.second += 1;
    }
    return cells;
}

}  // namespace

std::vector<MaxGapRow> max_gap_per_count(const std::vector<TrialRecord>& records,
                                         double threshold, bool pooled_headings) {
    if (records.empty()) throw NoData("no trial records");
    const auto cells = cell_rates(records);

    // (n, height, gap) -> crossable rate, best or pooled over headings
    std::map<std::tuple<int, double, double>, std::pair<double, int>> pooled;
    std::map<std::tuple<int, double, double>, double> best;
    for (const auto& [key, sc] : cells) {
        const double rate = static_cast<double>(sc.first) / sc.second;
        const auto gk = std::make_tuple(key.n, key.height, key.gap);
        auto& p = pooled[gk];
        p.first += rate;
        p.second += 1;
        auto it = best.find(gk);
        if (it == best.end() || rate > it->second) best[gk] = rate;
    }

    std::map<std::pair<int, double>, double> max_gap;
    for (const auto& [gk, b] : best) {
        const auto [n, height, gap] = gk;
        max_gap.try_emplace({n, height}, 0.0);
        const double rate = pooled_headings
                                ? pooled[gk].first / pooled[gk].second
                                : b;
        if (rate > threshold) {
            auto& m = max_gap[{n, height}];
            m = std::max(m, gap);
        }
    }

    std::vector<MaxGapRow> rows;
    for (const auto& [nh, gap] : max_gap) rows.push_back({nh.first, nh.second, gap});
    return rows;
}

std::vector<GapRatioRow> gap_ratio_per_count(const std::vector<TrialRecord>& records,
                                             double body_length, double threshold,
                                             bool pooled_headings) {
    std::vector<GapRatioRow> rows;
    for (const auto& m : max_gap_per_count(records, threshold, pooled_headings)) {
        rows.push_back({m.n_robots, m.height_diff_mm, m.max_gap_mm,
                        m.max_gap_mm / (m.n_robots * body_length)});
    }
    return rows;
}

std::vector<HeadingRateRow> success_vs_heading(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw NoData("no trial records");
    std::map<std::pair<double, double>, std::pair<long, long>> agg;
    for (const auto& r : records) {
        auto& a = agg[{r.heading_deg, r.height_diff_mm}];
        a.first += r.success() ? 1 : 0;
        a.second += 1;
    }
    std::vector<HeadingRateRow> rows;
    for (const auto& [key, sc] : agg)
        rows.push_back({key.first, key.second,
                        static_cast<double>(sc.first) / static_cast<double>(sc.second)});
    return rows;
}

std::vector<HookReport> characterize_hooks(const std::vector<double>& hook_widths,
                                           int n_robots, const RobotParams& robot,
                                           double pitch_cap) {
    if (n_robots < 2) throw std::invalid_argument("hook characterization needs a chain");
    std::vector<HookReport> out;
    for (double w : hook_widths) {
        RobotParams r = robot;
        r.knob.hook_width = w;
        r.knob.validate();

        HookReport rep;
        rep.hook_width_mm = w;
        rep.locks = coupling::hook_locks(r.knob);
        rep.joint_tilt_rad = coupling::effective_joint_tilt(r.knob);

        // rear robot right at the edge: the whole assembly is about to
        // move off the start platform, the worst-case droop moment
        statics::Environment env{200.0, 0.0, 0.0};
        kinematics::Pose lead{env.start_edge_x + (n_robots - 1) * r.body_length, 0.0, 0.0};
        auto chain = statics::make_chain(n_robots, lead, r.body_length, rep.joint_tilt_rad, env);
        const auto profile =
            statics::tilt_profile(chain, env, rep.joint_tilt_rad, r.body_length, pitch_cap);
        rep.theta_rad = profile.pitch;
        rep.tip_drop_mm = profile.tip_drop;
        out.push_back(rep);
    }
    return out;
}

std::vector<HookReport> characterize_hooks() {
    return characterize_hooks({1.0, 1.5, 2.0}, 3, RobotParams{});
}

std::string format_double(double v) {
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
    std::string out =
        "trial_id,n_robots,gap_mm,heading_deg,height_diff_mm,rep,seed,outcome,"
        "tip_drop_mm,com_margin_mm\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%ld,%d,%s,%s,%s,%d,%llu,%s,%s,%s\n", r.trial_id,
                      r.n_robots, format_double(r.gap_mm).c_str(),
                      format_double(r.heading_deg).c_str(),
                      format_double(r.height_diff_mm).c_str(), r.rep,
                      static_cast<unsigned long long>(r.seed),
                      statics::outcome_name(r.outcome), format_double(r.tip_drop_mm).c_str(),
                      format_double(r.com_margin_mm).c_str());
        out += buf;
    }
    return out;
}

std::vector<TrialRecord> records_from_csv(std::istream& in) {
    std::vector<TrialRecord> records;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 10) throw std::runtime_error("malformed record row: " + line);
        TrialRecord r;
        r.trial_id = std::stol(fields[0]);
        r.n_robots = std::stoi(fields[1]);
        r.gap_mm = std::stod(fields[2]);
        r.heading_deg = std::stod(fields[3]);
        r.height_diff_mm = std::stod(fields[4]);
        r.rep = std::stoi(fields[5]);
        r.seed = std::stoull(fields[6]);
        r.outcome = statics::outcome_from_name(fields[7]);
        r.tip_drop_mm = std::stod(fields[8]);
        r.com_margin_mm = std::stod(fields[9]);
        records.push_back(r);
    }
    return records;
}

std::string max_gap_csv(const std::vector<MaxGapRow>& rows) {
    std::string out = "n_robots,height_diff_mm,max_gap_mm\n";
    for (const auto& r : rows)
        out += std::to_string(r.n_robots) + "," + format_double(r.height_diff_mm) + "," +
               format_double(r.max_gap_mm) + "\n";
    return out;
}

std::string gap_ratio_csv(const std::vector<GapRatioRow>& rows) {
    std::string out = "n_robots,height_diff_mm,max_gap_mm,ratio\n";
    for (const auto& r : rows)
        out += std::to_string(r.n_robots) + "," + format_double(r.height_diff_mm) + "," +
               format_double(r.max_gap_mm) + "," + format_double(r.ratio) + "\n";
    return out;
}

std::string heading_rate_csv(const std::vector<HeadingRateRow>& rows) {
    std::string out = "heading_deg,height_diff_mm,success_rate\n";
    for (const auto& r : rows)
        out += format_double(r.heading_deg) + "," + format_double(r.height_diff_mm) + "," +
               format_double(r.rate) + "\n";
    return out;
}

std::string hook_report_csv(const std::vector<HookReport>& rows) {
    std::string out = "hook_width_mm,locks,joint_tilt_rad";
    if (!rows.empty())
        for (std::size_t i = 0; i < rows.front().theta_rad.size(); ++i)
            out += ",theta" + std::to_string(i + 1) + "_rad";
    out += ",tip_drop_mm\n";
    for (const auto& r : rows) {
        out += format_double(r.hook_width_mm);
        out += r.locks ? ",locked," : ",friction,";
        out += format_double(r.joint_tilt_rad);
        for (double th : r.theta_rad) out += "," + format_double(th);
        out += "," + format_double(r.tip_drop_mm) + "\n";
    }
    return out;
}

}  // namespace swarmbridge::harness
